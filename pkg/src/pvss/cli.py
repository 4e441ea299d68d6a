"""Command-line front end: ``pvss pages|crossed|pv|cohomology|snf|validate``."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import warnings
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .abgrp import FgAbGroup, GroupHom, format_invariants
from .homalg import ExactnessError, ExtensionReport
from .intmat import IntMatrix, smith_normal_form
from .specseq import (ActionSpec, AmbientN2, BigradedPage, MissingDataError,
                      PairwiseKTrivial, PointwiseInnerWarning, SpecError, assemble_page,
                      group_cohomology, pv_solve, run_pages, tuples, validate_spec)

FORMAT_VERSION = 1

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_MISSING, EXIT_INTERNAL = 0, 1, 2, 3, 4


class ParseError(ValueError):
    """Input is not a well-formed system file."""


# ---------------------------------------------------------------------------
# System files
# ---------------------------------------------------------------------------

@dataclass
class SystemFile:
    spec: ActionSpec
    digest: str
    provenance: str | None = None
    expected: dict[str, Any] | None = None
    raw: dict[str, Any] = field(default_factory=dict)


def _int_matrix(obj: Any, what: str, rows: int | None = None,
                cols: int | None = None) -> IntMatrix:
    if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
        raise ParseError(f"{what}: expected an array of rows")
    for r in obj:
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
            raise ParseError(f"{what}: entries must be integers")
    width = len(obj[0]) if obj else (cols or 0)
    if any(len(r) != width for r in obj):
        raise ParseError(f"{what}: rows have different lengths")
    m = IntMatrix.from_rows(obj, width)
    if rows is not None and cols is not None and m.shape != (rows, cols):
        if not obj and rows * cols == 0:
            return IntMatrix.zeros(rows, cols)
        raise SpecError(f"{what}: shape {m.rows}x{m.cols}, expected {rows}x{cols}")
    return m


def _parse_group(obj: Any, what: str) -> FgAbGroup:
    if not isinstance(obj, dict):
        raise ParseError(f"{what}: expected an object")
    has_inv = "rank" in obj or "torsion" in obj
    has_pres = "presentation" in obj
    if has_inv == has_pres:
        raise ParseError(f"{what}: give exactly one of {{rank, torsion}} or {{presentation}}")
    if has_pres:
        m = _int_matrix(obj["presentation"], f"{what}.presentation")
        gens = obj.get("gens", m.rows)
        if not isinstance(gens, int) or (m.rows and gens != m.rows):
            raise ParseError(f"{what}.gens does not match the presentation")
        return FgAbGroup(gens, m if m.rows == gens else IntMatrix.zeros(gens, 0))
    rank = obj.get("rank", 0)
    torsion = obj.get("torsion", [])
    if not isinstance(rank, int) or rank < 0:
        raise ParseError(f"{what}.rank must be a nonnegative integer")
    if not isinstance(torsion, list) or not all(isinstance(t, int) for t in torsion):
        raise ParseError(f"{what}.torsion must be an array of integers")
    if any(t <= 0 for t in torsion):
        raise SpecError(f"{what}.torsion entries must be positive")
    return FgAbGroup.from_invariants(rank, torsion)


def _hom(obj: Any, src: FgAbGroup, tgt: FgAbGroup, what: str) -> GroupHom:
    return GroupHom(src, tgt, _int_matrix(obj, what, tgt.gens, src.gens))


def _parse_pair_key(key: str) -> tuple[int, int]:
    try:
        parts = tuple(int(x) for x in key.strip().strip("()").split(","))
    except ValueError:
        raise ParseError(f"d2 pair key {key!r} is not of the form \"(i,j)\"") from None
    if len(parts) != 2:
        raise ParseError(f"d2 pair key {key!r} must name two indices")
    return parts


def parse_system(doc: Any, digest: str = "") -> SystemFile:
    """Build an :class:`ActionSpec` from a decoded system file.

    Structural problems raise :class:`ParseError`; inconsistent data raises
    :class:`SpecError`.
    """
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    version = doc.get("version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format version {version!r}")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError("n must be a nonnegative integer")
    if "K0" not in doc or "K1" not in doc:
        raise ParseError("K0 and K1 are required")
    k0, k1 = _parse_group(doc["K0"], "K0"), _parse_group(doc["K1"], "K1")
    flags = doc.get("flags", {})
    if not isinstance(flags, dict):
        raise ParseError("flags must be an object")
    known = {"k_trivial", "pointwise_inner", "assume_higher_vanish"}
    for key, val in flags.items():
        if key not in known:
            raise ParseError(f"unknown flag {key!r}")
        if not isinstance(val, bool):
            raise ParseError(f"flag {key!r} must be true or false")

    actions = doc.get("actions")
    if actions is None:
        if not flags.get("k_trivial"):
            raise ParseError("actions are required unless k_trivial is set")
        actions = [{"on_K0": IntMatrix.identity(k0.gens).to_rows(),
                    "on_K1": IntMatrix.identity(k1.gens).to_rows()} for _ in range(n)]
    if not isinstance(actions, list) or not all(isinstance(a, dict) for a in actions):
        raise ParseError("actions must be an array of objects")
    if len(actions) != n:
        raise SpecError(f"expected {n} actions, got {len(actions)}")
    act0, act1 = [], []
    for i, a in enumerate(actions, 1):
        if "on_K0" not in a or "on_K1" not in a:
            raise ParseError(f"action {i} needs on_K0 and on_K1")
        act0.append(_hom(a["on_K0"], k0, k0, f"actions[{i}].on_K0"))
        act1.append(_hom(a["on_K1"], k1, k1, f"actions[{i}].on_K1"))

    d2data = None
    d2 = doc.get("d2")
    if d2 is not None:
        if not isinstance(d2, dict):
            raise ParseError("d2 must be an object")
        if "pairs" in d2:
            if not isinstance(d2["pairs"], dict):
                raise ParseError("d2.pairs must be an object")
            pairs = {}
            for key, val in d2["pairs"].items():
                if not isinstance(val, dict) or "q0" not in val or "q1" not in val:
                    raise ParseError(f"d2.pairs[{key}] needs q0 and q1")
                mu = _parse_pair_key(key)
                pairs[mu] = (_hom(val["q0"], k0, k1, f"d2.pairs[{key}].q0"),
                             _hom(val["q1"], k1, k0, f"d2.pairs[{key}].q1"))
            d2data = PairwiseKTrivial(pairs)
        elif "q0" in d2 and "q1" in d2:
            d2data = AmbientN2(_hom(d2["q0"], k0, k1, "d2.q0"), _hom(d2["q1"], k1, k0, "d2.q1"))
        else:
            raise ParseError("d2 needs either {q0, q1} or {pairs}")

    names = doc.get("names")
    gen_names = None
    if names is not None:
        if not isinstance(names, dict):
            raise ParseError("names must be an object")
        gen_names = {}
        for q, key in ((0, "K0"), (1, "K1")):
            if key in names:
                if not isinstance(names[key], list):
                    raise ParseError(f"names.{key} must be an array")
                gen_names[q] = [str(x) for x in names[key]]
    spec = ActionSpec(n, k0, k1, tuple(act0), tuple(act1), d2data,
                      k_trivial=flags.get("k_trivial", False),
                      pointwise_inner=flags.get("pointwise_inner", False),
                      assume_higher_vanish=flags.get("assume_higher_vanish", False),
                      generator_names=gen_names)
    prov = doc.get("provenance")
    if isinstance(prov, list):
        prov = " ".join(str(x) for x in prov)
    return SystemFile(spec, digest, prov, doc.get("expected"), doc)


def resolve_path(name: str) -> Path:
    """A filesystem path, or the name of a bundled corpus file."""
    p = Path(name)
    if p.exists():
        return p
    stem = name[:-5] if name.endswith(".json") else name
    candidate = resources.files("pvss") / "corpus" / f"{stem}.json"
    if candidate.is_file():
        return Path(str(candidate))
    return p


def load_system(path: str) -> SystemFile:
    p = resolve_path(path)
    try:
        data = p.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None
    return parse_system(doc, hashlib.sha256(data).hexdigest())


def corpus_files() -> list[Path]:
    root = resources.files("pvss") / "corpus"
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith(".json"))


# ---------------------------------------------------------------------------
# Results
# ---------------------------------------------------------------------------

def group_json(g: FgAbGroup) -> dict:
    r, t = g.invariants
    return {"rank": r, "torsion": list(t)}


def report_json(rep: ExtensionReport) -> dict:
    if rep.determined:
        return {"determined": group_json(rep.group)}
    cands = rep.resolution.candidates
    return {"ambiguous": {
        "rank": rep.rank,
        "candidates": None if cands is None else [{"rank": r, "torsion": list(t)} for r, t in cands],
    }}


def report_text(rep: ExtensionReport) -> str:
    if rep.determined:
        return str(rep.group)
    cands = rep.resolution.candidates
    if cands:
        return f"ambiguous(rank {rep.rank}; one of " + " | ".join(
            format_invariants(r, t) for r, t in cands) + ")"
    return f"ambiguous(rank {rep.rank}; extension of {rep.quot} by {rep.sub})"


def _basis_labels(spec: ActionSpec, page: BigradedPage, p: int, q: int) -> list[str]:
    """Ambient representatives of the generators of a cell, as readable sums."""
    cell = page.cell(p, q)
    if cell is None:
        return []
    base = spec.labels(q)
    amb = []
    for mu in tuples(p, spec.n):
        wedge = "e" + "".join(str(i) for i in mu) if mu else "1"
        amb.extend(f"{b}*{wedge}" for b in base)
    out = []
    for col in cell.rep.matrix.columns():
        terms = []
        for c, lab in zip(col, amb):
            if c == 1:
                terms.append(lab)
            elif c == -1:
                terms.append(f"-{lab}")
            elif c:
                terms.append(f"{c}*{lab}")
        out.append(" + ".join(terms).replace("+ -", "- ") or "0")
    return out


def page_json(spec: ActionSpec, page: BigradedPage) -> dict:
    cells = []
    for (p, q), c in sorted(page.cells.items()):
        d = group_json(c.group)
        cells.append({"p": p, "q": q, **d})
    diffs = []
    for (p, q), d in sorted(page.differentials.items()):
        if d.is_zero():
            continue
        tp, tq = page.target(p, q)
        diffs.append({
            "from": [p, q], "to": [tp, tq],
            "matrix": d.matrix.to_rows(),
            "source_basis": _basis_labels(spec, page, p, q),
            "target_basis": _basis_labels(spec, page, tp, tq),
        })
    return {"k": page.k, "infinity": page.is_infinity, "cells": cells,
            "differentials": diffs}


def render_page(page: BigradedPage) -> str:
    """ASCII grid with rows q = 1, 0 and columns p = 0..n."""
    title = f"E{page.k}" + (" = E_inf" if page.is_infinity else "")
    if page.conditional:
        title += " (conditional on vanishing higher differentials)"
    header = ["q\\p"] + [str(p) for p in range(page.n + 1)]
    rows = [[str(q)] + [str(page.group(p, q)) for p in range(page.n + 1)] for q in (1, 0)]
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    sep = "+" + "+".join("-" * (w + 2) for w in widths) + "+"

    def line(cells):
        return "|" + "|".join(f" {c:<{w}} " for c, w in zip(cells, widths)) + "|"

    out = [title, sep, line(header), sep] + [line(r) for r in rows] + [sep]
    return "\n".join(out)


def dump_machine(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _run_pages(sf: SystemFile, strict: bool) -> tuple[list[BigradedPage], list[str]]:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", PointwiseInnerWarning)
        pages = run_pages(sf.spec, strict=strict)
    msgs = [str(w.message) for w in caught if issubclass(w.category, PointwiseInnerWarning)]
    if pages[-1].conditional:
        msgs.append("conditional on vanishing higher differentials")
    return pages, msgs


def _crossed_line(k0: ExtensionReport, k1: ExtensionReport, conditional: bool) -> str:
    line = f"K0 = {report_text(k0)}, K1 = {report_text(k1)}"
    if k0.determined and k1.determined:
        line += " (determined)"
    if conditional:
        line += " [conditional on vanishing higher differentials]"
    return line


def cmd_pages(args) -> tuple[str, dict]:
    sf = load_system(args.file)
    pages, msgs = _run_pages(sf, args.strict)
    k0, k1 = assemble_page(pages[-1], args.bound)
    doc = {
        "command": "pages", "input_sha256": sf.digest,
        "pages": [page_json(sf.spec, p) for p in pages],
        "crossed_product": {"K0": report_json(k0), "K1": report_json(k1)},
        "warnings": msgs,
    }
    text = "\n\n".join(render_page(p) for p in pages)
    if msgs:
        text += "\n" + "\n".join(f"warning: {m}" for m in msgs)
    return text + "\n", doc


def cmd_crossed(args) -> tuple[str, dict]:
    sf = load_system(args.file)
    pages, msgs = _run_pages(sf, args.strict)
    k0, k1 = assemble_page(pages[-1], args.bound)
    doc = {
        "command": "crossed", "input_sha256": sf.digest,
        "pages": [page_json(sf.spec, pages[-1])],
        "crossed_product": {"K0": report_json(k0), "K1": report_json(k1)},
        "warnings": msgs,
    }
    text = _crossed_line(k0, k1, pages[-1].conditional) + "\n"
    text += "".join(f"warning: {m}\n" for m in msgs)
    return text, doc


def cmd_pv(args) -> tuple[str, dict]:
    sf = load_system(args.file)
    k0, k1 = pv_solve(sf.spec, args.bound)
    doc = {"command": "pv", "input_sha256": sf.digest,
           "crossed_product": {"K0": report_json(k0), "K1": report_json(k1)},
           "warnings": []}
    return _crossed_line(k0, k1, False) + "\n", doc


def cmd_cohomology(args) -> tuple[str, dict]:
    sf = load_system(args.file)
    spec = sf.spec
    validate_spec(spec)
    rows, doc_rows = [], {}
    for q in (0, 1):
        hs = group_cohomology(spec.n, spec.k(q), spec.action(q))
        rows.append(f"H^*(Z^{spec.n}; K{q}): " + ", ".join(str(h) for h in hs))
        doc_rows[f"K{q}"] = [group_json(h) for h in hs]
    doc = {"command": "cohomology", "input_sha256": sf.digest, "cohomology": doc_rows,
           "warnings": []}
    return "\n".join(rows) + "\n", doc


def cmd_validate(args) -> tuple[str, dict]:
    sf = load_system(args.file)
    msgs = validate_spec(sf.spec, strict=args.strict)
    doc = {"command": "validate", "input_sha256": sf.digest, "valid": True, "warnings": msgs}
    text = "ok\n" + "".join(f"warning: {m}\n" for m in msgs)
    return text, doc


def cmd_snf(args) -> tuple[str, dict]:
    if args.file in (None, "-"):
        data = sys.stdin.read()
    else:
        try:
            data = Path(args.file).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {args.file}: {exc.strerror}") from None
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON ({exc})") from None
    if isinstance(obj, dict) and "matrix" in obj:
        obj = obj["matrix"]
    m = _int_matrix(obj, "matrix")
    s = smith_normal_form(m)
    doc = {"command": "snf", "D": s.d.to_rows(), "U": s.u.to_rows(), "V": s.v.to_rows(),
           "rank": s.rank, "invariant_factors": list(s.invariant_factors)}

    def show(name, mat):
        body = "\n".join("  " + " ".join(f"{x:>4}" for x in r) for r in mat.to_rows())
        return f"{name} ({mat.rows}x{mat.cols}):\n{body}" if mat.rows else f"{name}: empty"

    text = "\n".join([show("D", s.d), show("U", s.u), show("V", s.v),
                      f"rank {s.rank}, invariant factors {list(s.invariant_factors)}"])
    return text + "\n", doc


COMMANDS = {
    "pages": (cmd_pages, "show pages E1 .. E_inf"),
    "crossed": (cmd_crossed, "K-theory of the crossed product"),
    "pv": (cmd_pv, "six-term solve for a single automorphism (n = 1)"),
    "cohomology": (cmd_cohomology, "group cohomology H^p(Z^n; K_q)"),
    "snf": (cmd_snf, "Smith normal form of a bare matrix"),
    "validate": (cmd_validate, "check a system file"),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pvss", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_)
        if name == "snf":
            sp.add_argument("file", nargs="?", default="-", help="matrix file, or - for stdin")
        else:
            sp.add_argument("file", help="system file or bundled corpus name")
        sp.add_argument("--format", choices=("table", "machine"), default="table")
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--strict", action="store_true",
                        help="treat pointwise-inner violations as errors")
        sp.add_argument("--bound", type=int, default=64,
                        help="largest order for which extension candidates are listed")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        text, doc = func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SpecError, ExactnessError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except MissingDataError as exc:
        print(f"insufficient data: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except Exception as exc:  # noqa: BLE001 - any other failure is a bug
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    out = dump_machine(doc) if args.format == "machine" else text
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

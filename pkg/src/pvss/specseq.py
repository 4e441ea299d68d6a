"""Spectral sequence of a Z^n-action on K-theoretic data.

Conventions
-----------
* ``q`` is stored mod 2 (Bott periodicity).
* The E1 cell ``(p, q)`` is ``K_q^{C(n,p)}``; its summands are indexed by
  :func:`tuples` ``(p, n)`` in lexicographic order.
* ``d_k`` has bidegree ``(k, 1 - k)``.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from .abgrp import (FgAbGroup, GroupHom, Subgroup, Subquotient, check_well_defined,
                    compose, direct_sum, direct_sum_hom, induced_hom, kernel_subgroup,
                    subquotient)
from .homalg import (CochainComplex, ExtensionReport, assemble_filtration,
                     cohomology_at, six_term_solve)
from .intmat import IntMatrix, block_matrix, column_basis, nullspace

TupleIndex = tuple[int, ...]
Cell = tuple[int, int]


class SpecError(ValueError):
    """The action data violates a structural requirement."""


class MissingDataError(ValueError):
    """A differential is needed but the input does not determine it."""


class PointwiseInnerWarning(UserWarning):
    pass


# ---------------------------------------------------------------------------
# Exterior index combinatorics
# ---------------------------------------------------------------------------

def tuples(p: int, n: int) -> list[TupleIndex]:
    """``T(p, n)``: increasing ``p``-tuples from ``1..n`` in lexicographic order."""
    if p < 0 or p > n:
        return []
    return list(itertools.combinations(range(1, n + 1), p))


def complement(mu: TupleIndex, n: int) -> TupleIndex:
    s = set(mu)
    return tuple(i for i in range(1, n + 1) if i not in s)


def wedge_sign(mu: TupleIndex, lam: TupleIndex) -> int:
    """Sign ``s`` with ``e_mu ^ e_lam = s e_{mu u lam}``; 0 if they overlap."""
    if set(mu) & set(lam):
        return 0
    seq = list(mu) + list(lam)
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def merge(mu: TupleIndex, lam: TupleIndex) -> TupleIndex:
    return tuple(sorted(set(mu) | set(lam)))


# ---------------------------------------------------------------------------
# Input data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairwiseKTrivial:
    """``mu -> (delta_{mu,0}: K0 -> K1, delta_{mu,1}: K1 -> K0)`` for ``mu`` in T(2, n)."""

    pairs: Mapping[TupleIndex, tuple[GroupHom, GroupHom]]

    def delta(self, mu: TupleIndex, q: int) -> GroupHom | None:
        pair = self.pairs.get(mu)
        return None if pair is None else pair[q % 2]


@dataclass(frozen=True)
class AmbientN2:
    """Ambient maps ``delta_0: K0 -> K1`` and ``delta_1: K1 -> K0`` for n = 2."""

    delta0: GroupHom
    delta1: GroupHom

    def delta(self, q: int) -> GroupHom:
        return self.delta0 if q % 2 == 0 else self.delta1


D2Data = Union[PairwiseKTrivial, AmbientN2]


@dataclass(frozen=True)
class ActionSpec:
    """K-groups, the induced action of the n generators, and optional d2 data."""

    n: int
    k0: FgAbGroup
    k1: FgAbGroup
    action0: tuple[GroupHom, ...]
    action1: tuple[GroupHom, ...]
    d2data: D2Data | None = None
    k_trivial: bool = False
    pointwise_inner: bool = False
    assume_higher_vanish: bool = False
    generator_names: Mapping[int, Sequence[str]] | None = None

    @classmethod
    def trivial(cls, n: int, k0: FgAbGroup, k1: FgAbGroup, d2data: D2Data | None = None,
                **flags) -> "ActionSpec":
        flags.setdefault("k_trivial", True)
        return cls(n, k0, k1, tuple(GroupHom.identity(k0) for _ in range(n)),
                   tuple(GroupHom.identity(k1) for _ in range(n)), d2data, **flags)

    def k(self, q: int) -> FgAbGroup:
        return self.k0 if q % 2 == 0 else self.k1

    def action(self, q: int) -> tuple[GroupHom, ...]:
        return self.action0 if q % 2 == 0 else self.action1

    def d_alpha(self, q: int, i: int) -> GroupHom:
        """``K_q(alpha_i) - id`` for ``i`` in ``1..n``."""
        a = self.action(q)[i - 1]
        return a - GroupHom.identity(self.k(q))

    def labels(self, q: int) -> list[str]:
        names = (self.generator_names or {}).get(q % 2)
        if names and len(names) == self.k(q).gens:
            return list(names)
        return [f"x{q % 2}_{i + 1}" for i in range(self.k(q).gens)]


def validate_spec(spec: ActionSpec, strict: bool = False) -> list[str]:
    """Check the structural invariants; return non-fatal warnings.

    Raises :class:`SpecError` on the first violated invariant.  The
    pointwise-inner rule is a warning unless ``strict`` is set.
    """
    if spec.n < 0:
        raise SpecError("n must be nonnegative")
    for q in (0, 1):
        acts = spec.action(q)
        g = spec.k(q)
        if len(acts) != spec.n:
            raise SpecError(f"expected {spec.n} action maps on K{q}, got {len(acts)}")
        for i, a in enumerate(acts, 1):
            if not (a.source.same_presentation(g) and a.target.same_presentation(g)):
                raise SpecError(f"action {i} on K{q} is not an endomorphism of K{q}")
            if not check_well_defined(a):
                raise SpecError(f"action {i} on K{q} is not well defined")
            if spec.k_trivial and not a.equals(GroupHom.identity(g)):
                raise SpecError(f"k_trivial is set but action {i} on K{q} is not the identity")
        for i, j in itertools.combinations(range(len(acts)), 2):
            if not compose(acts[i], acts[j]).equals(compose(acts[j], acts[i])):
                raise SpecError(f"actions {i + 1} and {j + 1} on K{q} do not commute")
    out: list[str] = []
    d2 = spec.d2data
    if d2 is None:
        return out
    if isinstance(d2, AmbientN2):
        if spec.n != 2:
            raise SpecError("ambient d2 data is only meaningful for n = 2")
        deltas = {(): (d2.delta0, d2.delta1)}
    else:
        if not spec.k_trivial:
            raise SpecError("pairwise d2 data requires the k_trivial flag")
        allowed = set(tuples(2, spec.n))
        for mu in d2.pairs:
            if mu not in allowed:
                raise SpecError(f"d2 pair index {mu} is not in T(2, {spec.n})")
        deltas = dict(d2.pairs)
    for key, (dl0, dl1) in deltas.items():
        for q, dl in ((0, dl0), (1, dl1)):
            if not (dl.source.same_presentation(spec.k(q))
                    and dl.target.same_presentation(spec.k(q + 1))):
                raise SpecError(f"d2 map for q={q} {key or ''} must go from K{q} to K{(q + 1) % 2}")
            if not check_well_defined(dl):
                raise SpecError(f"d2 map for q={q} {key or ''} is not well defined")
    if spec.pointwise_inner:
        for msg in _pointwise_inner_violations(spec, deltas):
            if strict:
                raise SpecError(msg)
            out.append(msg)
    return out


def _pointwise_inner_violations(spec: ActionSpec, deltas) -> list[str]:
    """Composites of consecutive d2 data must vanish on E2^{0,q} mod boundaries."""
    bad = []
    for key, pair in deltas.items():
        for q in (0, 1):
            first, second = pair[q], pair[(q + 1) % 2]
            g = spec.k(q)
            dmaps = [spec.d_alpha(q, i) for i in range(1, spec.n + 1)]
            cyc = Subgroup.whole(g)
            for d in dmaps:
                ker = kernel_subgroup(d)
                cyc = _intersect(cyc, ker)
            bnd = IntMatrix.zeros(g.gens, 0).hstack(*[d.matrix for d in dmaps])
            bsub = Subgroup(g, bnd)
            for v in cyc.generators.columns():
                if not bsub.contains(second(first(v))):
                    label = f" for pair {key}" if key else ""
                    bad.append(f"pointwise-inner rule fails{label}: "
                               f"d2 composite on E2^(0,{q}) is nonzero")
                    break
    return bad


def _intersect(a: Subgroup, b: Subgroup) -> Subgroup:
    """Intersection of two subgroups of the same presented group."""
    g = a.ambient
    big = a.generators.hstack(-b.generators, g.relations)
    if not big.cols:
        return Subgroup.zero(g)
    ns = nullspace(big).select_rows(range(a.generators.cols))
    gens = a.generators @ ns
    return Subgroup(g, column_basis(gens) if gens.cols else gens)


# ---------------------------------------------------------------------------
# Pages
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BigradedPage:
    """Page ``E_k`` with cells tracked as subquotients of the E1 cells."""

    k: int
    n: int
    cells: Mapping[Cell, Subquotient]
    differentials: Mapping[Cell, GroupHom] = field(default_factory=dict)
    conditional: bool = False
    is_infinity: bool = False

    def cell(self, p: int, q: int) -> Subquotient | None:
        return self.cells.get((p, q % 2))

    def group(self, p: int, q: int) -> FgAbGroup:
        c = self.cell(p, q)
        return c.group if c is not None else FgAbGroup.trivial()

    def target(self, p: int, q: int) -> Cell:
        return (p + self.k, (q + 1 - self.k) % 2)

    def differential(self, p: int, q: int) -> GroupHom:
        d = self.differentials.get((p, q % 2))
        if d is not None:
            return d
        tp, tq = self.target(p, q)
        return GroupHom.zero(self.group(p, q), self.group(tp, tq))

    def invariants(self) -> dict[Cell, tuple[int, tuple[int, ...]]]:
        return {pq: c.group.invariants for pq, c in sorted(self.cells.items())}

    def with_differentials(self, diffs: Mapping[Cell, GroupHom], conditional: bool = False
                           ) -> "BigradedPage":
        page = BigradedPage(self.k, self.n, self.cells, dict(diffs),
                            self.conditional or conditional, self.is_infinity)
        page.check_complex()
        return page

    def check_complex(self) -> None:
        for (p, q) in self.cells:
            tp, tq = self.target(p, q)
            if (tp, tq) not in self.cells:
                continue
            comp = compose(self.differential(tp, tq), self.differential(p, q))
            if not comp.is_zero():
                raise SpecError(f"d{self.k} o d{self.k} != 0 starting at E{self.k}^({p},{q})")


def _ambient(spec: ActionSpec, p: int, q: int) -> FgAbGroup:
    m = spec.k(q)
    count = len(tuples(p, spec.n))
    return direct_sum([m] * count).group


def build_e1(spec: ActionSpec) -> BigradedPage:
    validate_spec(spec)
    cells = {}
    for p in range(spec.n + 1):
        for q in (0, 1):
            amb = _ambient(spec, p, q)
            cells[(p, q)] = subquotient(Subgroup.whole(amb), Subgroup.zero(amb))
    page = BigradedPage(1, spec.n, cells)
    return page.with_differentials(_present_all(page, build_d1(spec)))


def d1_matrix(n: int, m: FgAbGroup, dmaps: Sequence[GroupHom], p: int) -> IntMatrix:
    """Block matrix of ``x (x) e -> sum_k (A_k - 1)x (x) (e ^ e_k)`` from degree p to p+1."""
    src, tgt = tuples(p, n), tuples(p + 1, n)
    g = m.gens
    zero = IntMatrix.zeros(g, g)
    if not src or not tgt:
        return IntMatrix.zeros(g * len(tgt), g * len(src))
    blocks = [[zero for _ in src] for _ in tgt]
    tindex = {nu: i for i, nu in enumerate(tgt)}
    for j, lam in enumerate(src):
        for k in range(1, n + 1):
            s = wedge_sign(lam, (k,))
            if s:
                blocks[tindex[merge(lam, (k,))]][j] = dmaps[k - 1].matrix * s
    return block_matrix(blocks)


def build_d1(spec: ActionSpec) -> dict[Cell, GroupHom]:
    """Ambient d1 maps between E1 cells."""
    out = {}
    for q in (0, 1):
        dmaps = [spec.d_alpha(q, i) for i in range(1, spec.n + 1)]
        for p in range(spec.n):
            out[(p, q)] = GroupHom(_ambient(spec, p, q), _ambient(spec, p + 1, q),
                                   d1_matrix(spec.n, spec.k(q), dmaps, p))
    return out


def _present_all(page: BigradedPage, ambient_maps: Mapping[Cell, GroupHom]) -> dict[Cell, GroupHom]:
    """Descend ambient maps to the presented cells of ``page``."""
    out = {}
    for (p, q), f in ambient_maps.items():
        src = page.cell(p, q)
        tgt = page.cell(*page.target(p, q))
        if src is None or tgt is None:
            continue
        out[(p, q)] = induced_hom(f, src, tgt)
    return out


def next_page(page: BigradedPage) -> BigradedPage:
    """Cohomology of ``page`` with respect to its differentials (none attached means zero)."""
    cells = {}
    k = page.k
    for (p, q), cell in page.cells.items():
        d_out = page.differential(p, q)
        src = (p - k, (q + k - 1) % 2)
        d_in = page.differential(*src) if src in page.cells else None
        amb = cell.ambient
        z_gens = cell.rep.matrix @ kernel_subgroup(d_out).generators
        z = cell.boundaries.generators.hstack(z_gens)
        b = cell.boundaries.generators
        if d_in is not None:
            b = b.hstack(cell.rep.matrix @ d_in.matrix)
        z = column_basis(z) if z.cols else z
        b = column_basis(b) if b.cols else b
        cells[(p, q)] = subquotient(Subgroup(amb, z), Subgroup(amb, b))
    return BigradedPage(k + 1, page.n, cells, {}, page.conditional)


def _potential(page: BigradedPage) -> list[Cell]:
    """Cells whose outgoing differential could be nonzero."""
    out = []
    for (p, q), c in page.cells.items():
        tgt = page.cell(*page.target(p, q))
        if tgt is not None and not c.group.is_trivial() and not tgt.group.is_trivial():
            out.append((p, q))
    return sorted(out)


def d2_ambient(spec: ActionSpec) -> dict[Cell, GroupHom]:
    """Ambient d2 maps from E1 cell ``(p, q)`` to ``(p + 2, q - 1)``."""
    d2 = spec.d2data
    n = spec.n
    out = {}
    if isinstance(d2, AmbientN2):
        for q in (0, 1):
            out[(0, q)] = GroupHom(_ambient(spec, 0, q), _ambient(spec, 2, q + 1),
                                   d2.delta(q).matrix)
        return out
    if not isinstance(d2, PairwiseKTrivial):
        return out
    for q in (0, 1):
        src_g, tgt_g = spec.k(q), spec.k(q + 1)
        for p in range(n - 1):
            src, tgt = tuples(p, n), tuples(p + 2, n)
            zero = IntMatrix.zeros(tgt_g.gens, src_g.gens)
            blocks = [[zero for _ in src] for _ in tgt]
            tindex = {nu: i for i, nu in enumerate(tgt)}
            for j, lam in enumerate(src):
                for mu in tuples(2, n):
                    s = wedge_sign(lam, mu)
                    dl = d2.delta(mu, q)
                    if s and dl is not None:
                        i = tindex[merge(lam, mu)]
                        blocks[i][j] = blocks[i][j] + dl.matrix * s
            out[(p, q)] = GroupHom(_ambient(spec, p, q), _ambient(spec, p + 2, q + 1),
                                   block_matrix(blocks))
    return out


def build_d2(spec: ActionSpec, page2: BigradedPage) -> BigradedPage:
    """Attach d2 to ``page2``; raise :class:`MissingDataError` if it is needed but absent."""
    if spec.d2data is None:
        need = _potential(page2)
        if need:
            raise MissingDataError(
                f"d2 data required: E2 cells {need} have nonzero source and target")
        return page2
    return page2.with_differentials(_present_all(page2, d2_ambient(spec)))


def run_pages(spec: ActionSpec, strict: bool = False) -> list[BigradedPage]:
    """Pages E1 .. E_{n+1}; the last one is marked as E-infinity.

    d_k for k >= 3 is not determined by the input.  Where it could be
    nonzero the computation stops unless ``assume_higher_vanish`` is set,
    in which case it is taken to be zero and the pages are tagged
    conditional.
    """
    for msg in validate_spec(spec, strict=strict):
        warnings.warn(msg, PointwiseInnerWarning, stacklevel=2)
    pages = [build_e1(spec)]
    for k in range(2, spec.n + 2):
        page = next_page(pages[-1])
        if k == 2 and k <= spec.n:
            page = build_d2(spec, page)
        elif 3 <= k <= spec.n:
            need = _potential(page)
            if need and not spec.assume_higher_vanish:
                raise MissingDataError(
                    f"d{k} may be nonzero at cells {need}; set assume_higher_vanish "
                    "to treat higher differentials as zero")
            if need:
                page = BigradedPage(page.k, page.n, page.cells, {}, True)
        pages.append(page)
    last = pages[-1]
    pages[-1] = BigradedPage(last.k, last.n, last.cells, {}, last.conditional, True)
    return pages


# ---------------------------------------------------------------------------
# Group cohomology
# ---------------------------------------------------------------------------

def _check_action(n: int, m: FgAbGroup, action: Sequence[GroupHom]) -> list[GroupHom]:
    spec = ActionSpec(n, m, FgAbGroup.trivial(), tuple(action),
                      tuple(GroupHom.identity(FgAbGroup.trivial()) for _ in range(n)))
    validate_spec(spec)
    return [a - GroupHom.identity(m) for a in action]


def pv_complex(n: int, m: FgAbGroup, action: Sequence[GroupHom]) -> CochainComplex:
    """Cochains ``m^{C(n,p)}`` with the wedge differential."""
    dmaps = _check_action(n, m, action)
    groups = {p: direct_sum([m] * len(tuples(p, n))).group for p in range(n + 1)}
    diffs = {p: GroupHom(groups[p], groups[p + 1], d1_matrix(n, m, dmaps, p))
             for p in range(n)}
    return CochainComplex(groups, diffs)


def koszul_complex(n: int, m: FgAbGroup, action: Sequence[GroupHom]) -> CochainComplex:
    """``Hom(G_*, m)`` for the Koszul resolution of the trivial module.

    Built from the face-removal formula ``e_nu -> sum_j (-1)^j (t_{nu_j} - 1) e_{nu - nu_j}``
    rather than from wedge signs.
    """
    dmaps = _check_action(n, m, action)
    groups = {p: direct_sum([m] * len(tuples(p, n))).group for p in range(n + 1)}
    g = m.gens
    diffs = {}
    for p in range(n):
        src, tgt = tuples(p, n), tuples(p + 1, n)
        sindex = {lam: j for j, lam in enumerate(src)}
        mat = [[0] * (g * len(src)) for _ in range(g * len(tgt))]
        for i, nu in enumerate(tgt):
            for j, k in enumerate(nu, 1):
                face = nu[:j - 1] + nu[j:]
                col = sindex[face]
                sign = -1 if j % 2 else 1
                blk = dmaps[k - 1].matrix
                for r in range(g):
                    for c in range(g):
                        mat[i * g + r][col * g + c] += sign * blk[r, c]
        diffs[p] = GroupHom(groups[p], groups[p + 1],
                            IntMatrix.from_rows(mat, g * len(src)))
    return CochainComplex(groups, diffs)


def group_cohomology(n: int, m: FgAbGroup, action: Sequence[GroupHom]) -> list[FgAbGroup]:
    """``H^p(Z^n, m)`` for ``p = 0..n`` via the PV complex."""
    c = pv_complex(n, m, action)
    return [cohomology_at(c, p) for p in range(n + 1)]


def group_cohomology_koszul(n: int, m: FgAbGroup, action: Sequence[GroupHom]) -> list[FgAbGroup]:
    c = koszul_complex(n, m, action)
    return [cohomology_at(c, p) for p in range(n + 1)]


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------

def filtration_pieces(page: BigradedPage, parity: int) -> list[FgAbGroup]:
    """E-infinity cells contributing to ``K_parity`` of the crossed product, deepest first."""
    n = page.n
    return [page.group(p, (parity + n - p) % 2) for p in range(n, -1, -1)]


def assemble_page(page: BigradedPage, bound: int = 64) -> tuple[ExtensionReport, ExtensionReport]:
    return tuple(assemble_filtration(filtration_pieces(page, j), bound) for j in (0, 1))


def crossed_product_k(spec: ActionSpec, bound: int = 64, strict: bool = False
                      ) -> tuple[ExtensionReport, ExtensionReport]:
    """K0 and K1 of the crossed product, up to extension problems."""
    return assemble_page(run_pages(spec, strict=strict)[-1], bound)


def iterated_pv(spec: ActionSpec, bound: int = 64) -> tuple[ExtensionReport, ExtensionReport]:
    """Two successive PV sequences for n = 2 with trivial K-action.

    The first crossed product has ``K_i = K_i + K_{i+1}`` and the second
    generator acts through ``delta`` on the off-diagonal block.
    """
    validate_spec(spec)
    d2 = spec.d2data
    if spec.n != 2 or not spec.k_trivial or not isinstance(d2, AmbientN2):
        raise SpecError("iterated_pv needs n = 2, k_trivial and ambient d2 data")
    g0 = direct_sum([spec.k0, spec.k1]).group
    g1 = direct_sum([spec.k1, spec.k0]).group
    z = IntMatrix.zeros
    a0 = block_matrix([[z(spec.k0.gens, spec.k0.gens), d2.delta1.matrix],
                       [z(spec.k1.gens, spec.k0.gens), z(spec.k1.gens, spec.k1.gens)]])
    a1 = block_matrix([[z(spec.k1.gens, spec.k1.gens), d2.delta0.matrix],
                       [z(spec.k0.gens, spec.k1.gens), z(spec.k0.gens, spec.k0.gens)]])
    return six_term_solve(GroupHom(g0, g0, a0), GroupHom(g1, g1, a1), bound)


def pv_solve(spec: ActionSpec, bound: int = 64) -> tuple[ExtensionReport, ExtensionReport]:
    """Single automorphism (n = 1): the six-term sequence on ``K_q(alpha) - id``."""
    validate_spec(spec)
    if spec.n != 1:
        raise SpecError("the single-automorphism solver needs n = 1")
    return six_term_solve(spec.d_alpha(0, 1), spec.d_alpha(1, 1), bound)


def euler_characteristic(page: BigradedPage, parity: int) -> int:
    """Alternating row sum ``sum_p (-1)^p rank E^{p, parity}``.

    Preserved by the d1 step, which does not change q.
    """
    return sum((-1) ** p * page.group(p, parity).rank for p in range(page.n + 1))


def total_euler_characteristic(page: BigradedPage) -> int:
    """``sum_{p,q} (-1)^{p+q} rank E^{p,q}``; preserved by every page step."""
    return sum((-1) ** (p + q) * c.group.rank for (p, q), c in page.cells.items())


# ---------------------------------------------------------------------------
# Morphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PageMorphism:
    e1: Mapping[Cell, GroupHom]
    e2: Mapping[Cell, GroupHom]


def induced_page_morphism(f0: GroupHom, f1: GroupHom, src: ActionSpec, tgt: ActionSpec
                          ) -> PageMorphism:
    """Maps of E1 and E2 induced by equivariant maps ``f_q: K_q(src) -> K_q(tgt)``."""
    if src.n != tgt.n:
        raise SpecError("actions of different rank")
    fs = (f0, f1)
    for q in (0, 1):
        f = fs[q]
        if not (f.source.same_presentation(src.k(q)) and f.target.same_presentation(tgt.k(q))):
            raise SpecError(f"map on K{q} has the wrong source or target")
        if not check_well_defined(f):
            raise SpecError(f"map on K{q} is not well defined")
        for i in range(src.n):
            if not compose(f, src.action(q)[i]).equals(compose(tgt.action(q)[i], f)):
                raise SpecError(f"map on K{q} does not intertwine action {i + 1}")
    e1_src, e1_tgt = build_e1(src), build_e1(tgt)
    amb = {}
    for (p, q) in e1_src.cells:
        amb[(p, q)] = direct_sum_hom([fs[q]] * len(tuples(p, src.n)))
    d1s, d1t = build_d1(src), build_d1(tgt)
    for (p, q), d in d1s.items():
        if not compose(amb[(p + 1, q)], d).equals(compose(d1t[(p, q)], amb[(p, q)])):
            raise SpecError(f"E1 map does not commute with d1 at ({p},{q})")
    e1 = {pq: induced_hom(f, e1_src.cells[pq], e1_tgt.cells[pq]) for pq, f in amb.items()}
    e2_src, e2_tgt = next_page(e1_src), next_page(e1_tgt)
    e2 = {pq: induced_hom(f, e2_src.cells[pq], e2_tgt.cells[pq]) for pq, f in amb.items()}
    return PageMorphism(e1, e2)

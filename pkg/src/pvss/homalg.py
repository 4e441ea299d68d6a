"""Cochain complexes, the snake lemma, exact couples and extension assembly."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Mapping, Sequence

from .abgrp import (FgAbGroup, GroupHom, MembershipError, Subgroup, Subquotient,
                    check_well_defined, cokernel, cokernel_subquotient, compose,
                    direct_sum, image, induced_hom, kernel_subgroup,
                    kernel_subquotient, subquotient)
from .intmat import IntMatrix, solve_modulo

Bidegree = tuple[int, int]


class ExactnessError(ValueError):
    """Input rows, complexes or couples fail to be exact/commutative."""


def is_exact_at(f: GroupHom, g: GroupHom) -> bool:
    """Exactness of ``A --f--> B --g--> C`` at ``B``: im f == ker g."""
    if not compose(g, f).is_zero():
        return False
    im = image(f)
    return all(im.contains(c) for c in kernel_subgroup(g).generators.columns())


# ---------------------------------------------------------------------------
# Cochain complexes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CochainComplex:
    """Groups indexed by degree with differentials ``p -> p+1``.

    Missing degrees are the zero group; missing differentials are zero.
    """

    groups: Mapping[int, FgAbGroup]
    differentials: Mapping[int, GroupHom] = field(default_factory=dict)

    def __post_init__(self):
        for p, d in self.differentials.items():
            if not (d.source.same_presentation(self.group(p))
                    and d.target.same_presentation(self.group(p + 1))):
                raise ValueError(f"differential in degree {p} has wrong endpoints")
            if not check_well_defined(d):
                raise ExactnessError(f"differential in degree {p} is not well defined")
        for p in self.differentials:
            if p + 1 in self.differentials:
                if not compose(self.differentials[p + 1], self.differentials[p]).is_zero():
                    raise ExactnessError(f"d^{p + 1} . d^{p} != 0")

    def group(self, p: int) -> FgAbGroup:
        return self.groups.get(p, FgAbGroup.trivial())

    def differential(self, p: int) -> GroupHom:
        d = self.differentials.get(p)
        return d if d is not None else GroupHom.zero(self.group(p), self.group(p + 1))


def cohomology_subquotient(c: CochainComplex, p: int) -> Subquotient:
    z = kernel_subgroup(c.differential(p))
    b = Subgroup(c.group(p), c.differential(p - 1).matrix)
    return subquotient(z, b)


def cohomology_at(c: CochainComplex, p: int) -> FgAbGroup:
    return cohomology_subquotient(c, p).group


# ---------------------------------------------------------------------------
# Snake lemma
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ShortExactRow:
    inj: GroupHom
    surj: GroupHom

    @property
    def left(self) -> FgAbGroup:
        return self.inj.source

    @property
    def middle(self) -> FgAbGroup:
        return self.inj.target

    @property
    def right(self) -> FgAbGroup:
        return self.surj.target


@dataclass(frozen=True)
class SesLadder:
    """Two short exact rows joined by vertical maps ``a``, ``b``, ``c``."""

    top: ShortExactRow
    bottom: ShortExactRow
    a: GroupHom
    b: GroupHom
    c: GroupHom

    def __post_init__(self):
        for name, row in (("top", self.top), ("bottom", self.bottom)):
            if not row.inj.target.same_presentation(row.surj.source):
                raise ValueError(f"{name} row maps do not compose")
            if not kernel_subquotient(row.inj).group.is_trivial():
                raise ExactnessError(f"{name} row: injection has a kernel")
            if not cokernel(row.surj)[0].is_trivial():
                raise ExactnessError(f"{name} row: surjection is not onto")
            if not is_exact_at(row.inj, row.surj):
                raise ExactnessError(f"{name} row is not exact in the middle")
        if not compose(self.b, self.top.inj).equals(compose(self.bottom.inj, self.a)):
            raise ExactnessError("left square does not commute")
        if not compose(self.bottom.surj, self.b).equals(compose(self.c, self.top.surj)):
            raise ExactnessError("right square does not commute")


@dataclass(frozen=True)
class SnakeResult:
    """``0 -> ker a -> ker b -> ker c -> coker a -> coker b -> coker c -> 0``."""

    connecting: GroupHom
    groups: tuple[FgAbGroup, ...]
    maps: tuple[GroupHom, ...]


def snake(ladder: SesLadder) -> SnakeResult:
    ker_a, ker_b, ker_c = (kernel_subquotient(m) for m in (ladder.a, ladder.b, ladder.c))
    cok_a, cok_b, cok_c = (cokernel_subquotient(m) for m in (ladder.a, ladder.b, ladder.c))
    top, bot = ladder.top, ladder.bottom
    cols = []
    for x in ker_c.rep.matrix.columns():
        y = solve_modulo(top.surj.matrix, top.right.relations, x)
        if y is None:
            raise MembershipError("snake chase: cannot lift along the top surjection")
        by = ladder.b(y)
        z = solve_modulo(bot.inj.matrix, bot.middle.relations, by)
        if z is None:
            raise MembershipError("snake chase: b(lift) is not in the bottom injection image")
        cols.append(cok_a.coords(z))
    connecting = GroupHom(ker_c.group, cok_a.group,
                          IntMatrix.from_columns(cols, cok_a.group.gens))
    maps = (
        induced_hom(top.inj, ker_a, ker_b),
        induced_hom(top.surj, ker_b, ker_c),
        connecting,
        induced_hom(bot.inj, cok_a, cok_b),
        induced_hom(bot.surj, cok_b, cok_c),
    )
    groups = tuple(s.group for s in (ker_a, ker_b, ker_c, cok_a, cok_b, cok_c))
    return SnakeResult(connecting, groups, maps)


def snake_is_exact(res: SnakeResult) -> bool:
    """Exactness of the six-term sequence, including both ends."""
    m = res.maps
    if not kernel_subquotient(m[0]).group.is_trivial():
        return False
    if not cokernel(m[-1])[0].is_trivial():
        return False
    return all(is_exact_at(m[i], m[i + 1]) for i in range(len(m) - 1))


# ---------------------------------------------------------------------------
# Exact couples
# ---------------------------------------------------------------------------

def _add(x: Bidegree, y: Bidegree) -> Bidegree:
    return (x[0] + y[0], x[1] + y[1])


def _sub(x: Bidegree, y: Bidegree) -> Bidegree:
    return (x[0] - y[0], x[1] - y[1])


@dataclass(frozen=True)
class ExactCouple:
    """``f: A -> A``, ``g: A -> B``, ``h: B -> A`` with fixed bidegrees.

    Maps are keyed by the bidegree of their source.  Absent groups are zero
    and absent maps are zero.  Exactness is checked at every node.
    """

    a: Mapping[Bidegree, FgAbGroup]
    b: Mapping[Bidegree, FgAbGroup]
    f: Mapping[Bidegree, GroupHom]
    g: Mapping[Bidegree, GroupHom]
    h: Mapping[Bidegree, GroupHom]
    f_deg: Bidegree
    g_deg: Bidegree
    h_deg: Bidegree
    check: bool = True

    def __post_init__(self):
        if self.check:
            self.validate()

    def group_a(self, x: Bidegree) -> FgAbGroup:
        return self.a.get(x, FgAbGroup.trivial())

    def group_b(self, x: Bidegree) -> FgAbGroup:
        return self.b.get(x, FgAbGroup.trivial())

    def map_f(self, x: Bidegree) -> GroupHom:
        return self.f.get(x) or GroupHom.zero(self.group_a(x), self.group_a(_add(x, self.f_deg)))

    def map_g(self, x: Bidegree) -> GroupHom:
        return self.g.get(x) or GroupHom.zero(self.group_a(x), self.group_b(_add(x, self.g_deg)))

    def map_h(self, y: Bidegree) -> GroupHom:
        return self.h.get(y) or GroupHom.zero(self.group_b(y), self.group_a(_add(y, self.h_deg)))

    def validate(self) -> None:
        for x in self.a:
            if not is_exact_at(self.map_h(_sub(x, self.h_deg)), self.map_f(x)):
                raise ExactnessError(f"couple not exact at A{x} (im h != ker f)")
            if not is_exact_at(self.map_f(_sub(x, self.f_deg)), self.map_g(x)):
                raise ExactnessError(f"couple not exact at A{x} (im f != ker g)")
        for y in self.b:
            if not is_exact_at(self.map_g(_sub(y, self.g_deg)), self.map_h(y)):
                raise ExactnessError(f"couple not exact at B{y} (im g != ker h)")

    def differential(self, y: Bidegree) -> GroupHom:
        """``d = g . h`` out of ``B[y]``."""
        return compose(self.map_g(_add(y, self.h_deg)), self.map_h(y))

    @property
    def d_deg(self) -> Bidegree:
        return _add(self.g_deg, self.h_deg)


@dataclass(frozen=True)
class DerivedCouple:
    couple: ExactCouple
    a_cells: Mapping[Bidegree, Subquotient]
    b_cells: Mapping[Bidegree, Subquotient]


def derive_couple(c: ExactCouple) -> DerivedCouple:
    """Derived couple ``(im f, ker d / im d, f', g', h')``.

    ``A'[x]`` is the image of ``f`` inside ``A[x]``, so ``g'`` absorbs the
    inverse of ``f``'s bidegree: ``g'`` has bidegree ``g_deg - f_deg`` and
    ``h'`` keeps ``h_deg``.  Iterating gives differentials of bidegree
    ``g_deg + h_deg - (k-1) f_deg``.
    """
    a_cells: dict[Bidegree, Subquotient] = {}
    for x in set(c.a) | {_add(x, c.f_deg) for x in c.a}:
        if x not in c.a:
            continue
        fin = c.map_f(_sub(x, c.f_deg))
        a_cells[x] = subquotient(Subgroup(c.group_a(x), fin.matrix),
                                 Subgroup.zero(c.group_a(x)))
    b_cells: dict[Bidegree, Subquotient] = {}
    for y in c.b:
        d_out = c.differential(y)
        d_in = c.differential(_sub(y, c.d_deg))
        b_cells[y] = subquotient(kernel_subgroup(d_out), Subgroup(c.group_b(y), d_in.matrix))

    def a_cell(x):
        return a_cells.get(x) or subquotient(Subgroup.zero(c.group_a(x)),
                                             Subgroup.zero(c.group_a(x)))

    def b_cell(y):
        return b_cells.get(y) or subquotient(Subgroup.zero(c.group_b(y)),
                                             Subgroup.zero(c.group_b(y)))

    g_deg = _sub(c.g_deg, c.f_deg)
    f_new, g_new, h_new = {}, {}, {}
    for x, cell in a_cells.items():
        f_new[x] = induced_hom(c.map_f(x), cell, a_cell(_add(x, c.f_deg)))
        # g'(f(a)) = [g(a)]
        pre = _sub(x, c.f_deg)
        fin = c.map_f(pre)
        tgt = b_cell(_add(x, g_deg))
        cols = []
        for v in cell.rep.matrix.columns():
            abar = solve_modulo(fin.matrix, c.group_a(x).relations, v)
            if abar is None:
                raise ExactnessError(f"element of im f at A{x} has no preimage")
            cols.append(tgt.coords(c.map_g(pre)(abar)))
        g_new[x] = GroupHom(cell.group, tgt.group, IntMatrix.from_columns(cols, tgt.group.gens))
    for y, cell in b_cells.items():
        tgt = a_cell(_add(y, c.h_deg))
        cols = [tgt.coords(c.map_h(y)(v)) for v in cell.rep.matrix.columns()]
        h_new[y] = GroupHom(cell.group, tgt.group, IntMatrix.from_columns(cols, tgt.group.gens))
    for name, maps in (("f'", f_new), ("g'", g_new), ("h'", h_new)):
        for key, m in maps.items():
            if not check_well_defined(m):
                raise ExactnessError(f"{name} at {key} is not well defined")
    derived = ExactCouple(
        a={x: s.group for x, s in a_cells.items()},
        b={y: s.group for y, s in b_cells.items()},
        f=f_new, g=g_new, h=h_new,
        f_deg=c.f_deg, g_deg=g_deg, h_deg=c.h_deg,
    )
    return DerivedCouple(derived, a_cells, b_cells)


# ---------------------------------------------------------------------------
# Extensions
# ---------------------------------------------------------------------------

Invariants = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class Determined:
    group: FgAbGroup

    @property
    def invariants(self) -> Invariants:
        return self.group.invariants


@dataclass(frozen=True)
class Ambiguous:
    rank: int
    candidates: tuple[Invariants, ...] | None = None


@dataclass(frozen=True)
class ExtensionReport:
    """Extension ``0 -> sub -> ? -> quot -> 0`` and what can be said about it."""

    sub: FgAbGroup
    quot: FgAbGroup
    resolution: Determined | Ambiguous

    @property
    def determined(self) -> bool:
        return isinstance(self.resolution, Determined)

    @property
    def rank(self) -> int:
        r = self.resolution
        return r.group.rank if isinstance(r, Determined) else r.rank

    @property
    def group(self) -> FgAbGroup | None:
        return self.resolution.group if self.determined else None

    @property
    def candidates(self) -> tuple[Invariants, ...]:
        r = self.resolution
        if isinstance(r, Determined):
            return (r.invariants,)
        return r.candidates or ()


def _factor(n: int) -> dict[int, int]:
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _invariant_factors(cyclic_orders: Sequence[int]) -> tuple[int, ...]:
    return FgAbGroup.from_invariants(0, [c for c in cyclic_orders if c > 1]).torsion


def _finite_groups_of_order(n: int) -> list[tuple[int, ...]]:
    """Torsion invariants of every abelian group of order ``n``."""
    per_prime = []
    for p, e in _factor(n).items():
        per_prime.append([[p ** k for k in part] for part in _partitions(e)])
    out = []
    for combo in itertools.product(*per_prime):
        out.append(_invariant_factors([x for part in combo for x in part]))
    return out


def _lcm(xs: Sequence[int]) -> int:
    from math import lcm
    return lcm(*xs) if xs else 1


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _killed_counts(moduli: Sequence[int], exponent: int) -> tuple[int, ...]:
    """``d -> #{x : d x = 0}`` over the divisors of ``exponent``."""
    return tuple(prod(gcd(d, m) for m in moduli) for d in _divisors(exponent))


def _has_extension(g_tors: tuple[int, ...], sub: tuple[int, ...], quot: tuple[int, ...]) -> bool:
    """Does the finite group ``g_tors`` contain a copy of ``sub`` with quotient ``quot``?

    Subgroups are enumerated by brute force.  Two finite abelian groups of
    the same order are isomorphic iff each divisor ``d`` of the exponent
    kills the same number of elements.
    """
    zero = tuple(0 for _ in g_tors)
    elems = list(itertools.product(*[range(m) for m in g_tors]))
    size_sub = prod(sub)

    def mul(d, x):
        return tuple((d * xi) % m for xi, m in zip(x, g_tors))

    def closure(gens):
        seen = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for x in frontier:
                for gen in gens:
                    y = tuple((a + b) % m for a, b, m in zip(x, gen, g_tors))
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    exp_sub, exp_quot = _lcm(sub), _lcm(quot)
    want_sub = _killed_counts(sub, exp_sub)
    want_quot = _killed_counts(quot, exp_quot)

    small = [x for x in elems if mul(exp_sub, x) == zero]
    # a subgroup isomorphic to sub needs at most len(sub) generators
    found = {frozenset({zero})}
    level = set(found)
    for _ in range(len(sub)):
        nxt = set()
        for h in level:
            for x in small:
                if x in h:
                    continue
                hh = closure(list(h) + [x])
                if size_sub % len(hh) == 0:
                    nxt.add(hh)
        level = nxt - found
        found |= level
    for h in found:
        if len(h) != size_sub:
            continue
        prof_h = tuple(sum(1 for x in h if mul(d, x) == zero) for d in _divisors(exp_sub))
        if prof_h != want_sub:
            continue
        prof_q = tuple(sum(1 for x in elems if mul(d, x) in h) // size_sub
                       for d in _divisors(exp_quot))
        if prof_q == want_quot:
            return True
    return False


def extension_candidates(sub: FgAbGroup, quot: FgAbGroup) -> tuple[Invariants, ...]:
    """All finite abelian groups that are extensions of ``quot`` by ``sub``."""
    n = sub.order() * quot.order()
    out = []
    for tors in _finite_groups_of_order(n):
        if _has_extension(tors, sub.torsion, quot.torsion):
            out.append((0, tors))
    return tuple(sorted(set(out)))


def assemble_extension(sub: FgAbGroup, quot: FgAbGroup, bound: int = 64) -> ExtensionReport:
    """Solve ``0 -> sub -> ? -> quot -> 0`` as far as the groups allow.

    Split whenever ``quot`` is free or ``sub`` is trivial.  Otherwise the
    answer is ambiguous; for finite groups of total order at most ``bound``
    every possible middle group is listed.
    """
    if quot.is_free() or sub.is_trivial():
        ds = direct_sum([sub, quot]).group
        return ExtensionReport(sub, quot, Determined(_canonical(ds)))
    rank = sub.rank + quot.rank
    if sub.is_finite() and quot.is_finite() and sub.order() * quot.order() <= bound:
        cands = extension_candidates(sub, quot)
        if len(cands) == 1:
            return ExtensionReport(sub, quot, Determined(FgAbGroup.from_invariants(*cands[0])))
        return ExtensionReport(sub, quot, Ambiguous(rank, cands))
    return ExtensionReport(sub, quot, Ambiguous(rank))


def _canonical(g: FgAbGroup) -> FgAbGroup:
    return FgAbGroup.from_invariants(*g.invariants)


def assemble_filtration(pieces: Sequence[FgAbGroup], bound: int = 64) -> ExtensionReport:
    """Iterated extensions, ``pieces[0]`` innermost and ``pieces[-1]`` the top quotient.

    The set of possible middle groups is carried along; once a step can only
    be described by its rank the final report is rank-only.
    """
    total_rank = sum(p.rank for p in pieces)
    if not pieces:
        t = FgAbGroup.trivial()
        return ExtensionReport(t, t, Determined(t))
    current = {_canonical(pieces[0]).invariants}
    sub, rank_only = _canonical(pieces[0]), False
    for piece in pieces[1:]:
        nxt: set[Invariants] = set()
        for inv in sorted(current):
            rep = assemble_extension(FgAbGroup.from_invariants(*inv), piece, bound)
            if not rep.candidates:
                rank_only = True
            nxt.update(rep.candidates)
        sub = FgAbGroup.from_invariants(*min(current))
        current = nxt
        if rank_only:
            break
    quot = pieces[-1]
    if rank_only:
        return ExtensionReport(sub, quot, Ambiguous(total_rank))
    if len(current) == 1:
        return ExtensionReport(sub, quot, Determined(FgAbGroup.from_invariants(*current.pop())))
    return ExtensionReport(sub, quot, Ambiguous(total_rank, tuple(sorted(current))))


def six_term_solve(a0: GroupHom, a1: GroupHom, bound: int = 64) -> tuple[ExtensionReport, ExtensionReport]:
    """Split a cyclic six-term sequence into two extensions.

    ``a_q`` is the endomorphism of the degree-q group entering the sequence
    (for a single automorphism this is ``K_q(alpha) - id``).  Degree q of
    the unknown middle terms sits in ``0 -> coker a_q -> ? -> ker a_{q+1} -> 0``.
    """
    for a in (a0, a1):
        if not a.source.same_presentation(a.target):
            raise ValueError("six_term_solve expects endomorphisms")
    coker0 = cokernel(a0)[0]
    coker1 = cokernel(a1)[0]
    ker0 = kernel_subquotient(a0).group
    ker1 = kernel_subquotient(a1).group
    return (assemble_extension(coker0, ker1, bound), assemble_extension(coker1, ker0, bound))

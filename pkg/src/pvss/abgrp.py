"""Finitely generated abelian groups given by presentations.

A group is ``Z^g`` modulo the column span of a ``g x m`` relation matrix.
Homomorphisms carry a ``target.gens x source.gens`` matrix.  Every kernel,
cokernel and subquotient is returned together with an explicit map back to
the ambient generators, so diagram chases stay computable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .intmat import (IntMatrix, block_diagonal, column_basis, nullspace,
                     smith_normal_form, solve_modulo)


class IllDefinedError(ValueError):
    """A matrix does not descend to a homomorphism between presented groups."""


class MembershipError(ValueError):
    """An element or subgroup does not lie where a construction requires."""


@dataclass(frozen=True, eq=False)
class FgAbGroup:
    gens: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.rows != self.gens:
            raise ValueError(
                f"relation matrix has {self.relations.rows} rows for {self.gens} generators")

    # constructors
    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls(rank, IntMatrix.zeros(rank, 0))

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls.free(0)

    @classmethod
    def cyclic(cls, order: int) -> "FgAbGroup":
        """Z/order (order 0 gives Z)."""
        return cls(1, IntMatrix(1, 1, [order]))

    @classmethod
    def from_invariants(cls, rank: int, torsion: Sequence[int] = ()) -> "FgAbGroup":
        """Z^rank + Z/t_1 + ... in that generator order."""
        torsion = [t for t in torsion if t != 1]
        if any(t <= 0 for t in torsion):
            raise ValueError(f"torsion coefficients must be positive, got {list(torsion)}")
        g = rank + len(torsion)
        rel = IntMatrix.zeros(rank, len(torsion)).vstack(IntMatrix.diagonal(torsion)) \
            if torsion else IntMatrix.zeros(g, 0)
        return cls(g, rel)

    @classmethod
    def from_relations(cls, relations: Sequence[Sequence[int]]) -> "FgAbGroup":
        """Group presented by a relation matrix given as rows (one per generator)."""
        m = IntMatrix.from_rows(relations)
        return cls(m.rows, m)

    # invariants
    @cached_property
    def _smith(self):
        return smith_normal_form(self.relations)

    @cached_property
    def invariants(self) -> tuple[int, tuple[int, ...]]:
        s = self._smith
        diag = s.invariant_factors
        torsion = tuple(d for d in diag if d != 1)
        return self.gens - s.rank, torsion

    @property
    def rank(self) -> int:
        return self.invariants[0]

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.invariants[1]

    def is_free(self) -> bool:
        return not self.torsion

    def is_trivial(self) -> bool:
        return self.invariants == (0, ())

    def is_finite(self) -> bool:
        return self.rank == 0

    def order(self) -> int | None:
        if self.rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out

    # elements
    def contains_zero(self, v: Sequence[int]) -> bool:
        """True iff the coordinate vector ``v`` represents 0."""
        return solve_modulo(IntMatrix.zeros(self.gens, 0), self.relations, v) is not None

    def same_presentation(self, other: "FgAbGroup") -> bool:
        return self.gens == other.gens and self.relations == other.relations

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FgAbGroup) and self.same_presentation(other)

    def __hash__(self) -> int:
        return hash((self.gens, self.relations))

    def __str__(self) -> str:
        return format_invariants(*self.invariants)

    def __repr__(self) -> str:
        return f"FgAbGroup({self})"


def format_invariants(rank: int, torsion: Sequence[int]) -> str:
    parts = []
    if rank:
        parts.append("Z" if rank == 1 else f"Z^{rank}")
    parts.extend(f"Z/{t}" for t in torsion)
    return " + ".join(parts) if parts else "0"


def canonical_invariants(g: FgAbGroup) -> tuple[int, tuple[int, ...]]:
    """(free rank, torsion divisors t1 | t2 | ...) with unit divisors dropped."""
    return g.invariants


def iso_class_equal(a: FgAbGroup, b: FgAbGroup) -> bool:
    return a.invariants == b.invariants


@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.gens, self.source.gens):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match "
                f"{self.target.gens}x{self.source.gens}")

    @classmethod
    def identity(cls, g: FgAbGroup) -> "GroupHom":
        return cls(g, g, IntMatrix.identity(g.gens))

    @classmethod
    def zero(cls, source: FgAbGroup, target: FgAbGroup) -> "GroupHom":
        return cls(source, target, IntMatrix.zeros(target.gens, source.gens))

    def __call__(self, v: Sequence[int]) -> list[int]:
        return self.matrix.apply(v)

    def is_zero(self) -> bool:
        if not self.target.relations.cols:
            return self.matrix.is_zero()
        return all(self.target.contains_zero(c) for c in self.matrix.columns())

    def equals(self, other: "GroupHom") -> bool:
        """Equality as homomorphisms (matrices may differ by relations)."""
        if not (self.source.same_presentation(other.source)
                and self.target.same_presentation(other.target)):
            return False
        return GroupHom(self.source, self.target, self.matrix - other.matrix).is_zero()

    def __add__(self, other: "GroupHom") -> "GroupHom":
        return GroupHom(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: "GroupHom") -> "GroupHom":
        return GroupHom(self.source, self.target, self.matrix - other.matrix)

    def __neg__(self) -> "GroupHom":
        return GroupHom(self.source, self.target, -self.matrix)

    def __mul__(self, k: int) -> "GroupHom":
        return GroupHom(self.source, self.target, self.matrix * k)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"GroupHom({self.source} -> {self.target}, {self.matrix.to_rows()})"


def check_well_defined(f: GroupHom) -> bool:
    """True iff every relation of the source maps into the target relations."""
    rel_t = f.target.relations
    for col in (f.matrix @ f.source.relations).columns():
        if solve_modulo(IntMatrix.zeros(rel_t.rows, 0), rel_t, col) is None:
            return False
    return True


def _require(f: GroupHom) -> None:
    if not check_well_defined(f):
        raise IllDefinedError(f"matrix does not define a homomorphism: {f!r}")


def compose(g: GroupHom, f: GroupHom) -> GroupHom:
    """``g . f``; the middle presentations must coincide."""
    if not f.target.same_presentation(g.source):
        raise ValueError(f"cannot compose: {f.target!r} is not the source {g.source!r}")
    return GroupHom(f.source, g.target, g.matrix @ f.matrix)


@dataclass(frozen=True, eq=False)
class Subgroup:
    """Image in ``ambient`` of the generator columns."""

    ambient: FgAbGroup
    generators: IntMatrix

    def __post_init__(self):
        if self.generators.rows != self.ambient.gens:
            raise ValueError("subgroup generators do not live in the ambient group")

    @classmethod
    def whole(cls, g: FgAbGroup) -> "Subgroup":
        return cls(g, IntMatrix.identity(g.gens))

    @classmethod
    def zero(cls, g: FgAbGroup) -> "Subgroup":
        return cls(g, IntMatrix.zeros(g.gens, 0))

    def contains(self, v: Sequence[int]) -> bool:
        return solve_modulo(self.generators, self.ambient.relations, v) is not None

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return all(self.contains(c) for c in other.generators.columns())

    def __add__(self, other: "Subgroup") -> "Subgroup":
        if not self.ambient.same_presentation(other.ambient):
            raise ValueError("subgroups of different ambient groups")
        return Subgroup(self.ambient, self.generators.hstack(other.generators))

    def reduced(self) -> "Subgroup":
        """Same subgroup with a lattice-basis generating set."""
        return Subgroup(self.ambient, column_basis(self.generators))

    def as_group(self) -> FgAbGroup:
        return subquotient(self, Subgroup.zero(self.ambient)).group


@dataclass(frozen=True, eq=False)
class Subquotient:
    """Presented model of ``cycles / boundaries`` inside an ambient group.

    ``group`` has one generator per nontrivial cyclic summand (diagonal
    relations), ``rep`` sends those generators to ambient representatives and
    :meth:`coords` goes the other way.
    """

    cycles: Subgroup
    boundaries: Subgroup
    group: FgAbGroup
    rep: GroupHom
    _to_coords: IntMatrix = field(repr=False)
    _moduli: tuple[int, ...] = field(repr=False)

    @property
    def ambient(self) -> FgAbGroup:
        return self.cycles.ambient

    def coords(self, v: Sequence[int]) -> list[int]:
        """Coordinates in ``group`` of the class of an ambient cycle ``v``."""
        z = self.cycles
        x = solve_modulo(z.generators,
                         self.boundaries.generators.hstack(z.ambient.relations), v)
        if x is None:
            raise MembershipError(f"{list(v)} is not in the cycle subgroup")
        y = self._to_coords.apply(x)
        return [yi % m if m else yi for yi, m in zip(y, self._moduli)]

    def is_cycle(self, v: Sequence[int]) -> bool:
        return self.cycles.contains(v)

    def is_boundary(self, v: Sequence[int]) -> bool:
        return self.boundaries.contains(v)


def subquotient(z: Subgroup, b: Subgroup) -> Subquotient:
    """Present ``z / b``; ``b`` must lie inside ``z``."""
    amb = z.ambient
    if not amb.same_presentation(b.ambient):
        raise ValueError("cycles and boundaries live in different groups")
    if not z.contains_subgroup(b):
        raise MembershipError("boundary subgroup is not contained in the cycle subgroup")
    zg = z.generators
    kz = zg.cols
    # lattice L = {x in Z^kz : zg x in span(b, relations)}
    big = zg.hstack(b.generators, amb.relations)
    lat = nullspace(big).select_rows(range(kz)) if big.cols else IntMatrix.zeros(kz, 0)
    s = smith_normal_form(lat)
    diag = s.diagonal
    kept, moduli = [], []
    for i in range(kz):
        d = diag[i] if i < s.rank else 0
        if d != 1:
            kept.append(i)
            moduli.append(d)
    # SNF order: torsion summands (increasing) first, then free ones
    rel_cols = [[d if j == i else 0 for j in range(len(kept))]
                for i, d in enumerate(moduli) if d]
    group = FgAbGroup(len(kept), IntMatrix.from_columns(rel_cols, len(kept)))
    rep = GroupHom(group, amb, zg @ s.u_inv.select_columns(kept))
    to_coords = s.u.select_rows(kept)
    return Subquotient(z, b, group, rep, to_coords, tuple(moduli))


def kernel(f: GroupHom) -> tuple[FgAbGroup, GroupHom]:
    """Kernel group and its inclusion into the source."""
    sq = kernel_subquotient(f)
    return sq.group, sq.rep


def kernel_subgroup(f: GroupHom) -> Subgroup:
    _require(f)
    a = f.source.gens
    big = f.matrix.hstack(f.target.relations)
    k = nullspace(big).select_rows(range(a)) if big.cols else IntMatrix.zeros(a, 0)
    return Subgroup(f.source, column_basis(k) if k.cols else k)


def kernel_subquotient(f: GroupHom) -> Subquotient:
    return subquotient(kernel_subgroup(f), Subgroup.zero(f.source))


def cokernel_subquotient(f: GroupHom) -> Subquotient:
    _require(f)
    return subquotient(Subgroup.whole(f.target), Subgroup(f.target, f.matrix))


def cokernel(f: GroupHom) -> tuple[FgAbGroup, GroupHom]:
    """Cokernel group and the projection from the target."""
    sq = cokernel_subquotient(f)
    proj = IntMatrix.from_columns(
        [sq.coords(c) for c in IntMatrix.identity(f.target.gens).columns()], sq.group.gens)
    return sq.group, GroupHom(f.target, sq.group, proj)


def image(f: GroupHom) -> Subgroup:
    _require(f)
    return Subgroup(f.target, f.matrix)


def induced_hom(f: GroupHom, src: Subquotient, tgt: Subquotient) -> GroupHom:
    """Map of subquotients induced by an ambient homomorphism.

    Raises :class:`MembershipError` unless ``f`` sends cycles to cycles and
    boundaries to boundaries.
    """
    if not (f.source.same_presentation(src.ambient)
            and f.target.same_presentation(tgt.ambient)):
        raise ValueError("ambient groups of the subquotients do not match the map")
    for c in src.cycles.generators.columns():
        if not tgt.cycles.contains(f(c)):
            raise MembershipError("map does not send cycles to cycles")
    for c in src.boundaries.generators.columns():
        if not tgt.boundaries.contains(f(c)):
            raise MembershipError("map does not send boundaries to boundaries")
    cols = [tgt.coords(f(c)) for c in src.rep.matrix.columns()]
    return GroupHom(src.group, tgt.group, IntMatrix.from_columns(cols, tgt.group.gens))


@dataclass(frozen=True)
class DirectSum:
    group: FgAbGroup
    injections: tuple[GroupHom, ...]
    projections: tuple[GroupHom, ...]


def direct_sum(gs: Sequence[FgAbGroup]) -> DirectSum:
    group = FgAbGroup(sum(g.gens for g in gs), block_diagonal([g.relations for g in gs]))
    inj, proj = [], []
    offset = 0
    for g in gs:
        emb = IntMatrix.from_columns(
            [[1 if i == offset + j else 0 for i in range(group.gens)] for j in range(g.gens)],
            group.gens)
        inj.append(GroupHom(g, group, emb))
        proj.append(GroupHom(group, g, emb.transpose()))
        offset += g.gens
    return DirectSum(group, tuple(inj), tuple(proj))


def direct_sum_hom(fs: Sequence[GroupHom]) -> GroupHom:
    """Block-diagonal sum of homomorphisms."""
    src = direct_sum([f.source for f in fs]).group
    tgt = direct_sum([f.target for f in fs]).group
    return GroupHom(src, tgt, block_diagonal([f.matrix for f in fs]))


def is_injective(f: GroupHom) -> bool:
    return kernel(f)[0].is_trivial()


def is_surjective(f: GroupHom) -> bool:
    return cokernel(f)[0].is_trivial()

"""Reference computations that do not use the package under test.

Everything here goes through sympy or plain enumeration, so agreement with
``pvss`` is a genuine cross-check.
"""

from __future__ import annotations

import itertools
from math import comb

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors


def _mat(rows, ncols):
    return Matrix(len(rows), ncols, [x for r in rows for x in r]) if rows else Matrix(0, ncols, [])


def invariants(gens: int, relation_rows) -> tuple[int, tuple[int, ...]]:
    """(rank, torsion) of Z^gens modulo the columns of a gens x r matrix."""
    ncols = len(relation_rows[0]) if relation_rows else 0
    m = _mat(relation_rows, ncols)
    if m.rows == 0 or m.cols == 0:
        return gens, ()
    rank = m.rank()
    facs = [abs(int(f)) for f in invariant_factors(m, domain=ZZ) if f != 0]
    return gens - rank, tuple(f for f in facs if f != 1)


def snf_diagonal(rows) -> list[int]:
    if not rows or not rows[0]:
        return []
    facs = invariant_factors(_mat(rows, len(rows[0])), domain=ZZ)
    return [abs(int(f)) for f in facs]


def brute_solve(rows, b, box=6):
    """Some integer x in [-box, box]^n with rows @ x == b, or None."""
    n = len(rows[0]) if rows else 0
    for x in itertools.product(range(-box, box + 1), repeat=n):
        if all(sum(r[j] * x[j] for j in range(n)) == bi for r, bi in zip(rows, b)):
            return list(x)
    return None


def brute_solve_modulo(m_rows, rel_rows, b, box=8):
    """x in a box with m x - b in the column span of rel (checked by sympy rank)."""
    n = len(m_rows[0]) if m_rows else 0
    for x in itertools.product(range(-box, box + 1), repeat=n):
        r = [sum(row[j] * x[j] for j in range(n)) - bi for row, bi in zip(m_rows, b)]
        if in_lattice(rel_rows, r):
            return list(x)
    return None


def in_lattice(rows, v) -> bool:
    """Is the integer vector v in the integer column span of ``rows``?

    L is contained in L + Zv; with equal rank the index is the ratio of
    the products of nonzero invariant factors.
    """
    ncols = len(rows[0]) if rows else 0
    if ncols == 0:
        return all(x == 0 for x in v)
    m = _mat(rows, ncols)
    aug = m.row_join(Matrix(v))
    if aug.rank() != m.rank():
        return False

    def covolume(mm):
        out = 1
        for f in snf_diagonal(mm.tolist()):
            if f:
                out *= f
        return out

    return covolume(m) == covolume(aug)


def finite_group_profile(moduli) -> tuple[int, ...]:
    """Counts of elements killed by d for d = 1..lcm, by enumeration."""
    from math import lcm
    exp = lcm(*moduli) if moduli else 1
    elems = list(itertools.product(*[range(m) for m in moduli]))
    return tuple(sum(1 for x in elems if all((d * xi) % m == 0 for xi, m in zip(x, moduli)))
                 for d in range(1, exp + 1) if exp % d == 0)


def free_complex_cohomology(dims, mats):
    """Cohomology of a complex of free groups Z^{dims[p]} with matrices mats[p]: p -> p+1.

    H^p has rank dims[p] - rank d^p - rank d^{p-1} and torsion equal to the
    non-unit invariant factors of d^{p-1}.
    """
    def rank(m):
        return _mat(m, len(m[0]) if m else 0).rank() if m and m[0] else 0

    out = []
    for p, dim in enumerate(dims):
        d_out = mats[p] if p < len(mats) else []
        d_in = mats[p - 1] if p >= 1 else []
        r = dim - rank(d_out) - rank(d_in)
        tors = tuple(f for f in snf_diagonal(d_in) if f not in (0, 1)) if d_in else ()
        out.append((r, tors))
    return out


def koszul_dual_matrices(n, dmaps):
    """Cochain matrices of Hom(Koszul resolution, Z^g) from the face formula.

    ``dmaps[k]`` is the g x g matrix of t_{k+1} - 1.
    """
    g = len(dmaps[0]) if dmaps else 0
    mats = []
    for p in range(n):
        src = list(itertools.combinations(range(1, n + 1), p))
        tgt = list(itertools.combinations(range(1, n + 1), p + 1))
        m = [[0] * (g * len(src)) for _ in range(g * len(tgt))]
        for i, nu in enumerate(tgt):
            for j, k in enumerate(nu, 1):
                face = nu[:j - 1] + nu[j:]
                col = src.index(face)
                for r in range(g):
                    for c in range(g):
                        m[i * g + r][col * g + c] += (-1) ** j * dmaps[k - 1][r][c]
        mats.append(m)
    dims = [g * comb(n, p) for p in range(n + 1)]
    return dims, mats


def six_term_template(k: int):
    """K-theory for K0 = K1 = Z, trivial action, delta_1 = x k, delta_0 = 0.

    After the first crossed product both groups are Z^2; the second
    generator acts with a0 = [[0, k], [0, 0]] on G0 and a1 = 0 on G1.
    Each kernel is free, so each extension splits.
    """
    a0 = [[0, k], [0, 0]]
    a1 = [[0, 0], [0, 0]]

    def coker(m):
        return invariants(2, m)

    def ker_rank(m):
        return 2 - Matrix(m).rank()

    c0, c1 = coker(a0), coker(a1)
    k0 = (c0[0] + ker_rank(a1), c0[1])
    k1 = (c1[0] + ker_rank(a0), c1[1])
    return k0, k1

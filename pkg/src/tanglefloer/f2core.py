"""Exact arithmetic substrate: F2 scalars, U-monomials, sparse F2 linear algebra.

Everything here is deterministic and exact.  Matrices over F2 are stored as
sparse entry dicts and eliminated via int bitsets; the pivot rule is "lowest
row index, then lowest column index", so every computation is reproducible.

U-monomials are canonical tuples ``((var, exp), ...)`` sorted by variable key,
with zero exponents never stored.  Variable keys are arbitrary hashables so
the same machinery serves algebra variables (boundary positions) and module
variables (O-markers).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, Optional, Tuple

UMonomial = Tuple[Tuple[Hashable, int], ...]

U_ONE: UMonomial = ()


class DimensionMismatch(Exception):
    pass


class CompositionNotZero(Exception):
    pass


def umonomial(exponents: Dict[Hashable, int]) -> UMonomial:
    """Canonical monomial from a variable->exponent map (zeros dropped)."""
    items = tuple(sorted((v, e) for v, e in exponents.items() if e != 0))
    if any(e < 0 for _, e in items):
        raise ValueError("negative exponent")
    return items

def u_var(v: Hashable, e: int = 1) -> UMonomial:
    return umonomial({v: e})


def u_mul(a: UMonomial, b: UMonomial) -> UMonomial:
    if not a:
        return b
    if not b:
        return a
    exps: Dict[Hashable, int] = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def u_degree(a: UMonomial) -> int:
    return sum(e for _, e in a)


@dataclass(frozen=True)
class SparseVecF2:
    """F2-linear combination of (basis index, UMonomial) pairs."""

    support: frozenset = frozenset()

    @staticmethod
    def of(pairs: Iterable[Tuple[int, UMonomial]]) -> "SparseVecF2":
        acc: set = set()
        for p in pairs:
            acc.symmetric_difference_update({p})
        return SparseVecF2(frozenset(acc))

    def __add__(self, other: "SparseVecF2") -> "SparseVecF2":
        return SparseVecF2(self.support.symmetric_difference(other.support))

    def __bool__(self) -> bool:
        return bool(self.support)


@dataclass
class SparseMatF2:
    """Sparse matrix over F2; entries never hold an explicit zero.

    Entries are kept as a set of (row, col) positions.  That covers every use
    in this package (ranks, homology, linear solving); U-valued matrices are
    handled upstream by expanding monomials into extra basis indices.
    """

    nrows: int
    ncols: int
    entries: set = field(default_factory=set)

    def add(self, r: int, c: int) -> None:
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise DimensionMismatch(f"entry ({r},{c}) outside {self.nrows}x{self.ncols}")
        self.entries.symmetric_difference_update({(r, c)})

    def row_bitsets(self) -> list:
        rows = [0] * self.nrows
        for r, c in self.entries:
            rows[r] ^= 1 << c
        return rows

    def transpose(self) -> "SparseMatF2":
        return SparseMatF2(self.ncols, self.nrows, {(c, r) for r, c in self.entries})

    def mul(self, other: "SparseMatF2") -> "SparseMatF2":
        if self.ncols != other.nrows:
            raise DimensionMismatch("inner dimensions differ")
        cols_of = {}
        for r, c in other.entries:
            cols_of.setdefault(r, 0)
            cols_of[r] ^= 1 << c
        out_rows = [0] * self.nrows
        for r, c in self.entries:
            out_rows[r] ^= cols_of.get(c, 0)
        out = SparseMatF2(self.nrows, other.ncols)
        for r, bits in enumerate(out_rows):
            c = 0
            while bits:
                if bits & 1:
                    out.entries.add((r, c))
                bits >>= 1
                c += 1
        return out

    def is_zero(self) -> bool:
        return not self.entries


def _eliminate(rows: list, ncols: int):
    """Row-reduce bitset rows; returns (pivot list [(row, col)], reduced rows).

    Pivots are chosen with the lowest remaining row index first, then the
    lowest column index in that row.
    """
    rows = rows[:]
    pivots = []
    for r in range(len(rows)):
        if rows[r] == 0:
            continue
        c = (rows[r] & -rows[r]).bit_length() - 1
        pivots.append((r, c))
        for r2 in range(len(rows)):
            if r2 != r and (rows[r2] >> c) & 1:
                rows[r2] ^= rows[r]
    return pivots, rows


def rank_f2(m: SparseMatF2) -> int:
    """Rank over F2 by Gaussian elimination."""
    pivots, _ = _eliminate(m.row_bitsets(), m.ncols)
    return len(pivots)


def homology_rank(d: SparseMatF2, d_next: SparseMatF2) -> int:
    """dim ker(d) - rank(d_next) for a pair with d o d_next = 0."""
    if d.ncols != d_next.nrows:
        raise DimensionMismatch("d and d_next do not chain")
    if not d.mul(d_next).is_zero():
        raise CompositionNotZero("d o d_next != 0")
    return (d.ncols - rank_f2(d)) - rank_f2(d_next)


def solve_linear_f2(a: SparseMatF2, b: SparseVecF2) -> Optional[SparseVecF2]:
    """Some x with Ax = b, or None.  Deterministic under the fixed pivot rule.

    b's support must use trivial monomials; index i means row i.
    """
    for idx, mono in b.support:
        if mono != U_ONE:
            raise DimensionMismatch("solve_linear_f2 expects scalar entries")
        if not 0 <= idx < a.nrows:
            raise DimensionMismatch("b index outside row range")
    bvec = 0
    for idx, _ in b.support:
        bvec ^= 1 << idx
    return _solve_bits(a.row_bitsets(), a.ncols, bvec, a.nrows)


def _solve_bits(rows: list, ncols: int, bvec: int, nrows: int) -> Optional[SparseVecF2]:
    # Work column-wise on the augmented system [A | b].
    aug = [(rows[r]) | ((bvec >> r & 1) << ncols) for r in range(nrows)]
    pivots = []  # (row, col) with col < ncols
    used = [False] * nrows
    for c in range(ncols):
        pr = None
        for r in range(nrows):
            if not used[r] and (aug[r] >> c) & 1:
                pr = r
                break
        if pr is None:
            continue
        used[pr] = True
        pivots.append((pr, c))
        for r in range(nrows):
            if r != pr and (aug[r] >> c) & 1:
                aug[r] ^= aug[pr]
    for r in range(nrows):
        if not used[r] and (aug[r] >> ncols) & 1:
            return None
    x = 0
    for pr, c in pivots:
        if (aug[pr] >> ncols) & 1:
            x ^= 1 << c
    return SparseVecF2(frozenset((c, U_ONE) for c in range(ncols) if (x >> c) & 1))

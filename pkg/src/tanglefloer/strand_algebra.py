"""The strand algebras over F2[U_1..U_t] and their quotients.

A sign sequence P in {+,-}^n indexes a differential graded algebra generated
over F2[U's] by partial bijections [n] -> [n], [n] = {0,..,n}, drawn as
minimal strand diagrams: black strand i -> phi(i) is the straight segment from
(0, i) to (1, phi(i)); the j-th orange strand is horizontal at height j - 1/2,
oriented left-to-right when P_j = + and right-to-left when P_j = -.

Multiplication concatenates diagrams: the product is zero whenever a black
strand double-crosses another black strand or a left-oriented orange strand,
and each double crossing with a right-oriented orange strand contributes one
power of that strand's U variable.  The differential smooths one black-black
crossing at a time, with the same double-crossing rules applied to the
resulting diagram.

Flavors:
  minus    - the full algebra over F2[U's];
  half     - U's set to zero, (M, A)-bigraded;
  delta    - same underlying algebra as half, delta-graded;
  ungraded - same underlying algebra, no gradings.

Gradings count crossings:
  M(a)  = #(black,black) - #(black, right-oriented orange)
  2A(a) = #(black, left-oriented orange) - #(black, right-oriented orange)
with M(U_j a) = M(a) - 2, A(U_j a) = A(a) - 1.  The delta grading of an
algebra element is M - A.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .f2core import U_ONE, UMonomial, u_degree, u_mul, u_var

# A partial bijection is a tuple of (source, target) pairs sorted by source.
Bijection = Tuple[Tuple[int, int], ...]


class SignSequenceMismatch(Exception):
    pass


class UngradedFlavor(Exception):
    pass


MINUS, HALF, DELTA, UNGRADED = "minus", "half", "delta", "ungraded"
FLAVORS = (MINUS, HALF, DELTA, UNGRADED)


@dataclass(frozen=True)
class SignSequence:
    signs: Tuple[int, ...]  # entries +1 / -1

    def __post_init__(self):
        assert all(s in (1, -1) for s in self.signs)

    @property
    def n(self) -> int:
        return len(self.signs)

    def positive_positions(self) -> Tuple[int, ...]:
        """1-based positions of '+' entries; each owns an algebra variable."""
        return tuple(j for j, s in enumerate(self.signs, start=1) if s == 1)

    def negate(self) -> "SignSequence":
        return SignSequence(tuple(-s for s in self.signs))


def bijection(pairs: Iterable[Tuple[int, int]]) -> Bijection:
    pairs = tuple(sorted(pairs))
    srcs = [s for s, _ in pairs]
    tgts = [t for _, t in pairs]
    assert len(set(srcs)) == len(srcs) and len(set(tgts)) == len(tgts)
    return pairs


def identity_bijection(subset: Iterable[int]) -> Bijection:
    return tuple(sorted((i, i) for i in subset))


def bij_domain(b: Bijection) -> FrozenSet[int]:
    return frozenset(s for s, _ in b)


def bij_image(b: Bijection) -> FrozenSet[int]:
    return frozenset(t for _, t in b)


def bij_apply(b: Bijection, i: int) -> int:
    for s, t in b:
        if s == i:
            return t
    raise KeyError(i)


@dataclass(frozen=True)
class StrandGenerator:
    bij: Bijection
    u: UMonomial = U_ONE

    def is_idempotent(self) -> bool:
        return self.u == U_ONE and all(s == t for s, t in self.bij)


# An algebra element is an F2 set of generators.
AlgebraElement = FrozenSet[StrandGenerator]

ZERO: AlgebraElement = frozenset()


def element(*gens: StrandGenerator) -> AlgebraElement:
    acc: set = set()
    for g in gens:
        acc.symmetric_difference_update({g})
    return frozenset(acc)


def elt_add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a.symmetric_difference(b)


def _crosses_orange(y0: int, y1: int, j: int) -> bool:
    # Does the segment from height y0 to y1 cross the orange strand at j-1/2?
    lo, hi = min(y0, y1), max(y0, y1)
    return lo <= j - 1 and j <= hi


def _bb_crossings(b: Bijection) -> int:
    n = 0
    for (i1, t1), (i2, t2) in itertools.combinations(b, 2):
        if (i1 - i2) * (t1 - t2) < 0:
            n += 1
    return n


class Algebra:
    """The strand algebra of a sign sequence, in one of the four flavors."""

    def __init__(self, P: SignSequence, flavor: str = MINUS):
        assert flavor in FLAVORS
        self.P = P
        self.flavor = flavor
        self.n = P.n

    # -- generators ------------------------------------------------------

    def generators(self) -> List[StrandGenerator]:
        """All partial bijections with trivial U part, in a fixed order."""
        pts = range(self.n + 1)
        out = []
        for k in range(self.n + 2):
            for dom in itertools.combinations(pts, k):
                for img in itertools.permutations(pts, k):
                    if len(set(img)) == k:
                        out.append(StrandGenerator(bijection(zip(dom, img))))
        out.sort(key=lambda g: (bij_domain(g.bij) and sorted(bij_domain(g.bij)) or [],
                                g.bij))
        return out

    def idempotents(self) -> List[StrandGenerator]:
        pts = range(self.n + 1)
        out = []
        for k in range(self.n + 2):
            for sub in itertools.combinations(pts, k):
                out.append(StrandGenerator(identity_bijection(sub)))
        return out

    def idempotent(self, subset: Iterable[int]) -> StrandGenerator:
        return StrandGenerator(identity_bijection(subset))

    # -- multiplication --------------------------------------------------

    def multiply(self, a: StrandGenerator, b: StrandGenerator) -> AlgebraElement:
        if bij_image(a.bij) != bij_domain(b.bij):
            return ZERO
        amap = dict(a.bij)
        bmap = dict(b.bij)
        srcs = sorted(amap)
        # Black-black double crossings kill the product.
        for i1, i2 in itertools.combinations(srcs, 2):
            m1, m2 = amap[i1], amap[i2]
            if (i1 - i2) * (m1 - m2) < 0 and (m1 - m2) * (bmap[m1] - bmap[m2]) < 0:
                return ZERO
        # Orange double crossings: zero or a U factor, by orientation.
        u = U_ONE
        for j, sign in enumerate(self.P.signs, start=1):
            nj = 0
            for i in srcs:
                if _crosses_orange(i, amap[i], j) and _crosses_orange(amap[i], bmap[amap[i]], j):
                    nj += 1
            if nj:
                if sign == -1 or self.flavor != MINUS:
                    return ZERO
                u = u_mul(u, u_var(("alg", j), nj))
        comp = bijection((i, bmap[amap[i]]) for i in srcs)
        return element(StrandGenerator(comp, u_mul(u_mul(a.u, b.u), u)))

    def multiply_elements(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        acc: set = set()
        for a in x:
            for b in y:
                acc.symmetric_difference_update(self.multiply(a, b))
        return frozenset(acc)

    # -- differential ----------------------------------------------------

    def differential(self, a: StrandGenerator) -> AlgebraElement:
        """Sum over smoothings of one black-black crossing of the diagram."""
        amap = dict(a.bij)
        srcs = sorted(amap)
        acc: set = set()
        for i1, i2 in itertools.combinations(srcs, 2):
            if (i1 - i2) * (amap[i1] - amap[i2]) >= 0:
                continue
            term = self._smooth(a, i1, i2)
            if term is not None:
                acc.symmetric_difference_update({term})
        return frozenset(acc)

    def _smooth(self, a: StrandGenerator, i1: int, i2: int) -> Optional[StrandGenerator]:
        # Smooth the crossing of strands i1, i2; exact piecewise-linear check
        # of the resulting diagram for double crossings.
        amap = dict(a.bij)
        xstar = Fraction(i1 - i2, (amap[i2] - amap[i1]) - (i2 - i1))  # in (0,1)

        def path(i: int):
            # The smoothed path of strand i as a list of (x0,y0,x1,y1) pieces.
            if i == i1:
                ymid = i1 + xstar * (amap[i1] - i1)
                return [(Fraction(0), Fraction(i1), xstar, ymid),
                        (xstar, ymid, Fraction(1), Fraction(amap[i2]))]
            if i == i2:
                ymid = i2 + xstar * (amap[i2] - i2)
                return [(Fraction(0), Fraction(i2), xstar, ymid),
                        (xstar, ymid, Fraction(1), Fraction(amap[i1]))]
            return [(Fraction(0), Fraction(i), Fraction(1), Fraction(amap[i]))]

        paths = {i: path(i) for i in amap}

        def seg_cross(s1, s2) -> int:
            # Transverse crossings of two non-vertical segments over open overlap.
            x0 = max(s1[0], s2[0])
            x1 = min(s1[2], s2[2])
            if x0 >= x1:
                return 0
            def val(s, x):
                return s[1] + (s[3] - s[1]) * (x - s[0]) / (s[2] - s[0])
            d0 = val(s1, x0) - val(s2, x0)
            d1 = val(s1, x1) - val(s2, x1)
            if d0 == 0 or d1 == 0:
                # Touching at the smoothing point; not a transverse crossing.
                return 1 if d0 * d1 < 0 else 0
            return 1 if d0 * d1 < 0 else 0

        def path_cross(p, q) -> int:
            return sum(seg_cross(s1, s2) for s1 in p for s2 in q)

        for ia, ib in itertools.combinations(sorted(amap), 2):
            c = path_cross(paths[ia], paths[ib])
            if c >= 2:
                return None
        u = a.u
        for j, sign in enumerate(self.P.signs, start=1):
            h = Fraction(2 * j - 1, 2)
            c = 0
            for p in paths.values():
                for s in p:
                    lo, hi = min(s[1], s[3]), max(s[1], s[3])
                    if lo < h < hi:
                        c += 1
            base = 1 if _crosses_orange(i1, amap[i1], j) or _crosses_orange(i2, amap[i2], j) else 0
            # c counts all (black, orange-j) crossings; doubles come in 2s.
            if c % 2 == 1:
                doubles = (c - 1) // 2 if base else c // 2
            else:
                doubles = c // 2 if not base else (c - 2) // 2 + 1
            # Minimal count after R2 moves has the same parity as c; the
            # number of R2 pairs is (c - minimal)/2 where the minimal count
            # is what the composed bijection itself crosses.
            cmap = dict(amap)
            cmap[i1], cmap[i2] = amap[i2], amap[i1]
            minimal = sum(1 for i in cmap if _crosses_orange(i, cmap[i], j))
            doubles = (c - minimal) // 2
            if doubles:
                if sign == -1 or self.flavor != MINUS:
                    return None
                u = u_mul(u, u_var(("alg", j), doubles))
        cmap = dict(amap)
        cmap[i1], cmap[i2] = amap[i2], amap[i1]
        return StrandGenerator(bijection(cmap.items()), u)

    def differential_element(self, x: AlgebraElement) -> AlgebraElement:
        acc: set = set()
        for g in x:
            acc.symmetric_difference_update(self.differential(g))
        return frozenset(acc)

    # -- gradings ---------------------------------------------------------

    def crossing_counts(self, a: StrandGenerator) -> Tuple[int, int, int]:
        """(black-black, black x right-orange, black x left-orange) counts."""
        bb = _bb_crossings(a.bij)
        right = left = 0
        for j, sign in enumerate(self.P.signs, start=1):
            c = sum(1 for s, t in a.bij if _crosses_orange(s, t, j))
            if sign == 1:
                right += c
            else:
                left += c
        return bb, right, left

    def gradings(self, a: StrandGenerator) -> Tuple[int, int]:
        """(2M, 2A) of a generator, U-shifts included."""
        if self.flavor == UNGRADED:
            raise UngradedFlavor("the ungraded flavor carries no gradings")
        bb, right, left = self.crossing_counts(a)
        deg = u_degree(a.u)
        twice_m = 2 * (bb - right) - 4 * deg
        twice_a = (left - right) - 2 * deg
        return twice_m, twice_a

    def twice_delta(self, a: StrandGenerator) -> int:
        """2(M - A): twice the algebra delta grading."""
        tm, ta = self.gradings(a)
        return tm - ta

    def unit_terms(self) -> List[StrandGenerator]:
        """The idempotents; their sum is the unit."""
        return self.idempotents()


def enumerate_generators(P: SignSequence, flavor: str = MINUS) -> List[StrandGenerator]:
    return Algebra(P, flavor).generators()


def idempotents(P: SignSequence) -> List[StrandGenerator]:
    return Algebra(P).idempotents()

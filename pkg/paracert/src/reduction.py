"""
Coset representative reduction.

For every type the procedures below move a representative of a nonzero
coset β + kQ_L by elements of kQ_L until its coordinates satisfy one of
the case conditions used to bound conformal weights. Moves always act on
the lowest qualifying coordinate indices, so outputs are deterministic.

Case tags:

    AD-1      A_n: |S| >= 2 and 1 <= |x_i| <= k-1 on S
    AD-i      D_n: |S| >= 2 and 1 <= |x_i| <= k-1 on S
    AD-ii     D_n: S = {a} and 1 <= |x_a| <= k
    B-i/B-ii  B_n: as AD-i/AD-ii
    C         C_n: S nonempty and 1 <= |x_i| <= k on S
    E78-i     E7/E8: all 0<|x_i|<=k/2, at least four below k/2, at most one equal
    E78-ii    E7/E8: |S| = 4, exactly one |x_i| = k/2, S not in H_n(4)
    E78-iii   E7/E8: |S| in {1,2,3}, all 0<|x_i|<=k/2
    E6-i..iii E6: as E78-i..iii with H_7(4)
    E6-iv     E6: S = {5,6,7}, one k/2<=|x_i|<k and two 0<|x_i|<k/2
    F-i       F4: |S| >= 2, integral, 0<|x_i|<k
    F-ii      F4: S = {a}, integral, 0<|x_a|<=k
    F-iii     F4: S = Ω4, half-integral, 0<|x_i|<k
    G-i       G2: integral, |x_i|<k
    G-ii      G2: in (1/3)Z minus Z, 0<|x_i|<k
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import ceil
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from loguru import logger

from codes import CodeWord, find_quadruple, find_triple, hamming_blocks
from exceptions import ReductionError, UsageError
from quotient import Coset, CosetSpace
from rootsys import RootSystemType, Vector

BLOCK_567 = (5, 6, 7)
FIRST_FOUR = (1, 2, 3, 4)


class CaseTag(str, Enum):
    AD_1 = "AD-1"
    AD_I = "AD-i"
    AD_II = "AD-ii"
    B_I = "B-i"
    B_II = "B-ii"
    C = "C"
    E78_I = "E78-i"
    E78_II = "E78-ii"
    E78_III = "E78-iii"
    E6_I = "E6-i"
    E6_II = "E6-ii"
    E6_III = "E6-iii"
    E6_IV = "E6-iv"
    F_I = "F-i"
    F_II = "F-ii"
    F_III = "F-iii"
    G_I = "G-i"
    G_II = "G-ii"


@dataclass(frozen=True)
class ReducedRep:
    """A coset representative meeting the conditions of `case_tag`."""

    gamma: Vector
    case_tag: CaseTag
    steps: int


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _support(x: Sequence[Fraction]) -> List[int]:
    return [i + 1 for i, c in enumerate(x) if c]


def _at(x: Sequence[Fraction], i: int) -> Fraction:
    return x[i - 1]


class _Walker:
    """Mutable coordinates of a representative with a step guard."""

    def __init__(self, coords: Sequence[Fraction], rank: int):
        self.x = [Fraction(c) for c in coords]
        self.steps = 0
        self.guard = (ceil(sum(abs(c) for c in self.x)) + 2) * rank + 8

    def __getitem__(self, i: int) -> Fraction:
        return self.x[i - 1]

    def support(self) -> List[int]:
        return _support(self.x)

    def eps(self, i: int) -> int:
        """Sign of x_i, with 1 off the support."""
        return _sign(self[i]) or 1

    def move(self, delta: Dict[int, Fraction]) -> None:
        """Subtract Σ delta_i e_i, an element of kQ_L."""
        for i, d in delta.items():
            self.x[i - 1] -= d
        self.steps += 1
        if self.steps > self.guard:
            raise ReductionError(f"reduction exceeded {self.guard} steps at {self.x}")

    def fold(self, i: int, period: Fraction) -> None:
        """Shift x_i by a multiple of `period` into (-period/2, period/2]."""
        r = self[i] % period
        if r > period / 2:
            r -= period
        if r != self[i]:
            self.move({i: self[i] - r})


def _a_moves(w: _Walker, k: int, indices: Sequence[int]) -> None:
    """Subtract ε_a k(e_a − e_b) until |x_i| < k on `indices`."""
    while True:
        big = [a for a in indices if abs(w[a]) >= k]
        if not big:
            return
        a = big[0]
        e = w.eps(a)
        partners = [b for b in indices if e * w[b] < 0]
        if not partners:
            raise ReductionError(f"no coordinate of opposite sign to x_{a} in {w.x}")
        b = partners[0]
        w.move({a: e * k, b: -e * k})


def _d_moves(w: _Walker, k: int) -> None:
    """Subtract k(ε_a e_a + ε_b e_b) or 2kε_a e_a until the D-type cases hold."""
    while True:
        support = w.support()
        if len(support) >= 2:
            big = [a for a in support if abs(w[a]) >= k]
            if not big:
                return
            a = big[0]
            b = next(i for i in support if i != a)
            w.move({a: w.eps(a) * k, b: w.eps(b) * k})
        elif len(support) == 1:
            a = support[0]
            if abs(w[a]) <= k:
                return
            w.move({a: 2 * k * w.eps(a)})
        else:
            raise ReductionError("reduction reached the zero vector")


def _prepare(space: CosetSpace, coset: Coset, start: Optional[Vector], families: str) -> _Walker:
    if coset.space is not space:
        raise UsageError("coset belongs to a different coset space")
    if space.rstype.family not in families:
        raise UsageError(f"this reduction does not apply to type {space.rstype.name}")
    if coset.is_zero():
        raise UsageError("the zero coset has no reduced representative")
    if start is None:
        start = coset.rep
    elif space.canonicalize(start).id != coset.id:
        raise UsageError(f"{start} does not lie in coset {coset.id}")
    return _Walker(start.coords, space.rank)


def _finish(space: CosetSpace, coset: Coset, w: _Walker, tag: CaseTag) -> ReducedRep:
    gamma = Vector(tuple(w.x), space.root_system.form)
    if not case_holds(space.rstype, space.k, gamma, tag):
        raise ReductionError(f"{gamma} does not satisfy case {tag.value} for {space.rstype.name}, k={space.k}")
    if space.canonicalize(gamma).id != coset.id:
        raise ReductionError(f"reduction of coset {coset.id} left the coset at {gamma}")
    logger.debug(f"{space.rstype.name} k={space.k} coset {coset.id}: {gamma} case {tag.value} in {w.steps} steps")
    return ReducedRep(gamma, tag, w.steps)


def reduce_AD(space: CosetSpace, coset: Coset, start: Optional[Vector] = None) -> ReducedRep:
    """
    Reduce a coset of type A_n or D_n.

    Type A subtracts ε_a k(e_a − e_b) while some |x_a| >= k. Type D
    subtracts k(ε_a e_a + ε_b e_b) while |S| >= 2 and some |x_a| >= k,
    and 2kε_a e_a while S = {a} and |x_a| > k.

    Args:
        space (CosetSpace): Q/kQ for type A or D
        coset (Coset): A nonzero coset
        start (Optional[Vector]): Representative to start from; the canonical one by default

    Returns:
        ReducedRep: Tagged AD-1, AD-i or AD-ii

    Raises:
        UsageError: For the zero coset, another type, or a start outside the coset
        ReductionError: If the result fails its case or leaves the coset
    """
    w = _prepare(space, coset, start, "AD")
    k = space.k
    if space.rstype.family == "A":
        _a_moves(w, k, range(1, len(w.x) + 1))
        return _finish(space, coset, w, CaseTag.AD_1)
    _d_moves(w, k)
    return _finish(space, coset, w, CaseTag.AD_I if len(w.support()) >= 2 else CaseTag.AD_II)


def reduce_B(space: CosetSpace, coset: Coset, start: Optional[Vector] = None) -> ReducedRep:
    """Reduce a coset of type B_n with the D-type moves inside Z^n."""
    w = _prepare(space, coset, start, "B")
    _d_moves(w, space.k)
    return _finish(space, coset, w, CaseTag.B_I if len(w.support()) >= 2 else CaseTag.B_II)


def reduce_C(space: CosetSpace, coset: Coset, start: Optional[Vector] = None) -> ReducedRep:
    """Reduce a coset of type C_n coordinatewise modulo 2k into (-k, k]."""
    w = _prepare(space, coset, start, "C")
    for i in range(1, len(w.x) + 1):
        w.fold(i, Fraction(2 * space.k))
    return _finish(space, coset, w, CaseTag.C)


def _e78_loop(w: _Walker, k: int, m: int) -> CaseTag:
    half = Fraction(k, 2)
    blocks = set(hamming_blocks(m))
    while True:
        support = w.support()
        u = [i for i in support if abs(w[i]) == half]
        if len(support) <= 3:
            return CaseTag.E78_III
        if len(u) >= 2:
            t1 = CodeWord.of(u[:2])
            partners = find_quadruple(t1) if m == 8 else find_triple(t1)
            s_word = CodeWord.of(support)
            block = next((t1 | tj for tj in partners if not tj.isdisjoint(s_word)), None)
            if block is None:
                raise ReductionError(f"no H{m}(4) block clears {t1} at {w.x}")
            w.move({i: half * w.eps(i) for i in block.members})
            continue
        if not u or len(support) >= 5:
            return CaseTag.E78_I
        if CodeWord.of(support) in blocks:
            w.move({i: half * w.eps(i) for i in support})
            continue
        return CaseTag.E78_II


def _e6_normalise(w: _Walker, k: int) -> None:
    half = Fraction(k, 2)
    _a_moves(w, k, BLOCK_567)
    for i in FIRST_FOUR:
        w.fold(i, Fraction(k))
    a, b, _ = sorted(BLOCK_567, key=lambda i: (-abs(w[i]), i))
    if half <= abs(w[a]) < k:
        t2, t3 = find_triple(CodeWord.of((a, b)))
        pq = next((t for t in (t2, t3) if t.issubset(CodeWord.of(FIRST_FOUR))), None)
        if pq is None:
            raise ReductionError(f"no H7 triple through {{{a}, {b}}} inside {{1,2,3,4}} at {w.x}")
        e = w.eps(a)
        p, q = pq.members
        w.move({p: e * half, q: e * half, a: e * half, b: -e * half})
        for i in FIRST_FOUR:
            w.fold(i, Fraction(k))


def _e6_loop(w: _Walker, k: int) -> CaseTag:
    half = Fraction(k, 2)
    blocks = set(hamming_blocks(7))
    while True:
        support = w.support()
        if len(support) <= 3:
            return CaseTag.E6_III
        u = [i for i in support if abs(w[i]) == half]
        if any(i in BLOCK_567 for i in u):
            raise ReductionError(f"block coordinate at k/2 in {w.x}")
        if not u:
            return CaseTag.E6_I
        low = [i for i in support if i in FIRST_FOUR]
        if len(u) >= 3 or (len(u) == 2 and len(low) > 2):
            w.move({i: half * w.eps(i) for i in FIRST_FOUR})
            continue
        if len(u) == 2:
            pair = next((t for t in find_triple(CodeWord.of(u)) if t.issubset(CodeWord.of(BLOCK_567))), None)
            if pair is None:
                raise ReductionError(f"no H7 triple through {u} inside {{5,6,7}} at {w.x}")
            t_block = pair.members
            in_s = [i for i in t_block if w[i]]
            if len(support) == 4 and len(in_s) == 2:
                w.move({i: half * w.eps(i) for i in u + in_s})
                continue
            if len(support) == 4:
                a = in_s[0]
                b = next(i for i in t_block if i != a)
                e = w.eps(a)
                delta = {i: half * w.eps(i) for i in u}
                delta.update({a: e * half, b: -e * half})
                w.move(delta)
                continue
            a, b = t_block
            if w[a] * w[b] < 0:
                w.move({i: half * w.eps(i) for i in u + [a, b]})
                continue
            e = w.eps(a)
            delta = {i: half * w.eps(i) for i in u}
            delta.update({a: e * half, b: -e * half})
            w.move(delta)
            return CaseTag.E6_IV
        if len(support) >= 5:
            return CaseTag.E6_I
        if CodeWord.of(support) in blocks:
            w.move({i: half * w.eps(i) for i in support})
            continue
        return CaseTag.E6_II


def reduce_E(space: CosetSpace, coset: Coset, start: Optional[Vector] = None) -> ReducedRep:
    """
    Reduce a coset of type E6, E7 or E8.

    E7/E8 first fold every coordinate into (-k/2, k/2] with k e_i, then
    clear coordinates equal to k/2 in pairs with Hamming blocks found by
    `find_quadruple` / `find_triple`. E6 first brings the {5,6,7} block
    below k/2 (moves k(e_s − e_r) and one half-root move through a block
    {p,q,a,b} of H_7(4)), then runs the same kind of clearing loop with
    the extra E6 moves that keep the {5,6,7} coefficients balanced.

    Raises:
        UsageError: For the zero coset, another type, or a start outside the coset
        ReductionError: If the result fails its case or leaves the coset
    """
    w = _prepare(space, coset, start, "E")
    k = space.k
    if space.rstype.rank == 6:
        _e6_normalise(w, k)
        tag = _e6_loop(w, k)
    else:
        for i in range(1, len(w.x) + 1):
            w.fold(i, Fraction(k))
        tag = _e78_loop(w, k, 8 if space.rstype.rank == 8 else 7)
    return _finish(space, coset, w, tag)


def reduce_F(space: CosetSpace, coset: Coset, start: Optional[Vector] = None) -> ReducedRep:
    """
    Reduce a coset of type F4.

    Integral representatives use the B4 moves; half-integral ones
    subtract k(ε_a e_a + ε_b e_b) until every |x_i| < k.
    """
    w = _prepare(space, coset, start, "F")
    k = space.k
    if all(c.denominator == 1 for c in w.x):
        _d_moves(w, k)
        return _finish(space, coset, w, CaseTag.F_I if len(w.support()) >= 2 else CaseTag.F_II)
    while True:
        big = [a for a in range(1, 5) if abs(w[a]) >= k]
        if not big:
            break
        a = big[0]
        b = next(i for i in range(1, 5) if i != a)
        w.move({a: w.eps(a) * k, b: w.eps(b) * k})
    return _finish(space, coset, w, CaseTag.F_III)


def reduce_G(space: CosetSpace, coset: Coset, start: Optional[Vector] = None) -> ReducedRep:
    """
    Reduce a coset of type G2.

    Integral representatives (those in Q_L) use the A2 moves; fractional
    ones subtract (x_a/|x_a|)k(e_a − e_b), a the largest and b the second
    largest coordinate in absolute value.
    """
    w = _prepare(space, coset, start, "G")
    k = space.k
    if all(c.denominator == 1 for c in w.x):
        _a_moves(w, k, (1, 2, 3))
        return _finish(space, coset, w, CaseTag.G_I)
    while True:
        a, b, _ = sorted((1, 2, 3), key=lambda i: (-abs(w[i]), i))
        if abs(w[a]) < k:
            break
        e = w.eps(a)
        w.move({a: e * k, b: -e * k})
    return _finish(space, coset, w, CaseTag.G_II)


_REDUCERS: Dict[str, Callable[..., ReducedRep]] = {
    "A": reduce_AD,
    "D": reduce_AD,
    "B": reduce_B,
    "C": reduce_C,
    "E": reduce_E,
    "F": reduce_F,
    "G": reduce_G,
}


def reduce_coset(space: CosetSpace, coset: Coset, start: Optional[Vector] = None, metrics=None) -> ReducedRep:
    """Reduce with the procedure for the space's type."""
    result = _REDUCERS[space.rstype.family](space, coset, start)
    if metrics is not None:
        metrics.record_reduction(space.rstype.name, result.case_tag.value)
    return result


def _all(values, low: Fraction, high: Fraction, low_strict: bool = True, high_strict: bool = False) -> bool:
    def ok(v: Fraction) -> bool:
        above = v > low if low_strict else v >= low
        below = v < high if high_strict else v <= high
        return above and below
    return all(ok(v) for v in values)


def case_holds(t: RootSystemType, k: int, gamma: Vector, tag: CaseTag) -> bool:
    """
    Check the inequalities of a case tag on the coordinates of gamma.

    Returns:
        bool: True iff gamma satisfies the conditions of `tag` for type t
    """
    x = gamma.coords
    support = gamma.support()
    mags = [abs(_at(x, i)) for i in support]
    integral = all(c.denominator == 1 for c in x)
    half = Fraction(k, 2)

    if tag in (CaseTag.AD_1, CaseTag.AD_I, CaseTag.B_I):
        family = {CaseTag.AD_1: "A", CaseTag.B_I: "B"}.get(tag, "D")
        return (t.family == family and integral and len(support) >= 2
                and _all(mags, Fraction(1), Fraction(k - 1), low_strict=False))
    if tag in (CaseTag.AD_II, CaseTag.B_II):
        family = "D" if tag == CaseTag.AD_II else "B"
        return (t.family == family and integral and len(support) == 1
                and _all(mags, Fraction(1), Fraction(k), low_strict=False))
    if tag == CaseTag.C:
        return (t.family == "C" and integral and len(support) >= 1
                and _all(mags, Fraction(1), Fraction(k), low_strict=False))

    if tag in (CaseTag.E78_I, CaseTag.E78_II, CaseTag.E78_III, CaseTag.E6_I, CaseTag.E6_II, CaseTag.E6_III):
        e6 = tag.value.startswith("E6")
        if t.family != "E" or (t.rank == 6) != e6:
            return False
        m = 8 if t.rank == 8 else 7
        if not support or not _all(mags, Fraction(0), half):
            return False
        at_half = sum(1 for v in mags if v == half)
        if tag in (CaseTag.E78_I, CaseTag.E6_I):
            return sum(1 for v in mags if v < half) >= 4 and at_half <= 1
        if tag in (CaseTag.E78_II, CaseTag.E6_II):
            return len(support) == 4 and at_half == 1 and CodeWord.of(support) not in hamming_blocks(m)
        return len(support) in (1, 2, 3)
    if tag == CaseTag.E6_IV:
        if t != RootSystemType("E", 6) or support != BLOCK_567:
            return False
        return (sum(1 for v in mags if half <= v < k) == 1
                and sum(1 for v in mags if 0 < v < half) == 2)

    if tag == CaseTag.F_I:
        return (t.family == "F" and integral and len(support) >= 2
                and _all(mags, Fraction(0), Fraction(k), high_strict=True))
    if tag == CaseTag.F_II:
        return t.family == "F" and integral and len(support) == 1 and _all(mags, Fraction(0), Fraction(k))
    if tag == CaseTag.F_III:
        return (t.family == "F" and len(support) == 4
                and all(v.denominator == 2 for v in mags)
                and _all(mags, Fraction(0), Fraction(k), high_strict=True))
    if tag == CaseTag.G_I:
        return t.family == "G" and integral and all(abs(c) < k for c in x)
    if tag == CaseTag.G_II:
        return (t.family == "G" and all(c.denominator == 3 for c in x)
                and _all([abs(c) for c in x], Fraction(0), Fraction(k), high_strict=True))
    return False

"""Arithmetic progressions inside a digit-restriction set.

A block of R consecutive free positions p+1, ..., p+R carries every
combination of R digits, so the b^R left endpoints obtained by sweeping
those digits (with everything else fixed) are equally spaced with gap
b^-(p+R).  Whenever the position set has unboundedly long runs this yields
arbitrarily long progressions constructively; when runs are bounded (the
periodic case) the construction fails for every k beyond b^R_max, which is
the finite-scale face of the dichotomy between full window density and
progression-free behaviour.

`search_ap` is the independent exact oracle: a quadratic scan over point
pairs with constant-time membership extension, returning the progression
with the lexicographically smallest (start, gap).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import DigitString, DigitSystem, canonical_string, membership
from .errors import BudgetExceeded, InvalidParams, RunNotFound
from .positions import PositionSet

#: default ceiling on the number of points fed to the quadratic search
SEARCH_BUDGET = 10**4

DEFAULT_HORIZON = 10**6


@dataclass(frozen=True)
class RunReport:
    """Longest block of consecutive members inside an interval.

    `elements` counts members ({4,5,6} scores 3); `steps` counts the
    unit jumps between them (one less).  Both are reported because the
    two conventions coexist in the literature.
    """

    interval: tuple[int, int]
    elements: int
    steps: int
    witness_start: Optional[int]
    witness_length: int

    def as_dict(self) -> dict:
        return {"interval": list(self.interval), "elements": self.elements,
                "steps": self.steps, "witness_start": self.witness_start,
                "witness_length": self.witness_length}


def max_run(positions: PositionSet, lo: int, hi: int) -> RunReport:
    """Leftmost longest run of consecutive members of S within [lo, hi]."""
    if not (1 <= lo <= hi):
        raise InvalidParams(f"need 1 <= lo <= hi, got [{lo}, {hi}]",
                            precondition="1 <= m <= n")
    best, best_start = 0, None
    run, run_start, last = 0, None, None
    for n in positions.members_up_to(hi):
        if n < lo:
            continue
        if last == n - 1:
            run += 1
        else:
            run, run_start = 1, n
        last = n
        if run > best:
            best, best_start = run, run_start
    return RunReport((lo, hi), best, max(best - 1, 0), best_start, best)


@dataclass(frozen=True)
class ArithmeticProgression:
    """k equally spaced points, exact start and gap.

    Progressions built from a run of free positions carry their digit
    strings as witnesses (all sharing one canonical tail); progressions
    found by the point-set oracle have no strings attached.
    """

    start: Fraction
    gap: Fraction
    length: int
    witnesses: Optional[tuple[DigitString, ...]] = None
    run_start: Optional[int] = None
    run_length: Optional[int] = None
    depth: Optional[int] = None
    tail_depth: Optional[int] = None

    def __post_init__(self):
        if self.length < 3:
            raise InvalidParams(f"progressions have length >= 3, "
                                f"got {self.length}", precondition="k >= 3")
        if self.gap <= 0:
            raise InvalidParams("gap must be positive", precondition="gap > 0")

    def points(self) -> list[Fraction]:
        return [self.start + i * self.gap for i in range(self.length)]

    def as_dict(self) -> dict:
        out = {
            "start": f"{self.start.numerator}/{self.start.denominator}",
            "gap": f"{self.gap.numerator}/{self.gap.denominator}",
            "length": self.length,
            "points": [f"{p.numerator}/{p.denominator}" for p in self.points()],
        }
        if self.run_start is not None:
            out["run"] = {"start": self.run_start, "length": self.run_length}
            out["depth"] = self.depth
            out["tail_depth"] = self.tail_depth
        if self.witnesses is not None:
            out["witnesses"] = ["".join(map(str, w.digits))
                                if max(w.digits, default=0) < 10
                                else list(w.digits)
                                for w in self.witnesses]
        return out


def _leftmost_run(positions: PositionSet, length: int,
                  horizon: int) -> Optional[int]:
    """Start of the leftmost run of `length` consecutive members, or None."""
    run, last = 0, None
    for n in positions.members_up_to(horizon):
        run = run + 1 if last == n - 1 else 1
        last = n
        if run >= length:
            return n - length + 1
    return None


def construct_ap(system: DigitSystem, positions: PositionSet, k: int,
                 horizon: int = DEFAULT_HORIZON,
                 tail_depth: Optional[int] = None) -> ArithmeticProgression:
    """Build a k-term progression from the leftmost adequate run.

    Needs a run of R = ceil(log_b k) consecutive free positions; the k
    points share one canonical tail, so consecutive differences are all
    exactly b^-(p+R) at any tail depth.
    """
    if k < 3:
        raise InvalidParams(f"need k >= 3, got {k}", precondition="k >= 3")
    b = system.base
    run_length = 1
    while b**run_length < k:
        run_length += 1
    if positions.horizon is not None:
        horizon = min(horizon, positions.horizon)
    run_start = _leftmost_run(positions, run_length, horizon)
    if run_start is None:
        raise RunNotFound(
            f"no run of {run_length} consecutive free positions within "
            f"horizon {horizon}; cannot seat {k} equally spaced points",
            precondition="run of ceil(log_b k) free positions within horizon")
    p = run_start - 1
    depth = p + run_length
    T = depth if tail_depth is None else tail_depth
    if T < depth:
        raise InvalidParams(f"tail depth {T} is above the run (need >= {depth})",
                            precondition="T >= p + R")
    # canonical digits everywhere, zeros across the run, then sweep the run
    base_string = canonical_string(DigitString(system, ()), positions, T)
    digits = list(base_string.digits)
    witnesses = []
    for i in range(k):
        value = i
        for offset in range(run_length):
            digits[depth - 1 - offset] = value % b
            value //= b
        witnesses.append(DigitString(system, tuple(digits)))
    for w in witnesses:
        if not membership(w, positions):
            raise InvalidParams("constructed witness fails membership")
    start = witnesses[0].value().as_fraction()
    gap = Fraction(1, b**depth)
    return ArithmeticProgression(start, gap, k, tuple(witnesses),
                                 run_start, run_length, depth, T)


def search_ap(points: Sequence[Fraction], k: int,
              budget: int | None = None) -> Optional[ArithmeticProgression]:
    """Exact quadratic search for a k-term progression among the points.

    Returns the progression with the smallest (start, gap), or None.
    Points must be sorted and distinct; larger inputs than the budget are
    rejected up front since the scan is O(n^2 k).
    """
    if k < 3:
        raise InvalidParams(f"need k >= 3, got {k}", precondition="k >= 3")
    budget = SEARCH_BUDGET if budget is None else budget
    pts = list(points)
    if len(pts) > budget:
        raise BudgetExceeded(
            f"{len(pts)} points exceed the search budget {budget}",
            precondition="#points <= budget")
    if any(b <= a for a, b in zip(pts, pts[1:])):
        raise InvalidParams("points must be sorted and distinct",
                            precondition="points sorted, distinct")
    if len(pts) < k:
        return None
    index = set(pts)
    top = pts[-1]
    for i in range(len(pts)):
        start = pts[i]
        for j in range(i + 1, len(pts)):
            gap = pts[j] - start
            if start + (k - 1) * gap > top:
                break
            got = 2
            nxt = pts[j] + gap
            while got < k and nxt in index:
                got += 1
                nxt += gap
            if got >= k:
                return ArithmeticProgression(start, gap, k)
    return None


@dataclass(frozen=True)
class LongestApResult:
    k_max: int
    witness: Optional[ArithmeticProgression]


def longest_ap(points: Sequence[Fraction],
               budget: int | None = None) -> LongestApResult:
    """Largest k with a k-term progression among the points.

    Repeatedly extends the best witness greedily, then asks the exact
    search for one more term; point sets with no 3-term progression get
    k_max = min(#points, 2) and no witness.
    """
    pts = list(points)
    if len(pts) < 3:
        return LongestApResult(len(pts), None)
    best = search_ap(pts, 3, budget)
    if best is None:
        return LongestApResult(2, None)
    index = set(pts)
    while True:
        # greedy extension of the current witness
        length = best.length
        nxt = best.start + length * best.gap
        while nxt in index:
            length += 1
            nxt += best.gap
        if length > best.length:
            best = ArithmeticProgression(best.start, best.gap, length)
        more = search_ap(pts, best.length + 1, budget)
        if more is None:
            return LongestApResult(best.length, best)
        best = more

"""Density profiles of a position set and the two dimension formulas.

Both dimensions of a digit-restriction set are affine in a density of the
position set:

    dim = log(#D)/log(b) + (1 - log(#D)/log(b)) * density

with the lower density liminf #(S & [1,N])/N for the Hausdorff dimension
and the window limsup sup_k #(S & (k, k+m])/m for the Assouad dimension.

Rule-based position sets know their exact limits (a period scan for
periodic sets, the construction target otherwise); the finite samples
reported alongside are corroborating evidence.  Explicit truncations only
ever get estimates, flagged as such.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import DigitSystem
from .errors import EmptySet, InvalidParams
from .positions import BlockConstruction, CubeBlocks, Periodic, PositionSet


def count_in_range(positions: PositionSet, offset: int, length: int) -> int:
    """#(S & {offset+1, ..., offset+length}), exactly."""
    return positions.count_in_range(offset, length)


@dataclass(frozen=True)
class DensityProfile:
    samples: tuple[tuple[int, int, Fraction], ...]  # (N, count, ratio)
    liminf_estimate: Fraction
    exact: bool
    basis: str

    def rows(self) -> list[dict]:
        return [{"checkpoint": n, "count": c,
                 "ratio": f"{r.numerator}/{r.denominator}",
                 "ratio_float": float(r)} for n, c, r in self.samples]


def lower_density_profile(positions: PositionSet,
                          checkpoints: Optional[Sequence[int]] = None,
                          ) -> DensityProfile:
    """Counts and ratios at increasing checkpoints plus a liminf value.

    The liminf is exact whenever the variant's rule determines it; for
    explicit truncations it is the minimum sampled ratio, an estimate at
    the horizon.
    """
    if checkpoints is None:
        limit = positions.horizon or 10**6
        checkpoints = positions.density_checkpoints(limit)
    checkpoints = list(checkpoints)
    if not checkpoints or any(n < 1 for n in checkpoints):
        raise InvalidParams("checkpoints must be positive", precondition="N >= 1")
    if any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
        raise InvalidParams("checkpoints must be increasing",
                            precondition="checkpoints increasing")
    samples = []
    for n in checkpoints:
        c = positions.count_up_to(n)
        samples.append((n, c, Fraction(c, n)))
    limit_value = positions.lower_density_limit()
    if limit_value is not None:
        return DensityProfile(tuple(samples), limit_value, True, "rule")
    estimate = min(r for _, _, r in samples)
    return DensityProfile(tuple(samples), estimate, False, "estimate at horizon")


@dataclass(frozen=True)
class WindowDensityReport:
    entries: tuple[tuple[int, int, Fraction, int], ...]  # (m, best count, ratio, offset)
    limsup_estimate: Fraction
    exact: bool
    basis: str
    offset_bound: int
    witness: Optional[tuple[int, int]] = None  # (offset, length) of a full window

    def rows(self) -> list[dict]:
        return [{"window": m, "count": c,
                 "ratio": f"{r.numerator}/{r.denominator}",
                 "ratio_float": float(r), "offset": k}
                for m, c, r, k in self.entries]


def window_density_profile(positions: PositionSet, window_sizes: Sequence[int],
                           offset_bound: int) -> WindowDensityReport:
    """Best window density per size, maximizing over offsets 0..offset_bound.

    For periodic sets one period of offsets is enough and the limsup is
    exact; the block variants have unboundedly long solid runs, so their
    limsup is exactly 1, witnessed by a fully occupied window.
    """
    window_sizes = sorted(set(window_sizes))
    if not window_sizes or window_sizes[0] < 1:
        raise InvalidParams("window sizes must be positive",
                            precondition="m >= 1")
    if offset_bound < 0:
        raise InvalidParams("offset bound must be >= 0", precondition="K >= 0")
    top = offset_bound + window_sizes[-1]
    positions._check_horizon(top)
    # prefix[i] = #(S & [1, i]) over the scanned range
    prefix = [0] * (top + 1)
    for n in positions.members_up_to(top):
        prefix[n] = 1
    for i in range(1, top + 1):
        prefix[i] += prefix[i - 1]
    k_top = min(offset_bound, positions.period) if isinstance(positions, Periodic) \
        else offset_bound
    entries = []
    for m in window_sizes:
        best, best_k = -1, 0
        for k in range(k_top + 1):
            c = prefix[k + m] - prefix[k]
            if c > best:
                best, best_k = c, k
        entries.append((m, best, Fraction(best, m), best_k))
    limit_value = positions.window_density_limsup()
    witness = None
    if limit_value == 1:
        wm = window_sizes[-1]
        wk = positions.full_window_offset(wm, top)
        if wk is not None:
            witness = (wk, wm)
    if limit_value is not None:
        return WindowDensityReport(tuple(entries), limit_value, True, "rule",
                                   offset_bound, witness)
    estimate = max(r for _, _, r, _ in entries)
    return WindowDensityReport(tuple(entries), estimate, False,
                               "estimate at horizon", offset_bound, witness)


@dataclass(frozen=True)
class DimensionReport:
    base_term: float
    hausdorff: float
    assouad: float
    lower_density: Fraction
    window_density: Fraction
    exact: bool

    def as_dict(self) -> dict:
        return {
            "base_term": self.base_term,
            "hausdorff": self.hausdorff,
            "assouad": self.assouad,
            "lower_density": f"{self.lower_density.numerator}/"
                             f"{self.lower_density.denominator}",
            "window_density": f"{self.window_density.numerator}/"
                              f"{self.window_density.denominator}",
            "exact": self.exact,
        }


def _affine_dimension(system: DigitSystem, density: Fraction) -> float:
    """base_term + (1 - base_term) * density, with the exact edge cases
    pinned so that density 0/1 and #D = 1 give exact floats."""
    if density == 1:
        return 1.0
    if system.digit_count == 1:
        return float(density)
    base = system.base_term()
    if density == 0:
        return base
    return base + (1.0 - base) * float(density)


def hausdorff_dimension(system: DigitSystem, profile: DensityProfile) -> float:
    return _affine_dimension(system, profile.liminf_estimate)


def assouad_dimension(system: DigitSystem, report: WindowDensityReport) -> float:
    return _affine_dimension(system, report.limsup_estimate)


def dimension_report(system: DigitSystem, profile: DensityProfile,
                     window: WindowDensityReport) -> DimensionReport:
    return DimensionReport(
        base_term=system.base_term(),
        hausdorff=hausdorff_dimension(system, profile),
        assouad=assouad_dimension(system, window),
        lower_density=profile.liminf_estimate,
        window_density=window.limsup_estimate,
        exact=profile.exact and window.exact,
    )


def default_window_plan(positions: PositionSet) -> tuple[list[int], int]:
    """Window sizes and offset bound adapted to the variant's structure.

    The offset bound is the largest block boundary the plan explores, so
    the witnessing full window (when one exists) is inside the scan.
    """
    if isinstance(positions, Periodic):
        q = positions.period
        return [q, 2 * q, 4 * q, 8 * q], q
    if isinstance(positions, CubeBlocks):
        sizes = [2, 4, 8, 16, 30]
        return sizes, sizes[-1] ** 3
    if isinstance(positions, BlockConstruction):
        sizes = [2, 4, 8, 16]
        return sizes, positions.full_window_offset(sizes[-1]) + sizes[-1]
    horizon = positions.horizon or 4096
    m = max(1, horizon // 8)
    return [m], horizon - m


@dataclass(frozen=True)
class CoveringStats:
    radius: Fraction
    window_radius: Fraction
    per_center: tuple[tuple[Fraction, int], ...]
    max_count: int

    def rows(self) -> list[dict]:
        return [{"center": f"{c.numerator}/{c.denominator}",
                 "count": n} for c, n in self.per_center]


def covering_count(points: Sequence[Fraction], radius: Fraction,
                   window_radius: Fraction,
                   centers: Sequence[Fraction]) -> CoveringStats:
    """Greedy interval covering, optimal in one dimension.

    For each center x, the points of [x - R, x + R] are covered left to
    right by closed intervals of length 2r anchored at the leftmost point
    not yet covered; the statistic is the maximum count over centers.
    """
    pts = list(points)
    if not pts:
        raise EmptySet("covering of an empty point set",
                       precondition="points nonempty")
    if any(b <= a for a, b in zip(pts, pts[1:])):
        raise InvalidParams("points must be sorted and distinct",
                            precondition="points sorted")
    if not (0 < radius < window_radius):
        raise InvalidParams(f"need 0 < r < R, got r={radius}, R={window_radius}",
                            precondition="0 < r < R")
    per_center = []
    best = 0
    for x in centers:
        lo = bisect_left(pts, x - window_radius)
        hi = bisect_right(pts, x + window_radius)
        count = 0
        i = lo
        while i < hi:
            count += 1
            top = pts[i] + 2 * radius
            while i < hi and pts[i] <= top:
                i += 1
        per_center.append((x, count))
        best = max(best, count)
    return CoveringStats(radius, window_radius, tuple(per_center), best)

"""Fourier coefficients of the natural measure on a digit-restriction set.

The natural measure draws the digit at position n uniformly from the full
alphabet when n is free and uniformly from the allowed set otherwise, all
positions independent.  Its transform at an integer frequency m therefore
factors over positions:

    mu^(m) = prod_n factor_n,
    factor_n = mean over d in A_n of exp(-2 pi i m d b^-n),

and truncating the product at depth N equals exactly the transform of the
uniform atomic measure on the M_N left endpoints of the depth-N strings.
The neglected factors satisfy |1 - factor_n| <= 2 pi |m| (b-1) b^-n, whose
geometric sum gives the rigorous truncation bound exp(2 pi |m| b^-N) - 1.

Phases are reduced exactly: m*d mod b^n is computed in integer arithmetic
before any float enters, so huge frequencies lose no precision to angle
wrap-around.

At m = b^k the first k factors are exactly 1 and the factor at position
k+1 is the full-alphabet mean, which vanishes when k+1 is free.  When
k+1 is restricted the coefficient stays away from zero; scanning the
family b^k with k+1 outside S witnesses, at finite scale, that the
coefficients do not tend to zero whenever the complement of S is infinite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .core import DigitSystem
from .errors import BudgetExceeded, ComplementFinite, InvalidParams
from .positions import PositionSet

TWO_PI = 2.0 * math.pi

#: default ceiling on exhaustive per-block frequency maxima
BLOCK_BUDGET = 4096


@dataclass(frozen=True)
class NaturalMeasure:
    system: DigitSystem
    positions: PositionSet

    def alphabet(self, n: int) -> tuple[int, ...]:
        if self.positions.contains(n):
            return tuple(range(self.system.base))
        return self.system.digits


@dataclass(frozen=True)
class FourierValue:
    frequency: int
    value: complex
    depth: int
    tail_bound: float

    def as_dict(self) -> dict:
        return {"frequency": self.frequency, "depth": self.depth,
                "re": self.value.real, "im": self.value.imag,
                "abs": abs(self.value), "tail_bound": self.tail_bound}


def digit_factor(measure: NaturalMeasure, n: int, m: int) -> complex:
    """Single-position factor of the product transform; |factor| <= 1."""
    if n < 1:
        raise InvalidParams(f"positions are indexed from 1, got {n}",
                            precondition="n >= 1")
    if m == 0:
        return complex(1.0, 0.0)
    scale = measure.system.base**n
    total = 0j
    for d in measure.alphabet(n):
        r = (m * d) % scale
        total += cmath.exp(complex(0.0, -TWO_PI * (r / scale)))
    return total / len(measure.alphabet(n))


def tail_bound(system: DigitSystem, m: int, depth: int) -> float:
    """Rigorous bound on the neglected factors beyond `depth`."""
    if m == 0:
        return 0.0
    x = TWO_PI * abs(m) * float(Fraction(1, system.base**depth))
    if x > 700.0:  # expm1 overflows; the bound is vacuous anyway
        return math.inf
    return math.expm1(x)


def fourier_coefficient(measure: NaturalMeasure, m: int,
                        depth: int) -> FourierValue:
    """Truncated product transform at integer frequency m.

    The value equals the transform of the depth-`depth` atomic
    discretization exactly (up to roundoff); the reported tail bound
    covers all omitted factors.
    """
    if depth < 1:
        raise InvalidParams(f"depth must be >= 1, got {depth}",
                            precondition="N >= 1")
    value = complex(1.0, 0.0)
    for n in range(1, depth + 1):
        value *= digit_factor(measure, n, m)
    return FourierValue(m, value, depth, tail_bound(measure.system, m, depth))


def depth_for_tolerance(system: DigitSystem, m: int, tolerance: float) -> int:
    """Smallest depth whose tail bound is at most `tolerance`."""
    if tolerance <= 0:
        raise InvalidParams("tolerance must be positive",
                            precondition="tolerance > 0")
    depth = 1
    while tail_bound(system, m, depth) > tolerance:
        depth += 1
    return depth


def _require_infinite_complement(measure: NaturalMeasure, horizon: int) -> None:
    if measure.positions.horizon is not None:
        horizon = min(horizon, measure.positions.horizon)
    gap = measure.positions.first_gap_after(0, horizon)
    if gap is None:
        raise ComplementFinite(
            f"every position up to {horizon} is free; the set contains an "
            f"interval at this scale and the scan is vacuous",
            precondition="complement of S infinite")


def nondecay_scan(measure: NaturalMeasure, exponents, tolerance: float = 1e-12,
                  block_maxima: bool = False,
                  block_budget: int | None = None) -> list[dict]:
    """|mu^(b^k)| for each exponent k, at depth meeting the tolerance.

    Each row records whether position k+1 is free: the coefficient
    vanishes in that case and stays bounded away from zero otherwise.
    Optionally also reports max |mu^(m)| over each block b^k <= m < b^(k+1)
    (exhaustive, budget-guarded).
    """
    exponents = list(exponents)
    if not exponents or any(k < 0 for k in exponents):
        raise InvalidParams("exponents must be non-negative",
                            precondition="k >= 0")
    block_budget = BLOCK_BUDGET if block_budget is None else block_budget
    b = measure.system.base
    worst_depth = depth_for_tolerance(measure.system, b**max(exponents),
                                      tolerance)
    _require_infinite_complement(measure, worst_depth)
    rows = []
    for k in sorted(exponents):
        m = b**k
        depth = depth_for_tolerance(measure.system, m, tolerance)
        fv = fourier_coefficient(measure, m, depth)
        row = {"exponent": k, "frequency": m, "depth": depth,
               "abs": abs(fv.value), "re": fv.value.real, "im": fv.value.imag,
               "tail_bound": fv.tail_bound,
               "next_position_free": measure.positions.contains(k + 1)}
        if block_maxima:
            span = b**(k + 1) - b**k
            if span > block_budget:
                raise BudgetExceeded(
                    f"block at exponent {k} has {span} frequencies, over "
                    f"budget {block_budget}",
                    precondition="block span <= budget")
            top = 0.0
            arg = m
            block_depth = depth_for_tolerance(measure.system, b**(k + 1),
                                              tolerance)
            for freq in range(m, b**(k + 1)):
                v = fourier_coefficient(measure, freq, block_depth)
                if abs(v.value) > top:
                    top, arg = abs(v.value), freq
            row["block_max_abs"] = top
            row["block_max_frequency"] = arg
        rows.append(row)
    return rows

"""Exact representation of digit systems and finite-depth approximations.

A digit-restriction set is determined by a base b, an allowed digit set D
(nonempty proper subset of {0, ..., b-1}), and a position set S: points of
[0,1] whose digit at position n is free when n is in S and lies in D
otherwise.  At depth n the set meets exactly

    M_n = b^(#(S & [1,n])) * (#D)^(n - #(S & [1,n]))

b-adic intervals of generation n; enumerating their left endpoints is the
workhorse for every downstream oracle.  Everything here is integer
arithmetic: values are carried as numerator/b^depth pairs, never floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering

from .errors import BudgetExceeded, InvalidParams
from .positions import PositionSet

#: default ceiling on the number of enumerated depth-n strings
ENUMERATION_BUDGET = 2**24


@dataclass(frozen=True)
class DigitSystem:
    """Base b and the allowed digit set for restricted positions."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if self.base < 2:
            raise InvalidParams(f"base must be >= 2, got {self.base}",
                                precondition="b >= 2")
        object.__setattr__(self, "digits", tuple(self.digits))
        d = self.digits
        if not d:
            raise InvalidParams("allowed digit set is empty",
                                precondition="D nonempty")
        if len(d) >= self.base:
            raise InvalidParams(
                f"allowed digit set must be a proper subset of 0..{self.base - 1}",
                precondition="#D <= b-1")
        if any(x < 0 or x >= self.base for x in d):
            raise InvalidParams(
                f"digits must lie in [0, {self.base - 1}]: {list(d)}",
                precondition="D subset of [0, b)")
        if any(y <= x for x, y in zip(d, d[1:])):
            raise InvalidParams("digit set must be strictly increasing",
                                precondition="D sorted, no duplicates")

    @property
    def digit_count(self) -> int:
        return len(self.digits)

    @property
    def min_digit(self) -> int:
        return self.digits[0]

    def base_term(self) -> float:
        """log(#D)/log(b), the dimension of the fully restricted set."""
        return math.log(self.digit_count) / math.log(self.base)

    def describe(self) -> dict:
        return {"base": self.base, "digits": list(self.digits)}


@total_ordering
@dataclass(frozen=True)
class BAdicPoint:
    """Exact value numerator / base^scale, kept unreduced.

    The (numerator, scale) pair is the digit string in disguise, so no
    reduction is performed; comparisons cross-multiply instead.
    """

    numerator: int
    scale: int
    base: int

    def __post_init__(self):
        if self.scale < 0:
            raise InvalidParams("scale must be >= 0")
        if not (0 <= self.numerator <= self.base**self.scale):
            raise InvalidParams(
                f"{self.numerator}/{self.base}^{self.scale} is outside [0, 1]",
                precondition="0 <= a <= b^n")

    def as_fraction(self) -> Fraction:
        return Fraction(self.numerator, self.base**self.scale)

    def _cross(self, other: "BAdicPoint") -> tuple[int, int]:
        if not isinstance(other, BAdicPoint):
            raise TypeError(f"cannot compare BAdicPoint with {type(other)!r}")
        if other.base != self.base:
            raise InvalidParams("cannot compare points from different bases")
        if self.scale >= other.scale:
            return self.numerator, other.numerator * self.base**(self.scale - other.scale)
        return self.numerator * self.base**(other.scale - self.scale), other.numerator

    def __eq__(self, other):
        if not isinstance(other, BAdicPoint):
            return NotImplemented
        a, b = self._cross(other)
        return a == b

    def __lt__(self, other):
        a, b = self._cross(other)
        return a < b

    def __hash__(self):
        return hash(self.as_fraction())

    def __float__(self):
        return self.numerator / self.base**self.scale

    def display(self) -> str:
        if self.scale == 0:
            return str(self.numerator)
        return f"{self.numerator}/{self.base}^{self.scale}"


@dataclass(frozen=True)
class DigitString:
    """A finite digit expansion x_1 x_2 ... x_n in the given system."""

    system: DigitSystem
    digits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(self.digits))
        b = self.system.base
        if any(x < 0 or x >= b for x in self.digits):
            raise InvalidParams(f"digits out of range for base {b}: "
                                f"{list(self.digits)}")

    def __len__(self) -> int:
        return len(self.digits)

    def value(self) -> BAdicPoint:
        num = 0
        for d in self.digits:
            num = num * self.system.base + d
        return BAdicPoint(num, len(self.digits), self.system.base)


def membership(x: DigitString, positions: PositionSet) -> bool:
    """True iff every restricted position of x carries an allowed digit."""
    allowed = set(x.system.digits)
    for j, d in enumerate(x.digits, start=1):
        if not positions.contains(j) and d not in allowed:
            return False
    return True


def expected_count(system: DigitSystem, positions: PositionSet, depth: int) -> int:
    """M_depth from the counting formula, without enumerating."""
    free = positions.count_up_to(depth)
    return system.base**free * system.digit_count**(depth - free)


@dataclass(frozen=True)
class Approximation:
    """All admissible depth-n strings, as sorted scaled integers.

    `numerators` holds the values times base^depth; decoding a numerator
    back to its digit string is exact, so the list doubles as the string
    enumeration without materializing tuples.
    """

    system: DigitSystem
    positions: PositionSet
    depth: int
    numerators: tuple[int, ...] = field(repr=False)

    @property
    def count(self) -> int:
        return len(self.numerators)

    def values(self) -> list[BAdicPoint]:
        return [BAdicPoint(a, self.depth, self.system.base)
                for a in self.numerators]

    def fractions(self) -> list[Fraction]:
        scale = self.system.base**self.depth
        return [Fraction(a, scale) for a in self.numerators]

    def digit_string(self, index: int) -> DigitString:
        a = self.numerators[index]
        b = self.system.base
        digits = []
        for _ in range(self.depth):
            a, d = divmod(a, b)
            digits.append(d)
        return DigitString(self.system, tuple(reversed(digits)))

    def members(self):
        return [self.digit_string(i) for i in range(self.count)]


def enumerate_approximation(system: DigitSystem, positions: PositionSet,
                            depth: int, budget: int | None = None) -> Approximation:
    """Enumerate every admissible depth-n string, ascending by value.

    Raises BudgetExceeded (reporting the exact count) when M_depth is over
    budget, before any enumeration work happens.
    """
    if depth < 1:
        raise InvalidParams(f"depth must be >= 1, got {depth}",
                            precondition="n >= 1")
    budget = ENUMERATION_BUDGET if budget is None else budget
    total = expected_count(system, positions, depth)
    if total > budget:
        raise BudgetExceeded(
            f"enumeration at depth {depth} has {total} members, "
            f"over budget {budget}",
            precondition="M_n <= budget")
    free_alphabet = tuple(range(system.base))
    restricted = system.digits
    nums = [0]
    for n in range(1, depth + 1):
        alphabet = free_alphabet if positions.contains(n) else restricted
        b = system.base
        nums = [a * b + d for a in nums for d in alphabet]
    # prefix-major generation over ascending alphabets is already sorted
    return Approximation(system, positions, depth, tuple(nums))


def canonical_string(prefix: DigitString, positions: PositionSet,
                     tail_depth: int) -> DigitString:
    """Extend an admissible prefix to `tail_depth` by the canonical rule:
    digit 0 at free positions, the smallest allowed digit elsewhere.

    Zero is not always allowed at restricted positions, hence min(D) there;
    the result always satisfies the membership predicate.
    """
    if tail_depth < len(prefix):
        raise InvalidParams(
            f"tail depth {tail_depth} is shorter than the prefix "
            f"({len(prefix)})", precondition="T >= len(prefix)")
    if not membership(prefix, positions):
        raise InvalidParams("prefix violates the digit restriction",
                            precondition="prefix admissible")
    system = prefix.system
    digits = list(prefix.digits)
    for n in range(len(prefix) + 1, tail_depth + 1):
        digits.append(0 if positions.contains(n) else system.min_digit)
    return DigitString(system, tuple(digits))


def canonical_point(prefix: DigitString, positions: PositionSet,
                    tail_depth: int) -> BAdicPoint:
    """Exact value of the canonical completion of `prefix`."""
    return canonical_string(prefix, positions, tail_depth).value()

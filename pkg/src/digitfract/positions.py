"""Position sets: which digit positions of a base-b expansion are free.

A position set S is a subset of {1, 2, 3, ...}.  Digits at positions in S
range over the whole alphabet {0, ..., b-1}; digits at positions outside S
are restricted to the allowed digit set.  All rule-based variants here are
infinite with infinite complement; the explicit variant is a finite
truncation valid only up to its horizon.

Membership, counting and run queries are exact integer computations.
Instances are immutable after construction except for the lazily grown
segment table of the block constructions, which is guarded by a lock so
concurrent readers are safe.
"""

from __future__ import annotations

import threading
from bisect import bisect_left, bisect_right
from fractions import Fraction
from typing import Iterator, Optional

from .errors import HorizonExceeded, InvalidParams


def _check_position(n: int) -> None:
    if n < 1:
        raise InvalidParams(f"positions are indexed from 1, got {n}",
                            precondition="n >= 1")


def icbrt(n: int) -> int:
    """Largest integer c with c**3 <= n (n >= 0)."""
    if n < 0:
        raise ValueError("icbrt of negative value")
    c = round(n ** (1.0 / 3.0))
    while c > 0 and c * c * c > n:
        c -= 1
    while (c + 1) ** 3 <= n:
        c += 1
    return c


class PositionSet:
    """Base interface; concrete variants override the rule methods."""

    #: highest queryable position, or None when unbounded
    horizon: Optional[int] = None

    def contains(self, n: int) -> bool:
        raise NotImplementedError

    def members_up_to(self, limit: int) -> Iterator[int]:
        """Members of S in [1, limit], ascending."""
        self._check_horizon(limit)
        for n in range(1, limit + 1):
            if self.contains(n):
                yield n

    def count_up_to(self, limit: int) -> int:
        if limit <= 0:
            return 0
        return sum(1 for _ in self.members_up_to(limit))

    def count_in_range(self, offset: int, length: int) -> int:
        """Exact count of S inside {offset+1, ..., offset+length}."""
        if offset < 0 or length < 1:
            raise InvalidParams("need offset >= 0 and length >= 1",
                                precondition="k >= 0, m >= 1")
        return self.count_up_to(offset + length) - self.count_up_to(offset)

    def first_gap_after(self, n: int, limit: int) -> Optional[int]:
        """Smallest integer in (n, limit] not in S, or None."""
        for j in range(n + 1, limit + 1):
            if not self.contains(j):
                return j
        return None

    # -- structure hooks used by the density/dimension layer ------------

    def lower_density_limit(self) -> Optional[Fraction]:
        """Exact liminf of #(S & [1,N])/N when the rule pins it down."""
        return None

    def window_density_limsup(self) -> Optional[Fraction]:
        """Exact limsup over window sizes of the best window density."""
        return None

    def density_checkpoints(self, limit: int) -> list[int]:
        """Checkpoints along which the lower density attains its limit."""
        self._check_horizon(limit)
        step = max(1, limit // 8)
        return list(range(step, limit + 1, step))

    def full_window_offset(self, length: int, search_limit: int) -> Optional[int]:
        """Offset k with {k+1, ..., k+length} entirely inside S, if any."""
        run = 0
        last = None
        for n in self.members_up_to(search_limit):
            run = run + 1 if last == n - 1 else 1
            last = n
            if run >= length:
                return n - length
        return None

    def describe(self) -> dict:
        raise NotImplementedError

    def _check_horizon(self, n: int) -> None:
        if self.horizon is not None and n > self.horizon:
            raise HorizonExceeded(
                f"query at {n} exceeds horizon {self.horizon}",
                precondition="n <= horizon")


class Periodic(PositionSet):
    """n is in S iff n mod period lies in the residue set.

    The residue set must be a nonempty proper subset of {0, ..., period-1},
    which keeps both S and its complement infinite.
    """

    def __init__(self, period: int, residues) -> None:
        if period < 1:
            raise InvalidParams(f"period must be >= 1, got {period}",
                                precondition="q >= 1")
        res = sorted(set(residues))
        if not res:
            raise InvalidParams("residue set is empty",
                                precondition="R nonempty")
        if res[0] < 0 or res[-1] >= period:
            raise InvalidParams(f"residues must lie in [0, {period - 1}]",
                                precondition="R subset of [0, q)")
        if len(res) >= period:
            raise InvalidParams(
                "residue set must be a proper subset of the period",
                precondition="R proper")
        self.period = period
        self.residues = tuple(res)
        self._residue_set = frozenset(res)

    def contains(self, n: int) -> bool:
        _check_position(n)
        return (n % self.period) in self._residue_set

    def count_up_to(self, limit: int) -> int:
        if limit <= 0:
            return 0
        q = self.period
        total = 0
        for r in self.residues:
            if r == 0:
                total += limit // q
            elif r <= limit:
                total += (limit - r) // q + 1
        return total

    def members_up_to(self, limit: int) -> Iterator[int]:
        q = self.period
        for block in range(0, limit + 1, q):
            for r in self.residues:
                n = block + r
                if 1 <= n <= limit:
                    yield n

    def lower_density_limit(self) -> Fraction:
        return Fraction(len(self.residues), self.period)

    def window_density_limsup(self) -> Fraction:
        return Fraction(len(self.residues), self.period)

    def density_checkpoints(self, limit: int) -> list[int]:
        q = self.period
        pts = []
        n = q
        while n <= limit:
            pts.append(n)
            n *= 2
        return pts or [limit]

    def max_run_length(self) -> int:
        """Longest block of consecutive members; finite by properness."""
        # scan two periods to catch runs crossing the wrap point
        best = run = 0
        last = None
        for n in range(1, 2 * self.period + 1):
            if self.contains(n):
                run = run + 1 if last == n - 1 else 1
                last = n
                best = max(best, run)
        return best

    def describe(self) -> dict:
        return {"variant": "periodic", "period": self.period,
                "residues": list(self.residues)}


class CubeBlocks(PositionSet):
    """Union over n >= 1 of the blocks {n^3 + 1, ..., n^3 + n}.

    The block lengths grow without bound while the density along N = n^3
    tends to zero, so this is the zero-dimension / full-window example.
    """

    def contains(self, n: int) -> bool:
        _check_position(n)
        c = icbrt(n - 1) if n > 1 else 0
        # candidate block: the one whose cube is just below n
        for m in (c, c + 1):
            if m >= 1 and m**3 < n <= m**3 + m:
                return True
        return False

    def members_up_to(self, limit: int) -> Iterator[int]:
        m = 1
        while m**3 < limit:
            top = min(m**3 + m, limit)
            yield from range(m**3 + 1, top + 1)
            m += 1

    def count_up_to(self, limit: int) -> int:
        if limit <= 0:
            return 0
        total = 0
        m = 1
        while m**3 < limit:
            total += min(m, limit - m**3)
            m += 1
        return total

    def lower_density_limit(self) -> Fraction:
        return Fraction(0)

    def window_density_limsup(self) -> Fraction:
        return Fraction(1)

    def density_checkpoints(self, limit: int) -> list[int]:
        return [m**3 for m in range(1, icbrt(limit) + 1)] or [limit]

    def full_window_offset(self, length: int, search_limit: int = 0) -> Optional[int]:
        # block of size `length` starts right after length**3
        return length**3

    def describe(self) -> dict:
        return {"variant": "cube-blocks"}


class BlockConstruction(PositionSet):
    """Position set built segment by segment along a fast-growing scale
    sequence M_1 < M_2 < ..., hitting a prescribed count at every even
    scale point while packing one solid block per segment.

    Segment j occupies (M_j, M_{j+1}].  It consists of a block of
    consecutive integers starting at M_j + 1 together with the isolated
    endpoint M_{j+1}.  Odd segments are sized so that the cumulative count
    at M_{2i} equals floor(target(i) * M_{2i}) exactly; even segments take
    a fixed proportion of their segment length.  Two flavours:

      kind="intermediate": target density s in (0, 1); even proportion
          (2i-1)/(2i).
      kind="full": target density (2i-1)/(2i) -> 1; even proportion
          (2i)/(2i+1).

    Every segment leaves a nonempty gap before its isolated endpoint, so
    the complement is infinite.  The scale rule is M_1 = 1, M_2 given,
    M_{n+1} = n * M_n, which forces M_n / M_{n+1} -> 0.
    """

    def __init__(self, kind: str, m2: int, s: Optional[Fraction] = None) -> None:
        if kind not in ("intermediate", "full"):
            raise InvalidParams(f"unknown block construction kind {kind!r}")
        if m2 <= 1:
            raise InvalidParams(
                f"second scale value must exceed 1, got {m2}",
                precondition="M strictly increasing")
        if kind == "intermediate":
            if s is None or not (0 < s < 1):
                raise InvalidParams(
                    f"target density must lie strictly between 0 and 1, got {s}",
                    precondition="0 < s < 1")
            if s * m2 <= 1:
                raise InvalidParams(
                    f"target {s} times second scale {m2} must exceed 1",
                    precondition="s * M_2 > 1")
        self.kind = kind
        self.s = s
        self._m = [1, m2]              # M_1, M_2, ...
        self._segments: list[dict] = []  # materialized segment records
        self._lock = threading.Lock()

    # -- scale sequence --------------------------------------------------

    def scale(self, index: int) -> int:
        """M_index (1-based)."""
        if index < 1:
            raise InvalidParams(f"scale index must be >= 1, got {index}")
        while len(self._m) < index:
            n = len(self._m)
            self._m.append(n * self._m[-1])
        return self._m[index - 1]

    def _odd_target(self, i: int) -> int:
        m2i = self.scale(2 * i)
        if self.kind == "intermediate":
            return (self.s.numerator * m2i) // self.s.denominator
        return ((2 * i - 1) * m2i) // (2 * i)

    def _even_length(self, i: int) -> int:
        gap = self.scale(2 * i + 1) - self.scale(2 * i)
        if self.kind == "intermediate":
            return ((2 * i - 1) * gap) // (2 * i)
        return (2 * i * gap) // (2 * i + 1)

    # -- segment table ---------------------------------------------------

    def _materialize_through(self, position: int) -> None:
        """Extend the segment table until it covers `position`."""
        with self._lock:
            while not self._segments or self._segments[-1]["hi"] < position:
                j = len(self._segments) + 1
                lo, hi = self.scale(j), self.scale(j + 1)
                before = self._segments[-1]["count_after"] if self._segments else 0
                if j % 2 == 1:
                    i = (j + 1) // 2
                    contribution = self._odd_target(i) - before
                else:
                    contribution = self._even_length(j // 2)
                if contribution < 1:
                    raise InvalidParams(
                        f"segment {j} of the block construction is empty "
                        f"(contribution {contribution})",
                        precondition="each segment holds >= 1 member")
                block_end = lo + contribution - 1
                if block_end > hi - 1:
                    raise InvalidParams(
                        f"segment {j} block overflows its segment "
                        f"({block_end} > {hi - 1})",
                        precondition="block fits below the segment endpoint")
                self._segments.append({
                    "j": j, "lo": lo, "hi": hi,
                    "block_end": block_end,
                    "count_before": before,
                    "count_after": before + contribution,
                })

    def _segment_for(self, n: int) -> Optional[dict]:
        """Segment with lo < n <= hi, or None when n <= 1."""
        if n <= 1:
            return None
        self._materialize_through(n)
        los = [seg["lo"] for seg in self._segments]
        idx = bisect_left(los, n) - 1
        return self._segments[idx]

    def contains(self, n: int) -> bool:
        _check_position(n)
        seg = self._segment_for(n)
        if seg is None:
            return False
        return n <= seg["block_end"] or n == seg["hi"]

    def count_up_to(self, limit: int) -> int:
        if limit <= 1:
            return 0
        seg = self._segment_for(limit)
        inside = max(0, min(limit, seg["block_end"]) - seg["lo"])
        if limit >= seg["hi"]:
            inside += 1
        return seg["count_before"] + inside

    def members_up_to(self, limit: int) -> Iterator[int]:
        if limit <= 1:
            return
        self._materialize_through(limit)
        for seg in self._segments:
            if seg["lo"] >= limit:
                break
            yield from range(seg["lo"] + 1, min(seg["block_end"], limit) + 1)
            if seg["hi"] <= limit:
                yield seg["hi"]

    def lower_density_limit(self) -> Fraction:
        return self.s if self.kind == "intermediate" else Fraction(1)

    def window_density_limsup(self) -> Fraction:
        return Fraction(1)

    def density_checkpoints(self, limit: int) -> list[int]:
        pts = []
        i = 1
        while self.scale(2 * i) <= limit:
            pts.append(self.scale(2 * i))
            i += 1
        return pts or [limit]

    def full_window_offset(self, length: int, search_limit: int = 0) -> Optional[int]:
        j = 1
        while True:
            self._materialize_through(self.scale(j) + 1)
            seg = self._segments[j - 1]
            if seg["block_end"] - seg["lo"] >= length:
                return seg["lo"]
            j += 1

    def segment_table(self, count: int) -> list[dict]:
        """First `count` materialized segment records (copies)."""
        self._materialize_through(self.scale(count + 1))
        return [dict(seg) for seg in self._segments[:count]]

    def describe(self) -> dict:
        out = {"variant": "intermediate-density" if self.kind == "intermediate"
               else "full-density", "m2": self._m[1]}
        if self.s is not None:
            out["s"] = f"{self.s.numerator}/{self.s.denominator}"
        return out


class ExplicitTruncated(PositionSet):
    """A finite, explicitly listed truncation of a position set.

    Valid only up to its horizon; any query beyond it is a hard error
    rather than a silent extrapolation.
    """

    def __init__(self, members, horizon: int) -> None:
        mem = list(members)
        if any(m < 1 for m in mem):
            raise InvalidParams("members must be positive integers",
                                precondition="members >= 1")
        if any(b <= a for a, b in zip(mem, mem[1:])):
            raise InvalidParams("member list must be strictly increasing",
                                precondition="strictly increasing members")
        if horizon < 1 or (mem and mem[-1] > horizon):
            raise InvalidParams(
                f"horizon {horizon} does not cover the member list",
                precondition="members <= horizon")
        self.members = tuple(mem)
        self.horizon = horizon

    def contains(self, n: int) -> bool:
        _check_position(n)
        self._check_horizon(n)
        i = bisect_left(self.members, n)
        return i < len(self.members) and self.members[i] == n

    def members_up_to(self, limit: int) -> Iterator[int]:
        self._check_horizon(limit)
        return iter(self.members[:bisect_right(self.members, limit)])

    def count_up_to(self, limit: int) -> int:
        if limit <= 0:
            return 0
        self._check_horizon(limit)
        return bisect_right(self.members, limit)

    def density_checkpoints(self, limit: int) -> list[int]:
        self._check_horizon(limit)
        step = max(1, limit // 4)
        return list(range(step, limit + 1, step))

    def describe(self) -> dict:
        return {"variant": "explicit", "horizon": self.horizon,
                "count": len(self.members)}

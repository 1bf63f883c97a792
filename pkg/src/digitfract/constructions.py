"""Builders for position sets with a prescribed density profile.

For any target s in [0, 1] these produce an S whose lower density is s
while the best window density tends to 1, so that (with base 2 and digits
{0}) the restricted set has Hausdorff dimension s and full window density,
yet contains arbitrarily long blocks of free positions.

Three regimes:
  s = 0        cube blocks {n^3+1..n^3+n};
  0 < s < 1    block construction hitting floor(s * M_2i) members at every
               even scale point, exactly;
  s = 1        block construction with targets (2i-1)/(2i) -> 1.

The reciprocal-cube fixture {1/n^3} is the classical example of a set of
full Assouad dimension with no 3-term arithmetic progression; it serves as
a negative control for the progression search.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InvalidParams
from .positions import BlockConstruction, CubeBlocks, PositionSet


def default_m2(s: Fraction) -> int:
    """Default second scale value: smallest convenient M_2 with s*M_2 > 1."""
    if s <= 0:
        return 2
    return max(math.ceil(Fraction(2) / s), 2)


def build_case1(s, m2: int | None = None) -> BlockConstruction:
    """Block construction with lower density exactly s, 0 < s < 1."""
    s = Fraction(s)
    if not (0 < s < 1):
        raise InvalidParams(f"target density must be in (0, 1), got {s}",
                            precondition="0 < s < 1")
    return BlockConstruction("intermediate", default_m2(s) if m2 is None else m2,
                             s=s)


def build_case2() -> CubeBlocks:
    """Cube-block set: lower density 0, unbounded runs."""
    return CubeBlocks()


def build_case3(m2: int | None = None) -> BlockConstruction:
    """Block construction with lower density 1 (complement still infinite)."""
    return BlockConstruction("full", 2 if m2 is None else m2)


def build_for_dimension(s, m2: int | None = None) -> PositionSet:
    """Dispatch on the target density: 0 -> cubes, 1 -> full, else blocks."""
    s = Fraction(s)
    if not (0 <= s <= 1):
        raise InvalidParams(f"target density must be in [0, 1], got {s}",
                            precondition="0 <= s <= 1")
    if s == 0:
        return build_case2()
    if s == 1:
        return build_case3(m2)
    return build_case1(s, m2)


def counting_identity_rows(ps: BlockConstruction, segments: int) -> list[dict]:
    """Verify the exact member count at each even scale point.

    For the intermediate construction the target is floor(s * M_2i); for
    the full construction it is floor((2i-1)/(2i) * M_2i).
    """
    rows = []
    for i in range(1, segments + 1):
        m2i = ps.scale(2 * i)
        count = ps.count_up_to(m2i)
        if ps.kind == "intermediate":
            target = (ps.s.numerator * m2i) // ps.s.denominator
            target_label = f"floor(s*M_{2 * i})"
        else:
            target = ((2 * i - 1) * m2i) // (2 * i)
            target_label = f"floor((2i-1)/(2i)*M_{2 * i})"
        rows.append({"i": i, "scale": m2i, "count": count,
                     "target": target, "target_rule": target_label,
                     "match": count == target})
    return rows


def complement_gap_rows(ps: PositionSet, segments: int) -> list[dict]:
    """One missing integer per inspected scale segment.

    For block constructions the gap provably sits in every even segment:
    the solid block stops strictly short of the isolated endpoint.  Cube
    segments always have the gap right after their block.
    """
    rows = []
    if isinstance(ps, BlockConstruction):
        table = ps.segment_table(2 * segments)
        for seg in table:
            if seg["j"] % 2 == 1:
                continue
            gap = seg["block_end"] + 1  # past the block, below the endpoint
            if gap >= seg["hi"] or ps.contains(gap):
                gap = None
            rows.append({"segment": seg["j"], "lo": seg["lo"],
                         "hi": seg["hi"], "first_gap": gap})
    elif isinstance(ps, CubeBlocks):
        for n in range(1, segments + 1):
            rows.append({"segment": n, "lo": n**3, "hi": (n + 1)**3,
                         "first_gap": n**3 + n + 1})
    return rows


def fraser_yu_fixture(n_max: int) -> list[Fraction]:
    """The reciprocal cubes {1/n^3 : 1 <= n <= n_max}, ascending."""
    if n_max < 3:
        raise InvalidParams(f"n_max must be >= 3, got {n_max}",
                            precondition="n_max >= 3")
    return sorted(Fraction(1, n**3) for n in range(1, n_max + 1))

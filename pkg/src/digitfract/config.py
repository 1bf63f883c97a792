"""Job configuration schema: the single config-file format and the typed
request bodies of the service.

A job file is one JSON document with top-level keys `system`, `positions`,
`command`, `params`, `output`; unknown fields are rejected everywhere.
Exact numbers travel as strings ("0.3", "3/10", "5/2^3"); floats are never
used to carry rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from . import constructions
from .core import DigitSystem
from .exact import parse_rational
from .positions import (BlockConstruction, CubeBlocks, ExplicitTruncated,
                        Periodic, PositionSet)


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class SystemSpec(_Strict):
    base: int
    digits: list[int]

    def to_system(self) -> DigitSystem:
        return DigitSystem(self.base, tuple(self.digits))


class PeriodicSpec(_Strict):
    variant: Literal["periodic"]
    period: int
    residues: list[int]

    def to_position_set(self) -> Periodic:
        return Periodic(self.period, self.residues)


class CubeBlocksSpec(_Strict):
    variant: Literal["cube-blocks"]

    def to_position_set(self) -> CubeBlocks:
        return CubeBlocks()


def _rational_str(value: str) -> str:
    parse_rational(value)  # raises ValueError on junk
    return value


class Case1Spec(_Strict):
    variant: Literal["case1"]
    s: str
    m2: Optional[int] = None

    _check_s = field_validator("s")(_rational_str)

    def to_position_set(self) -> BlockConstruction:
        return constructions.build_case1(parse_rational(self.s), self.m2)


class Case3Spec(_Strict):
    variant: Literal["case3"]
    m2: Optional[int] = None

    def to_position_set(self) -> BlockConstruction:
        return constructions.build_case3(self.m2)


class ExplicitSpec(_Strict):
    variant: Literal["explicit"]
    members: list[int]
    horizon: int

    def to_position_set(self) -> ExplicitTruncated:
        return ExplicitTruncated(self.members, self.horizon)


class AutoSpec(_Strict):
    """Pick the construction for a target dimension profile."""

    variant: Literal["auto"]
    s: str
    m2: Optional[int] = None

    _check_s = field_validator("s")(_rational_str)

    def to_position_set(self) -> PositionSet:
        return constructions.build_for_dimension(parse_rational(self.s), self.m2)


PositionsSpec = Annotated[
    Union[PeriodicSpec, CubeBlocksSpec, Case1Spec, Case3Spec, ExplicitSpec,
          AutoSpec],
    Field(discriminator="variant"),
]


# -- per-command parameters ----------------------------------------------

class DimsParams(_Strict):
    checkpoints: Optional[list[int]] = None
    window_sizes: Optional[list[int]] = None
    offset_bound: Optional[int] = None


class EnumerateParams(_Strict):
    depth: int
    budget: Optional[int] = None


class RunsParams(_Strict):
    start: int = 1
    end: int
    growth: bool = False


class ApConstructParams(_Strict):
    k: int
    horizon: int = 10**6
    tail_depth: Optional[int] = None


class EnumerationSource(_Strict):
    kind: Literal["enumeration"]
    depth: int
    budget: Optional[int] = None


class FixtureSource(_Strict):
    kind: Literal["fixture"]
    name: Literal["fraser-yu"]
    n_max: int


class ExplicitSource(_Strict):
    kind: Literal["explicit"]
    points: list[str]

    @field_validator("points")
    @classmethod
    def _check_points(cls, pts: list[str]) -> list[str]:
        for p in pts:
            parse_rational(p)
        return pts

    def to_points(self) -> list[Fraction]:
        return [parse_rational(p) for p in self.points]


SourceSpec = Annotated[Union[EnumerationSource, FixtureSource, ExplicitSource],
                       Field(discriminator="kind")]


class ApSearchParams(_Strict):
    k: int
    source: SourceSpec
    budget: Optional[int] = None


class ApLongestParams(_Strict):
    source: SourceSpec
    budget: Optional[int] = None


class FourierCoeffParams(_Strict):
    frequency: int
    depth: int


class FourierScanParams(_Strict):
    exponents: list[int]
    tolerance: float = 1e-12
    block_maxima: bool = False
    block_budget: Optional[int] = None


class ConstructSParams(_Strict):
    s: str
    m2: Optional[int] = None
    segments: int = Field(default=3, ge=1)

    _check_s = field_validator("s")(_rational_str)


class FixtureParams(_Strict):
    name: Literal["fraser-yu"] = "fraser-yu"
    n_max: int


class OutputSpec(_Strict):
    format: Literal["json", "csv"] = "json"
    path: Optional[str] = None


PARAMS_MODELS = {
    "dims": DimsParams,
    "enumerate": EnumerateParams,
    "runs": RunsParams,
    "ap construct": ApConstructParams,
    "ap search": ApSearchParams,
    "ap longest": ApLongestParams,
    "fourier coeff": FourierCoeffParams,
    "fourier scan": FourierScanParams,
    "construct-s": ConstructSParams,
    "fixture fraser-yu": FixtureParams,
}

#: commands that must carry a digit system and a position set
NEEDS_SYSTEM = {"dims", "enumerate", "runs", "ap construct", "fourier coeff",
                "fourier scan"}

ROUTES = {
    "dims": "/v1/dims",
    "enumerate": "/v1/enumerate",
    "runs": "/v1/runs",
    "ap construct": "/v1/ap/construct",
    "ap search": "/v1/ap/search",
    "ap longest": "/v1/ap/longest",
    "fourier coeff": "/v1/fourier/coeff",
    "fourier scan": "/v1/fourier/scan",
    "construct-s": "/v1/construct-s",
    "fixture fraser-yu": "/v1/fixture/fraser-yu",
}


class JobConfig(_Strict):
    """One job file: what to compute and where to put the report."""

    command: str
    system: Optional[SystemSpec] = None
    positions: Optional[PositionsSpec] = None
    params: dict = Field(default_factory=dict)
    output: OutputSpec = Field(default_factory=OutputSpec)

    @field_validator("command")
    @classmethod
    def _known_command(cls, value: str) -> str:
        if value not in PARAMS_MODELS:
            known = ", ".join(sorted(PARAMS_MODELS))
            raise ValueError(f"unknown command {value!r}; expected one of: {known}")
        return value

"""Command implementations behind the service endpoints.

Each function takes validated request pieces, runs the corresponding
library operation and packages a Report.  The DIGITFRACT_BUDGET
environment variable supplies a fallback for every budget knob that the
request leaves unset.
"""

from __future__ import annotations

import os
import time
from fractions import Fraction
from typing import Optional

from . import config as cfg
from . import constructions
from .core import DigitSystem, enumerate_approximation
from .dimension import (default_window_plan, dimension_report,
                        lower_density_profile, window_density_profile)
from .errors import InvalidParams
from .exact import format_fraction, parse_rational
from .fourier import NaturalMeasure, fourier_coefficient, nondecay_scan
from .positions import BlockConstruction, PositionSet
from .progressions import construct_ap, longest_ap, max_run, search_ap
from .reports import Report, build_report

BUDGET_ENV = "DIGITFRACT_BUDGET"


def env_budget() -> Optional[int]:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise InvalidParams(f"{BUDGET_ENV} must be an integer, got {raw!r}")


def _budget(explicit: Optional[int]) -> Optional[int]:
    return explicit if explicit is not None else env_budget()


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0
        return False


def _echo(system: Optional[cfg.SystemSpec], positions, params) -> dict:
    echo: dict = {"params": params.model_dump(mode="json")}
    if system is not None:
        echo["system"] = system.model_dump(mode="json")
    if positions is not None:
        echo["positions"] = positions.model_dump(mode="json")
    return echo


def run_dims(system_spec: cfg.SystemSpec, positions_spec,
             params: cfg.DimsParams) -> Report:
    system = system_spec.to_system()
    positions = positions_spec.to_position_set()
    with _Timer() as t:
        profile = lower_density_profile(positions, params.checkpoints)
        plan_sizes, plan_bound = default_window_plan(positions)
        sizes = params.window_sizes or plan_sizes
        bound = params.offset_bound if params.offset_bound is not None \
            else plan_bound
        window = window_density_profile(positions, sizes, bound)
        dims = dimension_report(system, profile, window)
        result = {
            "dimension": dims.as_dict(),
            "lower_density": {
                "limit": format_fraction(profile.liminf_estimate),
                "exact": profile.exact,
                "basis": profile.basis,
                "samples": profile.rows(),
            },
            "window_density": {
                "limit": format_fraction(window.limsup_estimate),
                "exact": window.exact,
                "basis": window.basis,
                "offset_bound": window.offset_bound,
                "entries": window.rows(),
                "full_window_witness":
                    None if window.witness is None else
                    {"offset": window.witness[0], "length": window.witness[1]},
            },
        }
        rows = [{"kind": "density", "label": str(n), "count": c,
                 "ratio": f"{r.numerator}/{r.denominator}", "value": float(r)}
                for n, c, r in profile.samples]
        rows += [{"kind": "window", "label": f"m={m}", "count": c,
                  "ratio": f"{r.numerator}/{r.denominator}", "value": float(r)}
                 for m, c, r, _ in window.entries]
        rows += [{"kind": "dimension", "label": "hausdorff", "count": None,
                  "ratio": None, "value": dims.hausdorff},
                 {"kind": "dimension", "label": "assouad", "count": None,
                  "ratio": None, "value": dims.assouad}]
    return build_report("dims", _echo(system_spec, positions_spec, params),
                        result, ["kind", "label", "count", "ratio", "value"],
                        rows, t.seconds)


def run_enumerate(system_spec: cfg.SystemSpec, positions_spec,
                  params: cfg.EnumerateParams) -> Report:
    system = system_spec.to_system()
    positions = positions_spec.to_position_set()
    with _Timer() as t:
        approx = enumerate_approximation(system, positions, params.depth,
                                         _budget(params.budget))
        points = approx.values()
        result = {"depth": params.depth, "count": approx.count,
                  "points": [p.display() for p in points]}
        rows = [{"index": i, "point": p.display(), "value": float(p)}
                for i, p in enumerate(points)]
    return build_report("enumerate", _echo(system_spec, positions_spec, params),
                        result, ["index", "point", "value"], rows, t.seconds)


def run_runs(system_spec, positions_spec, params: cfg.RunsParams) -> Report:
    positions = positions_spec.to_position_set()
    with _Timer() as t:
        report = max_run(positions, params.start, params.end)
        result = report.as_dict()
        rows = [{"end": params.end, "elements": report.elements,
                 "steps": report.steps, "witness_start": report.witness_start}]
        if params.growth:
            growth = []
            end = 16
            while end < params.end:
                r = max_run(positions, params.start, end)
                growth.append({"end": end, "elements": r.elements,
                               "steps": r.steps,
                               "witness_start": r.witness_start})
                end *= 4
            rows = growth + rows
            result["growth"] = rows
    return build_report("runs", _echo(system_spec, positions_spec, params),
                        result, ["end", "elements", "steps", "witness_start"],
                        rows, t.seconds)


def _ap_rows(ap) -> list[dict]:
    if ap is None:
        return []
    return [{"index": i, "point": f"{p.numerator}/{p.denominator}",
             "value": float(p)} for i, p in enumerate(ap.points())]


def run_ap_construct(system_spec: cfg.SystemSpec, positions_spec,
                     params: cfg.ApConstructParams) -> Report:
    system = system_spec.to_system()
    positions = positions_spec.to_position_set()
    with _Timer() as t:
        ap = construct_ap(system, positions, params.k, params.horizon,
                          params.tail_depth)
        result = {"found": True, "progression": ap.as_dict()}
        rows = _ap_rows(ap)
    return build_report("ap construct",
                        _echo(system_spec, positions_spec, params), result,
                        ["index", "point", "value"], rows, t.seconds)


def resolve_points(system_spec, positions_spec, source) -> list[Fraction]:
    if isinstance(source, cfg.EnumerationSource):
        if system_spec is None or positions_spec is None:
            raise InvalidParams(
                "enumeration source needs `system` and `positions`",
                precondition="system/positions present")
        approx = enumerate_approximation(system_spec.to_system(),
                                         positions_spec.to_position_set(),
                                         source.depth, _budget(source.budget))
        return approx.fractions()
    if isinstance(source, cfg.FixtureSource):
        return constructions.fraser_yu_fixture(source.n_max)
    return source.to_points()


def run_ap_search(system_spec, positions_spec,
                  params: cfg.ApSearchParams) -> Report:
    with _Timer() as t:
        points = resolve_points(system_spec, positions_spec, params.source)
        ap = search_ap(points, params.k, _budget(params.budget))
        result = {"point_count": len(points), "k": params.k,
                  "found": ap is not None,
                  "progression": None if ap is None else ap.as_dict()}
        rows = _ap_rows(ap)
    return build_report("ap search",
                        _echo(system_spec, positions_spec, params), result,
                        ["index", "point", "value"], rows, t.seconds)


def run_ap_longest(system_spec, positions_spec,
                   params: cfg.ApLongestParams) -> Report:
    with _Timer() as t:
        points = resolve_points(system_spec, positions_spec, params.source)
        res = longest_ap(points, _budget(params.budget))
        result = {"point_count": len(points), "k_max": res.k_max,
                  "witness": None if res.witness is None
                  else res.witness.as_dict()}
        rows = _ap_rows(res.witness)
    return build_report("ap longest",
                        _echo(system_spec, positions_spec, params), result,
                        ["index", "point", "value"], rows, t.seconds)


def run_fourier_coeff(system_spec: cfg.SystemSpec, positions_spec,
                      params: cfg.FourierCoeffParams) -> Report:
    measure = NaturalMeasure(system_spec.to_system(),
                             positions_spec.to_position_set())
    with _Timer() as t:
        fv = fourier_coefficient(measure, params.frequency, params.depth)
        result = fv.as_dict()
        rows = [result]
    return build_report("fourier coeff",
                        _echo(system_spec, positions_spec, params), result,
                        ["frequency", "depth", "re", "im", "abs", "tail_bound"],
                        rows, t.seconds)


def run_fourier_scan(system_spec: cfg.SystemSpec, positions_spec,
                     params: cfg.FourierScanParams) -> Report:
    measure = NaturalMeasure(system_spec.to_system(),
                             positions_spec.to_position_set())
    with _Timer() as t:
        rows = nondecay_scan(measure, params.exponents, params.tolerance,
                             params.block_maxima, _budget(params.block_budget))
        result = {"tolerance": params.tolerance, "entries": rows}
    columns = ["exponent", "frequency", "depth", "abs", "re", "im",
               "tail_bound", "next_position_free"]
    if params.block_maxima:
        columns += ["block_max_abs", "block_max_frequency"]
    return build_report("fourier scan",
                        _echo(system_spec, positions_spec, params), result,
                        columns, rows, t.seconds)


def run_construct_s(system_spec, positions_spec,
                    params: cfg.ConstructSParams) -> Report:
    s = parse_rational(params.s)
    with _Timer() as t:
        positions = constructions.build_for_dimension(s, params.m2)
        if system_spec is None:
            system = DigitSystem(2, (0,))
        else:
            system = system_spec.to_system()
        profile = lower_density_profile(positions)
        sizes, bound = default_window_plan(positions)
        window = window_density_profile(positions, sizes, bound)
        result: dict = {
            "s": params.s,
            "construction": positions.describe(),
            "dimension": dimension_report(system, profile, window).as_dict(),
            "complement_gaps": constructions.complement_gap_rows(
                positions, params.segments),
        }
        if isinstance(positions, BlockConstruction):
            rows = constructions.counting_identity_rows(positions,
                                                        params.segments)
            result["identity"] = rows
            result["scales"] = [positions.scale(i)
                                for i in range(1, 2 * params.segments + 2)]
            columns = ["i", "scale", "count", "target", "target_rule", "match"]
        else:
            result["identity"] = None
            rows = profile.rows()
            columns = ["checkpoint", "count", "ratio", "ratio_float"]
    return build_report("construct-s",
                        _echo(system_spec, positions_spec, params), result,
                        columns, rows, t.seconds)


def run_fixture(params: cfg.FixtureParams) -> Report:
    with _Timer() as t:
        points = constructions.fraser_yu_fixture(params.n_max)
        result = {"name": params.name, "n_max": params.n_max,
                  "points": [format_fraction(p) for p in points]}
        rows = [{"index": i, "point": format_fraction(p), "value": float(p)}
                for i, p in enumerate(points)]
    return build_report("fixture fraser-yu", _echo(None, None, params), result,
                        ["index", "point", "value"], rows, t.seconds)

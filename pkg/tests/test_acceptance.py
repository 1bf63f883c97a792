"""End-to-end gate: one test per exit criterion, each printing a PASS/FAIL
line and enforcing its stated runtime ceiling.

One criterion (the covering inequality for constructed progressions) is
implemented exactly as stated and is expected red: a closed interval of
radius gap contains three gap-spaced points, so no covering with that
radius can need k intervals for a k-term progression; the greedy optimum
is ceil(k/3).  The assertion is kept literal rather than weakened.
"""

import itertools
import json
import time
from fractions import Fraction

import pytest

from digitfract import (CubeBlocks, DigitSystem, Periodic, RunNotFound,
                        build_case1, construct_ap, covering_count,
                        dimension_report, enumerate_approximation,
                        expected_count, fourier_coefficient, fraser_yu_fixture,
                        longest_ap, lower_density_profile, membership,
                        NaturalMeasure, nondecay_scan, search_ap,
                        window_density_profile)
from digitfract.cli import main as cli_main
from digitfract.reports import parse_report, to_json
from conftest import direct_transform

SYS2 = DigitSystem(2, (0,))

# frozen by a first oracle run
ODDS_B2_NONZERO_FLOOR = 0.69
ODDS_LONGEST_AP = 2
CUBE_LONGEST_BY_DEPTH = {8: 2, 10: 4, 12: 4}


def report_line(name, ok):
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}")


class Stopwatch:
    def __init__(self, limit):
        self.limit = limit
        self.t0 = time.perf_counter()

    def check(self):
        return time.perf_counter() - self.t0 < self.limit


def all_digit_sets(base):
    out = []
    for r in range(1, base):
        out += [tuple(c) for c in itertools.combinations(range(base), r)]
    return out


def test_basic_interval_count():
    watch = Stopwatch(5.0)
    sets = {"odds": Periodic(2, [1]), "periodic3": Periodic(3, [1, 2]),
            "cube": CubeBlocks()}
    ok = True
    for base in (2, 3):
        for digits in all_digit_sets(base):
            system = DigitSystem(base, digits)
            for ps in sets.values():
                for depth in range(1, 13):
                    approx = enumerate_approximation(system, ps, depth)
                    free = ps.count_up_to(depth)
                    formula = base**free * len(digits)**(depth - free)
                    ok &= approx.count == formula
                    ok &= approx.count == expected_count(system, ps, depth)
    ok &= watch.check()
    report_line("basic-interval-count", ok)
    assert ok


def test_dimension_formulas():
    watch = Stopwatch(1.0)
    odds, cube = Periodic(2, [1]), CubeBlocks()
    sys3 = DigitSystem(3, (0, 2))

    def dims(system, ps):
        prof = lower_density_profile(ps, ps.density_checkpoints(30000))
        win = window_density_profile(ps, [4, 8, 16], 4096)
        return dimension_report(system, prof, win)

    r_odds = dims(SYS2, odds)
    r_cube2 = dims(SYS2, cube)
    r_cube3 = dims(sys3, cube)
    import math
    ok = (r_odds.hausdorff == 0.5 and r_odds.assouad == 0.5
          and r_cube2.hausdorff == 0.0 and r_cube2.assouad == 1.0
          and r_cube2.exact
          and abs(r_cube3.hausdorff - math.log(2) / math.log(3)) < 1e-12)
    ok &= watch.check()
    report_line("dimension-formulas", ok)
    assert ok


def test_counting_identity_for_target_density():
    watch = Stopwatch(1.0)
    ok = True
    for s in (Fraction(3, 10), Fraction(1, 2), Fraction(3, 4)):
        ps = build_case1(s)
        for i in (1, 2, 3):
            m2i = ps.scale(2 * i)
            ok &= ps.count_up_to(m2i) == (s.numerator * m2i) // s.denominator
    ok &= watch.check()
    report_line("counting-identity", ok)
    assert ok


@pytest.fixture(scope="module")
def constructed_16():
    return construct_ap(SYS2, CubeBlocks(), 16)


def test_constructed_ap_with_oracle_agreement(constructed_16):
    watch = Stopwatch(30.0)
    cube = CubeBlocks()
    ap = constructed_16
    ok = ap.length == 16
    ok &= ap.gap == Fraction(1, 2**ap.depth)
    ok &= all(membership(w, cube) for w in ap.witnesses)
    approx = enumerate_approximation(SYS2, cube, ap.depth)
    ok &= approx.count <= 10**4
    found = search_ap(approx.fractions(), 16)
    ok &= found is not None and found.gap == ap.gap and found.length >= 16
    ok &= watch.check()
    report_line("constructed-ap-oracle-agreement", ok)
    assert ok


def test_bounded_runs_negative_control():
    watch = Stopwatch(60.0)
    odds = Periodic(2, [1])
    ok = True
    for horizon in (10**3, 10**4, 10**5, 10**6):
        try:
            construct_ap(SYS2, odds, 4, horizon=horizon)
            ok = False
        except RunNotFound:
            pass
    for depth in range(8, 13):
        approx = enumerate_approximation(SYS2, odds, depth)
        ok &= longest_ap(approx.fractions()).k_max == ODDS_LONGEST_AP
    cube = CubeBlocks()
    cube_longest = {}
    for depth in (8, 10, 12):
        approx = enumerate_approximation(SYS2, cube, depth)
        cube_longest[depth] = longest_ap(approx.fractions()).k_max
    ok &= cube_longest == CUBE_LONGEST_BY_DEPTH
    ok &= cube_longest[8] < cube_longest[12]
    ok &= watch.check()
    report_line("bounded-runs-negative-control", ok)
    assert ok


def test_reciprocal_cube_fixture_has_no_triple():
    watch = Stopwatch(10.0)
    ok = search_ap(fraser_yu_fixture(200), 3) is None
    ok &= watch.check()
    report_line("reciprocal-cube-fixture", ok)
    assert ok


def test_fourier_product_matches_direct_sum():
    watch = Stopwatch(30.0)
    odds, cube = Periodic(2, [1]), CubeBlocks()
    configs = [
        (DigitSystem(2, (0,)), odds, 24),    # 4096 atoms
        (DigitSystem(2, (0,)), cube, 30),    # 64 atoms
        (DigitSystem(3, (0, 2)), odds, 9),   # 3888 atoms
        (DigitSystem(3, (0, 2)), cube, 10),  # 3456 atoms
    ]
    frequencies = [100 * j + 1 for j in range(100)]
    frequencies += [-m for m in frequencies]
    assert len(set(frequencies)) == 200
    ok = True
    for system, ps, depth in configs:
        assert expected_count(system, ps, depth) <= 4096
        measure = NaturalMeasure(system, ps)
        for m in frequencies:
            assert abs(m) <= 10**4
            product = fourier_coefficient(measure, m, depth).value
            direct = direct_transform(system, ps, depth, m)
            ok &= abs(product - direct) < 1e-12
    ok &= watch.check()
    report_line("fourier-product-vs-direct-sum", ok)
    assert ok


def test_fourier_nondecay_witness():
    watch = Stopwatch(10.0)
    measure = NaturalMeasure(SYS2, Periodic(2, [1]))
    rows = nondecay_scan(measure, range(2, 16))
    by_k = {row["exponent"]: row for row in rows}
    ok = all(by_k[k]["abs"] <= 1e-12 for k in range(2, 15, 2))
    odd_values = [by_k[k]["abs"] for k in range(3, 16, 2)]
    ok &= all(v > ODDS_B2_NONZERO_FLOOR for v in odd_values)
    # the scanned family beyond frequency 2^10 stays above the floor
    high = [by_k[k]["abs"] for k in range(11, 16, 2)]
    ok &= max(high) > ODDS_B2_NONZERO_FLOOR
    ok &= all(not by_k[k]["next_position_free"] for k in range(3, 16, 2))
    ok &= watch.check()
    report_line("fourier-nondecay-witness", ok)
    assert ok


def test_covering_inequality_from_constructed_ap(constructed_16):
    # literal bound: k intervals of radius gap needed inside the
    # (k-1)*gap window around the start.  A closed interval of length
    # 2*gap contains three consecutive points of the progression, so the
    # optimal (greedy) covering uses ceil(k/3) intervals and this
    # assertion cannot hold; it is kept as stated rather than loosened.
    watch = Stopwatch(5.0)
    ap = constructed_16
    stats = covering_count(ap.points(), ap.gap, (ap.length - 1) * ap.gap,
                           [ap.start])
    ok = stats.max_count >= ap.length
    ok &= watch.check()
    report_line("covering-inequality-literal", ok)
    assert ok


CRITERION_JOBS = {
    "dims": {"command": "dims", "system": {"base": 2, "digits": [0]},
             "positions": {"variant": "cube-blocks"}},
    "enumerate": {"command": "enumerate",
                  "system": {"base": 2, "digits": [0]},
                  "positions": {"variant": "periodic", "period": 2,
                                "residues": [1]},
                  "params": {"depth": 8}},
    "runs": {"command": "runs", "system": {"base": 2, "digits": [0]},
             "positions": {"variant": "cube-blocks"},
             "params": {"start": 1, "end": 1000, "growth": True}},
    "ap-construct": {"command": "ap construct",
                     "system": {"base": 2, "digits": [0]},
                     "positions": {"variant": "cube-blocks"},
                     "params": {"k": 16}},
    "ap-search": {"command": "ap search",
                  "params": {"k": 3, "source": {"kind": "fixture",
                                                "name": "fraser-yu",
                                                "n_max": 200}}},
    "ap-longest": {"command": "ap longest",
                   "system": {"base": 2, "digits": [0]},
                   "positions": {"variant": "cube-blocks"},
                   "params": {"source": {"kind": "enumeration",
                                         "depth": 12}}},
    "fourier-coeff": {"command": "fourier coeff",
                      "system": {"base": 2, "digits": [0]},
                      "positions": {"variant": "periodic", "period": 2,
                                    "residues": [1]},
                      "params": {"frequency": 2, "depth": 12}},
    "fourier-scan": {"command": "fourier scan",
                     "system": {"base": 2, "digits": [0]},
                     "positions": {"variant": "periodic", "period": 2,
                                   "residues": [1]},
                     "params": {"exponents": list(range(2, 16))}},
    "construct-s": {"command": "construct-s", "params": {"s": "0.5"}},
    "fixture": {"command": "fixture fraser-yu", "params": {"n_max": 200}},
}


def test_determinism_and_roundtrip(tmp_path):
    ok = True
    for name, job in CRITERION_JOBS.items():
        cfg = tmp_path / f"{name}.json"
        cfg.write_text(json.dumps(job))
        texts = []
        for attempt in ("a", "b"):
            out = tmp_path / f"{name}.{attempt}.json"
            code = cli_main(["run", str(cfg), "--out", str(out)])
            ok &= code == 0
            texts.append(out.read_text())
        docs = [json.loads(t) for t in texts]
        for d in docs:
            d["timing_s"] = 0.0
        ok &= json.dumps(docs[0], sort_keys=True) == \
            json.dumps(docs[1], sort_keys=True)
        # lossless reparse: text -> model -> text is the identity
        report = parse_report(texts[0])
        ok &= to_json(parse_report(to_json(report))) == to_json(report)
    report_line("determinism-and-roundtrip", ok)
    assert ok

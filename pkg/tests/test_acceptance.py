"""End-to-end criteria.  Each test records one PASS/FAIL line, echoed in the terminal summary."""
import itertools
import random
import time

import pytest

from padic_wavelets import suites
from padic_wavelets.functions import compact
from padic_wavelets.mra import tensor_wavelet
from padic_wavelets.wavelet import make_psi_J

SEED = suites.DEFAULT_SEED
RESULTS: dict = {}

WINDOW_CASES = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)]


def record(number, title, ok, detail, started, budget):
    elapsed = time.perf_counter() - started
    line = f"criterion {number} [{title}]: {'PASS' if ok else 'FAIL'} ({detail}; {elapsed:.1f}s, budget {budget}s)"
    RESULTS[number] = line
    print(line)
    assert ok, line


def test_criterion_1_orthonormality():
    t0 = time.perf_counter()
    reports = [suites.orthonormality(p, d, -2, 2, 2) for p, d in WINDOW_CASES]
    total = sum(r["wavelets"] for r in reports)
    defects = sum(r["defects"] for r in reports)
    record(1, "orthonormality", all(r["pass"] for r in reports), f"{total} wavelets, {defects} exact defects", t0, 60)


def test_criterion_2_parseval():
    t0 = time.perf_counter()
    cases = [(p, d, G) for p, d in WINDOW_CASES + [(2, 3)] for G in range(1, 5)]
    bad = [(p, d, G) for p, d, G in cases if not suites.parseval(p, d, G)["pass"]]
    record(2, "parseval", not bad, f"{len(cases)} (p, d, Gamma) cases, mismatches {bad}", t0, 10)


def test_criterion_3_mean_zero():
    t0 = time.perf_counter()
    reports = [suites.meanzero(p, d, -2, 2, 2) for p, d in WINDOW_CASES]
    total = sum(r["wavelets"] for r in reports)
    record(3, "mean zero", all(r["pass"] for r in reports), f"{total} wavelets integrate to exact zero", t0, 10)


def test_criterion_4_round_trip():
    t0 = time.perf_counter()
    reports = [suites.roundtrip(p, d, 25, SEED + k) for k, (p, d) in enumerate([(2, 1), (3, 1), (2, 2), (3, 2)])]
    cases = sum(r["cases"] for r in reports)
    failures = sum(len(r["failures"]) for r in reports)
    record(4, "analysis round trip", failures == 0 and cases == 100, f"{cases} functions, {failures} failures", t0, 60)


def test_criterion_5_oracle():
    t0 = time.perf_counter()
    combos = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)]
    reports = [suites.oracle(p, d, 100, SEED + k, tol=1e-9) for k, (p, d) in enumerate(combos)]
    worst = max(r["max_error"] for r in reports)
    cases = sum(r["cases"] for r in reports)
    ok = all(r["pass"] for r in reports) and cases == 500
    record(5, "float oracle", ok, f"{cases} pairs, max |exact - float| = {worst:.2e} <= 1e-09", t0, 30)


def test_criterion_6_group_structure():
    t0 = time.perf_counter()
    rng = random.Random(SEED)
    checks = [
        suites.group_norm_preservation(3, 2, 100, 100, rng),
        suites.group_norm_preservation(2, 3, 100, 100, rng),
        suites.group_columns_equivalence(2, 2, 2),
        suites.group_columns_equivalence(3, 2, 2),
        suites.group_transitivity(3, 2, 100, rng),
        suites.group_transitivity(2, 3, 100, rng),
        suites.group_factorization(3, 2, 100, rng, length=5),
        suites.group_factorization(2, 1, 100, rng, length=5),
    ]
    failed = [c["check"] for c in checks if not c["pass"]]
    summary = ", ".join(sorted({c["check"] for c in checks}))
    record(6, "group structure", not failed, f"{summary}; failed: {failed or 'none'}", t0, 60)


def test_criterion_7_orbit():
    t0 = time.perf_counter()
    reports = {(p, d): suites.orbit(p, d, 3) for p, d in [(2, 1), (3, 1), (2, 2), (3, 2)]}
    stats = "; ".join(
        f"(p={p},d={d}) {r['reach']['functions']} functions, {r['reach']['classes']} classes, "
        f"{r['reach']['failures']} unclassified"
        for (p, d), r in reports.items()
    )
    record(7, "orbit soundness", all(r["pass"] for r in reports.values()), stats, t0, 120)


def test_criterion_8_mra():
    t0 = time.perf_counter()
    tensor_bad = [
        (p, d, J)
        for p in (2, 3)
        for d in (2, 3)
        for J in itertools.product(range(p), repeat=d)
        if any(J) and tensor_wavelet(p, J) != make_psi_J(p, J)
    ]
    ladders = [suites.mra(p, d) for p in (2, 3) for d in (1, 2)]
    entries = sum(len(r["ladder"]) for r in ladders)
    ok = not tensor_bad and all(r["pass"] for r in ladders)
    record(8, "multiresolution", ok, f"tensor mismatches {len(tensor_bad)}, {entries} ladder checks", t0, 30)


def test_criterion_9_wavelet_count():
    t0 = time.perf_counter()
    bad = []
    for p in (2, 3, 5):
        for d in (1, 2, 3):
            distinct = {compact(make_psi_J(p, J)) for J in itertools.product(range(p), repeat=d) if any(J)}
            if len(distinct) != p**d - 1:
                bad.append((p, d, len(distinct)))
    record(9, "distinct wavelets", not bad, f"9 (p, d) pairs, mismatches {bad}", t0, 10)

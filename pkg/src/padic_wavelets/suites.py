"""Invariant suites.  Each returns a JSON-ready dict with a ``"pass"`` flag and witnesses."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from . import group as G
from .functions import inner, inner_float_oracle, integrate
from .gram import orthonormality_defects
from .mra import tensor_wavelet, verify_mra_ladder
from .padic import PAdicRational, ball_canonical, vec_norm
from .sampling import (
    integral_matrices_mod,
    random_function,
    random_sphere_vector,
    random_vector,
)
from .serialize import index_to_json
from .wavelet import (
    analyze,
    enumerate_indices,
    make_psi_J,
    make_wavelet,
    parseval_enumerated,
    parseval_partial,
    parseval_sum,
    synthesize,
)

DEFAULT_SEED = 20240229
SUITES = ("orthonormality", "parseval", "meanzero", "group", "orbit", "mra", "oracle", "roundtrip")


def _result(name: str, ok: bool, **extra) -> dict:
    # no timings in the payload: reports must be byte-identical across runs
    return {"suite": name, "pass": bool(ok), **extra}


def orthonormality(p: int, d: int, gamma_min: int, gamma_max: int, max_digits: int) -> dict:
    idx = enumerate_indices(p, d, range(gamma_min, gamma_max + 1), max_digits)
    defects = orthonormality_defects([make_wavelet(i) for i in idx])
    wit = [
        {"i": index_to_json(idx[i]), "j": index_to_json(idx[j]), "value": str(v.to_complex())}
        for i, j, v in defects[:5]
    ]
    return _result("orthonormality", not defects, p=p, d=d, wavelets=len(idx), defects=len(defects), witnesses=wit)


def parseval(p: int, d: int, Gamma: int) -> dict:
    closed = parseval_partial(p, d, Gamma)
    summed = parseval_enumerated(p, d, Gamma)
    expected = 1 - Fraction(1, p ** (d * Gamma))
    return _result(
        "parseval",
        closed == summed == expected,
        p=p,
        d=d,
        Gamma=Gamma,
        closed_form=str(closed),
        enumerated=str(summed),
        expected=str(expected),
    )


def meanzero(p: int, d: int, gamma_min: int, gamma_max: int, max_digits: int) -> dict:
    idx = enumerate_indices(p, d, range(gamma_min, gamma_max + 1), max_digits)
    bad = [i for i in idx if not integrate(make_wavelet(i)).is_zero()]
    return _result(
        "meanzero", not bad, p=p, d=d, wavelets=len(idx), failures=[index_to_json(i) for i in bad[:5]]
    )


def roundtrip(p: int, d: int, count: int, seed: int) -> dict:
    """``synthesize(analyze(f)) == f`` and Parseval on random mean-zero functions."""
    rng = random.Random(seed)
    failures = []
    sizes = []
    for k in range(count):
        f = random_function(rng, p, d, mean_zero=True)
        c = analyze(f)
        sizes.append(len(c))
        ok_rt = synthesize(c, p, d) == f
        ok_ps = parseval_sum(c, p) == inner(f, f)
        if not (ok_rt and ok_ps):
            failures.append({"case": k, "roundtrip": ok_rt, "parseval": ok_ps})
    return _result(
        "roundtrip", not failures, p=p, d=d, cases=count, max_coefficients=max(sizes, default=0), failures=failures
    )


def oracle(p: int, d: int, count: int, seed: int, tol: float = 1e-9) -> dict:
    rng = random.Random(seed)
    worst = 0.0
    failures = []
    for k in range(count):
        f = random_function(rng, p, d)
        g = random_function(rng, p, d)
        err = abs(inner(f, g).to_complex() - inner_float_oracle(f, g))
        worst = max(worst, err)
        if err > tol:
            failures.append({"case": k, "error": err})
    return _result("oracle", not failures, p=p, d=d, cases=count, max_error=worst, failures=failures[:5])


# group structure checks ---------------------------------------------------------------


def group_norm_preservation(p: int, d: int, n_mat: int, n_vec: int, rng: random.Random) -> dict:
    bad = 0
    for _ in range(n_mat):
        m = G.random_unit_matrix(rng, p, d, 4)
        for _ in range(n_vec):
            x = random_vector(rng, p, d)
            if vec_norm(m.apply(x)) != vec_norm(x):
                bad += 1
    return {"check": "norm_preservation", "pass": bad == 0, "matrices": n_mat, "vectors": n_vec, "failures": bad}


def group_stabilizer(p: int, d: int, count: int, rng: random.Random) -> dict:
    bad = 0
    for _ in range(count):
        while True:
            rows = [[rng.randrange(p**3) for _ in range(d)] for _ in range(d)]
            if not G.is_unit_matrix(p, rows):
                break
        if G.stabilizer_witness(p, rows) is None:
            bad += 1
    return {"check": "stabilizer", "pass": bad == 0, "matrices": count, "failures": bad}


def group_columns_equivalence(p: int, d: int = 2, K: int = 2) -> dict:
    total = mismatch = units = 0
    for m in integral_matrices_mod(p, d, K):
        total += 1
        a, b = G.is_unit_matrix(p, m), G.columns_criterion(p, m)
        units += a
        mismatch += a != b
    return {"check": "columns_equivalence", "pass": mismatch == 0, "matrices": total, "units": units, "mismatches": mismatch}


def group_transitivity(p: int, d: int, count: int, rng: random.Random) -> dict:
    bad = 0
    for _ in range(count):
        x = random_sphere_vector(rng, p, d)
        m = G.e1_to_x(p, x)
        e1 = tuple(PAdicRational(p, int(i == 0)) for i in range(d))
        if m.apply(e1) != x or not G.is_unit_matrix(p, m.rows) or not G.columns_criterion(p, m.rows):
            bad += 1
    return {"check": "transitivity", "pass": bad == 0, "vectors": count, "failures": bad}


def group_factorization(p: int, d: int, count: int, rng: random.Random, length: int = 5) -> dict:
    bad = 0
    points = G.spanning_points(p, d)
    probe = [random_vector(rng, p, d) for _ in range(10)]
    for _ in range(count):
        word = [G.random_generator(rng, p, d) for _ in range(length)]
        g = G.factorize(word)
        # re-association: factor the two halves separately, then combine
        cut = rng.randrange(1, length)
        g2 = G.factorize([G.factorize(word[:cut]), G.factorize(word[cut:])])
        recovered = G.from_point_images(p, [G.apply_word(word, x) for x in points])
        same_points = all(g.apply(x) == G.apply_word(word, x) for x in probe)
        if not (g == g2 == recovered and same_points):
            bad += 1
    return {"check": "factorization", "pass": bad == 0, "words": count, "length": length, "failures": bad}


def group_unitarity(p: int, d: int, count: int, rng: random.Random) -> dict:
    bad = 0
    for _ in range(count):
        g = G.random_element(rng, p, d)
        f1 = random_function(rng, p, d)
        f2 = random_function(rng, p, d)
        if inner(G.act(g, f1), G.act(g, f2)) != inner(f1, f2):
            bad += 1
    return {"check": "unitarity", "pass": bad == 0, "elements": count, "failures": bad}


def group_balls(p: int, d: int, count: int, rng: random.Random) -> dict:
    bad = 0
    for _ in range(count):
        b1, b2 = (
            ball_canonical(rng.randint(-2, 2), random_vector(rng, p, d, 3)) for _ in range(2)
        )
        try:
            G.ball_transitivity_witness(b1, b2)
        except AssertionError:
            bad += 1
    return {"check": "ball_transitivity", "pass": bad == 0, "pairs": count, "failures": bad}


def group_suite(p: int, d: int, seed: int, count: int = 100) -> dict:
    rng = random.Random(seed)
    checks = [
        group_norm_preservation(p, d, count, count, rng),
        group_stabilizer(p, d, count, rng),
        group_transitivity(p, d, count, rng),
        group_factorization(p, d, count, rng),
        group_unitarity(p, d, max(count // 5, 1), rng),
        group_balls(p, d, max(count // 5, 1), rng),
    ]
    if d == 2 and p in (2, 3):
        checks.append(group_columns_equivalence(p, 2, 2))
    return _result("group", all(c["pass"] for c in checks), p=p, d=d, checks=checks)


def orbit(p: int, d: int, depth: int) -> dict:
    rep = G.orbit_generate(p, d, depth, strict=False)
    return _result("orbit", rep.ok, p=p, d=d, depth=depth, reach=rep.statistics())


def mra(p: int, d: int, levels=(-1, 0, 1)) -> dict:
    Js = [J for J in itertools.product(range(p), repeat=d) if any(J)]
    tensor_bad = [list(J) for J in Js if tensor_wavelet(p, J) != make_psi_J(p, J)]
    report = []
    for L in levels:
        report.extend(verify_mra_ladder(p, d, L))
    ok = not tensor_bad and all(e["pass"] for e in report)
    return _result("mra", ok, p=p, d=d, tensor_mismatches=tensor_bad, ladder=report)


def run_suite(name: str, p: int, d: int, *, gamma_min=-1, gamma_max=1, max_digits=1, seed=DEFAULT_SEED, depth=2):
    if name == "orthonormality":
        return orthonormality(p, d, gamma_min, gamma_max, max_digits)
    if name == "parseval":
        return parseval(p, d, max(gamma_max, 1))
    if name == "meanzero":
        return meanzero(p, d, gamma_min, gamma_max, max_digits)
    if name == "group":
        return group_suite(p, d, seed)
    if name == "orbit":
        return orbit(p, d, depth)
    if name == "mra":
        return mra(p, d)
    if name == "oracle":
        return oracle(p, d, 100, seed)
    if name == "roundtrip":
        return roundtrip(p, d, 20, seed)
    raise KeyError(name)



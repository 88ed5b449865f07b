import itertools
import random
from fractions import Fraction

import pytest

from padic_wavelets.cyclotomic import ScaledAmplitude, char_pairing, half_power
from padic_wavelets.functions import StepFunction, inner, integrate, make_indicator, evaluate
from padic_wavelets.padic import PAdicRational, ball_canonical
from padic_wavelets.sampling import random_function
from padic_wavelets.wavelet import (
    NotMeanZeroError,
    WaveletIndex,
    analysis_window,
    analyze,
    analyze_bruteforce,
    enumerate_indices,
    make_psi_J,
    make_wavelet,
    make_wavelet_direct,
    omega,
    omega_coefficients,
    parseval_enumerated,
    parseval_partial,
    parseval_sum,
    psi_one,
    synthesize,
    synthesize_direct,
)

from conftest import pv


def amp(p, q):
    return ScaledAmplitude.rational(p, q)


def test_haar_wavelet():
    psi = make_psi_J(2, (1,))
    assert psi.scale == 1
    assert psi.cells == {pv(2, 0): amp(2, 1), pv(2, 1): amp(2, -1)}


def test_psi_J_against_character_oracle():
    for p, J in [(3, (1, 0)), (3, (2, 1)), (5, (0, 3)), (2, (1, 1, 0))]:
        psi = make_psi_J(p, J)
        assert len(psi) == p ** len(J)
        k = pv(p, *(Fraction(j, p) for j in J))
        for m in itertools.product(range(p), repeat=len(J)):
            assert psi.cells[pv(p, *m)] == char_pairing(k, pv(p, *m)).to_amplitude()


def test_psi_one_and_zero_J():
    assert psi_one(3, 2) == make_psi_J(3, (1, 0))
    with pytest.raises(ValueError):
        make_psi_J(3, (0, 0))
    with pytest.raises(ValueError):
        WaveletIndex.make(3, 0, None, (0,))
    with pytest.raises(ValueError):
        WaveletIndex.make(3, 0, None, (3,))


def test_identity_parameters_give_psi_J():
    for J in [(1,), (2,)]:
        assert make_wavelet(WaveletIndex.make(3, 0, None, J)) == make_psi_J(3, J)


def test_support_radius():
    idx = WaveletIndex.make(2, 1, [0], (1,))
    b = idx.support()
    assert b.radius == 2
    f = make_wavelet(idx)
    assert f.support_exponent() == 1 and f.scale == 0


def test_two_constructions_agree():
    for p, d in [(2, 1), (3, 1), (2, 2), (3, 2)]:
        for idx in enumerate_indices(p, d, range(-2, 3), 1):
            assert make_wavelet(idx) == make_wavelet_direct(idx)


def test_wavelet_pointwise_definition():
    # psi_{gamma n J}(x) = p^(-d gamma / 2) psi_J(p^gamma x - n)
    p = 3
    rng = random.Random(0)
    for idx in enumerate_indices(p, 1, range(-1, 2), 1):
        f = make_wavelet(idx)
        base = make_psi_J(p, idx.J)
        n = idx.n.to_pvec()
        for _ in range(40):
            x = (PAdicRational(p, rng.randrange(3**5), -2),)
            y = (x[0].shift(idx.gamma) - n[0],)
            want = evaluate(base, y) if y[0].norm() <= 1 else amp(p, 0)
            assert evaluate(f, x) == want * half_power(p, -idx.gamma)


def test_enumeration_counts():
    assert len(enumerate_indices(2, 1, [0], 0)) == 1
    assert len(enumerate_indices(2, 2, [0], 0)) == 3
    assert len(enumerate_indices(3, 1, range(-1, 2), 1)) == 18
    assert len(enumerate_indices(5, 2, [0], 2)) == 24 * 625


def test_enumeration_sorted_and_unique():
    idx = enumerate_indices(3, 2, range(-1, 2), 1)
    assert idx == sorted(idx, key=WaveletIndex.sort_key)
    assert len(set(idx)) == len(idx)


def test_analyze_single_and_pairs():
    a = WaveletIndex.make(3, 1, [Fraction(1, 3)], (2,))
    b = WaveletIndex.make(3, -1, [Fraction(2, 9)], (1,))
    assert analyze(make_wavelet(a)) == {a: amp(3, 1)}
    assert analyze(make_wavelet(a) + make_wavelet(b)) == {a: amp(3, 1), b: amp(3, 1)}


def test_analyze_haar_difference():
    f = make_indicator(ball_canonical(1, pv(2, 0))) - make_indicator(ball_canonical(1, pv(2, 1)))
    c = analyze(f)
    assert c == analyze_bruteforce(f, widen=2)
    assert c == {WaveletIndex.make(2, 0, None, (1,)): amp(2, 1)}


def test_analyze_rejects_nonzero_mean():
    with pytest.raises(NotMeanZeroError) as err:
        analyze(omega(3, 2))
    assert err.value.integral == amp(3, 1)


def test_analyze_matches_widened_bruteforce():
    rng = random.Random(21)
    for p, d in [(2, 1), (3, 1), (2, 2)]:
        for _ in range(6):
            f = random_function(rng, p, d, mean_zero=True, max_cells=6)
            c = analyze(f)
            assert c == analyze_bruteforce(f, widen=1)
            assert all(idx.gamma in analysis_window(f) for idx in c)


def test_synthesize_basics():
    assert synthesize({}, 3, 2).is_zero()
    idx = WaveletIndex.make(3, 2, [Fraction(1, 3), 0], (1, 1))
    assert synthesize({idx: amp(3, 1)}, 3, 2) == make_wavelet(idx)


def test_synthesize_matches_direct():
    rng = random.Random(3)
    for _ in range(10):
        f = random_function(rng, 3, 2, mean_zero=True)
        c = analyze(f)
        assert synthesize(c, 3, 2) == synthesize_direct(c, 3, 2) == f


def test_omega_coefficients():
    p = 2
    assert omega_coefficients(WaveletIndex.make(p, 0, None, (1,))).is_zero()
    idx = WaveletIndex.make(p, 2, None, (1,))
    assert omega_coefficients(idx) == amp(p, Fraction(1, 2))
    assert inner(omega(p, 1), make_wavelet(idx)) == amp(p, Fraction(1, 2))
    assert omega_coefficients(WaveletIndex.make(p, 2, [Fraction(1, 2)], (1,))).is_zero()
    for i in enumerate_indices(3, 2, range(-1, 3), 1):
        assert omega_coefficients(i) == inner(omega(3, 2), make_wavelet(i))


def test_parseval_partial_values():
    assert parseval_partial(2, 1, 3) == Fraction(7, 8)
    assert parseval_partial(3, 2, 2) == Fraction(80, 81)
    for p, d in [(2, 1), (3, 2), (5, 1)]:
        for G in range(1, 5):
            assert 1 - parseval_partial(p, d, G) == Fraction(1, p ** (d * G))
            assert parseval_enumerated(p, d, G) == parseval_partial(p, d, G)
    with pytest.raises(ValueError):
        parseval_partial(2, 1, 0)


def test_parseval_sum_random():
    rng = random.Random(17)
    for _ in range(10):
        f = random_function(rng, 2, 2, mean_zero=True)
        assert parseval_sum(analyze(f), 2) == inner(f, f)


def test_mean_zero_of_wavelets():
    for idx in enumerate_indices(5, 1, range(-2, 3), 1):
        assert integrate(make_wavelet(idx)).is_zero()

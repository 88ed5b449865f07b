import random
from fractions import Fraction

import pytest

from padic_wavelets import group as G
from padic_wavelets.cyclotomic import ScaledAmplitude
from padic_wavelets.functions import dilate, inner, make_indicator
from padic_wavelets.mra import tensor_of_wavelets
from padic_wavelets.padic import Ball, CosetRep, PAdicRational, ball_canonical, vec_norm
from padic_wavelets.sampling import random_function, random_sphere_vector, random_vector
from padic_wavelets.wavelet import WaveletIndex, make_psi_J, make_wavelet, omega, psi_one

from conftest import pv


def zeta(p, k=1):
    return ScaledAmplitude.root(p, 1, k)


def test_unit_matrix_examples():
    assert G.is_unit_matrix(3, [[1, 0], [0, 1]])
    assert not G.is_unit_matrix(3, [[3, 0], [0, 1]])
    assert G.is_unit_matrix(5, [[2, 0], [5, 1]])
    assert not G.is_unit_matrix(2, [[Fraction(1, 2), 0], [0, 2]])
    with pytest.raises(ValueError):
        G.UnitMatrix(5, [[5, 0], [0, 1]])


def test_columns_criterion_examples():
    assert G.columns_criterion(2, [[1, 0], [0, 1]])
    assert not G.columns_criterion(2, [[1, 1], [1, 1]])
    assert G.columns_criterion(3, [[1, 1], [1, 2]])


def test_stabilizer_witness():
    assert G.stabilizer_witness(3, [[1, 0], [0, 1]]) is None
    rows = [[1, 2], [2, 4]]
    x = G.stabilizer_witness(3, rows)
    assert x is not None and any(c % 3 for c in x)
    assert all(sum(a * c for a, c in zip(r, x)) % 3 == 0 for r in rows)


def test_e1_to_x_examples():
    e1 = pv(5, 1, 0)
    assert G.e1_to_x(5, e1).is_identity()
    m = G.e1_to_x(5, pv(5, 2, 5))
    assert m.rows == ((2, 0), (5, 1))
    m = G.e1_to_x(2, pv(2, 2, 1))
    assert m.rows == ((2, 1), (1, 0))
    assert m.apply(pv(2, 1, 0)) == pv(2, 2, 1) and G.is_unit_matrix(2, m.rows)
    with pytest.raises(ValueError):
        G.e1_to_x(3, pv(3, 3, 6))


def test_e1_to_x_random():
    rng = random.Random(0)
    for p, d in [(2, 2), (3, 3), (5, 2)]:
        for _ in range(30):
            x = random_sphere_vector(rng, p, d)
            m = G.e1_to_x(p, x)
            assert m.apply(tuple(PAdicRational(p, int(i == 0)) for i in range(d))) == x
            assert G.columns_criterion(p, m.rows)


def test_norm_preservation():
    rng = random.Random(1)
    for _ in range(30):
        m = G.random_unit_matrix(rng, 3, 3)
        x = random_vector(rng, 3, 3)
        assert vec_norm(m.apply(x)) == vec_norm(x)


def test_identity_action():
    f = random_function(random.Random(2), 3, 2)
    assert G.act(G.GroupElement.identity(3, 2), f) == f


def test_integer_translation_multiplies_by_root():
    psi = make_psi_J(3, (1,))
    g = G.GroupElement.translation(3, pv(3, 1))
    assert G.act(g, psi) == psi * zeta(3)
    assert G.orbit_classify(G.act(g, psi)) == (1, WaveletIndex.make(3, 0, None, (1,)))


def test_dilation_of_haar():
    psi = make_psi_J(2, (1,))
    g = G.GroupElement.dilation(2, 1, 1)
    assert G.act(g, psi) == make_wavelet(WaveletIndex.make(2, 1, None, (1,)))


def test_matrix_letter_on_seed():
    # act by m reads the first row of m as the new direction
    m = G.UnitMatrix(3, [[2, 1], [0, 1]])
    h = G.act(G.GroupElement.matrix(m), psi_one(3, 2))
    assert h == make_psi_J(3, (2, 1))


def test_action_law_and_unitarity():
    rng = random.Random(3)
    for _ in range(25):
        g, h = G.random_element(rng, 3, 2), G.random_element(rng, 3, 2)
        f = random_function(rng, 3, 2)
        assert G.act(g.compose(h), f) == G.act(h, G.act(g, f))
        assert inner(G.act(g, f), G.act(g, f)) == inner(f, f)


def test_factorize_examples():
    b = pv(3, Fraction(1, 3), 2)
    t = G.GroupElement.translation(3, b)
    assert G.factorize([t]) == G.GroupElement(0, b, G.UnitMatrix.identity(3, 2))
    with pytest.raises(ValueError):
        G.factorize([])


def test_factorize_agrees_with_points_and_functions():
    rng = random.Random(4)
    pts = G.spanning_points(2, 2)
    for _ in range(25):
        word = [G.random_generator(rng, 2, 2) for _ in range(5)]
        g = G.factorize(word)
        assert G.from_point_images(2, [G.apply_word(word, x) for x in pts]) == g
        x = random_vector(rng, 2, 2)
        assert g.apply(x) == G.apply_word(word, x)
        f = random_function(rng, 2, 2)
        assert G.act_word(word, f) == G.act(g, f)


def test_classify_examples():
    for J in [(1, 0), (2, 2), (0, 1)]:
        assert G.orbit_classify(make_psi_J(3, J)) == (0, WaveletIndex.make(3, 0, None, J))
    assert G.orbit_classify(omega(3, 2)) is None
    idx = WaveletIndex.make(5, -2, [Fraction(3, 5)], (4,))
    assert G.orbit_classify(make_wavelet(idx) * zeta(5, 3)) == (3, idx)
    assert G.orbit_classify(make_wavelet(idx) * 2) is None


def test_tensor_of_unequal_levels_is_not_in_orbit():
    a = WaveletIndex.make(2, 0, None, (1,))
    b = WaveletIndex.make(2, 1, None, (1,))
    assert G.orbit_classify(tensor_of_wavelets([a, b])) is None
    # equal levels do give a basis wavelet, with every direction digit set
    assert G.orbit_classify(tensor_of_wavelets([a, a])) == (0, WaveletIndex.make(2, 0, None, (1, 1)))


def test_orbit_depth_zero():
    rep = G.orbit_generate(3, 2, 0)
    assert rep.classes == {(0, WaveletIndex.make(3, 0, None, (1, 0)))}


def test_orbit_small_generators_reach_three_levels():
    gens = [
        G.GroupElement.translation(2, pv(2, 1)),
        G.GroupElement.translation(2, pv(2, Fraction(1, 2))),
        G.GroupElement.dilation(2, 1, 1),
        G.GroupElement.dilation(2, 1, -1),
    ]
    rep = G.orbit_generate(2, 1, 2, gens)
    assert rep.ok
    assert {idx.gamma for _, idx in rep.classes} >= {-1, 0, 1}


def test_orbit_default_generators_p3_d2():
    rep = G.orbit_generate(3, 2, 2)
    assert rep.ok and rep.statistics()["failures"] == 0
    assert len(rep.classes) > 10


def test_affine_examples():
    f = random_function(random.Random(5), 3, 1)
    assert G.affine_act(G.AffineElement(PAdicRational(3, 1), PAdicRational(3, 0)), f) == f
    for p in (2, 3):
        g = G.AffineElement(PAdicRational(p, 1, 1), PAdicRational(p, 0))
        assert G.affine_act(g, omega(p, 1)) == dilate(omega(p, 1), -1)
    with pytest.raises(ValueError):
        G.AffineElement(PAdicRational(3, 0), PAdicRational(3, 1))


def test_affine_pointwise():
    from padic_wavelets.cyclotomic import half_power
    from padic_wavelets.functions import evaluate

    rng = random.Random(6)
    p = 5
    for _ in range(10):
        f = random_function(rng, p, 1)
        a = PAdicRational(p, rng.choice([1, 2, 3, 4, 7]), rng.randint(-1, 1))
        b = PAdicRational(p, rng.randrange(25), -1)
        h = G.affine_act(G.AffineElement(a, b), f)
        for _ in range(40):
            y = PAdicRational(p, rng.randrange(p**5), -2)
            assert evaluate(h, (a * y + b,)) == half_power(p, a.valuation) * evaluate(f, (y,))
        assert inner(h, h) == inner(f, f)


def test_ball_witness_examples():
    p = 3
    unit = Ball(0, CosetRep.zero(p, 1))
    assert G.ball_transitivity_witness(unit, unit).is_identity()
    shifted = ball_canonical(0, pv(p, Fraction(1, 3)))
    g = G.ball_transitivity_witness(unit, shifted)
    assert g == G.GroupElement.translation(p, pv(p, Fraction(1, 3)))
    big = ball_canonical(-1, pv(p, 0))
    small = ball_canonical(1, pv(p, Fraction(1, 9)))
    g = G.ball_transitivity_witness(big, small)
    assert g.gamma == big.gamma - small.gamma == 2
    # the point map sends the big ball into the small one
    assert all(small.contains(g.apply(x)) for x in [pv(p, 0), pv(p, 3), pv(p, -6), pv(p, Fraction(1, 3))])

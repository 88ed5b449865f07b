import os
import random
import subprocess
import sys

import numpy as np
import pytest

from padic_wavelets import _kernels
from padic_wavelets.functions import _encode_for_oracle, inner
from padic_wavelets.gram import _encode, as_root_monomial
from padic_wavelets.sampling import random_function
from padic_wavelets.wavelet import enumerate_indices, make_wavelet

needs_numba = pytest.mark.skipif(not _kernels.HAS_NUMBA, reason="numba not installed")


def _encoded_window(p, d):
    fs = [make_wavelet(i) for i in enumerate_indices(p, d, range(-1, 2), 1)]
    monos = [as_root_monomial(f) for f in fs]
    M = max(m.M for m in monos)
    return _encode(fs, monos, M) + (p, M)


def _as_dict(pairs, vals):
    return {tuple(k): tuple(v) for k, v in zip(pairs.tolist(), vals.tolist())}


@needs_numba
@pytest.mark.parametrize("p,d", [(2, 1), (3, 1), (2, 2), (3, 2), (5, 1)])
def test_gram_backends_agree(p, d):
    args = _encoded_window(p, d)
    a = _as_dict(*_kernels.gram_pairs_numba(*args))
    b = _as_dict(*_kernels.gram_pairs_numpy(*args))
    assert a == b and a


def _oracle_args(f, g):
    S = max(f.scale, g.scale)
    r = max(f.support_exponent(), g.support_exponent(), -S)
    W = f.p ** (S + r)
    return (*_encode_for_oracle(f, r, W), *_encode_for_oracle(g, r, W), f.d, W), S


@needs_numba
def test_oracle_backends_agree():
    rng = random.Random(7)
    for _ in range(40):
        p, d = rng.choice([(2, 1), (3, 1), (2, 2), (3, 2)])
        f, g = random_function(rng, p, d), random_function(rng, p, d)
        args, S = _oracle_args(f, g)
        a = _kernels.oracle_inner_numba(*args)
        b = _kernels.oracle_inner_numpy(*args)
        assert abs(a - b) < 1e-12
        exact = inner(f, g).to_complex()
        assert abs(a * float(p) ** (-S * d) - exact) < 1e-9


def test_numpy_oracle_on_disjoint_supports():
    from padic_wavelets.functions import StepFunction
    from padic_wavelets.padic import PAdicRational

    f = StepFunction(3, 1, 1, {(PAdicRational(3, 0),): 1})
    g = StepFunction(3, 1, 1, {(PAdicRational(3, 1),): 1})
    args, _ = _oracle_args(f, g)
    assert _kernels.oracle_inner_numpy(*args) == 0


@pytest.mark.parametrize("flag,expected", [("1", "numpy"), ("", "numba" if _kernels.HAS_NUMBA else "numpy")])
def test_env_flag_selects_backend(flag, expected):
    env = dict(os.environ, PADIC_WAVELETS_NO_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, "-c", "from padic_wavelets import _kernels; print(_kernels.BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == expected


def test_dispatch_follows_backend():
    args = _encoded_window(2, 1)
    got = _as_dict(*_kernels.gram_pairs(*args))
    assert got == _as_dict(*_kernels.gram_pairs_numpy(*args))
    assert isinstance(np.asarray(_kernels.gram_pairs(*args)[1]), np.ndarray)

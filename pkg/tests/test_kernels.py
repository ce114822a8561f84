import importlib
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from projprod import _kernels_py, kernels

cy = pytest.importorskip("projprod._kernels", reason="Cython extension not built")


def _case(seed, n):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    a *= 0.97 / np.linalg.norm(a, 2)
    lim = np.zeros((n, n), dtype=np.complex128)
    return a, lim


@given(st.integers(0, 2**31), st.integers(1, 12), st.integers(1, 60))
def test_backends_agree(seed, n, steps):
    a, lim = _case(seed, n)
    ref = _kernels_py.power_norms(a, lim, -1.0, steps)
    got = cy.power_norms(a, lim, -1.0, steps)
    assert got.shape == ref.shape == (steps,)
    np.testing.assert_allclose(got, ref, rtol=1e-10, atol=1e-15)


def test_backends_stop_at_same_step():
    a, lim = _case(5, 6)
    ref = _kernels_py.power_norms(a, lim, 1e-6, 10_000)
    got = cy.power_norms(a, lim, 1e-6, 10_000)
    assert got.size == ref.size
    assert got[-1] <= 1e-6 < got[-2]


def test_empty_matrix():
    z = np.zeros((0, 0), dtype=np.complex128)
    for fn in (cy.power_norms, _kernels_py.power_norms):
        out = fn(z, z, 1e-10, 5)
        assert out.size >= 1 and not out.any()


def test_nonzero_limit_subtracted():
    p = 0.5 * np.ones((2, 2), dtype=np.complex128)
    for fn in (cy.power_norms, _kernels_py.power_norms):
        out = fn(p, p, 1e-12, 10)
        assert out.size == 1 and out[0] == pytest.approx(0.0, abs=1e-15)


def test_selection_honours_environment():
    code = "from projprod import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, PROJPROD_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert kernels.BACKEND in ("cython", "python")

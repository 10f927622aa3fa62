import numpy as np
import pytest

from fuzzytoc import kernels
from fuzzytoc.solver import solve_point_to_point

BACKENDS = sorted(kernels.BACKENDS)

SPECIAL = np.array([
    [-5, 3], [0, 0], [-1, 0], [1, 0], [4, 0], [-2, 0], [2, 0],
    [-4, 2], [-0.5, 0.5], [-6, 4], [0.5, 0.5], [0, 1], [7.5, -7.5],
], dtype=float)


@pytest.fixture(scope="module")
def random_pairs():
    rng = np.random.default_rng(12345)
    return rng.uniform(-8, 8, (40, 2)), rng.uniform(-8, 8, (40, 2))


def reference(P, Q):
    return np.array([[solve_point_to_point(p, q).time for q in Q] for p in P])


def test_compiled_backend_is_default_when_built():
    if "cython" in kernels.BACKENDS:
        assert kernels.BACKEND == "cython"
    else:
        assert kernels.BACKEND == "python"


@pytest.mark.parametrize("backend", BACKENDS)
def test_matches_scalar_solver_random(backend, random_pairs):
    P, Q = random_pairs
    got = kernels.pair_times(P, Q, backend=backend)
    np.testing.assert_allclose(got, reference(P, Q), rtol=0, atol=1e-9)


@pytest.mark.parametrize("backend", BACKENDS)
def test_matches_scalar_solver_special(backend):
    got = kernels.pair_times(SPECIAL, SPECIAL, backend=backend)
    np.testing.assert_allclose(got, reference(SPECIAL, SPECIAL), rtol=0, atol=1e-9)
    assert np.all(np.diag(got) == 0.0)


@pytest.mark.parametrize("backend", BACKENDS)
def test_single_pair(backend):
    mod = kernels.get_backend(backend)
    assert mod.solve_time(-5, 3, 0, 0) == pytest.approx(8.781276851976095, abs=1e-12)


@pytest.mark.parametrize("backend", BACKENDS)
def test_unverifiable_marks_nan(backend):
    got = kernels.pair_times(SPECIAL[:3], SPECIAL[3:6], verify_tol=-1.0, backend=backend)
    assert np.isnan(got).all()


@pytest.mark.skipif("cython" not in kernels.BACKENDS, reason="compiled kernel not built")
def test_thread_count_does_not_change_bits(random_pairs):
    P, Q = random_pairs
    one = kernels.pair_times(P, Q, num_threads=1, backend="cython")
    four = kernels.pair_times(P, Q, num_threads=4, backend="cython")
    assert one.tobytes() == four.tobytes()


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")

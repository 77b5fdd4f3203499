import numpy as np
import pytest

from pulsedistill.errors import NotHermitianError
from pulsedistill.qmath import (
    HERM_TOL,
    NORM_TOL,
    UNITARY_TOL,
    dagger,
    hermitian_eig,
    hermiticity_defect,
    kron,
    norm_defect,
    propagator,
    require_hermitian,
    unitarity_defect,
)

from conftest import rand_state


def rand_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


def test_kron_identity():
    np.testing.assert_array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_diagonal():
    sz = np.diag([1.0, -1.0])
    np.testing.assert_array_equal(kron(sz, sz), np.diag([1.0, -1.0, -1.0, 1.0]))


def test_kron_basis_bookkeeping():
    # e0 (x) e1 lands on composite index 0*2 + 1 = 1
    e0 = np.array([1.0, 0.0])
    e1 = np.array([0.0, 1.0])
    v = kron(e0.reshape(2, 1), e1.reshape(2, 1)).ravel()
    assert v[1] == 1.0 and np.count_nonzero(v) == 1


def test_kron_associates():
    rng = np.random.default_rng(7)
    a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
    lhs = kron(kron(a, b), c)
    rhs = kron(a, kron(b, c))
    assert np.abs(lhs - rhs).max() < 1e-14


def test_dagger():
    m = np.array([[1.0, 2j], [0.0, 1.0]])
    np.testing.assert_array_equal(dagger(m), m.conj().T)


def test_hermitian_eig_diagonal():
    w, v = hermitian_eig(np.diag([-2.5, 0.5, -1.5, 3.5]).astype(complex))
    np.testing.assert_allclose(w, [-2.5, -1.5, 0.5, 3.5])
    for k in range(4):
        assert abs(np.linalg.norm(v[:, k]) - 1.0) < 1e-12


def test_hermitian_eig_symmetric_2x2():
    g = 0.05
    w, _ = hermitian_eig(np.array([[0.0, g], [g, 0.0]], dtype=complex))
    np.testing.assert_allclose(w, [-g, g], atol=1e-14)


def test_hermitian_eig_residual_random():
    rng = np.random.default_rng(11)
    for _ in range(20):
        m = rand_hermitian(rng, 4)
        w, v = hermitian_eig(m)
        for k in range(4):
            assert np.linalg.norm(m @ v[:, k] - w[k] * v[:, k]) < 1e-10
        assert np.abs(v.conj().T @ v - np.eye(4)).max() < 1e-10


def test_hermitian_eig_reconstructs():
    rng = np.random.default_rng(13)
    m = rand_hermitian(rng, 16)
    w, v = hermitian_eig(m)
    assert np.abs((v * w) @ v.conj().T - m).max() < 1e-9


def test_hermitian_eig_ascending():
    rng = np.random.default_rng(17)
    w, _ = hermitian_eig(rand_hermitian(rng, 8))
    assert np.all(np.diff(w) >= 0)


def test_not_hermitian_rejected():
    m = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    with pytest.raises(NotHermitianError):
        hermitian_eig(m)
    with pytest.raises(NotHermitianError):
        require_hermitian(m)
    with pytest.raises(NotHermitianError):
        require_hermitian(np.zeros((2, 3)))


def test_hermiticity_defect_tolerance():
    m = np.eye(2, dtype=complex)
    m[0, 1] = 1e-10
    assert hermiticity_defect(m) == pytest.approx(1e-10)
    require_hermitian(m, tol=HERM_TOL)  # under tolerance passes


def test_propagator_zero_generator():
    np.testing.assert_allclose(
        propagator(np.zeros((4, 4), dtype=complex), 2.7), np.eye(4), atol=1e-15
    )


def test_propagator_diagonal():
    eps = np.array([-2.5, 0.5, -1.5, 3.5])
    dt = 0.37
    u = propagator(np.diag(eps).astype(complex), dt)
    np.testing.assert_allclose(u, np.diag(np.exp(-1j * eps * dt)), atol=1e-12)


def test_propagator_unitary_and_norm_preserving():
    rng = np.random.default_rng(19)
    for dim in (4, 16):
        h = rand_hermitian(rng, dim)
        u = propagator(h, 1.3)
        assert unitarity_defect(u) < UNITARY_TOL
        psi = rand_state(rng, dim)
        assert norm_defect(u @ psi) < NORM_TOL


def test_propagator_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        propagator(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex), 0.1)

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tlforge.linalg import (
    as_matrix,
    basis_matrix,
    conj,
    dagger,
    default_tol,
    determinant,
    hermitian_eigensystem,
    is_unitary_within,
    kron,
    normal_eigensystem,
    permuted_diagonal,
    random_unitary,
    singular_values,
    transpose,
)
from tlforge.permutations import from_cycles, inverse, permutation_matrix
from tlforge.rank1 import example1_v

from oracles import det_via_permutations


def _herm(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (a + a.conj().T) / 2


def test_kron_identity_and_units():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    k = kron(basis_matrix(2, 0, 0), basis_matrix(2, 1, 1))
    expected = np.zeros((4, 4))
    expected[1, 1] = 1
    assert np.array_equal(k, expected)


def test_kron_blocks(rng):
    a = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    b = rng.standard_normal((3, 2))
    k = kron(a, b)
    assert k.shape == (6, 6)
    for i in range(2):
        for j in range(3):
            assert np.allclose(k[3 * i:3 * i + 3, 2 * j:2 * j + 2], a[i, j] * b)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_kron_mixed_product(seed):
    r = np.random.default_rng(seed)
    a, b, c, d = (r.standard_normal((3, 3)) + 1j * r.standard_normal((3, 3)) for _ in range(4))
    assert np.allclose(kron(a, b) @ kron(c, d), kron(a @ c, b @ d))


def test_dagger_conj_transpose():
    m = np.array([[0, 1j], [0, 0]])
    assert np.array_equal(dagger(m), np.array([[0, 0], [-1j, 0]]))
    real = np.array([[1.0, 2.0], [3.0, 4.0]])
    assert np.array_equal(conj(real), real)
    s = from_cycles(3, [(1, 2, 3)])
    assert np.array_equal(transpose(permutation_matrix(s)), permutation_matrix(inverse(s)))


def test_as_matrix_rejects_nonfinite():
    with pytest.raises(ValueError):
        as_matrix([[1.0, np.nan], [0, 1]])
    with pytest.raises(ValueError):
        as_matrix([1.0, 2.0])


def test_is_unitary_within():
    ok, res = is_unitary_within(np.eye(3))
    assert ok and res == 0
    zeta = np.exp(0.7j)
    q = 1.7
    V = example1_v(q, zeta)
    ok, res = is_unitary_within((q + 1 / q) * V @ V.conj())
    assert ok and res < 1e-14
    ok, res = is_unitary_within(np.diag([2.0, 0.5]))
    assert not ok and res == pytest.approx(3.0)
    with pytest.raises(ValueError):
        is_unitary_within(np.ones((2, 3)))


def test_hermitian_eigensystem_small_cases():
    vals, _ = hermitian_eigensystem(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(vals, [1, 2, 3])
    vals, vecs = hermitian_eigensystem(np.array([[0, 1], [1, 0]]))
    assert np.allclose(vals, [-1, 1])
    # V*V for the u = 2 rank-one matrix: eigenvalues 1/17 and 16/17
    Q = 17 / 4
    V = np.array([[0, 2], [0.5, 0]]) / np.sqrt(Q)
    vals, _ = hermitian_eigensystem(V.conj().T @ V)
    assert np.allclose(vals, [1 / 17, 16 / 17], atol=1e-14)


def test_hermitian_eigensystem_rejects_nonhermitian():
    with pytest.raises(ValueError):
        hermitian_eigensystem(np.array([[0, 1], [0, 0]]))


@pytest.mark.parametrize("n", [1, 2, 5, 9, 16])
def test_hermitian_eigensystem_reconstructs(rng, n):
    tol = 1e-10
    for _ in range(3):
        a = _herm(rng, n)
        vals, v = hermitian_eigensystem(a, tol=tol)
        assert np.all(np.diff(vals) >= 0)
        assert np.max(np.abs(a @ v - v * vals)) <= 10 * tol
        assert np.max(np.abs(v.conj().T @ v - np.eye(n))) <= 10 * tol
        assert np.max(np.abs(a - v @ np.diag(vals) @ v.conj().T)) <= 10 * tol
        assert np.allclose(vals, np.linalg.eigvalsh(a), atol=1e-11)


def test_hermitian_eigensystem_degenerate(rng):
    u = random_unitary(6, rng)
    a = u @ np.diag([1, 1, 1, 2, 2, 5.0]) @ u.conj().T
    vals, v = hermitian_eigensystem(a)
    assert np.allclose(vals, [1, 1, 1, 2, 2, 5], atol=1e-12)
    assert np.max(np.abs(a @ v - v * vals)) < 1e-10


def test_singular_values():
    assert np.allclose(singular_values(np.eye(4)), 1)
    Q = 17 / 4
    V = np.array([[0, 2], [0.5, 0]]) / np.sqrt(Q)
    sv = singular_values(V)
    assert np.allclose(sv, [2 / np.sqrt(Q), 1 / (2 * np.sqrt(Q))])
    assert sv[0] * sv[1] == pytest.approx(1 / Q)


def test_singular_values_of_unitary(rng):
    ok, _ = is_unitary_within(random_unitary(5, rng), 1e-12)
    assert ok
    assert np.allclose(singular_values(random_unitary(5, rng)), 1, atol=1e-12)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 7))
def test_singular_values_unitarily_invariant(seed, n):
    r = np.random.default_rng(seed)
    a = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
    u, w = random_unitary(n, r), random_unitary(n, r)
    assert np.allclose(singular_values(u @ a @ w), singular_values(a), atol=1e-9)
    assert np.allclose(singular_values(a), np.linalg.svd(a, compute_uv=False), atol=1e-9)


def test_determinant_examples():
    s = from_cycles(4, [(1, 2), (3, 4)])
    assert determinant(permutation_matrix(s)) == pytest.approx(1)
    zeta, q = np.exp(0.3j), 2.0
    V = example1_v(q, zeta)
    assert determinant((q + 1 / q) * V @ V.conj()) == pytest.approx(1)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 6))
def test_determinant_multiplicative_and_oracle(seed, n):
    r = np.random.default_rng(seed)
    a = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
    b = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
    assert abs(determinant(a @ b) - determinant(a) * determinant(b)) <= 1e-9 * max(1, abs(determinant(a @ b)))
    assert abs(determinant(a) - det_via_permutations(a)) <= 1e-9 * max(1, abs(determinant(a)))


def test_normal_eigensystem(rng):
    u = random_unitary(5, rng)
    w = np.exp(1j * np.array([0.3, -0.3, 1.1, -1.1, 0.0]))
    m = u @ np.diag(w) @ u.conj().T
    vals, vecs = normal_eigensystem(m)
    assert np.max(np.abs(m @ vecs - vecs * vals)) < 1e-10
    assert sorted(np.round(vals, 10), key=lambda z: (z.real, z.imag)) == sorted(np.round(w, 10), key=lambda z: (z.real, z.imag))
    # degenerate real parts with distinct imaginary parts
    m = u @ np.diag([1j, -1j, 1j, 2, 2]) @ u.conj().T
    vals, vecs = normal_eigensystem(m)
    assert np.max(np.abs(m @ vecs - vecs * vals)) < 1e-9
    assert normal_eigensystem(np.array([[1, 1], [0, 1]])) is None


def test_permuted_diagonal_matches_conjugation(rng):
    s = from_cycles(5, [(1, 3, 4), (2, 5)])
    d = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    P = permutation_matrix(s)
    assert np.allclose(np.diag(permuted_diagonal(d, s.image)), P @ np.diag(d) @ P.T)


def test_default_tol(monkeypatch):
    monkeypatch.delenv("TLFORGE_TOL", raising=False)
    assert default_tol() == 1e-10
    monkeypatch.setenv("TLFORGE_TOL", "1e-7")
    assert default_tol() == 1e-7
    monkeypatch.setenv("TLFORGE_TOL", "-1")
    with pytest.raises(ValueError):
        default_tol()

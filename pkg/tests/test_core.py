import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tlforge.core import (
    AXIOM_N_CAP,
    SpanningSet,
    TLSolution,
    apply_congruence,
    build_generator,
    build_projector,
    build_w,
    congruence_fingerprint,
    gram_residual,
    verify_by_criterion,
    verify_tl_axioms,
)
from tlforge.linalg import max_abs, random_unitary
from tlforge.permutations import from_cycles, permutation_matrix
from tlforge.rank1 import example1_generator, example1_v
from tlforge.rank2 import build_vvn4k, s4_catalog, ssigma1, vvn4k_zpar

from oracles import as_operator, example1_tensor, projector_tensor, tl_residuals


def example1(q, zeta):
    return TLSolution(SpanningSet([example1_v(q, zeta)]), q + 1 / q, "example1")


def test_spanning_set_validation():
    with pytest.raises(ValueError):
        SpanningSet([])
    with pytest.raises(ValueError):
        SpanningSet([np.eye(2), np.eye(3)])
    s = SpanningSet([np.eye(2) / math.sqrt(2)])
    assert s.n == 2 and s.rank == 1


def test_solution_requires_positive_q():
    s = SpanningSet([np.eye(2) / math.sqrt(2)])
    with pytest.raises(ValueError):
        TLSolution(s, -1.0, "x")
    with pytest.raises(ValueError):
        TLSolution(s, 1 + 1j, "x")


def test_build_w_examples():
    q, zeta = 1.5, np.exp(0.4j)
    W = build_w(example1(q, zeta))
    assert np.allclose(W, q / (q * q + 1) * np.diag([zeta, np.conj(zeta)]))
    n = 3
    assert np.allclose(build_w([np.eye(n) / math.sqrt(n)]), np.eye(n) / n)


def test_build_w_block_layout(rng):
    v1 = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    v2 = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    W = build_w([v1, v2])
    assert np.allclose(W[:3, :3], v1 @ v1.conj())
    assert np.allclose(W[:3, 3:], v2 @ v1.conj())
    assert np.allclose(W[3:, :3], v1 @ v2.conj())
    assert np.allclose(W[3:, 3:], v2 @ v2.conj())


def test_projector_matches_oracle(rng):
    for q, zeta in [(1.0, 1.0), (2.0, 1j)]:
        V = example1_v(q, zeta)
        assert np.allclose(build_projector([V]), as_operator(projector_tensor([V])))
    P = build_projector([example1_v(1.0, 1.0)])
    assert np.allclose(P, example1_generator(1.0, 1.0) / 2)
    E = np.zeros((3, 3))
    E[0, 0] = 1
    P = build_projector([E])
    expected = np.zeros((9, 9))
    expected[0, 0] = 1
    assert np.allclose(P, expected)


def test_projector_properties(rng):
    for sol in [e.solution for e in s4_catalog()]:
        P = build_projector(sol)
        assert max_abs(P @ P - P) < 1e-12
        assert max_abs(P.conj().T - P) < 1e-12
        assert abs(np.trace(P) - sol.rank) < 1e-12


def test_projector_rejects_non_orthonormal():
    with pytest.raises(ValueError):
        build_projector([np.eye(2)])


def test_generator_examples():
    sol = example1(2.0, 1.0)
    assert sol.Q == 2.5
    assert np.allclose(build_generator(sol), example1_generator(2.0, 1.0))
    assert np.allclose(example1_generator(2.0, 1.0)[1:3, 1:3], [[2, 1], [1, 0.5]])
    V0 = np.eye(2) / math.sqrt(2)
    T = build_generator(TLSolution(SpanningSet([V0]), 2.0, "v0"))
    v = V0.reshape(-1)
    assert np.allclose(T, 2 * np.outer(v, v.conj()))
    for e in s4_catalog():
        assert np.trace(build_generator(e.solution)) == pytest.approx(e.Q * 2)


@pytest.mark.parametrize("q", [0.25, 1.0, 3.0])
@pytest.mark.parametrize("zeta", [1.0, 1j, np.exp(1j * np.pi / 3)])
def test_axioms_example1_against_oracle(q, zeta):
    T = example1_generator(q, zeta)
    rep = verify_tl_axioms(T, q + 1 / q, 2)
    oracle = tl_residuals(example1_tensor(q, zeta), q + 1 / q)
    assert rep.passed
    for k in ("t1", "t2", "t3", "t4"):
        assert rep.residuals[k] < 1e-12
        assert oracle[k] < 1e-12


def test_axioms_reject_scalar_generator():
    Q = 3.0
    rep = verify_tl_axioms(Q * np.eye(4), Q, 2)
    assert not rep.passed
    assert "t3" in rep.failed_checks()


def test_axioms_size_checks():
    with pytest.raises(ValueError):
        verify_tl_axioms(np.eye(5), 1.0, 2)
    n = AXIOM_N_CAP + 1
    with pytest.raises(ValueError):
        verify_tl_axioms(np.eye(n * n), 1.0, n)


def test_axioms_non_hermitian_zpar():
    sol = vvn4k_zpar(4, "ssigma1", 1 + 1j)
    T = sol.Q * build_projector(sol)
    rep = verify_tl_axioms(T, sol.Q, 4, tol=1e-9, hermitian=False)
    assert rep.passed
    assert rep.residuals["t1"] > 1e-3
    oracle = tl_residuals(projector_tensor(sol.mats, sol.duals.mats) * sol.Q, sol.Q)
    assert max(oracle["t2"], oracle["t3"], oracle["t4"]) < 1e-9


def test_criterion_examples():
    rep = verify_by_criterion(example1(1.3, np.exp(0.2j)))
    assert rep.passed and rep.residuals["unitarity"] < 1e-12 and rep.residuals["det_qw"] < 1e-12
    j = next(e for e in s4_catalog() if e.label == "j")
    rep = verify_by_criterion(j.solution)
    assert rep.passed and j.solution.Q == pytest.approx(2 * math.sqrt(2))
    V = example1_v(1.3, 1.0).copy()
    V[0, 1] += 1e-3
    rep = verify_by_criterion(TLSolution(SpanningSet([V]), 1.3 + 1 / 1.3, "bad"))
    assert not rep.passed
    assert 1e-4 < rep.max_residual() < 1e-2


def test_criterion_rejects_non_hermitian():
    with pytest.raises(ValueError):
        verify_by_criterion(vvn4k_zpar(4, "ssigma1", 1 + 1j))


def test_gram_residual():
    assert gram_residual([np.eye(2) / math.sqrt(2)]) < 1e-15
    assert gram_residual([np.eye(2)]) == pytest.approx(1.0)


def test_apply_congruence_identity_and_ppg12():
    sol = example1(2.0, 1j)
    same = apply_congruence(sol, np.eye(2))
    assert all(np.allclose(a, b) for a, b in zip(same.mats, sol.mats))
    g0 = np.exp(-1j * np.pi / 4) / math.sqrt(2) * np.array([[1, 1j], [1j, 1]])
    for u0 in (1, -1):
        Vp = u0 * permutation_matrix(from_cycles(2, [(1, 2)])) / math.sqrt(2)
        moved = apply_congruence(TLSolution(SpanningSet([Vp]), 2.0, "v"), g0)
        assert np.allclose(moved.mats[0], u0 * np.eye(2) / math.sqrt(2))


def test_apply_congruence_rejects_non_unitary():
    with pytest.raises(ValueError):
        apply_congruence(example1(2.0, 1.0), 2 * np.eye(2))


def test_congruence_generator_identity(rng):
    sol = example1(0.7, np.exp(0.9j))
    g = random_unitary(2, rng)
    moved = apply_congruence(sol, g)
    G = np.kron(g, g)
    assert np.allclose(build_generator(moved), G @ build_generator(sol) @ G.conj().T)
    rep = verify_tl_axioms(build_generator(moved), moved.Q, 2, tol=1e-9)
    assert rep.passed


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_congruence_preserves_criterion_and_fingerprints(seed):
    r = np.random.default_rng(seed)
    n = 8
    th = r.uniform(0.2, 1.3)
    c = math.sqrt(2 / n)
    sol = build_vvn4k(n, "ssigma2", c * math.cos(th), c * math.sin(th) * np.exp(1j * r.uniform(0, 6)), np.exp(1j))
    g = random_unitary(n, r)
    moved = apply_congruence(sol, g)
    a, b = verify_by_criterion(sol), verify_by_criterion(moved)
    assert a.passed and b.passed
    assert moved.Q == sol.Q
    for v, w in zip(sol.mats, moved.mats):
        ok, why = congruence_fingerprint(v).matches(congruence_fingerprint(w))
        assert ok, why


def test_fingerprint_examples():
    fp = congruence_fingerprint(permutation_matrix(from_cycles(2, [(1, 2)])))
    assert fp.chi == pytest.approx(2)
    for s in ssigma1(8):
        V = np.diag(np.arange(1, 9)) @ permutation_matrix(s)
        assert abs(congruence_fingerprint(V).chi) < 1e-12
    nonnormal = np.array([[1, 2], [0, 1]])
    assert congruence_fingerprint(nonnormal).spectrum_vvbar is None

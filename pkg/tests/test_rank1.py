import math

import numpy as np
import pytest

from tlforge.core import apply_congruence, build_w, verify_by_criterion, verify_tl_axioms, build_generator
from tlforge.linalg import max_abs, random_unitary, singular_values
from tlforge.permutations import Permutation, from_cycles, permutation_matrix
from tlforge.rank1 import (
    DegenerateSpectrumError,
    Rank1Params,
    antidiagonal_involution,
    build_rank1,
    congruence_necessary_check,
    example1_v,
    rank1_from_u,
    reduce_to_normal_form,
    spectral_pairing_check,
    verify_rank1,
)

from draws import random_rank1, random_rank1_params

P12 = permutation_matrix(from_cycles(2, [(1, 2)]))


def test_antidiagonal_involution():
    assert antidiagonal_involution(4).cycles() == [(1, 4), (2, 3)]
    assert antidiagonal_involution(5).image[2] == 2


def test_params_validation():
    with pytest.raises(ValueError):
        Rank1Params(from_cycles(3, [(1, 2, 3)]), (0.3,))
    with pytest.raises(ValueError):
        Rank1Params(Permutation.identity(2), (0.3,))
    with pytest.raises(ValueError):
        Rank1Params(from_cycles(2, [(1, 2)]), (0,))
    with pytest.raises(ValueError):
        Rank1Params(from_cycles(2, [(1, 2)]), (0.1, 0.2))
    with pytest.raises(ValueError):
        Rank1Params(from_cycles(3, [(1, 3)]), (0.3,), sign_choice=0)


def test_vtq_from_direct_entries():
    u = 2.0
    Q = u * u + 1 / u**2
    sol = build_rank1(Rank1Params(from_cycles(2, [(1, 2)]), (u / math.sqrt(Q),)))
    assert sol.Q == pytest.approx(Q, abs=1e-14)
    expected = np.array([[0, u], [1 / u, 0]]) / math.sqrt(Q)
    assert max_abs(sol.mats[0] - expected) < 1e-14
    assert sol.family == "rank1-normal"


def test_u_one_gives_q_two():
    sol = rank1_from_u(from_cycles(2, [(1, 2)]), 1.0)
    assert sol.Q == 2.0
    assert np.allclose(sol.mats[0], P12 / math.sqrt(2))
    assert rank1_from_u(from_cycles(2, [(1, 2)]), 2.0).Q == 4.25


def test_n3_quadratic():
    z = 0.4 * np.exp(0.3j)
    sol = build_rank1(Rank1Params(from_cycles(3, [(1, 3)]), (z,)))
    Q = sol.Q
    assert abs(z) ** 2 + Q**-2 / abs(z) ** 2 + 1 / Q == pytest.approx(1, abs=1e-14)
    assert Q >= 3
    assert verify_by_criterion(sol).passed
    assert abs(sol.mats[0][1, 1] - 1 / math.sqrt(Q)) < 1e-15


def test_sign_choice_and_unsolvable():
    sol = build_rank1(Rank1Params(from_cycles(3, [(1, 3)]), (0.4,), sign_choice=-1))
    assert sol.mats[0][1, 1].real < 0
    with pytest.raises(ValueError):
        build_rank1(Rank1Params(from_cycles(2, [(1, 2)]), (1.2,)))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_build_rank1_invariants(n, rng):
    for _ in range(10):
        p = random_rank1_params(n, rng)
        sol = build_rank1(p)
        V = sol.mats[0]
        d = np.diag(V @ permutation_matrix(p.sigma).T)
        assert max_abs(d * d[list(p.sigma.image)] - 1 / sol.Q) < 1e-14
        assert verify_rank1(V, sol.Q).passed
        assert spectral_pairing_check(V, sol.Q).passed
        assert verify_by_criterion(sol).passed
        assert sol.Q >= n - 1e-12
        if n <= 4:
            assert verify_tl_axioms(build_generator(sol), sol.Q, n, tol=1e-9).passed


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_equality_case(n, rng):
    sol = random_rank1(n, rng, balanced=True)
    assert sol.Q == pytest.approx(n, abs=1e-12)
    rep = verify_rank1(sol.mats[0], sol.Q)
    assert "q_equality" in rep.residuals


def test_det_qw_is_one(rng):
    for n in (2, 3, 5):
        sol = random_rank1(n, rng)
        assert abs(np.linalg.det(sol.Q * build_w(sol)) - 1) < 1e-10
    V = example1_v(2.0, 1j)
    assert abs(np.linalg.det(2.5 * build_w([V])) - 1) < 1e-12


def test_verify_rank1_examples():
    rep = verify_rank1(example1_v(3.0, -1.0), 3 + 1 / 3)
    assert rep.passed
    for n in (2, 3, 4):
        rep = verify_rank1(np.eye(n) / math.sqrt(n), n)
        assert rep.passed and rep.residuals["q_equality"] == 0
    rep = verify_rank1(np.diag([0.9, 0.1]) @ P12, 2.0)
    assert not rep.passed and "trace" in rep.failed_checks()


def test_spectral_pairing_examples():
    u = 2.0
    sol = rank1_from_u(from_cycles(2, [(1, 2)]), u)
    Q = sol.Q
    sv = singular_values(sol.mats[0])
    assert np.allclose(sorted(sv), sorted([2 / math.sqrt(Q), 1 / (2 * math.sqrt(Q))]))
    assert spectral_pairing_check(sol.mats[0], Q).passed
    sol3 = build_rank1(Rank1Params(from_cycles(3, [(1, 3)]), (0.5,)))
    rep = spectral_pairing_check(sol3.mats[0], sol3.Q)
    assert rep.passed and rep.residuals["middle_singular"] < 1e-14
    q, zeta = 1.5, np.exp(0.7j)
    V = example1_v(q, zeta)
    vals = np.linalg.eigvals((q + 1 / q) * V @ V.conj())
    assert np.allclose(sorted(vals, key=np.angle), sorted([zeta, np.conj(zeta)], key=np.angle))


def test_spectral_pairing_rejects_non_solution():
    with pytest.raises(ValueError):
        spectral_pairing_check(np.diag([0.9, 0.1]) @ P12, 2.0)


def test_reduce_already_normal():
    sol = build_rank1(Rank1Params(from_cycles(2, [(1, 2)]), (0.6 * np.exp(0.2j),)))
    nf = reduce_to_normal_form(sol.mats[0], sol.Q)
    assert str(nf.sigma) == "(1,2)"
    assert max_abs(nf.g @ sol.mats[0] @ nf.g.T - nf.matrix) < 1e-8
    assert max(nf.residuals().values()) < 1e-10


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_reduce_round_trip(n, rng):
    done = 0
    while done < 8:
        sol = random_rank1(n, rng)
        mods = np.sort(np.abs(sol.mats[0]).max(axis=0) ** 2)
        if np.min(np.diff(mods), initial=1.0) < 1e-3:
            continue
        g = random_unitary(n, rng)
        moved = apply_congruence(sol, g)
        try:
            nf = reduce_to_normal_form(moved.mats[0], moved.Q)
        except DegenerateSpectrumError:
            continue
        assert max_abs(nf.g @ moved.mats[0] @ nf.g.T - nf.matrix) < 1e-8
        assert max_abs(mods - np.sort(np.abs(nf.D) ** 2)) < 1e-9
        assert nf.sigma.cycle_type() == _sigma(sol).cycle_type()
        assert max(nf.residuals().values()) < 1e-9
        done += 1


def _sigma(sol):
    V = sol.mats[0]
    return Permutation(tuple(int(np.argmax(np.abs(V[:, j]))) for j in range(V.shape[0])))


def test_reduce_rejects_degenerate():
    V0 = np.eye(2) / math.sqrt(2)
    with pytest.raises(DegenerateSpectrumError):
        reduce_to_normal_form(V0, 2.0)
    ok, _ = congruence_necessary_check(V0, P12 / math.sqrt(2))
    assert ok
    assert verify_rank1(V0, 2.0).passed


def test_reduce_rejects_non_solution():
    with pytest.raises(ValueError):
        reduce_to_normal_form(np.diag([0.9, 0.1]) @ P12, 2.0)


def test_congruence_necessary_check(rng):
    ok, detail = congruence_necessary_check(P12, np.eye(2))
    assert ok and detail == "not distinguished"
    s = from_cycles(4, [(1, 2), (3, 4)])
    A = np.diag([0.5, 0.2, 0.7, 0.3]) @ permutation_matrix(s)
    B = np.diag([0.5, 0.3, 0.7, 0.2]) @ permutation_matrix(s)
    ok, detail = congruence_necessary_check(A, B)
    assert not ok and detail
    g = random_unitary(4, rng)
    ok, _ = congruence_necessary_check(A, g @ A @ g.T)
    assert ok
    with pytest.raises(ValueError):
        congruence_necessary_check(np.zeros((2, 2)), np.eye(2))
    assert congruence_necessary_check(np.eye(2), np.eye(3))[0] is False

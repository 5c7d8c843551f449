import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixtures import (
    IDEM_FAILURE,
    LEFT_RIGHT_2X2,
    QUAT_2X2,
    QUAT_2X2_V1,
    WORKED,
    WORKED_FAMILIES,
    WORKED_MINUS_LAMBDAS,
    WORKED_MINUS_TRIPLE,
    WORKED_TOP,
)
from octeig import embed_oracle as eo
from octeig.eigensolve import (
    Family,
    SolverDefect,
    assemble,
    charlam_residual,
    charlam_rhs,
    decompose2,
    decompose3,
    eigenspace_basis3,
    eigenvalues2,
    eigenvector2,
    family_eigenvalues,
    family_residuals,
    gram_schmidt2,
    is_doubled,
    is_orthogonal,
    orthogonality_residual,
    r_of,
    r_roots,
    repeated_eigen_split,
    spectrum3,
    three_psi_check,
    udu_dagger,
    verify_left_eigen,
    verify_right_eigen,
)
from octeig.generate import (
    CLASSES,
    make_rng,
    random_herm2,
    random_herm3,
    random_octvec,
    random_repeated_herm3,
)
from octeig.hermitian import Herm2, Herm3, OctMatrix, OctVec, as_matrix, mat_vec, outer, scale_of
from octeig.octonion import I, J, K, KL, L, ONE, ZERO, associator, phi

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


def tol9(A):
    return 1e-9 * (1.0 + scale_of(A))


def tol8(A):
    return 1e-8 * (1.0 + scale_of(A))


# --- r roots and family eigenvalues ------------------------------------------

def test_r_roots_examples():
    assert r_roots(Herm3(0, 0, 0, I, 2 * I, -I)) == (0.0, 0.0)
    assert r_roots(Herm3(0, 0, 0, I, J, K)) == (0.0, -4.0)
    assert r_roots(WORKED) == (2.0, -2.0)


@given(seeds, st.sampled_from(CLASSES))
def test_r_roots_vieta(seed, kind):
    A = random_herm3(make_rng(seed), kind, 3.0)
    rp, rm = r_roots(A)
    s = (1.0 + scale_of(A)) ** 3
    assert rp >= rm
    assert abs((rp + rm) + 4 * phi(A.a, A.b, A.c)) <= 1e-10 * s
    assert abs(rp * rm + A.associator().norm_sq()) <= 1e-10 * s * s
    if kind != "octonionic":
        assert 0.0 in (rp, rm)


def test_family_eigenvalues_examples():
    assert family_eigenvalues(Herm3.identity(), 0.0) == (1.0, 1.0, 1.0)
    for r, lams in WORKED_FAMILIES.values():
        assert family_eigenvalues(WORKED, r) == lams


def test_family_eigenvalues_rejects_wrong_r():
    # r beyond the local extremes of the cubic has only one real root
    with pytest.raises(SolverDefect):
        family_eigenvalues(WORKED, 10.0)


# --- 2x2 ----------------------------------------------------------------------

def test_eigenvalues2_examples():
    lo, hi = eigenvalues2(QUAT_2X2)
    assert abs(lo + math.sqrt(2)) <= 1e-15 and abs(hi - math.sqrt(2)) <= 1e-15
    assert eigenvalues2(Herm2(1, 1, ZERO)) == (1.0, 1.0)
    assert eigenvalues2(Herm2(2, 5, ZERO)) == (2.0, 5.0)


def test_eigenvector2_examples():
    lam = math.sqrt(2)
    v = eigenvector2(QUAT_2X2, lam)
    # proportional to (sqrt 2, 1 - i) with a real factor
    ratio = v[0].real / QUAT_2X2_V1[0].real
    assert (v - QUAT_2X2_V1 * ratio).max_abs() <= 1e-15
    assert verify_right_eigen(QUAT_2X2, QUAT_2X2_V1 * J, lam) <= 1e-15
    assert verify_right_eigen(QUAT_2X2, J * QUAT_2X2_V1, lam) > 0.5
    with pytest.raises(ValueError):
        eigenvector2(Herm2(1, 2, ZERO), 1.0)


@given(seeds)
def test_eigenvector2_any_xi(seed):
    rng = make_rng(seed)
    A = random_herm2(rng, scale=3.0)
    xi = random_octvec(rng, 1)[0]
    for lam in eigenvalues2(A):
        v = eigenvector2(A, lam, xi)
        assert verify_right_eigen(A, v, lam) <= 1e-10 * (1 + v.max_abs()) * (1 + scale_of(A))


def test_complex_2x2_eigenvectors_are_right_multiples():
    A = Herm2(0.5, -1.0, ONE * 0.3 + I * 0.8)
    lam = eigenvalues2(A)[1]
    v = eigenvector2(A, lam)
    w = eigenvector2(A, lam, ONE + J - KL * 2)
    assert (w - v * (ONE + J - KL * 2)).max_abs() <= 1e-15


def test_two_by_two_eigenvectors_need_not_be_perpendicular():
    rng = make_rng(17)
    A = random_herm2(rng)
    xp, xm = random_octvec(rng, 2)
    lm, lp = eigenvalues2(A)
    vp, vm = eigenvector2(A, lp, xp), eigenvector2(A, lm, xm)
    d = vp.dagger_dot(vm)
    expected = -A.a.norm_sq() * (A.a * associator(A.a, xp, xm))
    assert (d - expected).norm() <= 1e-13
    assert d.norm() > 0.1
    assert is_orthogonal(vp, vm) and is_orthogonal(vm, vp)


def test_decompose2_diagonal_matrix():
    pairs = decompose2(Herm2(3, 1, ZERO))
    assert [p.lam for p in pairs] == [1.0, 3.0]
    assert pairs[0].v[1] == ONE and pairs[1].v[0] == ONE


# --- eigenvectors of 3x3 ------------------------------------------------------

def test_worked_top_eigenvector():
    assert verify_right_eigen(WORKED, WORKED_TOP, 2.0) <= 1e-15
    vecs = eigenspace_basis3(WORKED, 2.0, 2.0)
    assert len(vecs) == 4
    assert max(verify_right_eigen(WORKED, v, 2.0) for v in vecs) <= 1e-14
    assert max(abs(charlam_residual(WORKED, 2.0, v[2]).norm()) for v in vecs) <= 1e-14


def test_diagonal_eigenspace():
    vecs = eigenspace_basis3(Herm3.diagonal(1, 2, 3), 2.0, 0.0)
    assert len(vecs) >= 4
    for v in vecs:
        assert v[0].norm_sq() == 0.0 and v[2].norm_sq() == 0.0


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_eigenspace_is_four_dimensional(seed):
    A = random_herm3(make_rng(seed), scale=2.0)
    for r in r_roots(A):
        for lam in family_eigenvalues(A, r):
            vecs = eigenspace_basis3(A, lam, r)
            assert len(vecs) == 4
            X = np.stack([eo.coords(v) for v in vecs])
            assert np.linalg.matrix_rank(X, tol=1e-8) == 4
            assert max(verify_right_eigen(A, v, lam) for v in vecs) <= tol9(A)
            for v in vecs:
                assert abs(r_of(A, v[2]) - r) <= tol8(A) * (1 + scale_of(A)) ** 2


def test_quaternionic_entries_make_charlam_rhs_vanish():
    A = random_herm3(make_rng(8), "quaternionic")
    z = random_octvec(make_rng(9), 1, "quaternionic")[0]
    assert charlam_rhs(A, z).norm() <= 1e-14


def test_charlam_on_solver_output():
    for seed in range(10):
        A = random_herm3(make_rng(seed), scale=3.0)
        for fam in spectrum3(A).families:
            for lam, v in zip(fam.lambdas, fam.eigvecs):
                assert charlam_residual(A, lam, v[2]).norm() <= tol8(A) * (1 + scale_of(A)) ** 2


# --- orthogonality and decomposition -----------------------------------------

def test_is_orthogonal_examples():
    e1, e2 = OctVec.unit(2, 0), OctVec.unit(2, 1)
    assert is_orthogonal(e1, e2)
    assert not is_orthogonal(e1, e1)


def test_worked_decomposition():
    spec = spectrum3(WORKED)
    assert not spec.doubled
    for label, (r, lams) in WORKED_FAMILIES.items():
        fam = spec.family(label)
        assert fam.r == r and fam.lambdas == lams
        res = family_residuals(WORKED, fam)
        assert res["reconstruction"] <= 1e-13
        assert res["orthogonality"] <= 1e-13
        assert res["completeness"] <= 1e-13


def test_diagonal_decomposition_is_exact():
    D = Herm3.diagonal(3, -1, 2)
    fam = spectrum3(D).families[0]
    assert np.allclose(fam.lambdas, (-1.0, 2.0, 3.0), rtol=0, atol=1e-15)
    res = family_residuals(D, fam)
    assert res["reconstruction"] <= 1e-15 and res["completeness"] == 0.0


def test_identity_is_a_single_triple_family():
    spec = spectrum3(Herm3.identity())
    assert spec.doubled and len(spec.families) == 1
    fam = spec.families[0]
    assert fam.lambdas == (1.0, 1.0, 1.0)
    assert spec.family("r-") is fam
    assert spec.eigenvalues() == (1.0,) * 6


def test_triple_eigenvalue_requires_scalar_matrix():
    fam = decompose3(Herm3(2, 2, 2, 0, 0, 0), 0.0)
    assert family_residuals(Herm3(2, 2, 2, 0, 0, 0), fam)["reconstruction"] == 0.0


def test_frozen_triple_decomposes_worked_matrix():
    U = assemble(WORKED_MINUS_TRIPLE)
    I3 = OctMatrix.identity(3)
    for lam, v in zip(WORKED_MINUS_LAMBDAS, WORKED_MINUS_TRIPLE):
        assert verify_right_eigen(WORKED, v, lam) <= 1e-15
    for v, w in itertools.permutations(WORKED_MINUS_TRIPLE, 2):
        assert orthogonality_residual(v, w) <= 1e-15
    assert (U @ U.dagger() - I3).max_abs() <= 1e-15
    assert (udu_dagger(U, WORKED_MINUS_LAMBDAS) - as_matrix(WORKED)).max_abs() <= 1e-15
    # the columns are not orthonormal in the usual sense
    assert (U.dagger() @ U - I3).max_abs() > 0.1


def test_matrix_form_on_random_families():
    for seed in range(10):
        A = random_herm3(make_rng(seed))
        for fam in spectrum3(A).families:
            U = assemble(fam.eigvecs)
            D = OctMatrix(np.einsum("ij,p->ijp", np.diag(fam.lambdas), np.eye(8)[0]))
            assert (as_matrix(A) @ U - U @ D).max_abs() <= tol9(A) * 10
            assert (U @ U.dagger() - OctMatrix.identity(3)).max_abs() <= tol8(A)
            assert (udu_dagger(U, fam.lambdas) - as_matrix(A)).max_abs() <= tol8(A)


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from(CLASSES), st.sampled_from([1.0, 10.0]))
def test_family_decomposition_properties(seed, kind, scale):
    rng = make_rng(seed)
    A = random_herm3(rng, kind, scale)
    g = random_octvec(rng, 3)
    for fam in spectrum3(A).families:
        res = family_residuals(A, fam)
        assert res["eigen"] <= tol9(A)
        assert res["orthogonality"] <= 1e-8
        assert res["completeness"] <= 1e-8
        assert res["reconstruction"] <= tol8(A)
        expansion = sum((mat_vec(outer(v), g) for v in fam.eigvecs), OctVec.zeros(3))
        assert (expansion - g).max_abs() <= 1e-8


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_forced_repeated_eigenvalue(seed):
    A = random_repeated_herm3(make_rng(seed), 2.0)
    for fam in spectrum3(A).families:
        res = family_residuals(A, fam)
        assert res["orthogonality"] <= 1e-8
        assert res["completeness"] <= 1e-8
        assert res["reconstruction"] <= tol8(A)


def test_forced_repeat_has_a_double_eigenvalue():
    A = random_repeated_herm3(make_rng(5))
    lams = [fam.lambdas for fam in spectrum3(A).families]
    assert any(abs(l[1] - l[0]) < 1e-6 or abs(l[2] - l[1]) < 1e-6 for l in lams)


def test_doubled_spectrum_decomposes():
    # imaginary parts spanning two directions: the families coincide
    A = Herm3(0.5, -0.2, 1.0, I + J, ONE * 0.3 - J, I * 2.0)
    assert is_doubled(A)
    spec = spectrum3(A)
    assert spec.doubled and len(spec.families) == 1
    assert [c.count for c in eo.spectrum_with_multiplicity(A)] == [8, 8, 8]
    res = family_residuals(A, spec.families[0])
    assert res["orthogonality"] <= 1e-12 and res["reconstruction"] <= 1e-12


def test_repeated_eigen_split_examples():
    X = repeated_eigen_split(Herm3.identity(), OctVec.unit(3, 0), 1.0)
    assert X == Herm3.diagonal(0, 1, 1)
    X = repeated_eigen_split(Herm3.diagonal(2, 2, 5), OctVec.unit(3, 0), 1.0)
    assert X == Herm3.diagonal(1, 2, 5)


def test_repeated_eigen_split_separates_worked_family():
    v = eigenspace_basis3(WORKED, -1.0, 2.0)[0]
    X = repeated_eigen_split(WORKED, v, 1.0 + scale_of(WORKED))
    lams = sorted(l for r in r_roots(X) for l in family_eigenvalues(X, r))
    assert min(b - a for a, b in zip(lams, lams[1:])) > 1e-3


# --- conjugation --------------------------------------------------------------

def test_conjugate_spectrum_flips_r():
    for seed in range(20):
        A = random_herm3(make_rng(seed), scale=4.0)
        rA, rB = r_roots(A), r_roots(A.conj())
        assert abs(rA[0] + rB[1]) <= 1e-9 and abs(rA[1] + rB[0]) <= 1e-9
        # the family at r+ of A carries the same eigenvalues as the family at r+ of conj(A)
        for r, rb in zip(rA, rB):
            mine = family_eigenvalues(A, r)
            theirs = family_eigenvalues(A.conj(), rb)
            assert np.max(np.abs(np.subtract(mine, theirs))) <= tol9(A)


def test_weak_orthogonality_across_families():
    for seed in range(10):
        A = random_herm3(make_rng(seed))
        vecs = [(lam, v) for fam in spectrum3(A).families for lam, v in zip(fam.lambdas, fam.eigvecs)]
        for (l1, v), (l2, w) in itertools.combinations(vecs, 2):
            if abs(l1 - l2) > 1e-6:
                assert abs(v.dagger_dot(w).real) <= 1e-9


# --- fixtures for left/right eigenvalues ---------------------------------------

def test_right_eigen_fixture():
    v = OctVec([J, L])
    assert verify_right_eigen(LEFT_RIGHT_2X2, v, ONE - KL) == 0.0
    assert verify_right_eigen(WORKED, OctVec.zeros(3), 2.0) == 0.0


def test_left_eigen_fixture():
    v = OctVec([ONE, K])
    assert verify_left_eigen(LEFT_RIGHT_2X2, v, ONE - J) == 0.0
    assert verify_left_eigen(WORKED, OctVec.zeros(3), ONE - J) == 0.0
    assert verify_left_eigen(WORKED, WORKED_TOP, 2.0) == verify_right_eigen(WORKED, WORKED_TOP, 2.0)


# --- projector identities -----------------------------------------------------

def test_gram_schmidt_examples():
    e1 = OctVec.unit(2, 0)
    w = OctVec.unit(2, 1, I)
    assert (gram_schmidt2(e1, w) - w).max_abs() == 0.0
    assert (gram_schmidt2(e1, OctVec([ONE, ONE])) - OctVec.unit(2, 1)).max_abs() == 0.0
    with pytest.raises(ValueError):
        gram_schmidt2(OctVec.zeros(2), w)


@given(seeds)
def test_gram_schmidt_random(seed):
    rng = make_rng(seed)
    v, w = random_octvec(rng, 2), random_octvec(rng, 2)
    assert orthogonality_residual(v, gram_schmidt2(v, w)) <= 1e-10


def test_three_psi_examples():
    assert three_psi_check(OctVec.unit(3, 2)) == 0.0
    assert three_psi_check(IDEM_FAILURE) <= 1e-15


@given(seeds, st.sampled_from([2, 3]))
def test_three_psi_random(seed, n):
    assert three_psi_check(random_octvec(make_rng(seed), n)) <= 1e-12


def test_idempotence_fails_in_three_dimensions():
    P = outer(IDEM_FAILURE)
    assert abs(IDEM_FAILURE.norm_sq() - 1.0) <= 1e-15
    assert (P @ P - P).max_abs() > 0.1


def test_associativity_identity_fails_in_three_dimensions():
    v = WORKED_TOP
    lhs = outer(mat_vec(WORKED, v), v)
    rhs = as_matrix(WORKED) @ outer(v)
    assert (lhs - rhs).max_abs() > 0.1


def test_family_container():
    fam = Family(1.0, (0.0, 1.0, 2.0), (), "r-")
    assert fam.label == "r-"
    with pytest.raises(KeyError):
        spectrum3(WORKED).family("r0")

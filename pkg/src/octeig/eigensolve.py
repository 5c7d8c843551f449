"""Real right-eigenvalues and spectral decompositions of octonionic Hermitian matrices.

For a 3x3 matrix A = [[p, a, conj(b)], [conj(a), m, c], [b, conj(c), n]] the
real eigenvalues do not satisfy the characteristic polynomial.  They satisfy

    det(lam I - A) = r,     r^2 + 4 phi(a, b, c) r - |[a, b, c]|^2 = 0,

so there are two "families" of three eigenvalues, one per root r, each
eigenvalue carrying a 4-dimensional (over R) eigenspace.  Within a family,
eigenvectors of distinct eigenvalues satisfy (v v^dagger) w = 0, and a unit
eigenvector per eigenvalue gives A = sum lam_i v_i v_i^dagger.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import embed_oracle
from .cubic import solve_real_cubic
from .hermitian import (
    Herm2,
    Herm3,
    OctMatrix,
    OctVec,
    as_matrix,
    det3,
    mat_vec,
    outer,
    scale_of,
    sigma_explicit,
)
from .octonion import ONE, Octonion, phi

__all__ = [
    "SolverDefect",
    "EigenPair2",
    "Family",
    "Spectrum3",
    "eig_tol",
    "recon_tol",
    "r_roots",
    "is_doubled",
    "char_poly",
    "family_eigenvalues",
    "eigenvalues2",
    "eigenvector2",
    "decompose2",
    "zform_basis",
    "eigenspace_basis3",
    "orthogonality_residual",
    "is_orthogonal",
    "decompose3",
    "spectrum3",
    "repeated_eigen_split",
    "verify_right_eigen",
    "verify_left_eigen",
    "charlam_rhs",
    "charlam_residual",
    "r_of",
    "gram_schmidt2",
    "three_psi_residual",
    "three_psi_check",
    "assemble",
    "udu_dagger",
    "family_residuals",
]

# minimum spacing (relative) for eigenvalues treated as distinct within a family
_DISTINCT_REL = 1e-6


class SolverDefect(RuntimeError):
    """The analytic solver produced something that fails its own checks."""


@dataclass(frozen=True)
class EigenPair2:
    lam: float
    v: OctVec


@dataclass(frozen=True)
class Family:
    """One root r with its three eigenvalues (ascending) and a unit eigenvector each."""

    r: float
    lambdas: tuple
    eigvecs: tuple
    label: str = "r+"


@dataclass(frozen=True)
class Spectrum3:
    families: tuple
    doubled: bool

    @property
    def r_values(self):
        return tuple(f.r for f in self.families)

    def family(self, label):
        for f in self.families:
            if f.label == label:
                return f
        if self.doubled:
            return self.families[0]
        raise KeyError(label)

    def eigenvalues(self):
        """The six family eigenvalues, each standing for a 4-dim real eigenspace."""
        if self.doubled:
            vals = list(self.families[0].lambdas) * 2
        else:
            vals = [lam for f in self.families for lam in f.lambdas]
        return tuple(sorted(vals))


def eig_tol(A):
    return 1e-9 * (1.0 + scale_of(A))


def recon_tol(A):
    return 1e-8 * (1.0 + scale_of(A))


def r_roots(A: Herm3):
    """Both roots of r^2 + 4 phi r - |[a,b,c]|^2 = 0, larger first."""
    B = 4.0 * phi(A.a, A.b, A.c)
    # an associator at rounding level is an associative triple: keep the exact zero root
    C = 0.0 if _assoc_negligible(A) else -A.associator().norm_sq()
    disc = B * B - 4.0 * C  # = 16 phi^2 + 4 |[a,b,c]|^2 >= 0
    q = -0.5 * (B + math.copysign(math.sqrt(disc), B))
    if q == 0.0:
        return (0.0, 0.0)
    r1, r2 = q, C / q
    return (max(r1, r2), min(r1, r2))


def is_doubled(A: Herm3):
    """True when both roots coincide, i.e. Im a, Im b, Im c span at most two directions.

    The two families then carry the same three eigenvalues, each with an
    8-dimensional real eigenspace.
    """
    rp, rm = r_roots(A)
    return rp - rm <= 1e-10 * (1.0 + scale_of(A)) ** 3


def char_poly(A: Herm3, lam):
    """det(lam I - A) = lam^3 - tr(A) lam^2 + sigma(A) lam - det(A)."""
    tr = A.p + A.m + A.n
    return ((lam - tr) * lam + sigma_explicit(A)) * lam - det3(A)


def family_eigenvalues(A: Herm3, r):
    """Three real roots of det(lam I - A) = r, ascending."""
    tr = A.p + A.m + A.n
    lams = solve_real_cubic(-tr, sigma_explicit(A), -(det3(A) + r))
    s = 1.0 + scale_of(A)
    for lam in lams:
        if abs(char_poly(A, lam) - r) > 1e-8 * s ** 3:
            raise SolverDefect(f"cubic root {lam!r} misses the family equation for r={r!r}")
    return lams


def eigenvalues2(A: Herm2):
    """Roots of lam^2 - tr(A) lam + det(A) = 0, ascending."""
    half_gap = 0.5 * math.sqrt((A.p - A.m) ** 2 + 4.0 * A.a.norm_sq())
    mid = 0.5 * (A.p + A.m)
    return (mid - half_gap, mid + half_gap)


def eigenvector2(A: Herm2, lam, xi=ONE):
    """(|a|^2, conj(a)(lam - p)) xi; an eigenvector for any octonion xi when a != 0."""
    if A.a.norm_sq() == 0.0:
        raise ValueError("off-diagonal entry is zero; the matrix is diagonal")
    xi = xi if isinstance(xi, Octonion) else Octonion(xi)
    return OctVec([A.a.norm_sq() * xi, (A.a.conj() * (lam - A.p)) * xi])


def decompose2(A: Herm2, xi_minus=ONE, xi_plus=ONE):
    """Unit eigenvectors for both eigenvalues (ascending)."""
    lams = eigenvalues2(A)
    if A.a.norm_sq() == 0.0:
        if A.p <= A.m:
            vecs = (OctVec.unit(2, 0, xi_minus), OctVec.unit(2, 1, xi_plus))
        else:
            vecs = (OctVec.unit(2, 1, xi_minus), OctVec.unit(2, 0, xi_plus))
        return tuple(EigenPair2(l, v.normalized()) for l, v in zip(lams, vecs))
    return tuple(EigenPair2(l, eigenvector2(A, l, xi).normalized())
                 for l, xi in zip(lams, (xi_minus, xi_plus)))


def charlam_rhs(A: Herm3, z):
    """b(a(cz)) + conj(c)(conj(a)(conj(b) z)) - [b(ac) + (conj(c) conj(a)) conj(b)] z."""
    z = z if isinstance(z, Octonion) else Octonion(z)
    a, b, c = A.a, A.b, A.c
    ab, bb, cb = a.conj(), b.conj(), c.conj()
    return b * (a * (c * z)) + cb * (ab * (bb * z)) - (b * (a * c) + (cb * ab) * bb) * z


def charlam_residual(A: Herm3, lam, z):
    """det(lam I - A) z minus the right-hand side above; zero on eigenvector z-components."""
    z = z if isinstance(z, Octonion) else Octonion(z)
    return char_poly(A, lam) * z - charlam_rhs(A, z)


def r_of(A: Herm3, z):
    """The real r with charlam_rhs(A, z) = r z (least squares when not exact)."""
    z = z if isinstance(z, Octonion) else Octonion(z)
    n = z.norm_sq()
    if n == 0.0:
        raise ZeroDivisionError("z is zero")
    return float(z.coeffs @ charlam_rhs(A, z).coeffs) / n


def _assoc_negligible(A: Herm3):
    return A.associator().norm() <= 1e-10 * (1.0 + scale_of(A)) ** 3


def zform_basis(A: Herm3, r):
    """The four z-components q (1 + [a,b,c] r / |[a,b,c]|^2), q in (a, b, c, 1)."""
    assoc = A.associator()
    w = ONE + assoc * (r / assoc.norm_sq())
    return [q * w for q in (A.a, A.b, A.c, ONE)]


def _orthonormalize(vecs, rank_tol=1e-10):
    """Real-orthonormal basis (in R^(8n)) of the span of the vectors."""
    if not vecs:
        return []
    X = np.stack([v.array.reshape(-1) for v in vecs], axis=1)
    Q, R = np.linalg.qr(X)
    diag = np.abs(np.diag(R))
    if diag.size and diag.min() <= rank_tol * max(diag.max(), 1e-300):
        # rank deficient: fall back to SVD and keep the significant directions
        U, s, _ = np.linalg.svd(X, full_matrices=False)
        Q = U[:, s > rank_tol * s[0]]
    n = vecs[0].dim
    return [OctVec(Q[:, k].reshape(n, 8)) for k in range(Q.shape[1])]


def _back_substitute(A: Herm3, lam, zs):
    """x, y from z through the row equations; None when a denominator vanishes."""
    s = 1.0 + scale_of(A)
    lp = lam - A.p
    D = lp * (lam - A.m) - A.a.norm_sq()
    if abs(lp) < 1e-8 * s or abs(D) < 1e-8 * s * s:
        return None
    a, bb, c = A.a, A.b.conj(), A.c
    ab = a.conj()
    out = []
    for z in zs:
        y = (ab * (bb * z) + c * z * lp) / D
        x = (a * y + bb * z) / lp
        out.append(OctVec([x, y, z]))
    return out


def _subalgebra_basis(A: Herm3):
    """8x4 orthonormal coefficient basis of a quaternion subalgebra holding a, b, c.

    Only meaningful when the imaginary parts span at most two directions.
    """
    im = np.stack([A.a.coeffs[1:], A.b.coeffs[1:], A.c.coeffs[1:]], axis=1)
    U, s, _ = np.linalg.svd(im)
    rank = int(np.sum(s > 1e-10 * (1.0 + scale_of(A))))
    dirs = [U[:, k] for k in range(min(rank, 2))]
    eye = np.eye(7)
    while len(dirs) < 2:
        # pad with the basis unit least aligned with what we have
        cand = min(range(7), key=lambda k: sum(abs(d[k]) for d in dirs))
        e = eye[cand] - sum((d @ eye[cand]) * d for d in dirs)
        dirs.append(e / np.linalg.norm(e))
    e = Octonion(np.concatenate([[0.0], dirs[0]]))
    f = Octonion(np.concatenate([[0.0], dirs[1]]))
    g = e * f
    return np.stack([ONE.coeffs, e.coeffs, f.coeffs, g.coeffs], axis=1)


def _restrict_to_subalgebra(vecs, basis):
    """Combinations of the vectors whose components all lie in span(basis)."""
    if not vecs:
        return []
    n = vecs[0].dim
    P = np.eye(8) - basis @ basis.T
    K = np.stack([v.array.reshape(-1) for v in vecs], axis=1)
    C = np.kron(np.eye(n), P) @ K
    _, s, Vt = np.linalg.svd(C)
    s_full = np.zeros(K.shape[1])
    s_full[:s.size] = s
    null = Vt[s_full <= 1e-8 * max(1.0, s_full.max())].T
    return _orthonormalize([OctVec((K @ null[:, k]).reshape(n, 8)) for k in range(null.shape[1])])


def _kernel(A, lam):
    vecs = embed_oracle.kernel_basis(A, lam)
    if not vecs:
        raise SolverDefect(f"no eigenvectors found at lam={lam!r}")
    return vecs


def eigenspace_basis3(A: Herm3, lam, r, subalgebra=None):
    """Real-orthonormal eigenvectors of A at lam in family r.

    Generic octonionic input: four vectors built from the z-form with
    (alpha, beta, gamma, delta) running over the unit choices, x and y from
    back-substitution.  Whenever that route is unavailable (associative entries,
    vanishing denominators, or a residual above tolerance) the eigenspace is
    read off the real embedding instead.  For a doubled spectrum the 8-dim
    eigenspace is cut down to the quaternionic vectors over ``subalgebra``.
    A repeated eigenvalue inside the family yields twice as many vectors.
    """
    doubled = is_doubled(A)
    vecs = None
    if not doubled and not _assoc_negligible(A):
        vecs = _back_substitute(A, lam, zform_basis(A, r))
        if vecs is not None:
            tol = eig_tol(A)
            if max(verify_right_eigen(A, v, lam) for v in vecs) > tol * max(1.0, max(v.max_abs() for v in vecs)):
                vecs = None
            else:
                vecs = _orthonormalize(vecs)
                if len(vecs) != 4:
                    vecs = None
    if vecs is None:
        vecs = _kernel(A, lam)
        if doubled:
            basis = _subalgebra_basis(A) if subalgebra is None else subalgebra
            vecs = _restrict_to_subalgebra(vecs, basis)
    return vecs


def orthogonality_residual(v: OctVec, w: OctVec):
    """Max coefficient of (v v^dagger) w."""
    return mat_vec(outer(v), w).max_abs()


def is_orthogonal(v: OctVec, w: OctVec, tol=1e-8):
    """w is orthogonal to v when (v v^dagger) w vanishes."""
    return orthogonality_residual(v, w) <= tol


def repeated_eigen_split(A: Herm3, v: OctVec, alpha):
    """X = A - alpha v v^dagger."""
    return Herm3.from_matrix(as_matrix(A) - alpha * outer(v), tol=1e-10)


def _distinct(lams, A):
    gap = _DISTINCT_REL * (1.0 + scale_of(A))
    return all(lams[k + 1] - lams[k] > gap for k in range(len(lams) - 1))


def _pick_family(X: Herm3, lam):
    """Root r of X whose family contains lam."""
    d = char_poly(X, lam)
    return min(r_roots(X), key=lambda r: abs(d - r))


def _split_repeated(A: Herm3, r, lams, subalgebra, max_tries=6):
    """Eigenvectors for a family with one double eigenvalue, via X = A - alpha v v^dagger."""
    k = 0 if lams[1] - lams[0] <= lams[2] - lams[1] else 1
    mu = 0.5 * (lams[k] + lams[k + 1])
    v = eigenspace_basis3(A, mu, r, subalgebra=subalgebra)[0]
    alpha = 1.0 + scale_of(A)
    for _ in range(max_tries):
        X = repeated_eigen_split(A, v, alpha)
        target = mu - alpha
        rx = _pick_family(X, target)
        lx = family_eigenvalues(X, rx)
        if _distinct(lx, X):
            k0 = min(range(3), key=lambda k: abs(lx[k] - target))
            pairs = [(mu, v)]
            for k in range(3):
                if k != k0:
                    w = eigenspace_basis3(X, lx[k], rx, subalgebra=subalgebra)[0]
                    pairs.append((lx[k], w))
            if max(verify_right_eigen(A, w, kap) for kap, w in pairs) <= eig_tol(A):
                pairs.sort(key=lambda t: t[0])
                return tuple(w for _, w in pairs)
        alpha *= 2.0
    raise SolverDefect("could not separate the repeated eigenvalue")


def decompose3(A: Herm3, r, label="r+"):
    """The family of r with an orthonormal eigenvector per eigenvalue."""
    lams = family_eigenvalues(A, r)
    subalgebra = _subalgebra_basis(A) if is_doubled(A) else None
    if _distinct(lams, A):
        vecs = tuple(eigenspace_basis3(A, lam, r, subalgebra=subalgebra)[0] for lam in lams)
    elif lams[2] - lams[0] <= 2.0 * _DISTINCT_REL * (1.0 + scale_of(A)):
        lam = sum(lams) / 3.0
        if (as_matrix(A) - lam * OctMatrix.identity(3)).max_abs() > recon_tol(A):
            raise SolverDefect("triple eigenvalue but the matrix is not a multiple of I")
        vecs = tuple(OctVec.unit(3, k) for k in range(3))
    else:
        vecs = _split_repeated(A, r, lams, subalgebra)
    return Family(float(r), tuple(float(l) for l in lams), vecs, label)


def spectrum3(A: Herm3):
    """Both families (larger r first); a single family when they coincide."""
    rp, rm = r_roots(A)
    if is_doubled(A):
        return Spectrum3((decompose3(A, 0.5 * (rp + rm), "r+"),), True)
    return Spectrum3((decompose3(A, rp, "r+"), decompose3(A, rm, "r-")), False)


def verify_right_eigen(A, v: OctVec, lam):
    """Max coefficient of A v - v lam (lam real or octonionic)."""
    return (mat_vec(A, v) - v * lam).max_abs()


def verify_left_eigen(A, v: OctVec, lam):
    """Max coefficient of A v - lam v."""
    return (mat_vec(A, v) - lam * v).max_abs()


def gram_schmidt2(v: OctVec, w: OctVec):
    """w - (v v^dagger) w / (v^dagger v): the part of w orthogonal to v."""
    n = v.norm_sq()
    if n == 0.0:
        raise ValueError("cannot project against the zero vector")
    return w - mat_vec(outer(v), w) / n


def three_psi_residual(v: OctVec):
    """Max coefficient of (v v^dagger) v - v (v^dagger v)."""
    return (mat_vec(outer(v), v) - v * v.dagger_dot(v)).max_abs()


three_psi_check = three_psi_residual


def assemble(vecs):
    """Matrix U with the given vectors as columns."""
    return OctMatrix.from_columns(vecs)


def udu_dagger(U: OctMatrix, lams):
    """(U D) U^dagger for real diagonal D."""
    UD = OctMatrix(U.array * np.asarray(lams, dtype=float)[None, :, None])
    return UD @ U.dagger()


def family_residuals(A: Herm3, fam: Family):
    """Residuals that certify a family decomposition."""
    vecs, lams = fam.eigvecs, fam.lambdas
    n = len(vecs)
    I = OctMatrix.identity(n)
    comp = sum((outer(v) for v in vecs), OctMatrix.zeros(n))
    recon = sum((lam * outer(v) for lam, v in zip(lams, vecs)), OctMatrix.zeros(n))
    orth = max((orthogonality_residual(vecs[i], vecs[j])
                for i in range(n) for j in range(n) if i != j), default=0.0)
    return {
        "eigen": max(verify_right_eigen(A, v, lam) for lam, v in zip(lams, vecs)),
        "normalization": max(abs(v.dagger_dot(v).real - 1.0) for v in vecs),
        "orthogonality": orth,
        "completeness": (comp - I).max_abs(),
        "reconstruction": (recon - as_matrix(A)).max_abs(),
        "family_equation": max(abs(char_poly(A, lam) - fam.r) for lam in lams),
    }

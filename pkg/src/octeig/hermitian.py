"""Octonionic Hermitian 2x2 and 3x3 matrices and the Jordan-algebra toolkit.

Hermitian matrices store only their independent data (real diagonal, upper
octonions), so Hermiticity cannot be violated.  Everything that is not
Hermitian in general (products, outer products, U D U^dagger) is an
:class:`OctMatrix`, a dense grid of octonions backed by an ``(n, n, 8)`` array.

Matrix products take entry (i, k) to be the sum over j of the single octonionic
product A[i, j] B[j, k]; nothing is re-associated.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass

import numpy as np

from .octonion import STRUCT, Octonion, associator, oconj, omul

__all__ = [
    "DimensionError",
    "OctVec",
    "OctMatrix",
    "Herm2",
    "Herm3",
    "as_matrix",
    "scale_of",
    "jordan_product",
    "square",
    "cube",
    "freudenthal_product",
    "trace",
    "sigma",
    "sigma_explicit",
    "det2",
    "det3",
    "det3_freudenthal",
    "char_residual",
    "mat_vec",
    "outer",
    "conj_matrix",
]


class DimensionError(ValueError):
    """Operands have incompatible sizes."""


def _real_scalar(x):
    return isinstance(x, numbers.Real)


class OctVec:
    """Column vector of octonions."""

    __array_ufunc__ = None

    def __init__(self, components):
        if isinstance(components, np.ndarray):
            arr = np.array(components, dtype=float)
        else:
            arr = np.array([_coeffs(c) for c in components], dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 8:
            raise ValueError("OctVec components must be octonions")
        arr.setflags(write=False)
        self._a = arr

    @classmethod
    def zeros(cls, n):
        return cls(np.zeros((n, 8)))

    @classmethod
    def unit(cls, n, index, value=None):
        arr = np.zeros((n, 8))
        arr[index] = _coeffs(1.0 if value is None else value)
        return cls(arr)

    @property
    def array(self):
        return self._a

    @property
    def dim(self):
        return self._a.shape[0]

    def __len__(self):
        return self.dim

    def __getitem__(self, i):
        return Octonion(self._a[i])

    def __iter__(self):
        return (Octonion(row) for row in self._a)

    def dagger_dot(self, other):
        """v^dagger w as an octonion."""
        _check_same(self.dim, other.dim)
        return Octonion(omul(oconj(self._a), other._a).sum(axis=0))

    def norm_sq(self):
        return float(np.sum(self._a * self._a))

    def normalized(self):
        n = np.sqrt(self.norm_sq())
        if n == 0.0:
            raise ZeroDivisionError("cannot normalize the zero vector")
        return OctVec(self._a / n)

    def conj(self):
        return OctVec(oconj(self._a))

    def max_abs(self):
        return float(np.max(np.abs(self._a))) if self._a.size else 0.0

    def __add__(self, other):
        if not isinstance(other, OctVec):
            return NotImplemented
        _check_same(self.dim, other.dim)
        return OctVec(self._a + other._a)

    def __sub__(self, other):
        if not isinstance(other, OctVec):
            return NotImplemented
        _check_same(self.dim, other.dim)
        return OctVec(self._a - other._a)

    def __neg__(self):
        return OctVec(-self._a)

    def __mul__(self, q):
        # right multiplication v q, componentwise
        if _real_scalar(q):
            return OctVec(self._a * q)
        if isinstance(q, Octonion):
            return OctVec(omul(self._a, q.coeffs))
        return NotImplemented

    def __rmul__(self, q):
        # left multiplication q v, componentwise
        if _real_scalar(q):
            return OctVec(self._a * q)
        if isinstance(q, Octonion):
            return OctVec(omul(q.coeffs, self._a))
        return NotImplemented

    def __truediv__(self, x):
        if _real_scalar(x):
            return OctVec(self._a / x)
        return NotImplemented

    def tolist(self):
        return self._a.tolist()

    def __repr__(self):
        return f"OctVec({self._a.tolist()!r})"


class OctMatrix:
    """Dense n x n matrix of octonions (the general, non-Hermitian case)."""

    __array_ufunc__ = None

    def __init__(self, entries):
        if isinstance(entries, np.ndarray):
            arr = np.array(entries, dtype=float)
        else:
            # grid of Octonions, reals or 8-sequences
            arr = np.array([[_coeffs(x) for x in row] for row in entries], dtype=float)
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 8:
            raise ValueError("OctMatrix expects an (n, n, 8) coefficient array")
        arr.setflags(write=False)
        self._a = arr

    @classmethod
    def identity(cls, n):
        arr = np.zeros((n, n, 8))
        arr[np.arange(n), np.arange(n), 0] = 1.0
        return cls(arr)

    @classmethod
    def zeros(cls, n):
        return cls(np.zeros((n, n, 8)))

    @classmethod
    def from_columns(cls, columns):
        """Matrix whose k-th column is the k-th vector."""
        cols = [c.array for c in columns]
        arr = np.stack(cols, axis=1)
        return cls(arr)

    @property
    def array(self):
        return self._a

    @property
    def dim(self):
        return self._a.shape[0]

    def __getitem__(self, ij):
        i, j = ij
        return Octonion(self._a[i, j])

    def dagger(self):
        return OctMatrix(oconj(np.transpose(self._a, (1, 0, 2))))

    def conj(self):
        return OctMatrix(oconj(self._a))

    def trace(self):
        """Sum of the diagonal, as an octonion."""
        return Octonion(np.einsum("iip->p", self._a))

    def max_abs(self):
        return float(np.max(np.abs(self._a)))

    def is_hermitian(self, tol=0.0):
        return bool(np.max(np.abs(self._a - self.dagger()._a)) <= tol)

    def __add__(self, other):
        other = as_matrix(other) if not _real_scalar(other) else other
        if _real_scalar(other):
            return self + OctMatrix.identity(self.dim) * other
        _check_same(self.dim, other.dim)
        return OctMatrix(self._a + other._a)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-1.0) * (as_matrix(other) if not _real_scalar(other) else other)

    def __rsub__(self, other):
        return (-1.0) * self + other

    def __neg__(self):
        return OctMatrix(-self._a)

    def __mul__(self, x):
        if _real_scalar(x):
            return OctMatrix(self._a * x)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, OctVec):
            return mat_vec(self, other)
        other = as_matrix(other)
        _check_same(self.dim, other.dim)
        return OctMatrix(np.einsum("ijp,jkq,pqr->ikr", self._a, other._a, STRUCT))

    def __rmatmul__(self, other):
        return as_matrix(other) @ self

    def tolist(self):
        return self._a.tolist()

    def __repr__(self):
        return f"OctMatrix({self._a.tolist()!r})"


@dataclass(frozen=True)
class Herm2:
    """[[p, a], [conj(a), m]] with p, m real."""

    p: float
    m: float
    a: Octonion

    def __post_init__(self):
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "m", float(self.m))
        object.__setattr__(self, "a", _octonion(self.a))

    dim = 2

    @property
    def diag(self):
        return (self.p, self.m)

    def matrix(self):
        arr = np.zeros((2, 2, 8))
        arr[0, 0, 0] = self.p
        arr[1, 1, 0] = self.m
        arr[0, 1] = self.a.coeffs
        arr[1, 0] = oconj(self.a.coeffs)
        return OctMatrix(arr)

    def conj(self):
        return Herm2(self.p, self.m, self.a.conj())

    def scale(self):
        """Largest absolute coefficient over all entries."""
        return max(abs(self.p), abs(self.m), float(np.max(np.abs(self.a.coeffs))))

    @classmethod
    def from_matrix(cls, M, tol=1e-12):
        M = as_matrix(M)
        if M.dim != 2:
            raise DimensionError("expected a 2x2 matrix")
        if not M.is_hermitian(tol * (1.0 + M.max_abs())):
            raise ValueError("matrix is not Hermitian")
        return cls(M.array[0, 0, 0], M.array[1, 1, 0], Octonion(M.array[0, 1]))


@dataclass(frozen=True)
class Herm3:
    """[[p, a, conj(b)], [conj(a), m, c], [b, conj(c), n]] with p, m, n real."""

    p: float
    m: float
    n: float
    a: Octonion
    b: Octonion
    c: Octonion

    def __post_init__(self):
        for name in ("p", "m", "n"):
            object.__setattr__(self, name, float(getattr(self, name)))
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, _octonion(getattr(self, name)))

    dim = 3

    @property
    def diag(self):
        return (self.p, self.m, self.n)

    def matrix(self):
        arr = np.zeros((3, 3, 8))
        arr[0, 0, 0] = self.p
        arr[1, 1, 0] = self.m
        arr[2, 2, 0] = self.n
        a, b, c = self.a.coeffs, self.b.coeffs, self.c.coeffs
        arr[0, 1], arr[1, 0] = a, oconj(a)
        arr[1, 2], arr[2, 1] = c, oconj(c)
        arr[2, 0], arr[0, 2] = b, oconj(b)
        return OctMatrix(arr)

    def conj(self):
        return Herm3(self.p, self.m, self.n, self.a.conj(), self.b.conj(), self.c.conj())

    def scale(self):
        """Largest absolute coefficient over all entries."""
        offs = np.concatenate([self.a.coeffs, self.b.coeffs, self.c.coeffs])
        return max(abs(self.p), abs(self.m), abs(self.n), float(np.max(np.abs(offs))))

    def associator(self):
        return associator(self.a, self.b, self.c)

    @classmethod
    def identity(cls):
        return cls(1.0, 1.0, 1.0, 0.0, 0.0, 0.0)

    @classmethod
    def diagonal(cls, p, m, n):
        return cls(p, m, n, 0.0, 0.0, 0.0)

    @classmethod
    def from_matrix(cls, M, tol=1e-12):
        M = as_matrix(M)
        if M.dim != 3:
            raise DimensionError("expected a 3x3 matrix")
        if not M.is_hermitian(tol * (1.0 + M.max_abs())):
            raise ValueError("matrix is not Hermitian")
        arr = M.array
        return cls(arr[0, 0, 0], arr[1, 1, 0], arr[2, 2, 0],
                   Octonion(arr[0, 1]), Octonion(arr[2, 0]), Octonion(arr[1, 2]))


def _octonion(x):
    return x if isinstance(x, Octonion) else Octonion(x)


def _coeffs(x):
    if isinstance(x, Octonion):
        return x.coeffs
    if _real_scalar(x):
        c = np.zeros(8)
        c[0] = x
        return c
    c = np.asarray(x, dtype=float)
    if c.shape != (8,):
        raise ValueError("expected an octonion")
    return c


def _check_same(n1, n2):
    if n1 != n2:
        raise DimensionError(f"dimension mismatch: {n1} vs {n2}")


def as_matrix(A):
    """Materialize a Herm2/Herm3 (or pass through an OctMatrix)."""
    if isinstance(A, OctMatrix):
        return A
    if isinstance(A, (Herm2, Herm3)):
        return A.matrix()
    raise TypeError(f"not an octonionic matrix: {type(A).__name__}")


def scale_of(A):
    """Max absolute coefficient over entries; the norm used for tolerances."""
    if isinstance(A, (Herm2, Herm3)):
        return A.scale()
    return as_matrix(A).max_abs()


def jordan_product(A, B):
    """A o B = (AB + BA) / 2."""
    A, B = as_matrix(A), as_matrix(B)
    _check_same(A.dim, B.dim)
    return 0.5 * (A @ B + B @ A)


def square(A):
    return jordan_product(A, A)


def cube(A):
    """A^3 defined as A^2 o A."""
    return jordan_product(square(A), A)


def trace(A):
    """Real trace; for Hermitian input the diagonal is real."""
    if isinstance(A, (Herm2, Herm3)):
        return float(sum(A.diag))
    return as_matrix(A).trace().real


def freudenthal_product(A, B):
    """Freudenthal product A * B of two 3x3 Hermitian matrices."""
    MA, MB = as_matrix(A), as_matrix(B)
    if MA.dim != 3 or MB.dim != 3:
        raise DimensionError("the Freudenthal product is defined on 3x3 matrices")
    tA, tB = trace(MA), trace(MB)
    AB = jordan_product(MA, MB)
    out = AB - 0.5 * (tB * MA + tA * MB) + 0.5 * (tA * tB - trace(AB)) * OctMatrix.identity(3)
    return Herm3.from_matrix(out, tol=1e-9)


def sigma(A):
    """((tr A)^2 - tr(A^2)) / 2."""
    t = trace(A)
    return 0.5 * (t * t - trace(square(A)))


def sigma_explicit(A: Herm3):
    return (A.p * A.m + A.p * A.n + A.m * A.n
            - A.a.norm_sq() - A.b.norm_sq() - A.c.norm_sq())


def det2(A: Herm2):
    return A.p * A.m - A.a.norm_sq()


def det3(A: Herm3):
    """Determinant from the component formula pmn + 2 Re(b(ac)) - n|a|^2 - m|b|^2 - p|c|^2."""
    bac = (A.b * (A.a * A.c)).real
    return (A.p * A.m * A.n + 2.0 * bac
            - A.n * A.a.norm_sq() - A.m * A.b.norm_sq() - A.p * A.c.norm_sq())


def det3_freudenthal(A: Herm3):
    """Determinant as tr((A * A) o A) / 3."""
    return trace(jordan_product(freudenthal_product(A, A), A)) / 3.0


def char_residual(A: Herm3):
    """Max coefficient of A^3 - (tr A) A^2 + sigma(A) A - (det A) I."""
    M = as_matrix(A)
    sq = square(M)
    lhs = jordan_product(sq, M) - trace(M) * sq + sigma(M) * M - det3(A) * OctMatrix.identity(3)
    return lhs.max_abs()


def mat_vec(A, v: OctVec):
    """A v with the i-th component sum_j A[i, j] v[j]."""
    M = as_matrix(A)
    _check_same(M.dim, v.dim)
    return OctVec(np.einsum("ijp,jq,pqr->ir", M.array, v.array, STRUCT))


def outer(v: OctVec, w: OctVec | None = None):
    """v w^dagger, with entries v_i conj(w_j); w defaults to v."""
    w = v if w is None else w
    _check_same(v.dim, w.dim)
    return OctMatrix(np.einsum("ip,jq,pqr->ijr", v.array, oconj(w.array), STRUCT))


def conj_matrix(A):
    """Entrywise octonionic conjugate."""
    if isinstance(A, (Herm2, Herm3)):
        return A.conj()
    return as_matrix(A).conj()

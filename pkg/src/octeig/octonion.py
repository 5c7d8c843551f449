"""Octonion arithmetic on the ordered basis (1, i, j, k, l, il, jl, kl).

Products follow the Cayley-Dickson doubling of the quaternions,

    (a + b l)(c + d l) = (a c - conj(d) b) + (d a + b conj(c)) l,

with ij = k.  The rule is expanded once into an 8x8x8 structure tensor so that
both scalar products and batched products over arrays of shape (..., 8) are a
single einsum.
"""

from __future__ import annotations

import numbers

import numpy as np

BASIS_NAMES = ("1", "i", "j", "k", "l", "il", "jl", "kl")

_CONJ_SIGNS = np.array([1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0, -1.0])


def _quat_mul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return np.array([
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ])


def _quat_conj(a):
    return a * _CONJ_SIGNS[:4]


def cayley_dickson_product(x, y):
    """Reference product straight from the doubling formula (slow, unbatched)."""
    a, b = x[:4], x[4:]
    c, d = y[:4], y[4:]
    return np.concatenate([
        _quat_mul(a, c) - _quat_mul(_quat_conj(d), b),
        _quat_mul(d, a) + _quat_mul(b, _quat_conj(c)),
    ])


def _structure_tensor():
    eye = np.eye(8)
    table = np.zeros((8, 8, 8))
    for p in range(8):
        for q in range(8):
            table[p, q] = cayley_dickson_product(eye[p], eye[q])
    return table


# STRUCT[p, q, r]: coefficient of e_r in e_p e_q.  Every (p, q) row has exactly
# one nonzero entry, equal to +1 or -1.
STRUCT = _structure_tensor()
STRUCT.setflags(write=False)


def omul(x, y):
    """Batched octonion product of coefficient arrays of shape (..., 8)."""
    return np.einsum("...p,...q,pqr->...r", x, y, STRUCT)


def oconj(x):
    """Batched conjugate of coefficient arrays of shape (..., 8)."""
    return np.asarray(x) * _CONJ_SIGNS


class Octonion:
    """An octonion with eight real coefficients.

    Instances are treated as immutable values.  Arithmetic mixes freely with
    Python and numpy real scalars.
    """

    __slots__ = ("_c",)
    # make numpy scalars defer to our reflected operators
    __array_ufunc__ = None

    def __init__(self, coeffs=None):
        if coeffs is None:
            c = np.zeros(8)
        elif isinstance(coeffs, numbers.Real):
            c = np.zeros(8)
            c[0] = float(coeffs)
        else:
            c = np.array(coeffs, dtype=float).reshape(-1)
            if c.shape != (8,):
                raise ValueError(f"an octonion needs 8 coefficients, got {c.size}")
        c.setflags(write=False)
        self._c = c

    @classmethod
    def basis(cls, name_or_index):
        """Unit basis element, by index 0..7 or by name ('1', 'i', ..., 'kl')."""
        idx = BASIS_NAMES.index(name_or_index) if isinstance(name_or_index, str) else int(name_or_index)
        c = np.zeros(8)
        c[idx] = 1.0
        return cls(c)

    @property
    def coeffs(self):
        return self._c

    @property
    def real(self):
        return float(self._c[0])

    @property
    def imag(self):
        c = self._c.copy()
        c[0] = 0.0
        return Octonion(c)

    def conj(self):
        return Octonion(self._c * _CONJ_SIGNS)

    def norm_sq(self):
        return float(self._c @ self._c)

    def norm(self):
        return float(np.sqrt(self.norm_sq()))

    def inverse(self):
        n = self.norm_sq()
        if n == 0.0:
            raise ZeroDivisionError("zero octonion has no inverse")
        return Octonion(self._c * _CONJ_SIGNS / n)

    def isclose(self, other, atol=1e-12):
        other = _as_octonion(other)
        return bool(np.max(np.abs(self._c - other._c)) <= atol)

    def __add__(self, other):
        if isinstance(other, Octonion):
            return Octonion(self._c + other._c)
        if isinstance(other, numbers.Real):
            c = self._c.copy()
            c[0] += other
            return Octonion(c)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Octonion(-self._c)

    def __sub__(self, other):
        if isinstance(other, (Octonion, numbers.Real)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, numbers.Real):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return Octonion(omul(self._c, other._c))
        if isinstance(other, numbers.Real):
            return Octonion(self._c * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Real):
            return Octonion(self._c * other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, numbers.Real):
            return Octonion(self._c / other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, numbers.Real):
            other = Octonion(other)
        if not isinstance(other, Octonion):
            return NotImplemented
        return bool(np.array_equal(self._c, other._c))

    def __hash__(self):
        return hash(self._c.tobytes())

    def __iter__(self):
        return iter(self._c.tolist())

    def tolist(self):
        return self._c.tolist()

    def __repr__(self):
        return f"Octonion({self._c.tolist()!r})"

    def __str__(self):
        terms = []
        for value, name in zip(self._c, BASIS_NAMES):
            if value == 0:
                continue
            unit = "" if name == "1" else name
            mag = abs(value)
            coeff = f"{mag:g}" if (mag != 1 or not unit) else ""
            sign = "-" if value < 0 else "+"
            terms.append((sign, coeff + unit))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out


def _as_octonion(x):
    return x if isinstance(x, Octonion) else Octonion(x)


ONE, I, J, K, L, IL, JL, KL = (Octonion.basis(n) for n in range(8))
ZERO = Octonion()


def mul(a, b):
    return _as_octonion(a) * _as_octonion(b)


def conj(a):
    return _as_octonion(a).conj()


def norm_sq(a):
    return _as_octonion(a).norm_sq()


def inverse(a):
    return _as_octonion(a).inverse()


def commutator(a, b):
    """[a, b] = ab - ba."""
    a, b = _as_octonion(a), _as_octonion(b)
    return a * b - b * a


def associator(a, b, c):
    """[a, b, c] = (ab)c - a(bc)."""
    a, b, c = _as_octonion(a), _as_octonion(b), _as_octonion(c)
    return (a * b) * c - a * (b * c)


def phi(a, b, c):
    """The associative 3-form, half the real part of [a, conj(b)] c."""
    a, b, c = _as_octonion(a), _as_octonion(b), _as_octonion(c)
    return 0.5 * (commutator(a, b.conj()) * c).real


def triple_cross(a, b, c):
    """Triple cross product (a(conj(b) c) - c(conj(b) a)) / 2.

    Its real part is ``phi(a, b, c)``.
    """
    a, b, c = _as_octonion(a), _as_octonion(b), _as_octonion(c)
    bb = b.conj()
    return 0.5 * (a * (bb * c) - c * (bb * a))


def left_mul_matrix(a):
    """Real 8x8 matrix of x -> a x acting on coefficient vectors."""
    c = _as_octonion(a).coeffs
    return np.einsum("p,pqr->rq", c, STRUCT)


def right_mul_matrix(a):
    """Real 8x8 matrix of x -> x a acting on coefficient vectors."""
    c = _as_octonion(a).coeffs
    return np.einsum("q,pqr->rp", c, STRUCT)

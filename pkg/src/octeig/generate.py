"""Seeded random instances.

All randomness comes from numpy's PCG64 bit generator seeded with the given
64-bit integer, ``numpy.random.Generator(numpy.random.PCG64(seed))``.  Draw
order for a matrix of dimension n: n diagonal values, then eight coefficients
for each off-diagonal entry in the order a, b, c, all uniform on
[-scale, scale].  Coefficients outside the requested class are zeroed after the
draw so the stream does not depend on the class.  Octonionic 3x3 draws are
repeated (a, b, c only) until |[a, b, c]| > 1e-3 scale^3.
"""

from __future__ import annotations

import numpy as np

from .hermitian import Herm2, Herm3, OctVec, outer
from .octonion import Octonion, associator

CLASSES = ("complex", "quaternionic", "octonionic")
_SLOTS = {"complex": 2, "quaternionic": 4, "octonionic": 8}


def make_rng(seed):
    return np.random.Generator(np.random.PCG64(int(seed) & 0xFFFFFFFFFFFFFFFF))


def random_octonion(rng, kind="octonionic", scale=1.0):
    c = rng.uniform(-scale, scale, 8)
    c[_SLOTS[kind]:] = 0.0
    return Octonion(c)


def random_herm2(rng, kind="octonionic", scale=1.0):
    p, m = rng.uniform(-scale, scale, 2)
    return Herm2(p, m, random_octonion(rng, kind, scale))


def random_herm3(rng, kind="octonionic", scale=1.0):
    p, m, n = rng.uniform(-scale, scale, 3)
    while True:
        a, b, c = (random_octonion(rng, kind, scale) for _ in range(3))
        if kind != "octonionic" or associator(a, b, c).norm() > 1e-3 * scale ** 3:
            return Herm3(p, m, n, a, b, c)


def random_octvec(rng, n, kind="octonionic", scale=1.0):
    return OctVec([random_octonion(rng, kind, scale) for _ in range(n)])


def random_repeated_herm3(rng, scale=1.0):
    """mu I + t w w^dagger for a random unit w; one family is (mu, mu, mu + t)."""
    mu = rng.uniform(-scale, scale)
    t = rng.uniform(0.5, 1.0) * scale * rng.choice([-1.0, 1.0])
    w = random_octvec(rng, 3).normalized()
    A = Herm3.from_matrix(outer(w) * t, tol=1e-10)
    return Herm3(A.p + mu, A.m + mu, A.n + mu, A.a, A.b, A.c)

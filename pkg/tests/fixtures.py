"""Frozen inputs shared by several test modules.

Everything here is small-integer data (or small integers over sqrt(n)), so the
expected values can be checked by hand.  The counterexamples were located by a
seeded search and then written out literally.
"""

import math

from octeig.hermitian import Herm2, Herm3, OctVec
from octeig.octonion import I, IL, J, JL, K, KL, L, ONE, ZERO

# [[1, i], [-i, 1]]: left eigenvector (1, k) with 1 - j, right eigenvector (j, l) with 1 - kl
LEFT_RIGHT_2X2 = Herm2(1, 1, I)

# [[0, 1+i], [1-i, 0]] with eigenvalues +-sqrt(2)
QUAT_2X2 = Herm2(0, 0, ONE + I)
QUAT_2X2_V1 = OctVec([ONE * math.sqrt(2.0), ONE - I])

# p = m = n = 0, a = i, b = j, c = l
WORKED = Herm3(0, 0, 0, I, J, L)
WORKED_FAMILIES = {"r+": (2.0, (-1.0, -1.0, 2.0)), "r-": (-2.0, (-2.0, 1.0, 1.0))}
WORKED_CLUSTERS = [(-2.0, 4), (-1.0, 8), (1.0, 8), (2.0, 4)]

# unit eigenvector of WORKED at lam = 2 (family r = 2)
WORKED_TOP = OctVec([-(K + L), IL - J, -(I + JL)]) / math.sqrt(6.0)

# an orthonormal triple for the r = -2 family of WORKED, eigenvalues (-2, 1, 1)
WORKED_MINUS_TRIPLE = (
    OctVec([L - K, J + IL, I - JL]) / math.sqrt(6.0),
    OctVec([I - JL, ONE - KL, ZERO]) / 2.0,
    OctVec([JL - I, ONE - KL, (K - L) * 2.0]) / math.sqrt(12.0),
)
WORKED_MINUS_LAMBDAS = (-2.0, 1.0, 1.0)

# (A o B) o C - A o (B o C) has an entry of size 1
JORDAN_TRIPLE = (
    Herm3(-1, 1, 1, I, -JL, -L),
    Herm3(-1, -1, 0, ZERO, -ONE, -ONE),
    Herm3(1, 0, 0, -L, K, ZERO),
)

# unit vector in O^3 with (v v^dagger)^2 != v v^dagger
IDEM_FAILURE = OctVec([I, J, L]) / math.sqrt(3.0)

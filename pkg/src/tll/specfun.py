"""Special-function kernels: the Airy quadruple and the exponential integral.

Self-contained implementations (no external special-function library): a
double-double compensated Maclaurin series covers |z| <= 9 and Poincare-type
asymptotic expansions with double-double phase reduction cover the rest of
the supported range |z| <= 1e4.  Both values and first derivatives of Ai and
Bi are produced together because every caller needs the full quadruple.

Accuracy: better than 1e-11 relative everywhere in range (measured ~1e-15),
1e-13 absolute near the zeros on the negative axis.
"""

from dataclasses import dataclass
from math import pi

from . import _backend
from .errors import DomainError


@dataclass(frozen=True)
class AiryQuad:
    """Ai, Ai', Bi, Bi' evaluated at one real argument.

    Satisfies the Wronskian identity ai*bi_prime - ai_prime*bi = 1/pi; for
    arguments >= 0 both ai and bi are strictly positive.
    """

    ai: float
    ai_prime: float
    bi: float
    bi_prime: float

    def wronskian(self):
        return self.ai * self.bi_prime - self.ai_prime * self.bi

    def wronskian_defect(self):
        """pi*W - 1; zero for exact values."""
        return pi * self.wronskian() - 1.0


def airy(z):
    """Evaluate the Airy quadruple at real z.

    Raises DomainError for non-finite z or |z| > 1e4, and OverflowRangeError
    (carrying the base-10 exponent scale) when Bi(z) exceeds double range.
    """
    ai, aip, bi, bip = _backend.airy_kernel(float(z))
    return AiryQuad(ai, aip, bi, bip)


def airy_grid(z_values):
    """Vectorized airy: returns the (n, 4) array [Ai, Ai', Bi, Bi'] rows."""
    return _backend.airy_many(z_values)


def gamma0(x):
    """Upper incomplete gamma at vanishing first index, Gamma(0, x) = E1(x).

    Defined as the integral of exp(-t)/t from x to infinity; requires x > 0
    (the integral diverges at the origin).  Series branch below x = 1,
    continued-fraction branch above, matching at the seam to ~1e-15.
    """
    x = float(x)
    if not (x > 0.0):
        raise DomainError("gamma0 requires x > 0, got %r" % (x,))
    return _backend.e1_kernel(x)

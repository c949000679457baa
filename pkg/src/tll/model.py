"""Equilibrium parameterization of a Tomonaga-Luttinger liquid.

Couplings are stored in "velocity units": the fields g2 and g4 hold the full
forward-scattering strengths (so g/(2*pi) is the quantity with velocity
dimension that enters dispersions).  Natural units hbar = m = 1 throughout;
v_f and the system size set the scales.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, InstabilityError

TWO_PI = 2.0 * math.pi

# tail threshold for the automatic mode-count choice: contributions carry a
# factor exp(-r0*p), so truncating below 1e-12 is invisible at all test
# tolerances
_TAIL = 1e-12


@dataclass(frozen=True)
class TLLParams:
    """Fermi velocity and forward-scattering couplings (velocity units).

    Stability requires |g2| < 2*pi*v_f + g4, which keeps the sound velocity
    real; construction fails otherwise.
    """

    v_f: float
    g2: float = 0.0
    g4: float = 0.0

    def __post_init__(self):
        if not (self.v_f > 0.0):
            raise DomainError("v_f must be positive, got %r" % (self.v_f,))
        if not (abs(self.g2) < TWO_PI * self.v_f + self.g4):
            raise InstabilityError(
                "couplings violate |g2| < 2*pi*v_f + g4 "
                "(g2=%g, g4=%g, v_f=%g)" % (self.g2, self.g4, self.v_f),
                violated="|g2| < 2*pi*v_f + g4",
            )


@dataclass(frozen=True)
class ModeGrid:
    """Discrete momentum grid p_n = 2*pi*n/length_l for n = 1..n_max.

    r0 is the exponential high-momentum regulator; nu is the microscopic
    cutoff length carried for documentation only (it never enters formulas).
    """

    length_l: float
    n_max: int
    r0: float
    nu: float = 1.0

    def __post_init__(self):
        if not (self.length_l > 0.0):
            raise DomainError("length_l must be positive")
        if not (self.r0 > 0.0):
            raise DomainError("r0 must be positive")
        if self.n_max < 1:
            raise DomainError("n_max must be >= 1")
        if math.exp(-self.r0 * TWO_PI * self.n_max / self.length_l) >= _TAIL:
            raise DomainError(
                "n_max=%d leaves a regulator tail above %g; need n_max >= %d"
                % (self.n_max, _TAIL, _auto_n_max(self.length_l, self.r0))
            )

    @classmethod
    def auto(cls, length_l, r0, nu=1.0):
        """Grid with the smallest n_max whose tail is below the threshold."""
        return cls(length_l=length_l, n_max=_auto_n_max(length_l, r0), r0=r0, nu=nu)

    @property
    def momenta(self):
        return TWO_PI * np.arange(1, self.n_max + 1) / self.length_l

    def weights(self):
        """Regulator weights exp(-r0*p_n), aligned with momenta."""
        return np.exp(-self.r0 * self.momenta)

    def describe(self):
        return "L=%g,n_max=%d,r0=%g" % (self.length_l, self.n_max, self.r0)


def _auto_n_max(length_l, r0):
    return int(math.ceil(math.log(1.0 / _TAIL) * length_l / (TWO_PI * r0)))


@dataclass(frozen=True)
class Dispersion:
    """Chiral frequency, mixing strength, and diagonal frequency of a mode."""

    omega: float
    g: float
    epsilon: float


def luttinger_params(params):
    """Return (K, v_s) from the couplings.

    K = sqrt((2*pi*v_f + g4 - g2)/(2*pi*v_f + g4 + g2)),
    v_s = sqrt((v_f + g4/2pi)^2 - (g2/2pi)^2).
    For g2 = g4 these satisfy v_s*K = v_f (Galilean invariance).
    """
    if not isinstance(params, TLLParams):
        params = TLLParams(*params)
    num = TWO_PI * params.v_f + params.g4 - params.g2
    den = TWO_PI * params.v_f + params.g4 + params.g2
    if num <= 0.0 or den <= 0.0:
        raise InstabilityError(
            "couplings violate |g2| < 2*pi*v_f + g4",
            violated="|g2| < 2*pi*v_f + g4",
        )
    k = math.sqrt(num / den)
    a = params.v_f + params.g4 / TWO_PI
    b = params.g2 / TWO_PI
    v_s = math.sqrt(a * a - b * b)
    return k, v_s


def dispersion(p, t_couplings, v_f):
    """Mode frequencies at momentum p for instantaneous couplings (g2, g4)."""
    if p == 0.0:
        raise DomainError("dispersion requires p != 0 (zero mode excluded)")
    g2, g4 = t_couplings
    omega = abs(p) * (v_f + g4 / TWO_PI)
    g = abs(p) * g2 / TWO_PI
    rad = omega * omega - g * g
    if rad < 0.0:
        raise InstabilityError(
            "imaginary spectrum: |g(p)| > omega(p) at p=%g" % (p,),
            violated="|g| <= omega",
        )
    return Dispersion(omega=omega, g=g, epsilon=math.sqrt(rad))


def bogoliubov_angle(d):
    """Mixing angle beta with tanh(2*beta) = -g/omega."""
    if abs(d.g) >= d.omega:
        raise DomainError(
            "bogoliubov angle requires |g| < omega (got g=%g, omega=%g)"
            % (d.g, d.omega)
        )
    return -0.5 * math.atanh(d.g / d.omega)


class LongRangeCoupling(NamedTuple):
    value: float
    unstable: bool


def long_range_coupling(p, gamma, gamma_ddot, v_f):
    """Effective momentum-dependent coupling g_{2,4}(p,t)/(2*pi).

    Combines the contact part (v_f/2)(gamma^-4 - 1) with a 1/p^2 long-range
    piece proportional to gamma_ddot/gamma.  A positive gamma_ddot/gamma is
    flagged unstable (gap term of the wrong sign in the thermodynamic limit)
    but still evaluated.
    """
    if p == 0.0:
        raise DomainError("long_range_coupling requires p != 0")
    if not (gamma > 0.0):
        raise DomainError("gamma must be positive, got %r" % (gamma,))
    ratio = gamma_ddot / gamma
    value = 0.5 * v_f * (gamma ** -4 - 1.0) - ratio / (2.0 * v_f * p * p)
    return LongRangeCoupling(value=value, unstable=ratio > 0.0)


def lieb_liniger_k(upsilon, branch=None):
    """Asymptotic Luttinger-parameter estimates for the Lieb-Liniger gas.

    Strong coupling (upsilon >= 1): K ~ 1 + 4/upsilon.  Weak coupling
    (upsilon < 1): K ~ (pi/sqrt(upsilon)) * (1 - sqrt(upsilon)/(2*pi))^(-1/2).
    Each is valid only in its own regime; `branch` forces one explicitly.
    """
    if not (upsilon > 0.0):
        raise DomainError("upsilon must be positive, got %r" % (upsilon,))
    if branch is None:
        branch = "strong" if upsilon >= 1.0 else "weak"
    if branch == "strong":
        return 1.0 + 4.0 / upsilon
    if branch == "weak":
        root = math.sqrt(upsilon)
        if root >= TWO_PI:
            raise DomainError(
                "weak-coupling estimate requires sqrt(upsilon) < 2*pi"
            )
        return (math.pi / root) / math.sqrt(1.0 - root / TWO_PI)
    raise DomainError("branch must be 'strong' or 'weak', got %r" % (branch,))


def xxz_coupling(j_z, a, k_f):
    """Lattice coupling map: g_{2,4} = 2*J_z*a*(1 - cos(2*k_f*a)).

    At half filling (k_f = pi/(2a)) this is 4*J_z*a.
    """
    if not (a > 0.0):
        raise DomainError("lattice spacing a must be positive")
    return 2.0 * j_z * a * (1.0 - math.cos(2.0 * k_f * a))


def bose_occupation(omega0p, beta0):
    """Initial thermal occupation 1/(exp(2*beta0*omega0p) - 1).

    beta0 = inf gives the pure ground state (zero occupation).  The factor 2
    in the exponent is the convention matching the thermal mean-energy
    formulas used by the observables module.
    """
    if beta0 == math.inf:
        return 0.0
    if not (beta0 > 0.0):
        raise DomainError("beta0 must be positive or inf, got %r" % (beta0,))
    return 1.0 / math.expm1(2.0 * beta0 * omega0p)

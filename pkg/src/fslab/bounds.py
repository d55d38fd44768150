"""Closed-form bounds for the functional a_3 - mu a_2**2 over the class.

All bounds are stated for the normalized member f = z + a_2 z^2 + a_3 z^3 + ...
of the class described in :mod:`fslab.members`. Two routes exist:

* real mu: a four-branch piecewise value. Writing rho = mu sigma / tau**2
  reduces the general class to the lam = delta = 0 case, because the
  second-order transform F = (1-lam+delta) f + (lam-delta) z f' + lam delta
  z^2 f'' has A_2 = tau a_2 and A_3 = sigma a_3. The scaled quantity
  3 sigma |a_3 - mu a_2**2| is bounded by, with A = 3-2 beta, B = 3-2 alpha-beta,
  C = 2-alpha-beta:

      case 1 (mu <= mu1):        A*B - 3 rho C**2
      case 2 (mu1 < mu <= mu2):  1 - 2 alpha + beta*A + 4 (1-beta)**2 / (3 rho)
      case 3 (mu2 < mu <= mu3):  B
      case 4 (mu3 < mu):         -A*B + 3 rho C**2

  with breakpoints mu1 = 2(1-beta) tau**2 / (3 C sigma), mu2 = 2 tau**2 /
  (3 sigma), mu3 = 2(2-beta) B tau**2 / (3 C**2 sigma). Adjacent branches agree
  at the breakpoints and every branch is positive on its own range; ties in
  case selection go to the lower case id.

  Validity caveat: every branch value is attained by an explicit member (see
  :mod:`fslab.extremal`), and on cases 1-2 no member exceeding it has ever
  been found, but on cases 3-4 the value is NOT an upper bound whenever
  alpha > 0. The two-atom family q = atom(t), p = equal atoms at t +- phi
  exceeds it on an open mu window starting just below mu3: with u = 1-alpha,
  v = 1-beta, x = cos phi, the scaled functional there is

      u (4 - 3 rho u) x**2 + 2 u v (2 - 3 rho) x + (v + 2 v**2 - 2u - 3 rho v**2)

  (times a rotation), whose interior vertex dips below minus the branch value.
  Smallest concrete instance kept under test: alpha=0.6, beta=0, mu=1.25 gives
  branch value 0.65 while the member with x = 0.7 reaches |a_3 - mu a_2**2|
  = 0.68. The excess stops once rho >= max((4-2 beta)/(3(1-beta)),
  4/(3(1-alpha))), where case 4 coincides with the complex-mu route below;
  it vanishes identically at alpha = 0. Soundness sweeps therefore fail on
  part of the parameter domain; the complex-mu route is the bound to trust
  everywhere.

* complex mu: a triangle-inequality bound. With Psi(s) = 3 sigma (1-s)/tau**2,

      3 sigma |a_3 - mu a_2**2| <=
            (1-beta)   max(1, |3 - 2 beta - mu Psi(beta)|)
          + 2 (1-alpha) max(1, |1 - mu Psi(alpha)/2|)
          + 4 (1-alpha)(1-beta) |1 - mu Psi(0)/2|.

  At mu = 0 the two routes agree exactly; whether the complex route is sharp
  for non-real mu is unknown, so only validity is ever asserted for it.

Reduction presets recover published special cases of the same formula by
pinning parameters (see REDUCTION_PRESETS). The fully classical preset
(keogh-merkes) is implemented with the middle branch 1/3 + 4/(9 mu); a
minus-sign variant of that branch seen in print is discontinuous at both
interior breakpoints and is exceeded by explicit members (value 11/9 at
mu = 1/2), so the continuous form is the correct one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError
from .members import ClassParams

# Documents the sign choice in the classical reduction's middle branch.
KM_SIGN_NOTE = (
    "middle branch evaluated as 1/3 + 4/(9 mu); the minus-sign variant seen "
    "in print is discontinuous at mu = 1/3 and mu = 2/3 and is exceeded by "
    "explicit members (witness value 11/9 at mu = 1/2)"
)

# preset name -> (fixed parameter dict, free parameter names)
REDUCTION_PRESETS: dict[str, tuple[dict[str, float], tuple[str, ...]]] = {
    "ad2": ({"delta": 0.0}, ("lam", "alpha", "beta")),
    "al-abbadi-darus": ({"delta": 0.0, "alpha": 0.0}, ("lam", "beta")),
    "darus-thomas": ({"lam": 0.0, "delta": 0.0}, ("alpha", "beta")),
    "keogh-merkes": (
        {"lam": 0.0, "delta": 0.0, "alpha": 0.0, "beta": 0.0},
        (),
    ),
}


@dataclass(frozen=True)
class FunctionalParams:
    """Functional-side arguments: mu itself plus derived quantities.

    rho = mu * sigma / tau**2 is the value of mu after passing to the
    second-order transform; it is populated only for real mu with a class
    context attached. nu carries the generic quadratic-functional parameter
    used by the Caratheodory-coefficient bound.
    """

    mu: complex
    nu: Optional[complex] = None
    rho: Optional[float] = None

    @classmethod
    def with_class(cls, mu: float, params: ClassParams) -> "FunctionalParams":
        if isinstance(mu, complex):
            raise DomainError("rho substitution is defined for real mu only")
        if not math.isfinite(mu):
            raise DomainError(f"mu must be finite, got {mu!r}")
        return cls(mu=mu, rho=mu * params.sigma / params.tau**2)


@dataclass(frozen=True)
class BoundReport:
    """Everything the real-mu bound evaluation knows about one mu."""

    mu: float
    case_id: int
    breakpoints: tuple[float, float, float]
    scaled_value: float  # bound on 3 sigma |a_3 - mu a_2**2|
    value: float  # bound on |a_3 - mu a_2**2|
    psi_beta: float
    psi_alpha: float
    psi_zero: float


def psi(params: ClassParams, s: float) -> float:
    """Psi(s) = 3 sigma (1 - s) / tau**2."""
    return 3.0 * params.sigma * (1.0 - s) / params.tau**2


def breakpoints(params: ClassParams) -> tuple[float, float, float]:
    """The three mu thresholds (mu1, mu2, mu3) separating the four branches.

    Always ordered mu1 < mu2 < mu3 on the open parameter domain.
    """
    a, b = params.alpha, params.beta
    t2 = params.tau**2
    s3 = 3.0 * params.sigma
    c = 2.0 - a - b
    mu1 = 2.0 * (1.0 - b) * t2 / (s3 * c)
    mu2 = 2.0 * t2 / s3
    mu3 = 2.0 * (2.0 - b) * (3.0 - 2.0 * a - b) * t2 / (s3 * c * c)
    return (mu1, mu2, mu3)


def branch_value(params: ClassParams, mu: float, case_id: int) -> float:
    """Evaluate one branch formula (scaled form) regardless of mu's range.

    Exposed so continuity at the breakpoints can be checked by evaluating
    both adjacent branches at the same point. case 2 requires mu != 0.
    """
    if case_id not in (1, 2, 3, 4):
        raise DomainError(f"case_id must be 1..4, got {case_id}")
    a, b = params.alpha, params.beta
    rho = FunctionalParams.with_class(mu, params).rho
    big_a = 3.0 - 2.0 * b
    big_b = 3.0 - 2.0 * a - b
    big_c = 2.0 - a - b
    if case_id == 1:
        return big_a * big_b - 3.0 * rho * big_c**2
    if case_id == 2:
        if rho == 0.0:
            raise DomainError("the middle branch is undefined at mu = 0")
        return 1.0 - 2.0 * a + b * big_a + 4.0 * (1.0 - b) ** 2 / (3.0 * rho)
    if case_id == 3:
        return big_b
    return -big_a * big_b + 3.0 * rho * big_c**2


def bound_real(params: ClassParams, mu: float) -> BoundReport:
    """Piecewise four-branch value for |a_3 - mu a_2**2|, with diagnostics.

    Attained by the witnesses in :mod:`fslab.extremal` for every case, and a
    genuine upper bound on cases 1-2, but exceeded by explicit members on a
    case-3/4 window whenever alpha > 0 (see the module docstring). Use
    bound_complex when an unconditional bound is needed.

    Complex mu is rejected rather than projected; use bound_complex for it.
    """
    if isinstance(mu, complex):
        raise DomainError("bound_real takes real mu; use bound_complex")
    mu = float(mu)
    if not math.isfinite(mu):
        raise DomainError(f"mu must be finite, got {mu!r}")
    mu1, mu2, mu3 = breakpoints(params)
    if mu <= mu1:
        case_id = 1
    elif mu <= mu2:
        case_id = 2
    elif mu <= mu3:
        case_id = 3
    else:
        case_id = 4
    scaled = branch_value(params, mu, case_id)
    return BoundReport(
        mu=mu,
        case_id=case_id,
        breakpoints=(mu1, mu2, mu3),
        scaled_value=scaled,
        value=scaled / (3.0 * params.sigma),
        psi_beta=psi(params, params.beta),
        psi_alpha=psi(params, params.alpha),
        psi_zero=psi(params, 0.0),
    )


def bound_complex(params: ClassParams, mu: complex) -> float:
    """Triangle-inequality bound on |a_3 - mu a_2**2|, valid for any mu.

    Each of the three terms bounds its own piece of the functional, so this
    route holds unconditionally; it is the one to trust where bound_real's
    piecewise value is exceeded. For real mu it dominates bound_real, with
    equality at mu = 0. Sharpness for non-real mu is not claimed.
    """
    mu = complex(mu)
    if not (math.isfinite(mu.real) and math.isfinite(mu.imag)):
        raise DomainError(f"mu must be finite, got {mu!r}")
    a, b = params.alpha, params.beta
    pb, pa, p0 = psi(params, b), psi(params, a), psi(params, 0.0)
    t1 = (1.0 - b) * max(1.0, abs(3.0 - 2.0 * b - mu * pb))
    t2 = 2.0 * (1.0 - a) * max(1.0, abs(1.0 - mu * pa / 2.0))
    t3 = 4.0 * (1.0 - a) * (1.0 - b) * abs(1.0 - mu * p0 / 2.0)
    return (t1 + t2 + t3) / (3.0 * params.sigma)


def coeff_bounds(params: ClassParams) -> tuple[float, float]:
    """Sharp moduli bounds (max |a_2|, max |a_3|) over the class."""
    a, b = params.alpha, params.beta
    a2max = (2.0 - a - b) / params.tau
    a3max = (3.0 - 2.0 * a - b) * (3.0 - 2.0 * b) / (3.0 * params.sigma)
    return (a2max, a3max)


def caratheodory_bound(nu: complex) -> float:
    """Bound on |c_2 - nu c_1**2| over functions of positive real part.

    Equals 2 max(1, |2 nu - 1|); attained by (1+z^2)/(1-z^2) when
    |2 nu - 1| <= 1 and by (1+z)/(1-z) otherwise.
    """
    nu = complex(nu)
    if not (math.isfinite(nu.real) and math.isfinite(nu.imag)):
        raise DomainError(f"nu must be finite, got {nu!r}")
    return 2.0 * max(1.0, abs(2.0 * nu - 1.0))


def starlike_fs_bound(beta: float, mu: float) -> float:
    """Bound on |b_3 - mu b_2**2| over functions starlike of order beta."""
    if not (0.0 <= beta < 1.0):
        raise DomainError(f"need 0 <= beta < 1, got {beta}")
    if isinstance(mu, complex) or not math.isfinite(mu):
        raise DomainError(f"mu must be finite real, got {mu!r}")
    return (1.0 - beta) * max(1.0, abs(3.0 - 2.0 * beta - 4.0 * mu * (1.0 - beta)))


def classical_s_bound(mu: float) -> float:
    """The classical bound on |a_3 - mu a_2**2| over all of S, real mu.

    3 - 4 mu for mu <= 0, then 1 + 2 exp(-2 mu / (1 - mu)) on (0, 1),
    then 4 mu - 3. Included as an external cross-reference value; it is not
    comparable to the class bounds here parameter-by-parameter.
    """
    if isinstance(mu, complex) or not math.isfinite(mu):
        raise DomainError(f"mu must be finite real, got {mu!r}")
    if mu <= 0.0:
        return 3.0 - 4.0 * mu
    if mu < 1.0:
        return 1.0 + 2.0 * math.exp(-2.0 * mu / (1.0 - mu))
    return 4.0 * mu - 3.0


def reduction_bound(preset: str, mu: float, **free: float) -> float:
    """Evaluate a named specialization of bound_real.

    preset fixes some of (lam, delta, alpha, beta); the rest are keyword
    arguments. Runs through exactly the same code path as bound_real, so the
    reduction is an identity, not a reimplementation. Returns the bound on
    |a_3 - mu a_2**2|.
    """
    if preset not in REDUCTION_PRESETS:
        raise DomainError(
            f"unknown preset {preset!r}; choose from {sorted(REDUCTION_PRESETS)}"
        )
    fixed, free_names = REDUCTION_PRESETS[preset]
    unknown = set(free) - set(free_names)
    if unknown:
        raise DomainError(
            f"preset {preset!r} does not accept {sorted(unknown)}; "
            f"free parameters are {list(free_names)}"
        )
    kwargs = {"lam": 0.0, "delta": 0.0, "alpha": 0.0, "beta": 0.0}
    kwargs.update(fixed)
    kwargs.update(free)
    return bound_real(ClassParams(**kwargs), mu).value

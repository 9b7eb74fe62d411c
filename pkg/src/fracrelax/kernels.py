"""Time-domain hereditary kernels and relaxation/creep functions.

Families covered: Abel power law, Rabotnov fractional-exponential,
Rzhanitsyn (Davidson-Cole), the confluent-hypergeometric kernel pair
S(t)/R(t), the resolvent kernels Q_alpha/P_alpha, and the four-parameter
Havriliak-Negami relaxation kernel R(t), creep resolvent K(t) and
relaxation function.

All series are evaluated in fixed summation order with compensated
accumulation, so results are bitwise reproducible regardless of how a
caller partitions grid evaluations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BranchDegeneracyError, NoResolventError
from .specfun import (
    DEFAULT_CONTROL,
    SeriesControl,
    eh_alpha,
    gamma,
    kummer_1f1,
    ln_gamma,
    sum_series,
)

__all__ = [
    "HNParams",
    "KernelModel",
    "HN_SERIES_CROSSOVER",
    "chgf_relaxation_S",
    "chgf_kernel_R",
    "q_kernel",
    "p_kernel",
    "hn_relaxation_kernel",
    "hn_creep_resolvent",
    "hn_creep_resolvent_series",
    "hn_relaxation_function",
    "p_nu_response",
    "abel_kernel",
    "rzhanitsyn_kernel",
]

# The alternating HN power series carries gamma-growth coefficients; past
# this t/tau0 it is abandoned in favor of the numerical inverse Laplace
# route (see the evaluate module for the dispatch).
HN_SERIES_CROSSOVER = 5.0

KERNEL_FAMILIES = ("Abel", "Rabotnov", "RzhanitsynDavidson", "CHGF", "HavriliakNegami")


@dataclass(frozen=True)
class HNParams:
    """Four-parameter dispersion set: shape (alpha, beta), characteristic
    time tau0, and the instantaneous/equilibrium moduli (optional for pure
    kernel evaluation)."""

    alpha: float
    beta: float
    tau0: float
    m_inf: float | None = None
    m_0: float | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")
        if not 0.0 < self.beta <= 1.0:
            raise ValueError(f"beta must be in (0, 1], got {self.beta}")
        if self.tau0 <= 0.0:
            raise ValueError(f"tau0 must be > 0, got {self.tau0}")
        if (self.m_inf is None) != (self.m_0 is None):
            raise ValueError("m_inf and m_0 must be given together")
        if self.m_inf is not None:
            if self.m_0 <= 0.0 or self.m_inf < self.m_0:
                raise ValueError("moduli must satisfy m_inf >= m_0 > 0")

    @property
    def delta_m(self) -> float:
        if self.m_inf is None:
            raise ValueError("moduli not set on this parameter set")
        return self.m_inf - self.m_0


@dataclass(frozen=True)
class KernelModel:
    """Tagged union naming a kernel family with its parameters.

    ``alpha`` is the family's own fractional shape parameter (for the
    Rzhanitsyn-Davidson family it plays the role the Havriliak-Negami
    ``beta`` plays); ``beta`` is meaningful for HavriliakNegami only and is
    1 otherwise.  ``m_inf``/``m_0`` are carried for modulus evaluation and
    may be omitted for pure kernel work.
    """

    family: str
    alpha: float
    tau: float
    beta: float = 1.0
    m_inf: float | None = None
    m_0: float | None = None

    def __post_init__(self) -> None:
        if self.family not in KERNEL_FAMILIES:
            raise ValueError(
                f"unknown family {self.family!r}; expected one of {KERNEL_FAMILIES}"
            )
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must be in (0, 1], got {self.alpha}")
        if self.tau <= 0.0:
            raise ValueError(f"tau must be > 0, got {self.tau}")
        if self.family != "HavriliakNegami" and self.beta != 1.0:
            raise ValueError("beta is a HavriliakNegami parameter; must be 1 here")
        if not 0.0 < self.beta <= 1.0:
            raise ValueError(f"beta must be in (0, 1], got {self.beta}")

    def hn_params(self) -> HNParams:
        return HNParams(self.alpha, self.beta, self.tau, self.m_inf, self.m_0)


def _check_time(t: float) -> None:
    if t < 0.0:
        raise ValueError(f"t must be >= 0, got {t}")


def abel_kernel(alpha: float, tau: float, t: float) -> float:
    """Abel power-law kernel (t/tau)^(alpha-1) / (tau gamma(alpha))."""
    _check_time(t)
    if t == 0.0:
        return math.inf if alpha < 1.0 else 1.0 / tau
    return (t / tau) ** (alpha - 1.0) / (tau * gamma(alpha))


def rzhanitsyn_kernel(alpha: float, tau: float, t: float) -> float:
    """Rzhanitsyn (Davidson-Cole) kernel (t/tau)^(alpha-1) e^(-t/tau) / (tau gamma(alpha))."""
    return abel_kernel(alpha, tau, t) * math.exp(-t / tau)


def chgf_relaxation_S(
    alpha: float, tau_eps: float, t: float, ctl: SeriesControl = DEFAULT_CONTROL
) -> float:
    """Relaxation function S(t) = 1F1(alpha, 1, -t/tau); S(0) = 1, monotone
    non-increasing, exp(-t/tau) at alpha = 1."""
    _check_time(t)
    return kummer_1f1(alpha, 1.0, -t / tau_eps, ctl)


def chgf_kernel_R(
    alpha: float, tau_eps: float, t: float, ctl: SeriesControl = DEFAULT_CONTROL
) -> float:
    """Relaxation kernel R(t) = (alpha/tau) 1F1(1+alpha, 2, -t/tau) = -dS/dt."""
    _check_time(t)
    return alpha / tau_eps * kummer_1f1(1.0 + alpha, 2.0, -t / tau_eps, ctl)


def q_kernel(
    alpha: float,
    lambda_: float,
    tau: float,
    t: float,
    ctl: SeriesControl = DEFAULT_CONTROL,
) -> float:
    """Exponentially damped resolvent kernel Q(t) = exp(-t/tau) eh(lambda, t).

    ``lambda_`` (units 1/time^alpha) sets the eh timescale lambda^(-1/alpha);
    lambda_ = 0 degenerates eh to the Abel kernel t^(alpha-1)/gamma(alpha).
    """
    _check_time(t)
    if lambda_ < 0.0:
        raise ValueError(f"lambda_ must be >= 0, got {lambda_}")
    if lambda_ == 0.0:
        if t == 0.0:
            return math.inf if alpha < 1.0 else 1.0
        eh = t ** (alpha - 1.0) / gamma(alpha)
    else:
        eh = eh_alpha(alpha, lambda_ ** (-1.0 / alpha), t, ctl)
    return math.exp(-t / tau) * eh


def p_kernel(
    alpha: float,
    n_eps: float,
    tau: float,
    t: float,
    ctl: SeriesControl = DEFAULT_CONTROL,
) -> float:
    """Resolvent kernel of the third basic operator, outer series in
    n_eps^k/(n_eps+1)^(k+1) over damped Kummer functions:

        P(t) = tau^-(alpha+1) sum_k n^k/(n+1)^(k+1)
               { alpha(k+1) 1F1[alpha(k+1)+1, 2, -t/tau]
                 - k alpha 1F1(k alpha + 1, 2, -t/tau) }

    The k = 0 term is the confluent-hypergeometric kernel of the simple
    hereditary solid; the outer terms decay geometrically with ratio
    n_eps/(n_eps+1).
    """
    _check_time(t)
    if n_eps < 0.0:
        raise ValueError(f"n_eps must be >= 0, got {n_eps}")
    theta = t / tau
    if n_eps == 0.0:
        # only k = 0 survives
        return alpha * kummer_1f1(alpha + 1.0, 2.0, -theta, ctl) / tau ** (alpha + 1.0)
    ratio = n_eps / (n_eps + 1.0)

    def terms():
        weight = 1.0 / (n_eps + 1.0)
        k = 0
        while True:
            inner = alpha * (k + 1) * kummer_1f1(alpha * (k + 1) + 1.0, 2.0, -theta, ctl)
            if k > 0:
                inner -= k * alpha * kummer_1f1(k * alpha + 1.0, 2.0, -theta, ctl)
            yield weight * inner
            weight *= ratio
            k += 1

    return sum_series(terms(), ctl, what="P_alpha outer series") / tau ** (alpha + 1.0)


def _hn_series(
    alpha: float,
    beta: float,
    theta: float,
    ctl: SeriesControl,
    exponent_shift: float,
    what: str,
) -> float:
    """sum_i (-1)^i G(beta+i)/(G(i+1) G[a(beta+i)+shift]) theta^(a(beta+i)-1+shift)
    evaluated in log space (coefficients overflow double precision early)."""
    ln_theta = math.log(theta)

    def terms():
        i = 0
        while True:
            ln_coeff = (
                ln_gamma(beta + i)
                - ln_gamma(i + 1.0)
                - ln_gamma(alpha * (beta + i) + exponent_shift)
            )
            expo = alpha * (beta + i) - 1.0 + exponent_shift
            yield (-1.0) ** i * math.exp(ln_coeff + expo * ln_theta)
            i += 1

    return sum_series(terms(), ctl, what=what)


def _check_hn_theta(theta: float) -> None:
    if theta > HN_SERIES_CROSSOVER:
        raise ValueError(
            f"HN series valid for t/tau0 <= {HN_SERIES_CROSSOVER}; got "
            f"{theta:.3g} (use the inverse-Laplace route)"
        )


def hn_relaxation_kernel(
    p: HNParams, t: float, ctl: SeriesControl = DEFAULT_CONTROL
) -> float:
    """Havriliak-Negami relaxation kernel

        R(t) = 1/(tau0 gamma(beta)) sum_i (-1)^i gamma(beta+i)
               (t/tau0)^(alpha(beta+i)-1) / (gamma(i+1) gamma[alpha(beta+i)])

    Reductions: beta=1 Rabotnov/Cole-Cole, alpha=1 Rzhanitsyn/Davidson-Cole,
    alpha=beta=1 Debye.  Singular (integrable) at t=0 when alpha*beta < 1;
    the +inf outcome is returned there rather than an error.
    """
    _check_time(t)
    if t == 0.0:
        return 1.0 / p.tau0 if p.alpha * p.beta >= 1.0 else math.inf
    theta = t / p.tau0
    _check_hn_theta(theta)
    s = _hn_series(p.alpha, p.beta, theta, ctl, 0.0, "HN relaxation series")
    return s / (p.tau0 * gamma(p.beta))


def hn_creep_resolvent(
    p: HNParams, t: float, ctl: SeriesControl = DEFAULT_CONTROL
) -> float:
    """Creep kernel K(t), the Volterra resolvent of the HN relaxation kernel:

        K(t) = 1/tau0 sum_{n>=1} 1/gamma(n beta) *
               sum_i (-1)^i gamma(n beta + i) (t/tau0)^(alpha(n beta+i)-1)
                     / (gamma(i+1) gamma[alpha(n beta+i)])

    Inner i-series summed to tolerance for each n, then the outer n-series
    (terms decay through 1/gamma(n beta)).  beta=1 collapses to the Abel
    kernel; alpha=1 to exp(-t/tau0)/t sum_n (t/tau0)^(n beta)/gamma(n beta);
    alpha=beta=1 has no resolvent (distinguished error).  The exact
    reductions are evaluated in closed form (the double series loses digits
    to cancellation exactly where a reduction applies); the general route is
    exposed as :func:`hn_creep_resolvent_series`.
    """
    if p.alpha == 1.0 and p.beta == 1.0:
        raise NoResolventError("the Debye kernel (alpha = beta = 1) has no creep resolvent")
    _check_time(t)
    if t == 0.0:
        return math.inf
    if p.beta == 1.0:
        return abel_kernel(p.alpha, p.tau0, t)
    if p.alpha == 1.0:
        return _koltunov_resolvent(p.beta, p.tau0, t, ctl)
    return hn_creep_resolvent_series(p, t, ctl)


def _koltunov_resolvent(beta: float, tau0: float, t: float, ctl: SeriesControl) -> float:
    """alpha = 1 reduction: exp(-t/tau0)/t sum_{n>=1} (t/tau0)^(n beta)/gamma(n beta)."""
    theta = t / tau0
    ln_theta = math.log(theta)

    def terms():
        n = 1
        while True:
            yield math.exp(n * beta * ln_theta - ln_gamma(n * beta))
            n += 1

    return math.exp(-theta) / t * sum_series(terms(), ctl, what="Koltunov series")


def hn_creep_resolvent_series(
    p: HNParams, t: float, ctl: SeriesControl = DEFAULT_CONTROL
) -> float:
    """The general double series behind :func:`hn_creep_resolvent`, without
    reduction shortcuts.  Conditioning degrades as t/tau0 grows (the inner
    alternating series for outer index n behaves like one with shape
    parameter n beta)."""
    _check_time(t)
    if t == 0.0:
        return math.inf
    theta = t / p.tau0
    _check_hn_theta(theta)

    def outer_terms():
        n = 1
        while True:
            inner = _hn_series(
                p.alpha, n * p.beta, theta, ctl, 0.0, "HN resolvent inner series"
            )
            yield inner / math.exp(ln_gamma(n * p.beta))
            n += 1

    return sum_series(outer_terms(), ctl, what="HN resolvent outer series") / p.tau0


def hn_relaxation_function(
    p: HNParams, t: float, ctl: SeriesControl = DEFAULT_CONTROL
) -> float:
    """Integral of the HN relaxation kernel from 0 to t; 0 at t=0, tending
    to 1 as t grows."""
    _check_time(t)
    if t == 0.0:
        return 0.0
    theta = t / p.tau0
    _check_hn_theta(theta)
    s = _hn_series(p.alpha, p.beta, theta, ctl, 1.0, "HN relaxation-function series")
    return s / gamma(p.beta)


def p_nu_response(
    alpha: float,
    m: float,
    tau_nu: float,
    variant: int,
    t: float,
    ctl: SeriesControl = DEFAULT_CONTROL,
) -> float:
    """Normalized step response of the simple hereditary solid.

    ``variant`` selects the parameterization: 3 gives q = 1/m - 1 (with
    tau_nu the relaxation-side time), 4 gives q = m - 1 (retardation side).
    Two expansions cover |q| < 1 and |q| > 1:

        P(t) = (1 + q)   sum_n (-q)^n    1F1[alpha(n+1), 1, -t/tau]
        P(t) = (1 + 1/q) sum_n (-q)^(-n) 1F1[-alpha n,   1, -t/tau]

    |q| = 1 is a branch degeneracy where neither series converges.  At
    alpha = 1 both collapse to the standard-linear-solid exponential
    exp(-t / (tau (1 + q))).
    """
    _check_time(t)
    if m <= 0.0:
        raise ValueError(f"m must be > 0, got {m}")
    if variant == 3:
        q = 1.0 / m - 1.0
    elif variant == 4:
        q = m - 1.0
    else:
        raise ValueError(f"variant must be 3 or 4, got {variant}")
    if abs(abs(q) - 1.0) < 1e-14:
        raise BranchDegeneracyError(
            f"|q| = 1 (m = {m}, variant {variant}): both series expansions degenerate"
        )
    x = -t / tau_nu
    if abs(q) < 1.0:
        def terms():
            n = 0
            while True:
                yield (-q) ** n * kummer_1f1(alpha * (n + 1), 1.0, x, ctl)
                n += 1

        return (1.0 + q) * sum_series(terms(), ctl, what="P_nu series (|q|<1)")

    def terms():
        n = 0
        while True:
            yield (-q) ** (-n) * kummer_1f1(-alpha * n, 1.0, x, ctl)
            n += 1

    return (1.0 + 1.0 / q) * sum_series(terms(), ctl, what="P_nu series (|q|>1)")

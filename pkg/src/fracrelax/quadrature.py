"""Independent quadrature routes for the convolution-with-unity integrals,
the integral representation of the fractional-exponential kernel, and the
large-time asymptotic tails.

These are the cross-check side of every series in the kernels module: the
semi-infinite spectral integrals I_alpha, the Q/P convolution integrals,
and time-domain quadratures of the series kernels themselves.  Endpoint
singularities of the x^(alpha-1) type are removed by power substitutions
before handing the smooth integrand to adaptive quadrature (QUADPACK);
adaptive subdivision is deterministic.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy.integrate import quad

from .errors import NonConvergenceError
from .specfun import DEFAULT_CONTROL, SeriesControl, eh_alpha_regular, gamma

__all__ = [
    "QuadratureSpec",
    "i_alpha",
    "q_conv_unity",
    "p_conv_unity",
    "eh_alpha_integral",
    "eh_conv_unity_series",
    "q_conv_unity_series",
    "p_conv_unity_series",
    "integral_power_singular",
    "asymptotic_tail",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budget for adaptive quadrature; the singularity
    exponent (when set) overrides the kernel's own alpha in the endpoint
    substitutions."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 200
    endpoint_singularity_exponent: float | None = None

    def __post_init__(self) -> None:
        if self.abs_tol <= 0.0 or self.rel_tol <= 0.0:
            raise ValueError("tolerances must be > 0")
        if self.max_subdivisions < 8:
            raise ValueError("max_subdivisions must be >= 8")


DEFAULT_QUADRATURE = QuadratureSpec()


def _quad(f, a, b, q: QuadratureSpec, what: str, points=None) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        try:
            value, err = quad(
                f,
                a,
                b,
                epsabs=q.abs_tol,
                epsrel=q.rel_tol,
                limit=q.max_subdivisions,
                points=points,
            )
        except Exception as exc:  # IntegrationWarning promoted, or hard failure
            raise NonConvergenceError(f"{what}: quadrature failed ({exc})") from exc
    if not math.isfinite(value):
        raise NonConvergenceError(f"{what}: quadrature returned {value}")
    return value


def _check_alpha_open(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")


def i_alpha(alpha: float, theta: float, q: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Relaxation function of the Rabotnov solid by its spectral integral:

        I(theta) = (sin a pi / pi) int_0^inf x^(a-1)
                   (1 + x^(2a) + 2 x^a cos a pi)^(-1) e^(-theta x) dx

    computed after the substitution u = x^a, which absorbs the x^(a-1)
    weight exactly.  I(0) = 1, monotone to 0.
    """
    _check_alpha_open(alpha)
    if theta < 0.0:
        raise ValueError(f"theta must be >= 0, got {theta}")
    b = alpha * math.pi
    cos_b = math.cos(b)
    pref = math.sin(b) / (alpha * math.pi)
    inv_alpha = 1.0 / alpha

    def integrand(u: float) -> float:
        return pref * math.exp(-theta * u**inv_alpha) / (1.0 + u * (u + 2.0 * cos_b))

    return _quad(integrand, 0.0, math.inf, q, "I_alpha integral")


def eh_alpha_integral(
    alpha: float, tau: float, t: float, q: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """Fractional-exponential kernel by the integral route (valid for any
    t > 0, used beyond the series crossover):

        eh(t) = tau^(a-1) (sin a pi / pi) int_0^inf x^a
                (1 + x^(2a) + 2 x^a cos a pi)^(-1) e^(-(t/tau) x) dx
    """
    _check_alpha_open(alpha)
    if t <= 0.0:
        raise ValueError(f"t must be > 0, got {t}")
    theta = t / tau
    b = alpha * math.pi
    cos_b = math.cos(b)
    pref = math.sin(b) / (alpha * math.pi)
    inv_alpha = 1.0 / alpha

    def integrand(u: float) -> float:
        return (
            pref
            * u**inv_alpha
            * math.exp(-theta * u**inv_alpha)
            / (1.0 + u * (u + 2.0 * cos_b))
        )

    return tau ** (alpha - 1.0) * _quad(integrand, 0.0, math.inf, q, "eh integral")


def q_conv_unity(
    alpha: float,
    n_eps: float,
    theta: float,
    q: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Convolution of the damped resolvent operator with unity,
    tau^-alpha Q*(lambda) . 1 at theta = t/tau:

        1/(n+1) - (sin a pi / pi) int_1^inf
            xi / (xi^2 + 2 xi n cos a pi + n^2) e^(-theta x) dx / x,
        xi = (x-1)^a

    evaluated after x = 1 + u^(1/a) (so xi = u and the endpoint is smooth).
    Tends to 1/(n+1) as theta -> inf.
    """
    _check_alpha_open(alpha)
    if n_eps < 0.0:
        raise ValueError(f"n_eps must be >= 0, got {n_eps}")
    if theta < 0.0:
        raise ValueError(f"theta must be >= 0, got {theta}")
    b = alpha * math.pi
    cos_b = math.cos(b)
    pref = math.sin(b) / math.pi

    # endpoint weight at x = 1 is (x-1)^alpha for n_eps > 0 but (x-1)^(-alpha)
    # for n_eps = 0; pick the stretching exponent accordingly
    e = alpha if n_eps > 0.0 else 1.0 - alpha
    inv_e = 1.0 / e

    def integrand(u: float) -> float:
        if u == 0.0:
            return 0.0
        x = 1.0 + u**inv_e
        xi = u ** (alpha * inv_e)
        den = xi * xi + 2.0 * xi * n_eps * cos_b + n_eps * n_eps
        if den == 0.0:
            return 0.0
        return pref * xi * math.exp(-theta * x) / (den * x) * inv_e * u ** (inv_e - 1.0)

    integral = _quad(integrand, 0.0, math.inf, q, "Q convolution integral")
    return 1.0 / (n_eps + 1.0) - integral


def p_conv_unity(
    alpha: float,
    n_eps: float,
    theta: float,
    q: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Convolution of the third resolvent operator with unity,
    tau^alpha P*(lambda) . 1 at theta = t/tau:

        1/(n+1) + residue - (sin a pi / pi) int_0^1
            xi / (xi^2 (1+n)^2 - 2 xi (1+n) n cos a pi + n^2) e^(-theta x) dx / x,
        xi = (1/x - 1)^a

    The transform tau^a P.1 has, besides the branch cut x in [0, 1], a real
    pole at x* = 1/(1 - (n/(1+n))^(1/a)) > 1 whose residue contributes the
    exponentially decaying term

        residue = -x* n^(1/a - 1) (1+n)^(-1-1/a) e^(-theta x*) / a

    (absent for n = 0; verified against the time-domain series kernel and
    contour inversion).  Unlike the damped-operator convolution, the plateau
    1/(n+1) is approached only algebraically, like theta^-alpha.

    The finite interval carries integrable singularities at both endpoints;
    it is split at 1/2 with power substitutions on each side.
    """
    _check_alpha_open(alpha)
    if n_eps < 0.0:
        raise ValueError(f"n_eps must be >= 0, got {n_eps}")
    if theta < 0.0:
        raise ValueError(f"theta must be >= 0, got {theta}")
    b = alpha * math.pi
    cos_b = math.cos(b)
    pref = math.sin(b) / math.pi
    n1 = 1.0 + n_eps
    inv_alpha = 1.0 / alpha

    def core(x: float) -> float:
        xi = (1.0 / x - 1.0) ** alpha
        den = xi * xi * n1 * n1 - 2.0 * xi * n1 * n_eps * cos_b + n_eps * n_eps
        if den == 0.0:
            return 0.0
        return pref * xi * math.exp(-theta * x) / (den * x)

    # left piece: x = u^(1/a) removes the x^(a-1) weight at x -> 0
    def left(u: float) -> float:
        if u == 0.0:
            return 0.0
        x = u**inv_alpha
        return core(x) * inv_alpha * u ** (inv_alpha - 1.0)

    # right piece: weight at x -> 1 is (1-x)^alpha for n_eps > 0 but
    # (1-x)^(-alpha) for n_eps = 0; stretch 1 - x = w^(1/e) accordingly
    e = alpha if n_eps > 0.0 else 1.0 - alpha
    inv_e = 1.0 / e

    def right(w: float) -> float:
        if w == 0.0:
            return 0.0
        x = 1.0 - w**inv_e
        if x <= 0.0:
            return 0.0
        return core(x) * inv_e * w ** (inv_e - 1.0)

    integral = _quad(left, 0.0, 0.5**alpha, q, "P convolution integral (left)")
    integral += _quad(right, 0.0, 0.5**e, q, "P convolution integral (right)")

    residue = 0.0
    if n_eps > 0.0:
        x_star = 1.0 / (1.0 - (n_eps / n1) ** inv_alpha)
        residue = (
            -x_star
            * n_eps ** (inv_alpha - 1.0)
            * n1 ** (-1.0 - inv_alpha)
            * math.exp(-theta * x_star)
            / alpha
        )
    return 1.0 / n1 + residue - integral


def integral_power_singular(
    g, exponent: float, t: float, q: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """int_0^t s^(exponent-1) g(s) ds for smooth g via u = s^exponent."""
    if exponent <= 0.0:
        raise ValueError("exponent must be > 0")
    if t == 0.0:
        return 0.0
    inv = 1.0 / exponent

    def integrand(u: float) -> float:
        return g(u**inv)

    return _quad(integrand, 0.0, t**exponent, q, "weighted integral") / exponent


def eh_conv_unity_series(
    alpha: float,
    tau: float,
    theta: float,
    q: QuadratureSpec = DEFAULT_QUADRATURE,
    ctl: SeriesControl = DEFAULT_CONTROL,
) -> float:
    """tau^-alpha int_0^(theta tau) eh(s) ds by time-domain quadrature of the
    series kernel (the cross-representation check of 1 - I_alpha)."""
    t = theta * tau
    value = integral_power_singular(
        lambda s: eh_alpha_regular(alpha, tau, s, ctl), alpha, t, q
    )
    return value / tau**alpha


def q_conv_unity_series(
    alpha: float,
    n_eps: float,
    tau: float,
    theta: float,
    q: QuadratureSpec = DEFAULT_QUADRATURE,
    ctl: SeriesControl = DEFAULT_CONTROL,
) -> float:
    """tau^-alpha int_0^(theta tau) Q(lambda, s) ds with lambda = n_eps tau^-alpha,
    by time-domain quadrature of the series kernel."""
    t = theta * tau
    if n_eps == 0.0:
        def g(s: float) -> float:
            return math.exp(-s / tau) / gamma(alpha)
    else:
        tau_eh = tau * n_eps ** (-1.0 / alpha)

        def g(s: float) -> float:
            return math.exp(-s / tau) * eh_alpha_regular(alpha, tau_eh, s, ctl)

    return integral_power_singular(g, alpha, t, q) / tau**alpha


def p_conv_unity_series(
    alpha: float,
    n_eps: float,
    tau: float,
    theta: float,
    q: QuadratureSpec = DEFAULT_QUADRATURE,
    ctl: SeriesControl = DEFAULT_CONTROL,
) -> float:
    """tau^alpha int_0^(theta tau) P(s) ds by plain quadrature (the P kernel
    is bounded at s = 0)."""
    from .kernels import p_kernel

    t = theta * tau
    value = _quad(
        lambda s: p_kernel(alpha, n_eps, tau, s, ctl), 0.0, t, q, "P series integral"
    )
    return value * tau**alpha


def asymptotic_tail(
    family: str,
    theta: float,
    *,
    k: float,
    m: float,
    alpha: float,
    lambda0: float = 0.0,
    kappa1: float = 0.0,
) -> float:
    """Large-time estimate of the convolution-with-unity plateaus:

        EH: k(1-m) (1 - k theta^-a / gamma(1-a))
        Q:  k(1-m) [1 - k a (1+lambda0-k)^-2 theta^(-a-1) e^-theta / gamma(1-a)]
        P:  k(1-m) [1 - k theta^-a / (gamma(a-1) (lambda0+1))]

    The auxiliary symbols k, lambda0, kappa1 are caller-supplied (kappa1
    enters only through the caller's choice of resolvent shift and is
    accepted for interface completeness).  Valid in the theta >= 10 regime;
    smaller theta produces a warning, not an error.
    """
    del kappa1
    if theta < 10.0:
        warnings.warn(
            f"asymptotic tail requested at theta = {theta:.3g} < 10 (outside "
            "the large-time regime)",
            stacklevel=2,
        )
    plateau = k * (1.0 - m)
    if family == "EH":
        return plateau * (1.0 - k * theta**-alpha / gamma(1.0 - alpha))
    if family == "Q":
        corr = (
            k
            * alpha
            * (1.0 + lambda0 - k) ** -2.0
            * theta ** (-alpha - 1.0)
            * math.exp(-theta)
            / gamma(1.0 - alpha)
        )
        return plateau * (1.0 - corr)
    if family == "P":
        return plateau * (1.0 - k * theta**-alpha / (gamma(alpha - 1.0) * (lambda0 + 1.0)))
    raise ValueError(f"family must be EH, Q or P, got {family!r}")

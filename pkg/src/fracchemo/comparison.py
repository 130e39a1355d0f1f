"""Closed-form constants and scalar ODE oracles for the chemotaxis system.

Everything here is zero-dimensional: explicit formulas built from the
coefficient set, plus small initial value problems integrated to high
accuracy with an adaptive embedded Runge-Kutta pair.  The PDE solver is
checked against these quantities, never the other way around.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import OracleError, ParameterError
from .params import Params

_ODE_RTOL = 1e-10
_ODE_ATOL = 1e-13


def _pos(x: float) -> float:
    """Positive part."""
    return x if x > 0.0 else 0.0


def imbalance_branches(p: Params) -> tuple[float, float]:
    """The two one-sided flux-imbalance bounds whose minimum is ``M``.

    The first divides by ``lambda1`` and weights the screening mismatch with
    the repulsion strength; the second divides by ``lambda2`` and weights it
    with the attraction strength.
    """
    cross = _pos(p.chi2 * p.mu2 * p.lambda2 - p.chi1 * p.mu1 * p.lambda1)
    gap = _pos(p.lambda1 - p.lambda2)
    b1 = (cross + p.chi2 * p.mu2 * gap) / p.lambda1
    b2 = (cross + p.chi1 * p.mu1 * gap) / p.lambda2
    return b1, b2


def constant_M(p: Params) -> float:
    """Signed flux-imbalance constant: the smaller of the two branches.

    Vanishes exactly when repulsion dominates attraction with ordered
    screening rates, in particular in the balanced case
    ``chi1*mu1 == chi2*mu2``, ``lambda1 == lambda2``.
    """
    return min(imbalance_branches(p))


def constant_H(p: Params) -> float:
    """Absolute flux-imbalance constant; dominates ``constant_M``.

    Same structure as ``constant_M`` with positive parts replaced by
    absolute values, so it vanishes only in the balanced case.
    """
    cross = abs(p.chi1 * p.mu1 * p.lambda1 - p.chi2 * p.mu2 * p.lambda2)
    gap = abs(p.lambda1 - p.lambda2)
    h1 = (cross + p.chi2 * p.mu2 * gap) / p.lambda1
    h2 = (cross + p.chi1 * p.mu1 * gap) / p.lambda2
    return min(h1, h2)


_CASES = ("a", "b", "c", "d")

# Relative tolerance at which two coefficients count as exactly balanced.
BALANCE_RTOL = 1e-12


def _is_equal(x: float, y: float, rtol: float = BALANCE_RTOL) -> bool:
    scale = max(abs(x), abs(y), 1.0)
    return abs(x - y) <= rtol * scale


def is_balanced(p: Params, rtol: float = BALANCE_RTOL) -> bool:
    """Whether attraction and repulsion cancel identically."""
    return _is_equal(p.chi1 * p.mu1, p.chi2 * p.mu2, rtol) and _is_equal(
        p.lambda1, p.lambda2, rtol
    )


def bound_C0(p: Params, u0_sup: float, case: str) -> float:
    """A-priori sup bound for the classified boundedness case.

    Parameters
    ----------
    p : Params
    u0_sup : float
        Sup norm of the initial density.
    case : str
        One of ``"a" | "b" | "c" | "d"``; the hypotheses of that case are
        re-checked here and a violation raises ``ParameterError`` naming the
        failed inequality.
    """
    if case not in _CASES:
        raise ParameterError(f"case must be one of {_CASES}, got {case!r}")
    if u0_sup < 0.0:
        raise ParameterError(f"u0_sup must be >= 0, got {u0_sup}")
    M = constant_M(p)
    push = p.b + p.chi2 * p.mu2 - p.chi1 * p.mu1 - M
    if case == "a":
        if not p.gamma >= p.k + 1.0:
            raise ParameterError("case (a) needs gamma >= k + 1")
        if not push > 0.0:
            raise ParameterError(
                "case (a) needs b + chi2*mu2 - chi1*mu1 - M > 0"
            )
        return max(1.0, u0_sup, (p.a / push) ** (1.0 / p.k))
    if case == "b":
        if not p.gamma < p.k + 1.0:
            raise ParameterError("case (b) needs gamma < k + 1")
        if not p.chi2 * p.lambda2 * p.mu2 > p.chi1 * p.lambda1 * p.mu1:
            raise ParameterError(
                "case (b) needs chi2*lambda2*mu2 > chi1*lambda1*mu1"
            )
        if not p.lambda1 > p.lambda2:
            raise ParameterError("case (b) needs lambda1 > lambda2")
        if p.b == 0.0:
            raise ParameterError("case (b) needs b > 0")
        return max(1.0, u0_sup, (p.a / p.b) ** (1.0 / (p.gamma - 1.0)))
    if case == "c":
        if not p.gamma < p.k + 1.0:
            raise ParameterError("case (c) needs gamma < k + 1")
        if not p.b > p.a + M + p.chi1 * p.mu1:
            raise ParameterError("case (c) needs b > a + M + chi1*mu1")
        ceiling = ((p.b - p.a) / (M + p.chi1 * p.mu1)) ** (1.0 / p.k)
        if not u0_sup <= ceiling:
            raise ParameterError(
                "case (c) needs u0_sup <= ((b - a)/(M + chi1*mu1))^(1/k)"
            )
        return max(1.0, u0_sup, ceiling)
    # case == "d"
    if _is_equal(p.gamma, p.k + 1.0):
        raise ParameterError("case (d) needs gamma != k + 1")
    if not is_balanced(p):
        raise ParameterError(
            "case (d) needs chi1*mu1 = chi2*mu2 and lambda1 = lambda2"
        )
    if p.b == 0.0:
        raise ParameterError("case (d) needs b > 0")
    return max(1.0, u0_sup, (p.a / p.b) ** (1.0 / (p.gamma - 1.0)))


def equilibrium(p: Params) -> tuple[float, float, float]:
    """Positive spatially homogeneous steady state ``(u*, v*, w*)``.

    ``u*`` is the positive root of ``a*u - b*u^gamma = 0`` and the signal
    levels follow from the screened production balance.
    """
    if not (p.a > 0.0 and p.b > 0.0):
        raise ParameterError("equilibrium needs a > 0 and b > 0")
    u_star = (p.a / p.b) ** (1.0 / (p.gamma - 1.0))
    v_star = p.mu1 / p.lambda1 * u_star ** p.k
    w_star = p.mu2 / p.lambda2 * u_star ** p.k
    return u_star, v_star, w_star


def constant_M1(p: Params, c0: float) -> float:
    """Signal-regularity constant entering the front-persistence argument.

    Largest of four explicit expressions, two per signal, combining the
    screened mass ``mu_i/lambda_i`` and the production ceiling ``c0^k``.
    """
    if c0 <= 0.0:
        raise ParameterError(f"c0 must be positive, got {c0}")
    n = float(p.dim)
    out = 0.0
    for mu, lam in ((p.mu1, p.lambda1), (p.mu2, p.lambda2)):
        first = mu / lam + mu * c0 ** p.k / (lam * np.pi ** (n / 2.0))
        second = mu / np.sqrt(lam) + (
            mu * c0 ** p.k / np.sqrt(lam)
        ) * np.pi ** ((1.0 - n) / 2.0)
        out = max(out, first, second)
    return out


@dataclass(frozen=True)
class Constants:
    """Bundle of the closed-form constants for one coefficient set."""

    M: float
    H: float
    u_star: float
    v_star: float
    w_star: float
    M1: float
    C0_by_case: dict


def summarize_constants(p: Params, u0_sup: float) -> Constants:
    """Evaluate every constant; cases whose hypotheses fail are omitted."""
    u_star, v_star, w_star = equilibrium(p)
    c0_by_case: dict[str, float] = {}
    for case in _CASES:
        try:
            c0_by_case[case] = bound_C0(p, u0_sup, case)
        except ParameterError:
            continue
    c0_for_m1 = min(c0_by_case.values()) if c0_by_case else max(1.0, u0_sup)
    return Constants(
        M=constant_M(p),
        H=constant_H(p),
        u_star=u_star,
        v_star=v_star,
        w_star=w_star,
        M1=constant_M1(p, c0_for_m1),
        C0_by_case=c0_by_case,
    )


@dataclass(frozen=True)
class ODETrajectory:
    """Dense output of a scalar ODE oracle."""

    t: np.ndarray
    y: np.ndarray

    def final(self) -> float:
        return float(self.y[-1])

    def at(self, t: float) -> float:
        return float(np.interp(t, self.t, self.y))


def _integrate(rhs, y0: float, t_span: tuple[float, float], t_eval=None) -> ODETrajectory:
    sol = solve_ivp(
        rhs,
        t_span,
        [y0],
        method="RK45",
        rtol=_ODE_RTOL,
        atol=_ODE_ATOL,
        t_eval=t_eval,
        dense_output=False,
    )
    if not sol.success:
        raise OracleError(f"ODE oracle failed: {sol.message}")
    return ODETrajectory(t=sol.t, y=sol.y[0])


def lower_ode(
    p: Params,
    z: float,
    w0: float,
    t_end: float,
    t_eval=None,
) -> ODETrajectory:
    """Lower comparison ODE for the spatial infimum of the density.

    Integrates ``w' = w * (a - z - b*w^(gamma-1) + (chi1*mu1 - chi2*mu2) * w^k)``
    from ``w0 > 0``.  ``z`` is the frozen attraction pressure, normally
    ``chi1 * lambda1 * sup v`` over the window of interest.

    When the sign conditions guaranteeing positivity hold (``b + chi2*mu2 -
    chi1*mu1 > 0`` if ``gamma == k + 1``, else ``b > 0``), a nonpositive
    trajectory value raises ``OracleError``.
    """
    if not w0 > 0.0:
        raise ParameterError(f"w0 must be positive, got {w0}")
    if not t_end > 0.0:
        raise ParameterError(f"t_end must be positive, got {t_end}")
    drive = p.chi1 * p.mu1 - p.chi2 * p.mu2

    def rhs(_t, w):
        wv = max(w[0], 0.0)
        return [
            wv
            * (
                p.a
                - z
                - p.b * wv ** (p.gamma - 1.0)
                + drive * wv ** p.k
            )
        ]

    traj = _integrate(rhs, w0, (0.0, t_end), t_eval)
    if _is_equal(p.gamma, p.k + 1.0):
        positivity_guaranteed = p.b + p.chi2 * p.mu2 - p.chi1 * p.mu1 > 0.0
    else:
        positivity_guaranteed = p.b > 0.0
    if positivity_guaranteed and np.min(traj.y) <= 0.0:
        raise OracleError(
            "lower comparison ODE left the positive half-line although the "
            "sign conditions guarantee positivity"
        )
    return traj


def homogeneous_ode(
    p: Params, u0: float, t_end: float, t_eval=None
) -> ODETrajectory:
    """Spatially homogeneous reduction ``u' = a*u - b*u^gamma``.

    For constant initial data the chemotactic fluxes vanish identically, so
    the full system collapses to this scalar law; it is the oracle for the
    PDE reduction checks.
    """
    if u0 < 0.0:
        raise ParameterError(f"u0 must be >= 0, got {u0}")

    def rhs(_t, u):
        uv = max(u[0], 0.0)
        return [p.a * uv - p.b * uv ** p.gamma]

    return _integrate(rhs, u0, (0.0, t_end), t_eval)


def logistic_closed_form(a: float, b: float, u0: float, t: np.ndarray) -> np.ndarray:
    """Exact solution of ``u' = a*u - b*u^2`` for cross-checking the oracle."""
    t = np.asarray(t, dtype=float)
    if a == 0.0:
        return u0 / (1.0 + b * u0 * t)
    limit = a / b
    return limit / (1.0 + (limit / u0 - 1.0) * np.exp(-a * t))


def bracket_ode_limits(
    p: Params,
    u_bar: float,
    u_under: float,
    eps: float = 0.0,
) -> tuple[float, float]:
    """Long-time limits of the upper/lower envelope ODEs, tighter branch.

    Both envelope families share the structure

    ``limit = ((a + P*(hi^k - lo^k)) / (b + chi2*mu2 - chi1*mu1))^(1/(gamma-1))``

    where ``P`` is one of the two one-sided imbalance branches and
    ``hi = u_bar + eps``, ``lo = max(u_under - eps, 0)``.  The upper limit
    uses ``hi^k - lo^k``, the lower limit the negated difference, clipped at
    zero when the brace goes negative.  The returned pair is the smaller of
    the two upper limits and the larger of the two lower limits.
    """
    if not u_bar >= u_under >= 0.0:
        raise ParameterError(
            f"need u_bar >= u_under >= 0, got ({u_bar}, {u_under})"
        )
    if eps < 0.0:
        raise ParameterError(f"eps must be >= 0, got {eps}")
    den = p.b + p.chi2 * p.mu2 - p.chi1 * p.mu1
    if not den > 0.0:
        raise ParameterError(
            "bracket limits need b + chi2*mu2 - chi1*mu1 > 0"
        )
    hi = u_bar + eps
    lo = max(u_under - eps, 0.0)
    expo = 1.0 / (p.gamma - 1.0)
    uppers = []
    lowers = []
    for branch in imbalance_branches(p):
        spread = branch * (hi ** p.k - lo ** p.k)
        uppers.append(((p.a + spread) / den) ** expo)
        brace = p.a - spread
        lowers.append((brace / den) ** expo if brace > 0.0 else 0.0)
    return min(uppers), max(lowers)


def bracket_fixed_point(
    p: Params,
    u_bar0: float,
    u_under0: float,
    tol: float = 1e-12,
    max_iter: int = 100_000,
) -> tuple[float, float, int, bool]:
    """Iterate the envelope map from an initial bracket.

    Returns ``(u_bar, u_under, iterations, converged)``.  The map contracts
    toward the homogeneous steady state whenever the damping exceeds the
    absolute flux imbalance, ``b + chi2*mu2 - chi1*mu1 > H``.
    """
    ub, lo = float(u_bar0), float(u_under0)
    for i in range(1, max_iter + 1):
        nub, nlo = bracket_ode_limits(p, ub, lo)
        if abs(nub - ub) <= tol * max(1.0, abs(ub)) and abs(
            nlo - lo
        ) <= tol * max(1.0, abs(lo)):
            return nub, nlo, i, True
        ub, lo = nub, nlo
    return ub, lo, max_iter, False

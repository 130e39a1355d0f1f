"""Decide which boundedness / convergence / spreading statements apply.

The classifier evaluates explicit inequalities on the coefficient set and
reports every margin, so a verdict can be audited line by line.  Equalities
(the balanced case, ``gamma == k + 1``) hold at a relative tolerance of
1e-12 by default; ``strict=True`` demands exact float equality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .comparison import (
    BALANCE_RTOL,
    bound_C0,
    constant_H,
    constant_M,
    equilibrium,
)
from .errors import ParameterError
from .params import Params


@dataclass(frozen=True)
class Check:
    """One audited inequality: positive margin means satisfied."""

    name: str
    satisfied: bool
    margin: float

    def describe(self) -> str:
        status = "ok" if self.satisfied else "violated"
        return f"{self.name}: margin={self.margin:.6e} [{status}]"


def _gt(name: str, lhs: float, rhs: float) -> Check:
    margin = lhs - rhs
    return Check(name, margin > 0.0, margin)


def _ge(name: str, lhs: float, rhs: float) -> Check:
    margin = lhs - rhs
    return Check(name, margin >= 0.0, margin)


def _eq(name: str, lhs: float, rhs: float, rtol: float) -> Check:
    scale = max(abs(lhs), abs(rhs), 1.0)
    gap = abs(lhs - rhs)
    return Check(name, gap <= rtol * scale, rtol * scale - gap)


def _neq(name: str, lhs: float, rhs: float, rtol: float) -> Check:
    scale = max(abs(lhs), abs(rhs), 1.0)
    gap = abs(lhs - rhs)
    return Check(name, gap > rtol * scale, gap - rtol * scale)


def boundedness_checks(
    p: Params, u0_sup: float, case: str, rtol: float = BALANCE_RTOL
) -> list[Check]:
    """The inequality list backing one boundedness case."""
    M = constant_M(p)
    if case == "a":
        return [
            _ge("gamma >= k + 1", p.gamma, p.k + 1.0),
            _gt(
                "b + chi2*mu2 - chi1*mu1 - M > 0",
                p.b + p.chi2 * p.mu2 - p.chi1 * p.mu1 - M,
                0.0,
            ),
        ]
    if case == "b":
        return [
            _gt("k + 1 > gamma", p.k + 1.0, p.gamma),
            _gt(
                "chi2*lambda2*mu2 > chi1*lambda1*mu1",
                p.chi2 * p.lambda2 * p.mu2,
                p.chi1 * p.lambda1 * p.mu1,
            ),
            _gt("lambda1 > lambda2", p.lambda1, p.lambda2),
            _gt("b > 0", p.b, 0.0),
        ]
    if case == "c":
        checks = [
            _gt("k + 1 > gamma", p.k + 1.0, p.gamma),
            _gt("b > a + M + chi1*mu1", p.b, p.a + M + p.chi1 * p.mu1),
        ]
        if checks[-1].satisfied:
            ceiling = ((p.b - p.a) / (M + p.chi1 * p.mu1)) ** (1.0 / p.k)
            checks.append(
                _ge(
                    "((b - a)/(M + chi1*mu1))^(1/k) >= u0_sup",
                    ceiling,
                    u0_sup,
                )
            )
        else:
            checks.append(
                Check("((b - a)/(M + chi1*mu1))^(1/k) >= u0_sup", False, float("-inf"))
            )
        return checks
    if case == "d":
        return [
            _neq("gamma != k + 1", p.gamma, p.k + 1.0, rtol),
            _eq("chi1*mu1 = chi2*mu2", p.chi1 * p.mu1, p.chi2 * p.mu2, rtol),
            _eq("lambda1 = lambda2", p.lambda1, p.lambda2, rtol),
            _gt("b > 0", p.b, 0.0),
        ]
    raise ParameterError(f"unknown boundedness case {case!r}")


def asymptotic_checks(p: Params, case: str, rtol: float = BALANCE_RTOL) -> list[Check]:
    """The inequality list backing one convergence case."""
    if case == "a":
        H = constant_H(p)
        return [
            _eq("gamma = k + 1", p.gamma, p.k + 1.0, rtol),
            _gt(
                "b + chi2*mu2 - chi1*mu1 - H > 0",
                p.b + p.chi2 * p.mu2 - p.chi1 * p.mu1 - H,
                0.0,
            ),
            _gt("a > 0", p.a, 0.0),
        ]
    if case == "b":
        return [
            _neq("gamma != k + 1", p.gamma, p.k + 1.0, rtol),
            _eq("chi1*mu1 = chi2*mu2", p.chi1 * p.mu1, p.chi2 * p.mu2, rtol),
            _eq("lambda1 = lambda2", p.lambda1, p.lambda2, rtol),
            _gt("a > 0", p.a, 0.0),
            _gt("b > 0", p.b, 0.0),
        ]
    raise ParameterError(f"unknown asymptotic case {case!r}")


@dataclass(frozen=True)
class RegimeVerdict:
    """Classification outcome with a full audit trail."""

    boundedness_case: str
    boundedness_matches: tuple[str, ...]
    C0: float | None
    asymptotic_case: str
    asymptotic_matches: tuple[str, ...]
    equilibrium: tuple[float, float, float] | None
    speed_lower: float
    speed_upper: float
    reasons: tuple[str, ...]
    checks: tuple[tuple[str, str, Check], ...]

    def as_text(self) -> str:
        lines = [
            f"boundedness_case = {self.boundedness_case}",
            f"boundedness_matches = {','.join(self.boundedness_matches) or '-'}",
            f"C0 = {'-' if self.C0 is None else format(self.C0, '.17g')}",
            f"asymptotic_case = {self.asymptotic_case}",
            f"asymptotic_matches = {','.join(self.asymptotic_matches) or '-'}",
        ]
        if self.equilibrium is None:
            lines.append("equilibrium = -")
        else:
            u, v, w = self.equilibrium
            lines.append(
                f"equilibrium = {u:.17g},{v:.17g},{w:.17g}"
            )
        lines.append(f"speed_lower = {self.speed_lower:.17g}")
        lines.append(f"speed_upper = {self.speed_upper:.17g}")
        for reason in self.reasons:
            lines.append(f"reason: {reason}")
        return "\n".join(lines)

    def checks_csv(self) -> str:
        rows = ["kind,case,name,satisfied,margin"]
        for kind, case, check in self.checks:
            rows.append(
                f"{kind},{case},\"{check.name}\","
                f"{int(check.satisfied)},{check.margin:.17g}"
            )
        return "\n".join(rows)


@dataclass(frozen=True)
class BoundednessFragment:
    """Boundedness part of a verdict: first match, all matches, smallest C0."""

    case: str
    matches: tuple[str, ...]
    C0: float | None
    checks: tuple[tuple[str, str, Check], ...]


@dataclass(frozen=True)
class AsymptoticsFragment:
    """Convergence part of a verdict."""

    case: str
    matches: tuple[str, ...]
    checks: tuple[tuple[str, str, Check], ...]


def classify_boundedness(
    p: Params, u0_sup: float, strict: bool = False
) -> BoundednessFragment:
    """Evaluate every boundedness case; ``case`` is the first match."""
    rtol = 0.0 if strict else BALANCE_RTOL
    matches = []
    audited = []
    for case in ("a", "b", "c", "d"):
        checks = boundedness_checks(p, u0_sup, case, rtol)
        audited.extend(("boundedness", case, c) for c in checks)
        if all(c.satisfied for c in checks):
            matches.append(case)
    if not matches:
        return BoundednessFragment("none", (), None, tuple(audited))
    c0 = min(bound_C0(p, u0_sup, case) for case in matches)
    return BoundednessFragment(
        matches[0], tuple(matches), c0, tuple(audited)
    )


def classify_asymptotics(p: Params, strict: bool = False) -> AsymptoticsFragment:
    """Evaluate both convergence cases; ``case`` is the first match."""
    rtol = 0.0 if strict else BALANCE_RTOL
    matches = []
    audited = []
    for case in ("a", "b"):
        checks = asymptotic_checks(p, case, rtol)
        audited.extend(("asymptotics", case, c) for c in checks)
        if all(c.satisfied for c in checks):
            matches.append(case)
    return AsymptoticsFragment(
        matches[0] if matches else "none", tuple(matches), tuple(audited)
    )


def predicted_speed_bounds(p: Params, c0: float) -> tuple[float, float]:
    """Exponential spreading-rate bracket for the level-set radius.

    The lower rate ``a / (N + 2*alpha)`` always holds; the upper rate adds
    the flux-imbalance surcharge ``M * c0^k``, which vanishes in the
    balanced case so the bracket collapses to a single speed.
    """
    if c0 <= 0.0:
        raise ParameterError(f"c0 must be positive, got {c0}")
    denom = p.dim + 2.0 * p.alpha
    lower = p.a / denom
    upper = (p.a + constant_M(p) * c0 ** p.k) / denom
    return lower, upper


def classify(p: Params, u0_sup: float, strict: bool = False) -> RegimeVerdict:
    """Full verdict: boundedness, convergence, spreading bracket, margins."""
    bound = classify_boundedness(p, u0_sup, strict)
    asym = classify_asymptotics(p, strict)
    audited = bound.checks + asym.checks
    reasons = []
    for kind, case, check in audited:
        reasons.append(f"{kind}({case}) {check.describe()}")
    eq = None
    if p.a > 0.0 and p.b > 0.0:
        eq = equilibrium(p)
    denom = p.dim + 2.0 * p.alpha
    lower = p.a / denom
    M = constant_M(p)
    if bound.C0 is not None:
        upper = (p.a + M * bound.C0 ** p.k) / denom
    elif M == 0.0:
        upper = lower
    else:
        upper = float("inf")
        reasons.append(
            "speed upper bound unavailable: no boundedness case matched and "
            "the flux imbalance M is positive"
        )
    return RegimeVerdict(
        boundedness_case=bound.case,
        boundedness_matches=bound.matches,
        C0=bound.C0,
        asymptotic_case=asym.case,
        asymptotic_matches=asym.matches,
        equilibrium=eq,
        speed_lower=lower,
        speed_upper=upper,
        reasons=tuple(reasons),
        checks=audited,
    )


def table_row(p: Params) -> int:
    """Sign pattern of the coefficient set: which damping-threshold row applies.

    Rows are indexed 1..4 by the signs of ``chi2*lambda2*mu2 - chi1*lambda1*mu1``
    and ``lambda1 - lambda2``; ties satisfy both adjacent rows and either
    printed formula evaluates identically there.
    """
    cross_ge = p.chi2 * p.lambda2 * p.mu2 >= p.chi1 * p.lambda1 * p.mu1
    lam_ge = p.lambda1 >= p.lambda2
    if cross_ge and lam_ge:
        return 1
    if cross_ge:
        return 2
    if lam_ge:
        return 3
    return 4


def table_threshold(p: Params, column: str) -> float:
    """Printed damping threshold on ``b`` for the matching sign row.

    ``column="a"`` is the threshold for the high-exponent boundedness case,
    ``column="c"`` the one for the small-data case.  These closed forms must
    agree with the thresholds reconstructed from ``constant_M``; the test
    suite enforces the equivalence to 1e-12.
    """
    row = table_row(p)
    c1m1 = p.chi1 * p.mu1
    c2m2 = p.chi2 * p.mu2
    if column == "a":
        if row == 1:
            return 0.0
        if row == 2:
            return c1m1 * (1.0 - p.lambda1 / p.lambda2)
        if row == 3:
            return c1m1 - c2m2 * p.lambda2 / p.lambda1
        return c1m1 - c2m2
    if column == "c":
        if row == 1:
            return p.a + c2m2
        if row == 2:
            return p.a + c1m1 * (1.0 - p.lambda1 / p.lambda2) + c2m2
        if row == 3:
            return p.a + c1m1 + c2m2 * (1.0 - p.lambda2 / p.lambda1)
        return p.a + c1m1
    raise ParameterError(f"column must be 'a' or 'c', got {column!r}")


def threshold_from_M(p: Params, column: str) -> float:
    """Same thresholds reconstructed from the flux-imbalance constant."""
    M = constant_M(p)
    if column == "a":
        return p.chi1 * p.mu1 - p.chi2 * p.mu2 + M
    if column == "c":
        return p.a + M + p.chi1 * p.mu1
    raise ParameterError(f"column must be 'a' or 'c', got {column!r}")

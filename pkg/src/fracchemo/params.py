"""Coefficient set of the attraction-repulsion chemotaxis system.

The model couples a cell density ``u`` to an attractant ``v`` and a repellent
``w`` produced at rate ``u^k`` and screened at rates ``lambda1``, ``lambda2``.
Diffusion of ``u`` is fractional with order ``alpha``, growth is generalized
logistic with exponent ``gamma``.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .errors import ParameterError


@dataclass(frozen=True)
class Params:
    """Full coefficient set; validated on construction.

    Notes
    -----
    ``a`` and ``b`` are allowed to be zero so the pure fractional-diffusion
    and free-growth limits used for solver validation stay expressible; the
    regime classifier enforces strict positivity wherever a boundedness or
    convergence statement needs it.
    """

    dim: int
    alpha: float
    chi1: float
    chi2: float
    lambda1: float
    lambda2: float
    mu1: float
    mu2: float
    a: float
    b: float
    gamma: float
    k: float

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ParameterError(f"dim must be 1 or 2, got {self.dim}")
        if not 0.5 < self.alpha < 1.0:
            raise ParameterError(
                f"alpha = {self.alpha} out of range: alpha in (1/2, 1)"
            )
        for name in ("chi1", "chi2", "a", "b"):
            if getattr(self, name) < 0.0:
                raise ParameterError(
                    f"{name} = {getattr(self, name)} must be >= 0"
                )
        for name in ("lambda1", "lambda2", "mu1", "mu2"):
            if not getattr(self, name) > 0.0:
                raise ParameterError(
                    f"{name} = {getattr(self, name)} must be > 0"
                )
        if not self.gamma > 1.0:
            raise ParameterError(
                f"gamma = {self.gamma} out of range: gamma > 1"
            )
        if not self.k >= 1.0:
            raise ParameterError(f"k = {self.k} out of range: k >= 1")

    @classmethod
    def field_names(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

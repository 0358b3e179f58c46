"""The finite-ratio distribution family and moment/cumulant conversions.

A member is the mixture

    b * delta_0  +  (1+a-b)/2 * Exp(1) on x > 0  +  (1-a-b)/2 * Exp(1) on x < 0

whose characteristic function is ``(1 + i a t + b t^2) / (1 + t^2)`` and whose
normalized moments ``mu_k / k!`` run ``1, a, 1-b, a, 1-b, ...``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .series import RationalLike, TruncatedSeries, series_exp, series_log, to_rational

__all__ = [
    "CFDomainError",
    "CFPoleError",
    "ConstraintViolation",
    "CumulantSequence",
    "MixtureParams",
    "MomentSequence",
    "RatioSequence",
    "SampleSummary",
    "cf_eval",
    "cumulants_to_moments",
    "empirical_ratios",
    "family_moments",
    "family_ratio_sequence",
    "family_weights",
    "moments_to_cumulants",
    "moments_to_ratios",
    "ratios_to_moments",
    "sample_mixture",
]


class ConstraintViolation(ValueError):
    """A mixture weight came out negative.

    ``inequality`` names the first violated condition, one of
    ``"b >= 0"``, ``"1-a-b >= 0"`` or ``"1+a-b >= 0"``.
    """

    def __init__(self, inequality: str, a: Fraction, b: Fraction):
        self.inequality = inequality
        self.a = a
        self.b = b
        super().__init__(f"(a, b) = ({a}, {b}) violates {inequality}")


class CFDomainError(ValueError):
    """Argument lies outside the analyticity strip |Im t| < 1."""


class CFPoleError(CFDomainError):
    """Argument is exactly one of the poles t = +-i."""


def violated_constraint(a: Fraction, b: Fraction) -> str | None:
    if b < 0:
        return "b >= 0"
    if 1 - a - b < 0:
        return "1-a-b >= 0"
    if 1 + a - b < 0:
        return "1+a-b >= 0"
    return None


@dataclass(frozen=True)
class MixtureParams:
    a: Fraction
    b: Fraction
    w0: Fraction
    wminus: Fraction
    wplus: Fraction

    @property
    def degenerate(self) -> bool:
        """True for the point mass at zero (b = 1, which forces a = 0)."""
        return self.b == 1

    def weights(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.w0, self.wminus, self.wplus)


def family_weights(a: RationalLike, b: RationalLike) -> MixtureParams:
    a, b = to_rational(a), to_rational(b)
    violated = violated_constraint(a, b)
    if violated:
        raise ConstraintViolation(violated, a, b)
    return MixtureParams(a=a, b=b, w0=b, wminus=(1 - a - b) / 2, wplus=(1 + a - b) / 2)


@dataclass(frozen=True)
class _Sequence:
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(to_rational(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def __iter__(self):
        return iter(self.values)


class MomentSequence(_Sequence):
    """Raw moments, ``values[k] = mu_k``."""


class RatioSequence(_Sequence):
    """Normalized moments, ``values[k] = mu_k / k!``."""


class CumulantSequence(_Sequence):
    """Cumulants, ``values[k] = kappa_k`` (``kappa_0 = 0``)."""


def moments_to_ratios(m: MomentSequence | Sequence[RationalLike]) -> RatioSequence:
    return RatioSequence(to_rational(v) / math.factorial(k) for k, v in enumerate(m))


def ratios_to_moments(r: RatioSequence | Sequence[RationalLike]) -> MomentSequence:
    return MomentSequence(to_rational(v) * math.factorial(k) for k, v in enumerate(r))


def family_ratio_sequence(a: RationalLike, b: RationalLike, N: int) -> RatioSequence:
    p = family_weights(a, b)
    odd, even = p.a, 1 - p.b
    return RatioSequence(
        Fraction(1) if k == 0 else (odd if k % 2 else even) for k in range(N + 1)
    )


def family_moments(a: RationalLike, b: RationalLike, N: int) -> MomentSequence:
    return ratios_to_moments(family_ratio_sequence(a, b, N))


def cf_eval(a: RationalLike, b: RationalLike, t: complex) -> complex:
    """Characteristic function ``(1 + i a t + b t^2)/(1 + t^2)`` in floating point.

    Only defined on the strip ``|Im t| < 1``; the exact poles ``t = +-i`` raise
    :class:`CFPoleError`, anything else on or beyond the strip edge raises
    :class:`CFDomainError`.
    """
    t = complex(t)
    if not (math.isfinite(t.real) and math.isfinite(t.imag)):
        raise CFDomainError(f"non-finite argument {t!r}")
    if t.real == 0 and abs(t.imag) == 1:
        raise CFPoleError(f"t = {t!r} is a pole")
    if abs(t.imag) >= 1:
        raise CFDomainError(f"|Im t| = {abs(t.imag)} is outside the strip |Im t| < 1")
    af, bf = float(to_rational(a)), float(to_rational(b))
    t2 = t * t
    return (1 + 1j * af * t + bf * t2) / (1 + t2)


def moments_to_cumulants(m: MomentSequence | Sequence[RationalLike]) -> CumulantSequence:
    """Cumulants through the same order as the given moments.

    Works in the normalized space: ``log(sum mu_k u^k/k!)`` has coefficients
    ``kappa_k/k!``.
    """
    values = tuple(to_rational(v) for v in m)
    if not values or values[0] != 1:
        raise ValueError(f"moment sequence must start with mu_0 = 1, got {values[:1]}")
    logs = series_log(TruncatedSeries(moments_to_ratios(values).values))
    return CumulantSequence(c * math.factorial(k) for k, c in enumerate(logs))


def cumulants_to_moments(kappa: CumulantSequence | Sequence[RationalLike]) -> MomentSequence:
    values = tuple(to_rational(v) for v in kappa)
    if not values or values[0] != 0:
        raise ValueError(f"cumulant sequence must start with kappa_0 = 0, got {values[:1]}")
    normalized = TruncatedSeries(c / math.factorial(k) for k, c in enumerate(values))
    return ratios_to_moments(series_exp(normalized).coeffs)


# -- Monte Carlo ---------------------------------------------------------------


@dataclass(frozen=True)
class SampleSummary:
    """Streaming power sums ``power_sums[k] = sum(x**k)`` for ``k <= max_power``.

    Summaries of independent runs merge with ``+``.
    """

    n: int
    power_sums: tuple[float, ...]
    draws: np.ndarray | None = field(default=None, compare=False, repr=False)

    @property
    def max_power(self) -> int:
        return len(self.power_sums) - 1

    def __add__(self, other: SampleSummary) -> SampleSummary:
        k = min(self.max_power, other.max_power)
        return SampleSummary(
            n=self.n + other.n,
            power_sums=tuple(self.power_sums[j] + other.power_sums[j] for j in range(k + 1)),
        )


def _draw(params: MixtureParams, n: int, rng: np.random.Generator) -> np.ndarray:
    # Two uniforms per draw, interleaved: u[i, 0] picks the branch against the
    # cumulative weights (w0, wminus, wplus), u[i, 1] feeds -log(1 - u).
    u = rng.random((n, 2))
    c0 = float(params.w0)
    c1 = float(params.w0 + params.wminus)
    expo = -np.log1p(-u[:, 1])
    x = np.where(u[:, 0] < c0, 0.0, np.where(u[:, 0] < c1, -expo, expo))
    return x


def sample_mixture(
    a: RationalLike,
    b: RationalLike,
    n: int,
    seed: int,
    max_power: int = 10,
    keep_draws: bool = False,
    chunk: int = 1 << 18,
) -> SampleSummary:
    """Draw ``n`` variates from the mixture with numpy's PCG64 seeded by ``seed``.

    The result is a pure function of ``(a, b, n, seed, chunk)``.
    """
    if n < 1:
        raise ValueError("need at least one draw")
    params = family_weights(a, b)
    rng = np.random.Generator(np.random.PCG64(seed))
    sums = np.zeros(max_power + 1)
    kept = []
    done = 0
    while done < n:
        m = min(chunk, n - done)
        x = _draw(params, m, rng)
        if keep_draws:
            kept.append(x)
        powers = np.ones_like(x)
        for k in range(max_power + 1):
            sums[k] += powers.sum()
            powers = powers * x
        done += m
    draws = np.concatenate(kept) if keep_draws else None
    return SampleSummary(n=n, power_sums=tuple(float(s) for s in sums), draws=draws)


def empirical_ratios(summary: SampleSummary, K: int) -> list[tuple[float, float]]:
    """``(mean(x^k)/k!, stderr)`` for ``k = 0..K``; needs power sums up to ``2K``."""
    if 2 * K > summary.max_power:
        raise ValueError(
            f"K = {K} needs power sums up to {2 * K}, summary has {summary.max_power}"
        )
    n = summary.n
    out = []
    for k in range(K + 1):
        mean = summary.power_sums[k] / n
        second = summary.power_sums[2 * k] / n
        var = max(second - mean * mean, 0.0) * n / (n - 1) if n > 1 else 0.0
        fact = math.factorial(k)
        out.append((mean / fact, math.sqrt(var) / (fact * math.sqrt(n))))
    return out

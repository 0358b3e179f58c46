"""Decide whether a ratio prefix belongs to the finite-ratio family.

Also houses the tools behind that decision: exact eventual-periodicity
detection, reconstruction of ``P(t)/(1 - t^m)`` from a periodic descriptor,
and an exact Hankel positive-semidefiniteness check used as an independent
validity oracle for moment sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .family import (
    MixtureParams,
    MomentSequence,
    RatioSequence,
    violated_constraint,
    family_weights,
)
from .series import (
    Polynomial,
    RationalLike,
    TruncatedSeries,
    poly_gcd,
    series_expand_rational,
    to_rational,
)

__all__ = [
    "DegeneratePointMass",
    "EventuallyPeriodic",
    "FiniteMomentFamily",
    "HankelReport",
    "InconsistentWithAnyDistribution",
    "InvalidInput",
    "PatternViolated",
    "RationalForm",
    "classify_ratios",
    "detect_eventual_periodicity",
    "distinct_values",
    "hankel_psd",
    "szego_reconstruct",
]

DEFAULT_MIN_PREFIX = 5


def distinct_values(seq: Sequence[RationalLike]) -> frozenset[Fraction]:
    return frozenset(to_rational(v) for v in seq)


# -- periodicity and rational reconstruction ----------------------------------


@dataclass(frozen=True)
class EventuallyPeriodic:
    """``head`` (length ``preperiod``) followed by ``cycle`` repeated forever."""

    preperiod: int
    period: int
    head: tuple[Fraction, ...]
    cycle: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.period < 1 or len(self.cycle) != self.period:
            raise ValueError("cycle length must equal period >= 1")
        if self.preperiod < 0 or len(self.head) != self.preperiod:
            raise ValueError("head length must equal preperiod >= 0")

    def term(self, k: int) -> Fraction:
        if k < self.preperiod:
            return self.head[k]
        return self.cycle[(k - self.preperiod) % self.period]

    def expand(self, length: int) -> list[Fraction]:
        return [self.term(k) for k in range(length)]


def detect_eventual_periodicity(
    seq: Sequence[RationalLike], max_period: int
) -> EventuallyPeriodic | None:
    """Smallest period ``m <= max_period`` (then smallest preperiod) fitting ``seq``.

    A candidate only counts if its cycle is seen at least twice in full,
    i.e. ``preperiod + 2*m <= len(seq)``; otherwise any prefix would trivially
    "repeat".
    """
    values = [to_rational(v) for v in seq]
    n = len(values)
    if max_period < 1:
        raise ValueError("max_period must be >= 1")
    if n < 2 * max_period:
        raise ValueError(f"need at least {2 * max_period} terms for max_period={max_period}, got {n}")
    for m in range(1, max_period + 1):
        # smallest l with values[i] == values[i+m] for every i >= l
        ell = n - m
        while ell > 0 and values[ell - 1] == values[ell - 1 + m]:
            ell -= 1
        if ell + 2 * m <= n:
            return EventuallyPeriodic(
                preperiod=ell,
                period=m,
                head=tuple(values[:ell]),
                cycle=tuple(values[ell : ell + m]),
            )
    return None


@dataclass(frozen=True)
class RationalForm:
    """``numerator / (1 - t^m)`` together with its lowest-terms version."""

    numerator: Polynomial
    m: int
    reduced_numerator: Polynomial
    reduced_denominator: Polynomial

    @property
    def denominator(self) -> Polynomial:
        return Polynomial.constant(1) - Polynomial.monomial(self.m)

    def expand(self, N: int) -> TruncatedSeries:
        return series_expand_rational(self.reduced_numerator, self.reduced_denominator, N)


def szego_reconstruct(desc: EventuallyPeriodic) -> RationalForm:
    m, ell = desc.period, desc.preperiod
    length = ell + m
    # (sum s_k t^k)(1 - t^m): coefficient k is s_k - s_{k-m}, zero from k = l+m on
    numerator = Polynomial(
        desc.term(k) - (desc.term(k - m) if k >= m else 0) for k in range(length)
    )
    denominator = Polynomial.constant(1) - Polynomial.monomial(m)
    g = poly_gcd(numerator, denominator)
    if g.is_zero() or g.degree == 0:
        reduced_num, reduced_den = numerator, denominator
    else:
        reduced_num, reduced_den = numerator // g, denominator // g
    # normalize so the denominator has constant term 1
    c = reduced_den[0]
    if c != 1:
        reduced_num = reduced_num * Polynomial.constant(1 / c)
        reduced_den = reduced_den * Polynomial.constant(1 / c)
    form = RationalForm(numerator, m, reduced_num, reduced_den)
    check = form.expand(length + 2 * m - 1).coeffs
    if list(check) != desc.expand(length + 2 * m):
        raise AssertionError("rational reconstruction does not reproduce the sequence")
    return form


# -- classification -----------------------------------------------------------


@dataclass(frozen=True)
class FiniteMomentFamily:
    a: Fraction
    b: Fraction
    params: MixtureParams
    tag = "FiniteMomentFamily"


@dataclass(frozen=True)
class DegeneratePointMass:
    tag = "DegeneratePointMass"


@dataclass(frozen=True)
class PatternViolated:
    explanation: str
    index: int
    tag = "PatternViolated"


@dataclass(frozen=True)
class InconsistentWithAnyDistribution:
    violated: str
    a: Fraction
    b: Fraction
    tag = "InconsistentWithAnyDistribution"


@dataclass(frozen=True)
class InvalidInput:
    reason: str
    tag = "InvalidInput"


Classification = Union[
    FiniteMomentFamily,
    DegeneratePointMass,
    PatternViolated,
    InconsistentWithAnyDistribution,
    InvalidInput,
]

_PREFIX_CAVEAT = (
    "a finite prefix cannot tell whether the full sequence has infinitely many "
    "distinct ratios or is not a moment sequence at all; either way it is not a "
    "member of the finite-ratio family"
)


def classify_ratios(
    r: RatioSequence | Sequence[RationalLike], min_prefix: int = DEFAULT_MIN_PREFIX
) -> Classification:
    """Classify a prefix ``r_0, r_1, ...`` of ``mu_k / k!``.

    A result of :class:`FiniteMomentFamily` means "consistent with" the family
    on the observed terms; no finite prefix can certify more.
    """
    values = [to_rational(v) for v in r]
    if min_prefix < 3:
        raise ValueError("min_prefix below 3 cannot see both pattern positions")
    if len(values) < min_prefix:
        raise ValueError(f"need at least {min_prefix} ratios, got {len(values)}")
    if values[0] != 1:
        return InvalidInput(f"r_0 must be 1, got {values[0]}")
    a, even = values[1], values[2]
    for k in range(3, len(values)):
        expected = a if k % 2 else even
        if values[k] != expected:
            parity = "odd" if k % 2 else "even"
            return PatternViolated(
                f"r_{k} = {values[k]} breaks the {parity}-index value {expected} "
                f"of the pattern 1, a, 1-b, a, 1-b, ...; {_PREFIX_CAVEAT}",
                index=k,
            )
    b = 1 - even
    violated = violated_constraint(a, b)
    if violated:
        return InconsistentWithAnyDistribution(violated, a, b)
    if b == 1:
        return DegeneratePointMass()
    return FiniteMomentFamily(a, b, family_weights(a, b))


# -- Hankel oracle --------------------------------------------------------------


@dataclass(frozen=True)
class HankelReport:
    minors: tuple[Fraction, ...]
    psd: bool


def _det(matrix: list[list[Fraction]]) -> Fraction:
    a = [row[:] for row in matrix]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def _is_psd(matrix: list[list[Fraction]]) -> bool:
    # Symmetric elimination in place.  A zero pivot is fine only if its whole
    # remaining row is zero; a negative pivot settles it.
    a = [row[:] for row in matrix]
    n = len(a)
    for k in range(n):
        d = a[k][k]
        if d < 0:
            return False
        if d == 0:
            if any(a[k][j] != 0 for j in range(k + 1, n)):
                return False
            continue
        for i in range(k + 1, n):
            f = a[i][k] / d
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
    return True


def hankel_psd(m: MomentSequence | Sequence[RationalLike], order: int) -> HankelReport:
    """Leading principal minors of ``H[i][j] = mu_{i+j}`` and an exact PSD verdict."""
    mu = [to_rational(v) for v in m]
    if len(mu) < 2 * order + 1:
        raise ValueError(f"order {order} needs {2 * order + 1} moments, got {len(mu)}")
    H = [[mu[i + j] for j in range(order + 1)] for i in range(order + 1)]
    minors = tuple(_det([row[: k + 1] for row in H[: k + 1]]) for k in range(order + 1))
    return HankelReport(minors=minors, psd=_is_psd(H))

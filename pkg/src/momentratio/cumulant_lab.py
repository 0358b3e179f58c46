"""Log-characteristic-function side: cumulant-ratio classification and the
sixth-degree example built from a completely monotone Laplace transform.

The example starts from

    h(s) = exp(w(s)),   w(s) = -1 + 1/(1+s) - 5 s - s^2/10,

and the log-characteristic function ``g(t) = w(t^2)``, which equals
``(-6 t^2 - 51/10 t^4 - 1/10 t^6) / (1 + t^2)``.

Derivative chain
----------------
Write ``h^(k)(s) = (-1)^k h(s) P_{3k}(s) / (1+s)^{2k}``.  For ``k = 1``,
``h' = h w'`` with ``w'(s) = -1/(1+s)^2 - 5 - s/5``, so

    P_3(s) = -(1+s)^2 w'(s) = 1 + (5 + s/5)(1+s)^2
           = s^3/5 + 27 s^2/5 + 51 s/5 + 6.

Differentiating the k-th formula once, with ``h' = -h P_3/(1+s)^2``::

    h^(k+1) = (-1)^k h [ -P_3 P_{3k} / (1+s)^{2k+2}
                         + P'_{3k} / (1+s)^{2k}
                         - 2k P_{3k} / (1+s)^{2k+1} ]
            = (-1)^{k+1} h / (1+s)^{2k+2}
              * [ P_3 P_{3k} + 2k (1+s) P_{3k} - (1+s)^2 P'_{3k} ].

Hence ``P_{3(k+1)} = P_3 P_{3k} + 2k (1+s) P_{3k} - (1+s)^2 P'_{3k}``.  The
first term has degree ``3k + 3`` and leading coefficient ``5^{-(k+1)}``; the
other two have degree at most ``3k + 1``, so the degree is exactly ``3k`` with
leading coefficient ``5^{-k}``.  Nonnegativity of the coefficients is not
evident from the recursion (the last term is subtracted) and is checked
exactly by :func:`check_complete_monotonicity`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .classify import RationalForm, detect_eventual_periodicity, szego_reconstruct
from .series import (
    Polynomial,
    RationalLike,
    TruncatedSeries,
    series_expand_rational,
    to_rational,
)

__all__ = [
    "G_CLOSED_FORM_NUMERATOR",
    "Gaussian",
    "InternalConsistencyError",
    "MonotoneChain",
    "NotFinitePrefix",
    "RationalLog",
    "ViolatesTheoremShape",
    "check_complete_monotonicity",
    "classify_cumulant_ratios",
    "example_g_ratios",
    "exponent_polynomial_part",
    "g1_identity",
    "h_exponent",
    "p3k_chain",
    "u_to_t",
]


class InternalConsistencyError(AssertionError):
    """Two independent computations of the same exact object disagree."""


# numerator of g(t) over (1 + t^2), coefficients in t
G_CLOSED_FORM_NUMERATOR = Polynomial(("0", "0", "-6", "0", "-5.1", "0", "-0.1"))

ONE_PLUS_S = Polynomial((1, 1))


def exponent_polynomial_part() -> Polynomial:
    """Polynomial part ``-1 - 5 s - s^2/10`` of the exponent ``w(s)``."""
    return Polynomial(("-1", "-5", "-1/10"))


def h_exponent(N: int) -> TruncatedSeries:
    """Series of ``w(s) = -1 + 1/(1+s) - 5 s - s^2/10`` through ``s^N``."""
    return TruncatedSeries.from_polynomial(exponent_polynomial_part(), N) + series_expand_rational(
        Polynomial.constant(1), ONE_PLUS_S, N
    )


def _p3() -> Polynomial:
    # P_3 = 1 - (1+s)^2 * L'(s), where L is the polynomial part of w
    return Polynomial.constant(1) - ONE_PLUS_S * ONE_PLUS_S * exponent_polynomial_part().derivative()


# -- derivative chain ---------------------------------------------------------


@dataclass(frozen=True)
class MonotoneChain:
    """``polys[k]`` is ``P_{3k}``; ``polys[0] == 1``."""

    polys: tuple[Polynomial, ...]

    @property
    def kmax(self) -> int:
        return len(self.polys) - 1

    @property
    def entries(self) -> list[tuple[int, Polynomial]]:
        return list(enumerate(self.polys))

    def __getitem__(self, k: int) -> Polynomial:
        return self.polys[k]


def p3k_chain(kmax: int) -> MonotoneChain:
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    p3 = _p3()
    sq = ONE_PLUS_S * ONE_PLUS_S
    polys = [Polynomial.constant(1), p3]
    for k in range(1, kmax):
        p = polys[-1]
        polys.append(p3 * p + Polynomial.constant(2 * k) * ONE_PLUS_S * p - sq * p.derivative())
    return MonotoneChain(tuple(polys))


@dataclass(frozen=True)
class ChainCheck:
    k: int
    degree: int | None
    degree_ok: bool
    leading_ok: bool
    nonnegative: bool

    @property
    def ok(self) -> bool:
        return self.degree_ok and self.leading_ok and self.nonnegative


@dataclass(frozen=True)
class SpotCheck:
    k: int
    s: Fraction
    sign: int
    log_abs: float

    @property
    def ok(self) -> bool:
        return self.sign == (-1) ** self.k


@dataclass(frozen=True)
class MonotonicityReport:
    chain: MonotoneChain
    checks: tuple[ChainCheck, ...]
    spots: tuple[SpotCheck, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks) and all(s.ok for s in self.spots)


def _spot(p: Polynomial, k: int, s: Fraction) -> SpotCheck:
    # h^(k)(s) = (-1)^k h(s) P(s) / (1+s)^(2k); h(s) > 0, so the sign is that
    # of (-1)^k P(s).  The magnitude is kept in log space since h underflows.
    ps = p(s)
    w = float(h_exponent_value(s))
    sign = 0 if ps == 0 else (-1) ** k * (1 if ps > 0 else -1)
    log_abs = w + math.log(abs(ps)) - 2 * k * math.log1p(float(s)) if ps else -math.inf
    return SpotCheck(k=k, s=s, sign=sign, log_abs=log_abs)


def h_exponent_value(s: RationalLike) -> Fraction:
    s = to_rational(s)
    return exponent_polynomial_part()(s) + 1 / (1 + s)


def check_complete_monotonicity(
    kmax: int, spot_points: Sequence[RationalLike] = ()
) -> MonotonicityReport:
    chain = p3k_chain(kmax)
    checks = []
    for k, p in enumerate(chain.polys):
        checks.append(
            ChainCheck(
                k=k,
                degree=p.degree,
                degree_ok=p.degree == 3 * k,
                leading_ok=p.leading == Fraction(1, 5**k),
                nonnegative=all(c >= 0 for c in p.coeffs),
            )
        )
    points = [to_rational(s) for s in spot_points]
    if any(s < 0 for s in points):
        raise ValueError("spot points must be >= 0")
    spots = tuple(_spot(chain[k], k, s) for s in points for k in range(1, kmax + 1))
    return MonotonicityReport(chain=chain, checks=tuple(checks), spots=spots)


# -- the sixth-degree example ---------------------------------------------------


def _t_series_to_cumulant_ratios(coeffs: Sequence[Fraction]) -> list[Fraction]:
    # kappa_k/k! = i^{-k} * [t^k] g; only real (even-index) entries are supported
    out = []
    for k, c in enumerate(coeffs):
        if k % 2:
            if c:
                raise ValueError("odd t-coefficients would make the cumulant ratios complex")
            out.append(Fraction(0))
        else:
            out.append(c if (k // 2) % 2 == 0 else -c)
    return out


def example_g_ratios(
    N: int, closed_form_numerator: Polynomial = G_CLOSED_FORM_NUMERATOR
) -> list[Fraction]:
    """Cumulant ratios ``kappa_k/k!`` for ``k <= N`` of ``g(t) = w(t^2)``.

    Computed twice: from the series of ``w`` with ``s = t^2``, and by expanding
    ``closed_form_numerator / (1 + t^2)``.  Disagreement raises
    :class:`InternalConsistencyError`.
    """
    if N < 6:
        raise ValueError("N must be >= 6 to see the sixth-degree numerator")
    w = h_exponent(N // 2)
    via_w = [Fraction(0)] * (N + 1)
    for j, c in enumerate(w):
        via_w[2 * j] = c
    via_closed = series_expand_rational(closed_form_numerator, Polynomial((1, 0, 1)), N).coeffs
    if list(via_closed) != via_w:
        first = next(k for k in range(N + 1) if via_closed[k] != via_w[k])
        raise InternalConsistencyError(
            f"t^{first} coefficient: series of w(t^2) gives {via_w[first]}, "
            f"closed form gives {via_closed[first]}"
        )
    return _t_series_to_cumulant_ratios(via_w)


@dataclass(frozen=True)
class G1Identity:
    lhs: TruncatedSeries
    rhs: TruncatedSeries
    displayed_rhs: TruncatedSeries

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def displayed_holds(self) -> bool:
        return self.lhs == self.displayed_rhs


def g1_identity(N: int) -> G1Identity:
    """Expand both sides of ``1 - 1/(1+t^2) - t^2/2 = (t^2 - t^4)/(2(1+t^2))``.

    Also expands the variant with numerator ``1 + t^2 - t^4``, which differs
    from the left side by ``1/(2(1+t^2))`` (its value at ``t = 0`` is 1/2,
    whereas a log-characteristic function vanishes there).
    """
    one_plus_t2 = Polynomial((1, 0, 1))
    lhs = (
        TruncatedSeries.from_polynomial(Polynomial(("1", "0", "-1/2")), N)
        - series_expand_rational(Polynomial.constant(1), one_plus_t2, N)
    )
    twice = one_plus_t2 * Polynomial.constant(2)
    rhs = series_expand_rational(Polynomial((0, 0, 1, 0, -1)), twice, N)
    displayed = series_expand_rational(Polynomial((1, 0, 1, 0, -1)), twice, N)
    return G1Identity(lhs=lhs, rhs=rhs, displayed_rhs=displayed)


# -- classification of cumulant ratios ------------------------------------------


@dataclass(frozen=True)
class Gaussian:
    """``g(t) = i*shift*t - variance*t^2/2``; ``sigma2 = variance/2`` is the
    parameter in the ``-sigma^2 t^2 + i a t`` way of writing it."""

    shift: Fraction
    variance: Fraction
    tag = "Gaussian"

    @property
    def sigma2(self) -> Fraction:
        return self.variance / 2


@dataclass(frozen=True)
class RationalLog:
    """``g`` as a rational function; ``form`` lives in ``u = i t``.

    ``numerator_t_real`` and ``numerator_t_imag`` are the real and imaginary
    coefficient polynomials of the reduced numerator rewritten in ``t``.
    """

    form: RationalForm
    numerator_t_real: Polynomial
    numerator_t_imag: Polynomial
    denominator_t: str
    tag = "RationalLog"

    @property
    def numerator_degree(self) -> int | None:
        return self.form.reduced_numerator.degree


@dataclass(frozen=True)
class NotFinitePrefix:
    tag = "NotFinitePrefix"


@dataclass(frozen=True)
class ViolatesTheoremShape:
    explanation: str
    tag = "ViolatesTheoremShape"


CumulantClassification = Union[Gaussian, RationalLog, NotFinitePrefix, ViolatesTheoremShape]

# reduced denominators in u = it and their t-form
_ADMISSIBLE = {
    Polynomial((1, -1)): "1 - i*t",
    Polynomial((1, 1)): "1 + i*t",
    Polynomial((1, 0, -1)): "1 + t^2",
}


def u_to_t(p: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Split ``p(i t)`` into real and imaginary coefficient polynomials in ``t``."""
    re, im = [], []
    for k, c in enumerate(p.coeffs):
        unit = (1, 1j, -1, -1j)[k % 4]
        re.append(c * int(unit.real))
        im.append(c * int(unit.imag))
    return Polynomial(re), Polynomial(im)


def classify_cumulant_ratios(
    q: Sequence[RationalLike], max_period: int | None = None, min_prefix: int = 5
) -> CumulantClassification:
    """Classify a prefix of ``kappa_k / k!`` against the admissible shapes of ``g``.

    Since ``g(t) = sum i^k q_k t^k = sum q_k u^k`` with ``u = i t``, the ratio
    sequence is itself the coefficient sequence in ``u``, and a denominator
    ``1 + t^2`` shows up as ``1 - u^2``.
    """
    values = [to_rational(v) for v in q]
    if len(values) < min_prefix:
        raise ValueError(f"need at least {min_prefix} cumulant ratios, got {len(values)}")
    if values[0] != 0:
        raise ValueError(f"q_0 must be 0, got {values[0]}")
    if all(v == 0 for v in values[3:]):
        variance = 2 * values[2]
        if variance < 0:
            return ViolatesTheoremShape(f"negative variance {variance} in a quadratic log")
        return Gaussian(shift=values[1], variance=variance)
    if max_period is None:
        max_period = len(values) // 2
    desc = detect_eventual_periodicity(values, max_period)
    if desc is None:
        return NotFinitePrefix()
    form = szego_reconstruct(desc)
    den = form.reduced_denominator
    if den.degree == 0:
        return ViolatesTheoremShape(
            f"g is a polynomial of degree {form.reduced_numerator.degree} > 2, "
            "which no characteristic function allows"
        )
    if den not in _ADMISSIBLE:
        return ViolatesTheoremShape(
            f"reduced denominator {den.format('u')} (in u = i*t) has poles other than t = +-i"
        )
    re, im = u_to_t(form.reduced_numerator)
    return RationalLog(form=form, numerator_t_real=re, numerator_t_imag=im, denominator_t=_ADMISSIBLE[den])

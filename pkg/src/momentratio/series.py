"""Exact polynomial and truncated power series algebra over the rationals.

Everything here works on :class:`fractions.Fraction`, so results are exact and
always in lowest terms.  Polynomials and series are immutable value objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction, str]

__all__ = [
    "NormalizationError",
    "Polynomial",
    "PoleAtOriginError",
    "TruncatedSeries",
    "poly_derivative",
    "poly_gcd",
    "poly_mul",
    "series_exp",
    "series_expand_rational",
    "series_log",
    "series_mul",
    "to_rational",
]


class PoleAtOriginError(ZeroDivisionError):
    """Raised when expanding P/Q with Q(0) = 0."""


class NormalizationError(ValueError):
    """Raised when a series has the wrong constant term for log/exp."""


def to_rational(value: RationalLike) -> Fraction:
    """Convert ``value`` to an exact rational.

    Strings may be integers, ``"p/q"`` fractions or decimal literals
    (``"5.1"`` becomes ``51/10``).  Floats are rejected because their binary
    expansion is almost never the number the caller meant.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        return Fraction(text)
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}; pass a string such as '5.1'")
    raise TypeError(f"cannot interpret {value!r} as a rational")


def _rationals(values: Iterable[RationalLike]) -> tuple[Fraction, ...]:
    return tuple(to_rational(v) for v in values)


def _trim(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial; ``coeffs[k]`` multiplies ``x**k``.

    Trailing zeros are trimmed, so the zero polynomial has ``coeffs == ()``
    and ``degree is None``.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(_rationals(self.coeffs)))

    @classmethod
    def constant(cls, c: RationalLike) -> Polynomial:
        return cls((c,))

    @classmethod
    def monomial(cls, power: int, c: RationalLike = 1) -> Polynomial:
        return cls((0,) * power + (c,))

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: Polynomial) -> Polynomial:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> Polynomial:
        return _as_poly(other) - self

    def __mul__(self, other) -> Polynomial:
        return poly_mul(self, _as_poly(other))

    __rmul__ = __mul__

    def derivative(self) -> Polynomial:
        return poly_derivative(self)

    def divmod(self, divisor: Polynomial) -> tuple[Polynomial, Polynomial]:
        """Euclidean division ``self = q*divisor + r`` with ``deg r < deg divisor``."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = divisor.degree
        lead = divisor.leading
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for shift in range(len(rem) - dd - 1, -1, -1):
            c = rem[shift + dd] / lead
            quot[shift] = c
            if c:
                for j, d in enumerate(divisor.coeffs):
                    rem[shift + j] -= c * d
        return Polynomial(quot), Polynomial(rem[:dd])

    def __floordiv__(self, divisor: Polynomial) -> Polynomial:
        return self.divmod(divisor)[0]

    def __mod__(self, divisor: Polynomial) -> Polynomial:
        return self.divmod(divisor)[1]

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def format(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = var if k == 1 else f"{var}^{k}"
                body = power if mag == 1 else f"{mag}*{power}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.format()


def _as_poly(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    return Polynomial.constant(p)


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.is_zero() or q.is_zero():
        return Polynomial()
    out = [Fraction(0)] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a:
            for j, b in enumerate(q.coeffs):
                out[i + j] += a * b
    return Polynomial(out)


def poly_derivative(p: Polynomial) -> Polynomial:
    return Polynomial(k * c for k, c in enumerate(p.coeffs) if k)


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Greatest common divisor, scaled so its lowest nonzero coefficient is 1.

    Scaling on the constant end (rather than making it monic) keeps divisors of
    ``1 - t**m`` in the form ``1 + ...``.  ``gcd(0, 0)`` is the zero polynomial.
    """
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    low = next(c for c in a.coeffs if c)
    return Polynomial(c / low for c in a.coeffs)


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series known through ``t**order``; ``coeffs`` has ``order + 1`` entries."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = _rationals(self.coeffs)
        if not coeffs:
            raise ValueError("a truncated series needs at least the constant term")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_polynomial(cls, p: Polynomial, order: int) -> TruncatedSeries:
        return cls(p[k] for k in range(order + 1))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = min(self.order, other.order)
        return TruncatedSeries(self[k] + other[k] for k in range(n + 1))

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = min(self.order, other.order)
        return TruncatedSeries(self[k] - other[k] for k in range(n + 1))

    def __mul__(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        c = to_rational(other)
        return TruncatedSeries(c * x for x in self.coeffs)

    __rmul__ = __mul__

    def to_polynomial(self) -> Polynomial:
        return Polynomial(self.coeffs)


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    n = min(f.order, g.order)
    return TruncatedSeries(
        sum((f[k] * g[j - k] for k in range(j + 1)), Fraction(0)) for j in range(n + 1)
    )


def series_expand_rational(P: Polynomial, Q: Polynomial, N: int) -> TruncatedSeries:
    """First ``N + 1`` coefficients of ``P/Q`` by formal long division."""
    q0 = Q[0]
    if q0 == 0:
        raise PoleAtOriginError("denominator vanishes at the origin")
    out: list[Fraction] = []
    for n in range(N + 1):
        acc = P[n] - sum((Q[k] * out[n - k] for k in range(1, min(n, len(Q.coeffs) - 1) + 1)), Fraction(0))
        out.append(acc / q0)
    return TruncatedSeries(out)


def series_log(f: TruncatedSeries, N: int | None = None) -> TruncatedSeries:
    """Formal logarithm of a series with constant term 1, through order ``N``."""
    N = f.order if N is None else N
    if N > f.order:
        raise ValueError(f"series known only to order {f.order}, asked for {N}")
    if f[0] != 1:
        raise NormalizationError(f"log needs constant term 1, got {f[0]}")
    g = [Fraction(0)]
    for n in range(1, N + 1):
        acc = sum((k * g[k] * f[n - k] for k in range(1, n)), Fraction(0))
        g.append(f[n] - acc / n)
    return TruncatedSeries(g)


def series_exp(g: TruncatedSeries, N: int | None = None) -> TruncatedSeries:
    """Formal exponential of a series with zero constant term."""
    N = g.order if N is None else N
    if N > g.order:
        raise ValueError(f"series known only to order {g.order}, asked for {N}")
    if g[0] != 0:
        raise NormalizationError(f"exp needs constant term 0, got {g[0]}")
    f = [Fraction(1)]
    for n in range(1, N + 1):
        # n f_n = sum_k k g_k f_{n-k}
        f.append(sum((k * g[k] * f[n - k] for k in range(1, n + 1)), Fraction(0)) / n)
    return TruncatedSeries(f)

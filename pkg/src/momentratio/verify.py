"""Reproduction fixtures: the reference cases and exact identities, each run
as a named check with a timing."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .classify import FiniteMomentFamily, classify_ratios, hankel_psd
from .cumulant_lab import (
    G_CLOSED_FORM_NUMERATOR,
    Gaussian,
    InternalConsistencyError,
    RationalLog,
    check_complete_monotonicity,
    classify_cumulant_ratios,
    example_g_ratios,
    g1_identity,
)
from .family import (
    family_moments,
    family_ratio_sequence,
    moments_to_cumulants,
    violated_constraint,
)
from .series import Polynomial


def constraint_grid(step: Fraction = Fraction(1, 8)) -> list[tuple[Fraction, Fraction]]:
    """Admissible ``(a, b)`` with ``a`` in ``[-1, 1]``, ``b`` in ``[0, 1)`` on a ``step`` lattice."""
    n = int(1 / step)
    out = []
    for i in range(-n, n + 1):
        for j in range(0, n):
            a, b = i * step, j * step
            if violated_constraint(a, b) is None:
                out.append((a, b))
    return out


@dataclass(frozen=True)
class FixtureResult:
    name: str
    ok: bool
    detail: str
    seconds: float


def _exponential() -> tuple[bool, str]:
    r = family_ratio_sequence(1, 0, 12)
    c = classify_ratios(r)
    ok = all(v == 1 for v in r) and isinstance(c, FiniteMomentFamily) and (c.a, c.b) == (1, 0)
    return ok, "ratios all 1; classified a=1, b=0"


def _laplace() -> tuple[bool, str]:
    r = family_ratio_sequence(0, 0, 12)
    c = classify_ratios(r)
    pattern = all(v == (1 if k % 2 == 0 else 0) for k, v in enumerate(r))
    ok = pattern and isinstance(c, FiniteMomentFamily) and (c.a, c.b) == (0, 0)
    return ok, "ratios alternate 1, 0; classified a=0, b=0"


def _round_trip() -> tuple[bool, str]:
    grid = constraint_grid()
    bad = []
    for a, b in grid:
        c = classify_ratios(family_ratio_sequence(a, b, 12))
        if not (isinstance(c, FiniteMomentFamily) and c.a == a and c.b == b):
            bad.append((a, b))
    return not bad, f"{len(grid) - len(bad)}/{len(grid)} grid points recovered exactly"


def _hankel() -> tuple[bool, str]:
    grid = constraint_grid()
    failures = [ab for ab in grid if not hankel_psd(family_moments(*ab, 8), 4).psd]
    counter = hankel_psd([1, 2, 1], 1)
    ok = not failures and not counter.psd and counter.minors[-1] == -3
    return ok, f"{len(grid) - len(failures)}/{len(grid)} PSD at order 4; [1,2,1] minor {counter.minors[-1]}"


def _g_identity(numerator: Polynomial) -> Callable[[], tuple[bool, str]]:
    def run() -> tuple[bool, str]:
        try:
            q = example_g_ratios(40, numerator)
        except InternalConsistencyError as exc:
            return False, str(exc)
        distinct = set(q)
        c = classify_cumulant_ratios(q[:13])
        ok = (
            distinct == {Fraction(0), Fraction(6), Fraction(9, 10), Fraction(1)}
            and isinstance(c, RationalLog)
            and c.denominator_t == "1 + t^2"
            and c.numerator_degree == 6
        )
        return ok, f"order 40 agree; distinct {{0, 6, 9/10, 1}}; numerator degree {getattr(c, 'numerator_degree', None)}"

    return run


def _g1_identity() -> tuple[bool, str]:
    ident = g1_identity(20)
    return ident.holds, "1 - 1/(1+t^2) - t^2/2 = (t^2 - t^4)/(2(1+t^2)) to order 20"


def _chain() -> tuple[bool, str]:
    report = check_complete_monotonicity(25, [0, Fraction(1, 2), 1, 10])
    return report.ok, "P_3k for k <= 25: degree 3k, leading 5^-k, coefficients >= 0"


def _gaussian() -> tuple[bool, str]:
    kappa = moments_to_cumulants([1, 0, 1, 0, 3, 0, 15])
    q = [c / math.factorial(k) for k, c in enumerate(kappa)]
    c = classify_cumulant_ratios(q)
    ok = isinstance(c, Gaussian) and c.shift == 0 and c.variance == 1
    return ok, "standard normal cumulant ratios classify as Gaussian(0, 1)"


def fixtures(g_numerator: Polynomial = G_CLOSED_FORM_NUMERATOR) -> list[tuple[str, Callable]]:
    return [
        ("exponential-ratios", _exponential),
        ("laplace-ratios", _laplace),
        ("family-round-trip-grid", _round_trip),
        ("hankel-validity", _hankel),
        ("g-identity", _g_identity(g_numerator)),
        ("g1-identity", _g1_identity),
        ("p3k-chain", _chain),
        ("gaussian-branch", _gaussian),
    ]


def run_fixtures(g_numerator: Polynomial = G_CLOSED_FORM_NUMERATOR) -> list[FixtureResult]:
    results = []
    for name, fn in fixtures(g_numerator):
        start = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing fixture is a failing fixture
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(FixtureResult(name, ok, detail, time.perf_counter() - start))
    return results

"""Tabulate the derivative-chain polynomials P_3k of h(s) = exp(w(s)).

For each k prints the degree, the leading coefficient, the smallest
coefficient and its position, and the sign of h^(k) at a few points.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from momentratio.cumulant_lab import check_complete_monotonicity


@dataclass(frozen=True)
class ChainConfig:
    kmax: int = 25
    spot_points: tuple[Fraction, ...] = field(default=(Fraction(0), Fraction(1, 2), Fraction(3)))


def main(cfg: ChainConfig) -> int:
    rep = check_complete_monotonicity(cfg.kmax, cfg.spot_points)
    print(f"{'k':>3} {'deg':>4} {'leading':>12} {'min coeff':>14} {'at':>4}  ok")
    for check in rep.checks:
        p = rep.chain[check.k]
        j, low = min(enumerate(p.coeffs), key=lambda kv: kv[1])
        print(f"{check.k:>3} {check.degree:>4} {str(p.leading):>12} {float(low):>14.6g} {j:>4}  {check.ok}")
    print()
    for spot in rep.spots:
        if spot.k <= 5:
            print(f"h^({spot.k})({spot.s}) sign {spot.sign:+d}, log|.| = {spot.log_abs:.6f}")
    print("all checks passed" if rep.ok else "CHECK FAILED")
    return 0 if rep.ok else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kmax", type=int, default=ChainConfig.kmax)
    args = ap.parse_args()
    raise SystemExit(main(ChainConfig(kmax=args.kmax)))

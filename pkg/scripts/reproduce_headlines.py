"""Print the headline coverage numbers under each reading of the shadowing spread.

    python3 scripts/reproduce_headlines.py
"""
from __future__ import annotations

from isac import analytic as an
from isac import from_paper_defaults

READINGS = ("power_db", "amplitude_db", "raw")


def joint(reading: str, lam: float) -> float:
    p, b = from_paper_defaults(lambda_bs_per_km2=lam, xi_interpretation=reading, l_p=20)
    return an.joint_cov(an.CoverageQuery("joint_crlb_ser", eps1=1.0, eps3=1e-3), p, b)


def sub_metre(reading: str, gamma_db: float) -> float:
    p, _ = from_paper_defaults(xi_interpretation=reading, gamma_db=gamma_db, l_p=20)
    return an.positioning_cov(1.0, p)


def main() -> None:
    print(f"{'reading':<14}{'joint@1':>12}{'joint@10':>12}{'pos@-10dB':>12}{'pos@-15dB':>12}")
    for r in READINGS:
        print(f"{r:<14}{joint(r, 1.0):>12.4g}{joint(r, 10.0):>12.4g}"
              f"{sub_metre(r, -10.0):>12.4g}{sub_metre(r, -15.0):>12.4g}")


if __name__ == "__main__":
    main()

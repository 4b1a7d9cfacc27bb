"""Run every global verifier on the bundled foliations and print reports.

A quick end-to-end exercise of the library outside the test suite; all
lines should end in PASS.  Run from the repository root:

    python3 scripts/run_global_checks.py
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from folindex import (
    from_affine,
    parse_poly,
    verify_baum_bott,
    verify_isolated,
    verify_log_seh,
    verify_total_gsv,
)

V2 = ("x", "y")
V3 = ("x", "y", "z")

FOLIATIONS = {
    "radial": ("x", "y"),
    "diagonal": ("x", "2*y"),
    "jouanolou": ("y^2 - x^3", "1 - x^2*y"),
    "nodal hamiltonian": ("2*y", "3*x^2 + 2*x"),
    "cuspidal hamiltonian": ("2*y", "3*x^2"),
}

# foliation name -> list of (divisor, which theorems apply)
DIVISORS = {
    "diagonal": [("x*y*z", ("seh",)),
                 ("z", ("seh", "iso", "total-gsv")),
                 ("x*y", ("seh",))],
    "nodal hamiltonian": [("y^2*z - x^3 - x^2*z", ("iso", "total-gsv"))],
    "cuspidal hamiltonian": [("y^2*z - x^3", ("iso", "total-gsv"))],
}

RUNNERS = {"seh": verify_log_seh, "iso": verify_isolated,
           "total-gsv": verify_total_gsv}


def show(label, report):
    verdict = "PASS" if report.passed else "FAIL"
    print(f"{label:48s} {report.theorem:10s} lhs={report.lhs:>3} "
          f"rhs={report.rhs:>3}  {verdict}")
    return report.passed


def main():
    ok = True
    for name, (a, b) in FOLIATIONS.items():
        F = from_affine(parse_poly(a, V2), parse_poly(b, V2))
        ok &= show(name, verify_baum_bott(F))
        for divisor, theorems in DIVISORS.get(name, ()):
            H = parse_poly(divisor, V3)
            for theorem in theorems:
                ok &= show(f"{name} / {divisor}", RUNNERS[theorem](F, H))
    if not ok:
        raise SystemExit("some global check failed")
    print("all global checks passed")


if __name__ == "__main__":
    main()

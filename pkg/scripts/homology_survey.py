"""Print integral homology tables for the built-in small quandles, together
with the degenerate/quandle splitting checks.

    python scripts/homology_survey.py [n_max]
"""

from __future__ import annotations

import sys

from quandlekit import make_alexander, make_dihedral, make_trivial, structure_report


def main() -> None:
    n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    quandles = {
        "R3": make_dihedral(3),
        "R4": make_dihedral(4),
        "R5": make_dihedral(5),
        "R6": make_dihedral(6),
        "trivial:2": make_trivial(2),
        "trivial:3": make_trivial(3),
        "Z2[T]/(T^2+1)": make_alexander(2, [1, 0, 1], [0, 1]),
    }
    for name, X in quandles.items():
        report = structure_report(X, n_max)
        print(f"== {name} (orbits: {len(X.orbits)})")
        for n in range(1, n_max + 1):
            parts = "   ".join(
                f"H_{n}^{theory} = {report.groups[(theory, n)]}" for theory in "RDQ"
            )
            print(f"   {parts}")
        bad = [label for label, ok in report.checks if not ok]
        print(f"   splitting checks: {'all pass' if not bad else bad}")


if __name__ == "__main__":
    main()

import itertools

import pytest

from quandlekit import (
    Cochain,
    make_alexander,
    make_dihedral,
    make_trivial,
    parse_pd,
    torus_diagram,
)
from quandlekit.specs import read_data_file

# The standard 3-element dihedral cocycle, built by hand (the bundled file is
# compared against this in the homology tests).
THETA_VALUES = {
    (0, 1, 2): 1,
    (0, 2, 1): 1,
    (1, 0, 1): 1,
    (2, 0, 1): 1,
    (2, 0, 2): 1,
    (1, 0, 2): 1,
}


@pytest.fixture(scope="session")
def r3():
    return make_dihedral(3)


@pytest.fixture(scope="session")
def r4():
    return make_dihedral(4)


@pytest.fixture(scope="session")
def alexander_r4():
    return make_alexander(2, [1, 0, 1], [0, 1])


@pytest.fixture(scope="session")
def theta():
    return Cochain(3, 3, THETA_VALUES)


@pytest.fixture(scope="session")
def trefoil():
    return parse_pd(read_data_file("trefoil.pd"), name="trefoil")


@pytest.fixture(scope="session")
def fig8():
    return parse_pd(read_data_file("fig8.pd"), name="fig8")


@pytest.fixture(scope="session")
def knot_table():
    return {
        name: parse_pd(read_data_file(f"{name}.pd"), name=name)
        for name in ("trefoil", "fig8", "6_1", "7_4", "7_7", "unknot")
    }


@pytest.fixture(scope="session")
def small_diagrams(knot_table):
    """Diagrams with at most six crossings, for brute-force cross-checks."""
    out = dict(knot_table)
    out["T(2,4)"] = torus_diagram(2, 4)
    out["T(2,6)"] = torus_diagram(2, 6)
    out["T(3,2)"] = torus_diagram(3, 2)
    out["T(2,-3)"] = torus_diagram(2, -3)
    del out["7_4"]
    del out["7_7"]
    return out


@pytest.fixture(scope="session")
def small_quandles():
    return {
        "trivial:2": make_trivial(2),
        "trivial:3": make_trivial(3),
        "dihedral:3": make_dihedral(3),
        "dihedral:4": make_dihedral(4),
        "alexander-R4": make_alexander(2, [1, 0, 1], [0, 1]),
    }


def brute_force_colorings(D, X):
    """Oracle: scan every arc assignment against every crossing relation."""
    rels = [(r.from_under, r.to_under, r.over) for r in D.relations]
    out = []
    for colors in itertools.product(range(X.size), repeat=D.n_arcs):
        if all(X.table[colors[i]][colors[k]] == colors[j] for i, j, k in rels):
            out.append(colors)
    return out


def brute_force_shadows(D, X):
    """Oracle: scan every (arc, region) assignment against both conditions."""
    trans = D.face_transitions()
    out = []
    for colors in brute_force_colorings(D, X):
        for reg in itertools.product(range(X.size), repeat=D.n_faces):
            if all(X.table[reg[s]][colors[a]] == reg[t] for s, t, a in trans):
                out.append((colors, reg))
    return out

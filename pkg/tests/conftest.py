import os

os.environ.setdefault("KEIBRIDGE_CROSSCHECK", "1")

import pytest  # noqa: E402

from keibridge.diagrams import (  # noqa: E402
    cut_to_1tangle,
    stabilized_sphere_triplane,
    torus_2q,
    torus_sum,
    trefoil_formal_triplane,
    trivial_link,
    unknotted_sphere_triplane,
)
from keibridge.kei import dihedral, trivial_kei, validate_kei  # noqa: E402

# R_3 with an extra point that every element fixes and that fixes every element
R3_PLUS_POINT = [
    [0, 2, 1, 0],
    [2, 1, 0, 1],
    [1, 0, 2, 2],
    [3, 3, 3, 3],
]


def extra_kei():
    return validate_kei(R3_PLUS_POINT, "R_3+pt")


def link_fixtures():
    """Named closed diagrams used across the suite."""
    return {
        "unknot": trivial_link(1),
        "unlink2": trivial_link(2),
        "unlink3": trivial_link(3),
        "trefoil": torus_2q(3),
        "T25": torus_2q(5),
        "T27": torus_2q(7),
        "T29": torus_2q(9),
        "trefoil#trefoil": torus_sum(3, 2),
        "trefoil#3": torus_sum(3, 3),
    }


def knot_fixtures():
    return {k: v for k, v in link_fixtures().items() if len(v.components) == 1}


def small_keis():
    """Every fixture kei of order <= 7."""
    return [dihedral(p) for p in range(1, 8)] + [trivial_kei(3), extra_kei()]


def triplane_fixtures():
    return {
        "sphere": unknotted_sphere_triplane(),
        "stabilized": stabilized_sphere_triplane(),
        "bigon": stabilized_sphere_triplane(with_bigon=True),
        "trefoil-formal": trefoil_formal_triplane(),
    }


@pytest.fixture
def trefoil_tangle():
    return cut_to_1tangle(torus_2q(3), "a0")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])

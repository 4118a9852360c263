"""Shared fixtures and independent counting oracles.

The oracles here deliberately avoid the library's solvers: they check
every one of the |Q| ** arcs assignments directly against the relation
triples, either with plain loops (used for the two canonical anchor
values) or vectorized with numpy (used for sweeps over all small knots).
"""

import itertools

import numpy as np
import pytest

from qkd import load_catalog, standard_quandle_list


@pytest.fixture(scope="session")
def catalog():
    return load_catalog()


@pytest.fixture(scope="session")
def quandles():
    return standard_quandle_list()


def brute_force_count_plain(system, quandle):
    """Exhaustive count with plain loops; no shortcuts, no numpy."""
    table = quandle.table
    total = 0
    for assignment in itertools.product(range(quandle.size), repeat=system.arc_count):
        if all(table[assignment[s]][assignment[o]] == assignment[t]
               for s, o, t in system.relations):
            total += 1
    return total


def brute_force_count(system, quandle):
    """Exhaustive count, vectorized so six-arc systems stay fast."""
    n = system.arc_count
    grids = np.indices((quandle.size,) * n).reshape(n, -1)
    table = np.asarray(quandle.table)
    ok = np.ones(grids.shape[1], dtype=bool)
    for s, o, t in system.relations:
        ok &= table[grids[s], grids[o]] == grids[t]
    return int(ok.sum())

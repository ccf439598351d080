from __future__ import annotations

import pytest

from latdim.enumerate import lattices_up_to
from latdim.lattice import boolean, chain, m3, n5
from latdim.order import chain_poset, co_lattice


def named_lattices():
    return {
        "chain2": chain(2),
        "chain3": chain(3),
        "B2": boolean(2),
        "B3": boolean(3),
        "M3": m3(),
        "N5": n5(),
        "Co3": co_lattice(chain_poset(3))[0],
        "Co4": co_lattice(chain_poset(4))[0],
    }


@pytest.fixture(scope="session")
def corpus6():
    return lattices_up_to(6)


@pytest.fixture(scope="session")
def corpus7():
    return lattices_up_to(7)


@pytest.fixture(scope="session")
def named():
    return named_lattices()


@pytest.fixture(scope="session")
def co4():
    return co_lattice(chain_poset(4))[0]

"""latdim: exact dimension theory of finite lattices.

Join-dependency structure, dimension monoids presented as primitive monoids,
separativity and boundedness certificates, and tensor and box products.
"""

from .dimension import DimMonoid, delta, dim_monoid
from .errors import (
    BudgetExceeded,
    CycleError,
    LatdimError,
    NotALatticeError,
    NotFound,
    PreconditionError,
    SizeError,
)
from .lattice import FinLattice, boolean, chain, lattice_from_pairs, lattice_validate, m3, n5
from .order import FinPoset, chain_poset, co_lattice, poset_validate

__all__ = [
    "BudgetExceeded",
    "CycleError",
    "DimMonoid",
    "FinLattice",
    "FinPoset",
    "LatdimError",
    "NotALatticeError",
    "NotFound",
    "PreconditionError",
    "SizeError",
    "boolean",
    "chain",
    "chain_poset",
    "co_lattice",
    "delta",
    "dim_monoid",
    "lattice_from_pairs",
    "lattice_validate",
    "m3",
    "n5",
    "poset_validate",
]

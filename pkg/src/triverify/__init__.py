"""Verification toolkit for (2,m,n)-groups given by permutation generators."""

__version__ = "0.1.0"

from .arith import euler_characteristic, zsigmondy_ppd
from .catalog import load_catalog
from .classify import verify_triple
from .perm import Permutation, PermGroup, build_chain

__all__ = ["Permutation", "PermGroup", "build_chain", "euler_characteristic", "zsigmondy_ppd",
           "load_catalog", "verify_triple", "__version__"]

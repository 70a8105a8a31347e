"""Exact verification of bimonads, Hopf monads and their constructions.

Two backends: vector spaces with the functors B⊗− over F_p or Q, and finite
sets with the functors G×−.
"""

from .bimonad import BimonadData, compute_antipode, check_bimonad, fundamental_check, gamma
from .calculus import Notation, SetBackend, VectBackend, limits, oracle_mode, pipeline_eval
from .instances import CATALOG, load
from .kernels import IMPLEMENTATION
from .linalg import GF, QQ
from .monads import ComonadData, MonadData, check_comonad, check_monad
from .tau import TauBimonadData, double_bimonad, opposite_bimonad, tau_suite

__version__ = "0.1.0"

__all__ = [
    "BimonadData",
    "CATALOG",
    "ComonadData",
    "GF",
    "IMPLEMENTATION",
    "MonadData",
    "Notation",
    "QQ",
    "SetBackend",
    "TauBimonadData",
    "VectBackend",
    "check_bimonad",
    "check_comonad",
    "check_monad",
    "compute_antipode",
    "double_bimonad",
    "fundamental_check",
    "gamma",
    "limits",
    "load",
    "opposite_bimonad",
    "oracle_mode",
    "pipeline_eval",
    "tau_suite",
]

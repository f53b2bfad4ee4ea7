"""Exact lattices from nested linear codes over Z_q."""

from .errors import (BudgetExceeded, ChainSpecError, NonIntegral, NotClosed, RankDeficient,
                     StackError, UndefinedDistance)
from .exact_lattice import LatticeBasis, dual_basis, gain_stats, hnf, member, min_distance, volume
from .zq_codes import CodeChain, ZqCode, ZqVector, chain_closed_zero_one, dual_code
from .constructions import (construct_A, construct_D, construct_Dperp, construct_Dprime,
                            dbar_member, qahinv_generator, stack_matrix, t42_check)

__version__ = "0.1.0"

"""Uncertainty-relation criterion for identifying 3-qubit W states."""

from .classifier import Label, Verdict, classify, scan
from .spectra import build_block_matrix, decompose, eigen_solve, eigenstate
from .statevec import (Operator, PureState, StateError, commutator, embed_spin,
                       expectation, fidelity_up_to_phase, pair_hamiltonian,
                       variance)
from .uncertainty import (TAU_MAX, UncertaintyReport, bound_terms,
                          coefficient_set, report, tau_bound_function)
from .wfamily import (CriticalParams, critical_state, primed_basis,
                      standard_states, verify_w_equivalence)

__version__ = "0.1.0"

"""Grid-based verification of nonuniform (h,k)-dichotomies and growths.

The package checks structural properties of closed-form evolution operators,
computes minimal gain envelopes, evaluates Lyapunov-type norm families and
tests the norm characterizations of dichotomies and growths on finite grids.
"""

__version__ = "0.1.0"

from .errors import (ContractError, DomainError, HKDError, NotCompatibleError,
                     PreconditionError, ResidualError)
from .linops import StateSpace, complement, is_projector, range_basis, solve_on_subspace
from .lyap_norms import (NormFamily, check_compatibility_sandwich, check_projected_identities,
                         dichotomy_norm, growth_norm, norm_table)
from .rates import (GrowthRate, check_growth_rate, class_g_witness, custom, eval_rate,
                    exponential, from_table, log_weight, logpoly, parse_rate, polynomial)
from .systems import (GALLERY, EvolutionSystem, KernelInverse, build_kernel_inverse,
                      check_evolution_property, check_invariance, check_v_identities,
                      default_grid, default_probes, example_gallery)
from .verify import (EnvelopeReport, check_corollaries, check_primed_forms, check_theorem1,
                     check_theorem2, classify_fixed_time, classify_uniformity,
                     dichotomy_envelope, growth_envelope)

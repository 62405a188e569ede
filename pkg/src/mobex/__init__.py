"""Exact Moebius-graph expansions of Gaussian matrix integrals.

Graph sums over twisted ribbon graphs for the orthogonal, unitary and
symplectic ensembles, the alpha <-> 1/alpha duality, characteristic
polynomial dualities through Poincare-dual graphs, Penner-model closed
forms, and an eigenvalue-integral oracle that cross-checks everything in
exact rational arithmetic.
"""

from .graphs import (MoebiusGraph, TopologyProfile, contract_edge, flip_vertex,
                     graph_from_json, graph_to_json, orientability, topology,
                     trace_faces)
from .catalog import (GraphCatalogEntry, automorphism_count, canonical_code,
                      enumerate_graphs, labeled_pairing_sum, ribbon_classes)
from .sprinkle import (MuReport, UnitAlgebra, calibrate_irreducibles,
                       mu_bruteforce, mu_closed_form, mu_report)
from .series import (CouplingSeries, apply_duality, expand_logZ, expand_Z)
from .oracle import (MomentQuery, OracleReport, eigenvalue_moment,
                     isserlis_trace_moment, mc_estimate, oracle_compare)
from .penner import (ZSeries, I_series, J_series, K1_series, K2_series,
                     K_series, bernoulli, penner_substitute,
                     real_moduli_euler, real_moduli_graph_sum)
from .dualchar import (charpoly_lhs, charpoly_rhs, poincare_dual,
                       verify_polynomial_identity)
from .clt import CLTResult, clt_limit, verify_clt

__version__ = "0.1.0"

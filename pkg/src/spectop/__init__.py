"""Topological analysis of spectral spaces.

Finite spectral spaces are finite posets under the specialization order;
symbolic spaces cover the standard infinite examples.  The package
computes Cantor-Bendixson ranks, Hochster duals and patch topologies,
decides scatteredness and the T_D property, and issues cited verdicts on
the local-to-global principle and residue-field generation.
"""

from .analysis import (Analysis, FieldsGenerate, Ltg, RingMeta, Verdict,
                       analyze, evaluate, verdict_fields, verdict_ltg)
from .bench import BenchResult, cb_layering, longest_path_rank, run_bench
from .dsl import (CANTOR, COFAN, FAN, OMEGA_PLUS_ONE, Cantor, CoFan, Con,
                  Dual, Fan, Fin, OmegaPlusOne, SpaceExpr, Sum, Tower,
                  is_normal, normalize, parse_expr, print_expr)
from .errors import (ArityError, ConflictError, CycleError, EmptySpaceError,
                     ParseError, SizeError, SpectopError, UnknownLabelError)
from .gallery import (OMEGA, KnownTruth, RingEntry, catalog, curated_examples,
                      fan_ring, get_entry, idempotent_ring)
from .oracle import (ExplicitTopology, SuiteConfig, SuiteReport,
                     count_posets_by_relation_filter, downset_topology,
                     enumerate_labeled_posets, oracle_closure,
                     oracle_derivative, oracle_is_open, oracle_isolated,
                     oracle_rank, oracle_scattered, random_expr, random_poset,
                     run_property_suite)
from .ordinal import OMEGA as OMEGA_ORDINAL
from .ordinal import ONE, ZERO, Ordinal, compare, ordinal_max, parse_cnf
from .poset import (FinitePoset, Subspace, cb_derivative, cb_rank, closure,
                    construct_poset, dual_poset, export,
                    find_isolated_constructive, is_open, isolated_points,
                    scattered_via_closed_subsets, td_witness)

__version__ = "0.1.0"

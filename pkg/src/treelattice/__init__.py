"""Lattices in the automorphism group of a biregular tree, built from
edge-indexed star trees with exact rational arithmetic."""
from .indexed_graph import (EdgeIndexedGraph, GraphError, NonUnimodular, Ordering,
                            compute_ordering, covers_biregular, is_unimodular,
                            minimal_integral_ordering, to_dot, universal_cover_ball, validate)
from .grouping import (CoverMap, FiniteGrouping, Group, build_index_cover,
                       canonical_cyclic_grouping, cover_degree, covolume, is_effective_cyclic,
                       verify_cover, volume_ratio_check)
from .growth import (ball_growth, equivalent, is_acceptable, p_order, p_stabilizer_growth,
                     parse_growth, preceq, stabilizer_growth)
from .star_tree import (AdmissibleSequence, StarTreeSpec, admissible_indexing, build_Bp,
                        build_Bpq, build_star_ray, build_Tf, canonical_indexing,
                        covolume_bracket, covolume_exact, glue)
from .realize import (build_semidirect_tower, digit_sequence, kappa0, realize_covolume,
                      realize_covolume_growth, realize_full, sample_digit_sequences,
                      shrink_covolume)
from .kernels import BACKEND

__version__ = "0.1.0"

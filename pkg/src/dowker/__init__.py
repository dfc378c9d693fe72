"""Sparse Dowker nerves.

Filtered complexes from point clouds, dissimilarity matrices, and weighted
networks; greedy-order sparsification with certified multiplicative
interleaving; persistence over GF(2) with exact bottleneck distances.
"""

from .complexes import (FilteredComplex, build_dowker_nerve,
                        build_euclidean_cech, build_rips, build_sparse_cech,
                        build_sparse_cech_oracle, build_sparse_nerve,
                        miniball, simplex_radius)
from .dissimilarity import (Dissimilarity, Network, PointCloud, Relation,
                            from_network, from_point_cloud,
                            nearest_point_triangle_relation, sup_over,
                            verify_triangle_relation)
from .persistence import (PersistenceDiagram, bottleneck,
                          compute_persistence, multiplicative_bottleneck,
                          reduction_backend)
from .sampling import GreedyOrder, greedy_order, insertion_radii
from .sparsification import (ParentForest, SparsificationPlan, build_plan,
                             check_insertion_function,
                             check_sparsification_hypotheses,
                             parent_function, truncate)
from .stability import (Correspondence, distortion,
                        network_distance_bruteforce, verify_interleaving,
                        verify_morphism)
from .translation import TranslationMap, preset_alpha_beta

__version__ = "0.1.0"

__all__ = [
    "Correspondence",
    "Dissimilarity",
    "FilteredComplex",
    "GreedyOrder",
    "Network",
    "ParentForest",
    "PersistenceDiagram",
    "PointCloud",
    "Relation",
    "SparsificationPlan",
    "TranslationMap",
    "bottleneck",
    "build_dowker_nerve",
    "build_euclidean_cech",
    "build_plan",
    "build_rips",
    "build_sparse_cech",
    "build_sparse_cech_oracle",
    "build_sparse_nerve",
    "check_insertion_function",
    "check_sparsification_hypotheses",
    "compute_persistence",
    "distortion",
    "from_network",
    "from_point_cloud",
    "greedy_order",
    "insertion_radii",
    "miniball",
    "multiplicative_bottleneck",
    "nearest_point_triangle_relation",
    "network_distance_bruteforce",
    "parent_function",
    "preset_alpha_beta",
    "reduction_backend",
    "simplex_radius",
    "sup_over",
    "truncate",
    "verify_interleaving",
    "verify_morphism",
    "verify_triangle_relation",
]

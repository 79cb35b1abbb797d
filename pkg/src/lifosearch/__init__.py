"""Cycle-rank, LIFO-search games and their certificates."""

from .certificates import (LifoHaven, StrongShelter, build_shelter,
                           haven_to_fugitive_strategy, shelter_to_haven,
                           synthesize_search_script, verify_haven, verify_shelter)
from .cyclerank import (CertificateError, EliminationForest, EliminationNode,
                        cycle_rank, cycle_rank_decision, verify_elimination_forest)
from .digraph import Digraph, induced_subgraph, scc_decompose
from .formats import generate_random, GeneratorConfig, parse_dot_subset, parse_edge_list
from .game import (Position, SearchNumbers, Variant, all_search_numbers, play, solve,
                   verify_strategy)

__version__ = "0.1.0"

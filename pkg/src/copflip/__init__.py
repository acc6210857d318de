"""Generalised colouring numbers, cop-width and flip-width on small graphs."""

from .graph import FamilySpec, Graph, generate, mask_of, members, parse_graph, serialize_graph
from .ordering import VertexOrder, order_cost_scol, order_cost_wcol, reach_M, reach_Q, reach_R
from .colouring import degeneracy, scol_bruteforce, scol_exact, scol_greedy, wcol_exact
from .copgame import copwidth_decide, copwidth_exact
from .strategy import check_invariants, verify_all_robbers
from .flipgame import apply_flip, flipwidth_exact, isolating_flip, lift_cop_strategy, neighbourhood_diversity, pi_k

__version__ = "0.1.0"

"""Network evolution under oracle advice, solved as 0/1 knapsack."""

from .graph import DegreeStats, SignedDigraph, build_graph, clean, degree_stats, weak_components
from .knapsack import KnapsackInstance, KnapsackSolution, solve_bruteforce, solve_dp, solve_greedy
from .model import (
    BenefitDamage,
    NEInstance,
    NESolution,
    OracleAdvice,
    compute_benefit_damage,
    kp_to_ne,
    ne_to_kp,
    solve_ne,
)
from .netgen import GenSpec, generate, randomize_signs_directions
from .sim import SweepConfig, SweepResult, convergence_check, run_round, run_sweep, sample_advice

__version__ = "0.1.0"

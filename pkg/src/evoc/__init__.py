"""EVOC: agents on a grid that invent and imitate actions under fitness needs."""

from .actionspace import (
    N_ACTIONS,
    PARTS,
    Action,
    PartState,
    decode,
    encode,
    enumerate_all,
)
from .fitness import Need, NeedConfig, evaluate, fitness_combined, fitness_f1, fitness_f2
from .cognition import AgentState, TrendActivations, compute_trends, invent
from .world import Border, BroadcasterConfig, Topology, World, WorldConfig
from .engine import RunLog, SimConfig, SimState, init, run, step
from .metrics import MetricsFrame, aggregate, convergence_iteration, diversity, mean_fitness
from .errors import ConfigError, ContractError

__version__ = "0.1.0"

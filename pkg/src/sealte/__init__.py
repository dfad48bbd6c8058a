"""LTE downlink resource-block allocation over maritime channels.

Builds a two-port strait scenario, derives per-RB throughputs from 3-Ray
(evaporation duct) SINR, and compares exact max-min, round-robin and
opportunistic RB allocation by minimum throughput and Jain fairness.
"""

from .alloc import (
    BACKEND,
    AllocationResult,
    brute_force_oracle,
    maxmin_allocate,
    opportunistic_allocate,
    round_robin_allocate,
)
from .channel import PathLossModel, sinr_matrix
from .linkadapt import MCS_TABLE, select_mcs, throughput_matrix
from .metrics import build_report, jain_index, run_sweep
from .scenario import Scenario, build_bosphorus, load_config

__version__ = "0.1.0"

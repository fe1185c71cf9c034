"""Depth-k recovery protocol as an absorbing random walk.

A chain of ``k - 1`` circuits, each the recovery circuit of the previous
one, is a walk on {0..k} that starts at 1.  From position ``i`` it steps
left (circuit ``i`` succeeds) with probability ``Q_i`` and right
otherwise; 0 is success and ``k`` is failure.  Every step consumes one
resource ψ and every trial additionally pays ``d`` for preparing φ.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DegenerateConfigError
from .recovery import recovery_rate


@dataclass(frozen=True)
class ProtocolConfig:
    k: int
    d: float
    z: float = 0.0
    q1: float = 0.5
    trials: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 2:
            raise DegenerateConfigError(f"k must be an integer >= 2, got {self.k!r}")
        if not self.d >= 0:
            raise DegenerateConfigError(f"d must be non-negative, got {self.d!r}")
        if not -1.0 <= self.z <= 1.0:
            raise DegenerateConfigError(f"z must lie in [-1, 1], got {self.z!r}")
        if not 0.0 < self.q1 <= 1.0:
            raise DegenerateConfigError(f"q1 must lie in (0, 1], got {self.q1!r}")
        if int(self.trials) != self.trials or self.trials <= 0:
            raise DegenerateConfigError(f"trials must be a positive integer, got {self.trials!r}")
        if not 0 <= self.seed < 2**64:
            raise DegenerateConfigError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class ProtocolResult:
    config: ProtocolConfig
    successes: int
    total_cost: float
    n_k: float
    prob_sequence: list[float] = field(default_factory=list)
    std_error: float = math.nan


def probability_sequence(q1: float, z: float, count: int) -> list[float]:
    """``Q_1 = q1`` and ``Q_{i+1} = ((1 - z²)/4) / (1 - Q_i)``, ``count`` terms."""
    if count < 1:
        return []
    if not 0.0 < q1 <= 1.0 or not -1.0 <= z <= 1.0:
        raise DegenerateConfigError(f"need 0 < q1 <= 1 and |z| <= 1, got q1={q1}, z={z}")
    seq = [float(q1)]
    while len(seq) < count:
        q = seq[-1]
        if q >= 1.0:
            raise DegenerateConfigError("Q_i = 1 leaves nothing to recover from")
        nxt = recovery_rate(q, z)
        if nxt > 1.0:
            # only reachable when q1 is inconsistent with z (q1 > (1 + |z|)/2)
            raise DegenerateConfigError(
                f"recursion produced Q_{len(seq) + 1} = {nxt:.6g} > 1; q1={q1} is incompatible with z={z}"
            )
        seq.append(nxt)
    return seq


def _left_probabilities(config: ProtocolConfig) -> np.ndarray:
    return np.array(probability_sequence(config.q1, config.z, config.k - 1))


def absorption(q_left) -> tuple[float, float]:
    """Success probability and expected step count of a walk started at 1.

    Solves the two tridiagonal systems ``h_i = Q_i h_{i-1} + (1-Q_i) h_{i+1}``
    and ``T_i = 1 + Q_i T_{i-1} + (1-Q_i) T_{i+1}`` with absorbing ends.
    """
    q = np.asarray(q_left, dtype=float)
    m = q.shape[0]
    a = np.eye(m)
    for i in range(m):
        if i > 0:
            a[i, i - 1] = -q[i]
        if i < m - 1:
            a[i, i + 1] = -(1.0 - q[i])
    rhs_h = np.zeros(m)
    rhs_h[0] = q[0]
    h = np.linalg.solve(a, rhs_h)
    t = np.linalg.solve(a, np.ones(m))
    return float(h[0]), float(t[0])


def analytic_cost(config: ProtocolConfig) -> float:
    """Expected ψ cost per success, ``(d + E[steps]) / P[success]``."""
    q = _left_probabilities(config)
    if config.k == 2:
        # exact form (d + 1)/q1, no linear solve
        return float((config.d + 1.0) / q[0])
    p_success, steps = absorption(q)
    if p_success <= 0.0:
        raise DegenerateConfigError("the walk can never reach 0")
    return float((config.d + steps) / p_success)


def simulate(config: ProtocolConfig, return_trials: bool = False):
    """Monte Carlo estimate of ``N_k`` = total cost / number of successes.

    With ``return_trials`` the per-trial step counts and success flags are
    returned alongside the result.
    """
    q = _left_probabilities(config)
    steps, success = kernels.walk(config.seed, config.trials, q)
    successes = int(np.count_nonzero(success))
    total_steps = int(steps.sum())
    total_cost = config.d * config.trials + total_steps
    n_k = total_cost / successes if successes else math.inf
    result = ProtocolResult(
        config=config,
        successes=successes,
        total_cost=float(total_cost),
        n_k=n_k,
        prob_sequence=[float(x) for x in q],
        std_error=_ratio_std_error(config.d + steps, success) if successes else math.nan,
    )
    if return_trials:
        return result, steps, success
    return result


def _ratio_std_error(costs: np.ndarray, success: np.ndarray) -> float:
    # delta-method standard error of sum(costs) / sum(success)
    n = costs.shape[0]
    s = success.astype(float)
    ratio = costs.sum() / s.sum()
    resid = costs - ratio * s
    return float(np.sqrt(np.var(resid, ddof=1) / n) / s.mean())


def result_record(result: ProtocolResult) -> dict:
    """Flat record used by the CSV and JSON exports."""
    c = result.config
    return {
        "k": c.k,
        "d": c.d,
        "z": c.z,
        "q1": c.q1,
        "trials": c.trials,
        "seed": c.seed,
        "successes": result.successes,
        "total_cost": result.total_cost,
        "n_k_mc": result.n_k,
        "n_k_analytic": analytic_cost(c),
    }

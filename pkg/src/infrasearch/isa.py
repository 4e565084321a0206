"""Core update rules and main loop of the infrasonic search optimizer.

Each agent in the population broadcasts a sound power equal to its
normalised share of the population fitness; the intensity heard from a
neighbour decays with the squared spherical-area term of the pairwise
distance. Every iteration an agent picks its loudest neighbour, moves by
a random percentage (scaled by the attraction parameter ``rho``) of the
difference vector, carries a randomly faded memory of its past movement,
and any coordinate that leaves the box is re-drawn uniformly inside it.

All update rules are exposed as standalone functions so they can be
tested one at a time; ``run_isa`` wires them into the full loop.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .benchmarks import Bounds, Direction, Objective, get_objective

__all__ = [
    "SignMode",
    "IsaParams",
    "RunRecord",
    "RunCounters",
    "normalized_powers",
    "sound_intensity",
    "intensity_matrix",
    "select_target",
    "shift_positive",
    "attraction_percentage",
    "displacement",
    "update_movement",
    "step_position",
    "repair",
    "run_isa",
]


class SignMode(enum.Enum):
    """Sign convention of the displacement rule.

    ``ATTRACT`` moves an agent towards its loudest neighbour (the
    intended behaviour and the default); ``LITERAL`` keeps the printed
    ``(V_i - V_j)`` orientation, which pushes the agent away, and exists
    for fidelity experiments.
    """

    ATTRACT = "attract"
    LITERAL = "literal"


@dataclass(frozen=True)
class IsaParams:
    """Knobs of a single run.

    ``rho`` in [0, 100] scales the attraction percentage, ``epsilon_r``
    guards the intensity against co-located agents, and ``seed`` fixes
    the RNG stream so identical params give bit-identical runs.
    """

    rho: float = 50.0
    population_size: int = 50
    iterations: int = 1000
    seed: int = 42
    displacement_sign: SignMode = SignMode.ATTRACT
    epsilon_r: float = 1e-12

    def __post_init__(self):
        if not 0.0 <= self.rho <= 100.0:
            raise ValueError("rho must lie in [0, 100]")
        if self.population_size < 2:
            raise ValueError("population_size must be at least 2")
        if self.iterations < 1:
            raise ValueError("iterations must be positive")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.epsilon_r <= 0.0:
            raise ValueError("epsilon_r must be positive")


@dataclass
class RunRecord:
    """Outcome of one seeded run."""

    function_id: str
    seed: int
    rho: float
    best_position: np.ndarray
    best_fitness: float
    trajectory: np.ndarray
    elapsed: float

    def to_dict(self, include_elapsed: bool = True) -> dict:
        """JSON-ready form; drop ``elapsed_ms`` for byte-stable output."""
        out = {
            "function_id": self.function_id,
            "seed": self.seed,
            "rho": self.rho,
            "best_fitness": self.best_fitness,
            "best_position": [float(v) for v in self.best_position],
            "trajectory": [float(v) for v in self.trajectory],
        }
        if include_elapsed:
            out["elapsed_ms"] = self.elapsed * 1000.0
        return out


@dataclass
class RunCounters:
    """Instrumentation accumulated over a run."""

    intensity_evaluations: int = 0
    objective_evaluations: int = 0


def normalized_powers(fitnesses, direction: Direction) -> np.ndarray:
    """Sound power of each agent: normalised fitness shares summing to one.

    Raw fitnesses are first mapped to [0, 1] with the best agent at 1 and
    the worst at 0; shares are then normalised by their sum. When every
    agent has equal fitness the shares degenerate to the uniform 1/n.
    """
    f = np.asarray(fitnesses, dtype=float)
    n = f.shape[0]
    if n < 2:
        raise ValueError("population must hold at least two agents")
    if direction is Direction.MINIMISE:
        best, worst = f.min(), f.max()
    else:
        best, worst = f.max(), f.min()
    if best == worst:
        return np.full(n, 1.0 / n)
    p = (f - worst) / (best - worst)
    return p / p.sum()


def sound_intensity(power, distance, epsilon_r: float = 1e-12):
    """Intensity heard at ``distance`` from a source of the given power.

    The power is divided by the square of the spherical-area term
    ``4*pi*r^2``; ``epsilon_r`` is added to ``r^2`` so that co-located
    agents stay finite. Broadcasts over array inputs.
    """
    area = 4.0 * np.pi * (np.square(distance) + epsilon_r)
    return power / np.square(area)


def _distance_sq_matrix(positions: np.ndarray) -> np.ndarray:
    diff = positions[:, None, :] - positions[None, :, :]
    return np.sum(diff * diff, axis=-1)


def intensity_matrix(positions, powers, epsilon_r: float = 1e-12) -> np.ndarray:
    """Pairwise intensity heard by row agent i from column agent k.

    The diagonal (an agent listening to itself) is set to ``-inf`` so a
    row argmax picks the loudest neighbour directly.
    """
    positions = np.asarray(positions, dtype=float)
    powers = np.asarray(powers, dtype=float)
    r_sq = _distance_sq_matrix(positions)
    area = 4.0 * np.pi * (r_sq + epsilon_r)
    mat = powers[None, :] / np.square(area)
    np.fill_diagonal(mat, -np.inf)
    return mat


def select_target(index: int, positions, powers, epsilon_r: float = 1e-12) -> int:
    """Index of the loudest neighbour of agent ``index``; ties break low."""
    positions = np.asarray(positions, dtype=float)
    powers = np.asarray(powers, dtype=float)
    if positions.shape[0] < 2:
        raise ValueError("population must hold at least two agents")
    diff = positions - positions[index]
    r_sq = np.sum(diff * diff, axis=-1)
    heard = sound_intensity(powers, np.sqrt(r_sq), epsilon_r)
    heard[index] = -np.inf
    return int(np.argmax(heard))


def shift_positive(fitness_i, fitness_j):
    """Shift a fitness pair so both are positive, preserving their order.

    Ratios of raw fitnesses are meaningless across a sign change, so when
    either value is <= 0 both are translated by ``1 - min`` putting the
    smaller at exactly 1.
    """
    fi = np.asarray(fitness_i, dtype=float)
    fj = np.asarray(fitness_j, dtype=float)
    low = np.minimum(fi, fj)
    shift = np.where(low <= 0.0, 1.0 - low, 0.0)
    return fi + shift, fj + shift


def attraction_percentage(fitness_i, fitness_j, direction: Direction,
                          rho: float, u):
    """Percentage of the difference vector applied as displacement.

    The relative-quality ratio (target over the pair maximum when
    minimising, self over the maximum when maximising) plus a uniform
    draw in [0, 1), scaled by ``rho``. Inputs must already be positive;
    the result lies in [0, 2*rho]. Broadcasts over array inputs.
    """
    fi = np.asarray(fitness_i, dtype=float)
    fj = np.asarray(fitness_j, dtype=float)
    top = fj if direction is Direction.MINIMISE else fi
    ratio = top / np.maximum(fi, fj)
    return (ratio + u) * rho


def displacement(position, target_position, percentage,
                 sign_mode: SignMode = SignMode.ATTRACT):
    """Step of ``percentage`` percent of the difference vector.

    ``ATTRACT`` orients the step towards the target; ``LITERAL`` keeps
    the printed away-from-target orientation.
    """
    v_i = np.asarray(position, dtype=float)
    v_j = np.asarray(target_position, dtype=float)
    if v_i.shape != v_j.shape:
        raise ValueError("position and target must have equal shapes")
    diff = v_i - v_j if sign_mode is SignMode.LITERAL else v_j - v_i
    return diff * percentage / 100.0


def update_movement(previous_movement, new_displacement, u):
    """Movement with memory: a random fraction of the previous movement
    plus the fresh displacement. A single draw scales the whole vector."""
    return np.asarray(previous_movement, dtype=float) * u + new_displacement


def step_position(position, movement):
    """Next position: current position plus the movement vector."""
    return np.asarray(position, dtype=float) + movement


def _repair_population(positions: np.ndarray, bounds: Bounds,
                       rng: np.random.Generator) -> np.ndarray:
    low = np.broadcast_to(bounds.lower, positions.shape)
    high = np.broadcast_to(bounds.upper, positions.shape)
    out_of_box = (positions < low) | (positions > high)
    if out_of_box.any():
        draws = rng.random(int(out_of_box.sum()))
        positions = positions.copy()
        positions[out_of_box] = (
            low[out_of_box] + draws * (high[out_of_box] - low[out_of_box])
        )
    return positions


def repair(x, bounds: Bounds, rng: np.random.Generator) -> np.ndarray:
    """Replace every out-of-bounds coordinate with a uniform in-bounds draw.

    Bounds are closed: coordinates sitting exactly on a bound are kept.
    Draws are consumed in coordinate order and only for violations, so a
    fully in-bounds vector leaves the RNG stream untouched.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != len(bounds):
        raise ValueError("vector length must match bounds dimension")
    return _repair_population(np.atleast_2d(x), bounds, rng)[0] if x.ndim == 1 \
        else _repair_population(x, bounds, rng)


def _evaluate_population(obj: Objective, positions: np.ndarray,
                         rng: np.random.Generator) -> np.ndarray:
    if obj.batch:
        vals = obj.fn(positions, rng) if obj.stochastic else obj.fn(positions)
        return np.asarray(vals, dtype=float)
    if obj.stochastic:
        return np.array([float(obj.fn(x, rng)) for x in positions])
    return np.array([float(obj.fn(x)) for x in positions])


def run_isa(objective: Union[str, Objective], params: IsaParams,
            counters: Optional[RunCounters] = None) -> RunRecord:
    """Run the infrasonic search on one objective.

    The population starts uniform inside the bounds with zero movement
    memory. Each iteration evaluates all agents, updates the best-so-far,
    converts fitnesses to sound powers, points every agent at its loudest
    neighbour and applies the displacement / movement-memory / position
    update, then repairs out-of-box coordinates.

    The RNG stream is consumed in a fixed documented order: the initial
    positions (agent-major), then per iteration any objective noise
    (agent order), the attraction draws for all agents, the memory draws
    for all agents, and finally the repair draws (agent-major, coordinate
    order within an agent). Identical (objective, params) therefore give
    bit-identical records.
    """
    obj = get_objective(objective) if isinstance(objective, str) else objective
    spec = obj.spec
    bounds = spec.bounds
    direction = spec.direction
    minimise = direction is Direction.MINIMISE
    n = params.population_size
    rng = np.random.default_rng(params.seed)

    start = time.perf_counter()
    positions = bounds.lower + rng.random((n, spec.dimension)) * bounds.span
    movement = np.zeros_like(positions)
    trajectory = np.empty(params.iterations)
    best_fitness = np.inf if minimise else -np.inf
    best_position = positions[0].copy()

    for t in range(params.iterations):
        fitnesses = _evaluate_population(obj, positions, rng)
        lead = int(np.argmin(fitnesses) if minimise else np.argmax(fitnesses))
        if (fitnesses[lead] < best_fitness) if minimise else (fitnesses[lead] > best_fitness):
            best_fitness = float(fitnesses[lead])
            best_position = positions[lead].copy()
        trajectory[t] = best_fitness

        powers = normalized_powers(fitnesses, direction)
        heard = intensity_matrix(positions, powers, params.epsilon_r)
        targets = np.argmax(heard, axis=1)
        if counters is not None:
            counters.objective_evaluations += n
            counters.intensity_evaluations += n * (n - 1)

        fit_i, fit_j = shift_positive(fitnesses, fitnesses[targets])
        u_attract = rng.random(n)
        percent = attraction_percentage(fit_i, fit_j, direction,
                                        params.rho, u_attract)
        step = displacement(positions, positions[targets], percent[:, None],
                            params.displacement_sign)
        u_memory = rng.random(n)
        movement = update_movement(movement, step, u_memory[:, None])
        positions = step_position(positions, movement)
        positions = _repair_population(positions, bounds, rng)

    return RunRecord(
        function_id=spec.id,
        seed=params.seed,
        rho=params.rho,
        best_position=best_position,
        best_fitness=best_fitness,
        trajectory=trajectory,
        elapsed=time.perf_counter() - start,
    )

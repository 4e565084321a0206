"""Benchmark catalog: 23 classic box-constrained test functions.

The catalog covers the usual unimodal set (sphere, Schwefel variants,
Rosenbrock, step, noisy quartic) and multimodal set (Schwefel sine,
Rastrigin, Ackley, Griewank, the two penalized functions, Shekel's
foxholes, Kowalik, six-hump camel, Branin, Goldstein-Price, Hartmann 3/6
and the Shekel 5/7/10 family), each with its conventional search domain,
dimension and iteration/population budget, plus a registry for
user-supplied objectives.

All builtin functions accept an input of shape ``(d,)`` or a batch of
shape ``(m, d)`` and reduce over the last axis.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

__all__ = [
    "Direction",
    "Bounds",
    "ObjectiveSpec",
    "Objective",
    "evaluate",
    "spec_of",
    "get_objective",
    "register",
    "unregister",
    "function_ids",
    "builtin_ids",
    "optimum_position",
    "catalog",
]


class Direction(enum.Enum):
    """Optimization sense of an objective."""

    MINIMISE = "minimise"
    MAXIMISE = "maximise"


def _readonly(a) -> np.ndarray:
    out = np.array(a, dtype=float)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class Bounds:
    """Per-dimension closed box ``[lower_k, upper_k]``."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = _readonly(np.atleast_1d(self.lower))
        upper = _readonly(np.atleast_1d(self.upper))
        if lower.ndim != 1 or upper.ndim != 1 or lower.shape != upper.shape:
            raise ValueError("lower and upper must be 1-D with equal length")
        if not np.all(lower < upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def cube(cls, low: float, high: float, dimension: int) -> "Bounds":
        """Same interval in every dimension."""
        return cls(np.full(dimension, float(low)), np.full(dimension, float(high)))

    def __len__(self) -> int:
        return self.lower.shape[0]

    @property
    def span(self) -> np.ndarray:
        return self.upper - self.lower

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


@dataclass(frozen=True)
class ObjectiveSpec:
    """Identity, domain and default search budget of one objective."""

    id: str
    dimension: int
    bounds: Bounds
    direction: Direction = Direction.MINIMISE
    default_population: int = 50
    default_iterations: int = 1000
    known_optimum: Optional[float] = None

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        if len(self.bounds) != self.dimension:
            raise ValueError("bounds length must equal dimension")
        if self.default_population < 1 or self.default_iterations < 1:
            raise ValueError("population and iteration defaults must be positive")


@dataclass(frozen=True)
class Objective:
    """A spec together with its evaluation callback.

    ``stochastic`` marks callbacks that take an RNG stream as a second
    argument; ``batch`` marks callbacks that accept an ``(m, d)`` array.
    """

    spec: ObjectiveSpec
    fn: Callable
    stochastic: bool = False
    batch: bool = False


# --- constant tables (standard benchmark-literature values) -----------------

# Shekel's foxholes: 2 x 25 grid of hole centres.
FOXHOLES_A = _readonly(
    [
        np.tile([-32.0, -16.0, 0.0, 16.0, 32.0], 5),
        np.repeat([-32.0, -16.0, 0.0, 16.0, 32.0], 5),
    ]
)

# Kowalik least-squares data: 11 measurements, b given as inverse values.
KOWALIK_A = _readonly(
    [0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627,
     0.0456, 0.0342, 0.0323, 0.0235, 0.0246]
)
KOWALIK_B = _readonly(1.0 / np.array(
    [0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0]
))

# Hartmann 3- and 6-dimensional exponential wells.
HARTMANN_C = _readonly([1.0, 1.2, 3.0, 3.2])
HARTMANN3_A = _readonly([[3.0, 10.0, 30.0],
                         [0.1, 10.0, 35.0],
                         [3.0, 10.0, 30.0],
                         [0.1, 10.0, 35.0]])
HARTMANN3_P = _readonly([[0.3689, 0.1170, 0.2673],
                         [0.4699, 0.4387, 0.7470],
                         [0.1091, 0.8732, 0.5547],
                         [0.03815, 0.5743, 0.8828]])
HARTMANN6_A = _readonly([[10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
                         [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
                         [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
                         [17.0, 8.0, 0.05, 10.0, 0.1, 14.0]])
HARTMANN6_P = _readonly([[0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
                         [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
                         [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650],
                         [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381]])

# Shekel wells: rows are the 4-D well centres, c the well widths.
SHEKEL_A = _readonly([[4.0, 4.0, 4.0, 4.0],
                      [1.0, 1.0, 1.0, 1.0],
                      [8.0, 8.0, 8.0, 8.0],
                      [6.0, 6.0, 6.0, 6.0],
                      [3.0, 7.0, 3.0, 7.0],
                      [2.0, 9.0, 2.0, 9.0],
                      [5.0, 5.0, 3.0, 3.0],
                      [8.0, 1.0, 8.0, 1.0],
                      [6.0, 2.0, 6.0, 2.0],
                      [7.0, 3.6, 7.0, 3.6]])
SHEKEL_C = _readonly([0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5])


# --- function implementations ------------------------------------------------

def _f1(x):
    """Sphere: sum of squares. Min 0 at the origin."""
    return np.sum(x * x, axis=-1)


def _f2(x):
    """Sum plus product of absolute coordinates. Min 0 at the origin."""
    a = np.abs(x)
    return np.sum(a, axis=-1) + np.prod(a, axis=-1)


def _f3(x):
    """Sum of squared prefix sums (rotated ridge). Min 0 at the origin."""
    c = np.cumsum(x, axis=-1)
    return np.sum(c * c, axis=-1)


def _f4(x):
    """Largest absolute coordinate. Min 0 at the origin."""
    return np.max(np.abs(x), axis=-1)


def _f5(x):
    """Rosenbrock valley. Min 0 at the all-ones point."""
    head = x[..., :-1]
    tail = x[..., 1:]
    return np.sum(100.0 * (tail - head * head) ** 2 + (head - 1.0) ** 2, axis=-1)


def _f6(x):
    """Step function: squared floor of x + 0.5. Min 0 around the origin."""
    return np.sum(np.floor(x + 0.5) ** 2, axis=-1)


def _f7(x, rng):
    """Weighted quartic plus uniform noise in [0, 1); one draw per evaluation."""
    d = x.shape[-1]
    weights = np.arange(1, d + 1, dtype=float)
    base = np.sum(weights * x ** 4, axis=-1)
    return base + rng.random(size=np.shape(base))


def _f8(x):
    """Schwefel sine: sum of -x sin(sqrt|x|). Min near 420.9687 per coordinate."""
    return np.sum(-x * np.sin(np.sqrt(np.abs(x))), axis=-1)


def _f9(x):
    """Rastrigin. Min 0 at the origin."""
    return np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x) + 10.0, axis=-1)


def _f10(x):
    """Ackley. Min 0 at the origin."""
    d = x.shape[-1]
    quad = np.sqrt(np.sum(x * x, axis=-1) / d)
    wave = np.sum(np.cos(2.0 * np.pi * x), axis=-1) / d
    return -20.0 * np.exp(-0.2 * quad) - np.exp(wave) + 20.0 + np.e


def _f11(x):
    """Griewank. Min 0 at the origin."""
    d = x.shape[-1]
    idx = np.sqrt(np.arange(1, d + 1, dtype=float))
    return np.sum(x * x, axis=-1) / 4000.0 - np.prod(np.cos(x / idx), axis=-1) + 1.0


def _penalty(x, a, k, m):
    """Box penalty: zero on [-a, a], steep polynomial walls outside."""
    return np.sum(
        np.where(x > a, k * (x - a) ** m,
                 np.where(x < -a, k * (-x - a) ** m, 0.0)),
        axis=-1,
    )


def _f12(x):
    """First penalized function (sine of shifted coordinates). Min 0 at -1 everywhere."""
    d = x.shape[-1]
    y = 1.0 + (x + 1.0) / 4.0
    head = y[..., :-1]
    tail = y[..., 1:]
    core = (
        10.0 * np.sin(np.pi * y[..., 0]) ** 2
        + np.sum((head - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * tail) ** 2), axis=-1)
        + (y[..., -1] - 1.0) ** 2
    )
    return np.pi / d * core + _penalty(x, 10.0, 100.0, 4.0)


def _f13(x):
    """Second penalized function. Min 0 at the all-ones point."""
    core = (
        np.sin(3.0 * np.pi * x[..., 0]) ** 2
        + np.sum((x - 1.0) ** 2 * (1.0 + np.sin(3.0 * np.pi * x + 1.0) ** 2), axis=-1)
        + (x[..., -1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * x[..., -1]) ** 2)
    )
    return 0.1 * core + _penalty(x, 5.0, 100.0, 4.0)


def _f14(x):
    """Shekel's foxholes: 25 narrow wells on a 2-D grid. Min ~0.998 at (-32, -32)."""
    centres = FOXHOLES_A.T  # (25, 2)
    sixth = np.sum((x[..., None, :] - centres) ** 6, axis=-1)
    j = np.arange(1, 26, dtype=float)
    return 1.0 / (1.0 / 500.0 + np.sum(1.0 / (j + sixth), axis=-1))


def _f15(x):
    """Kowalik rational least squares, 4 parameters. Min ~3.075e-4."""
    x1, x2, x3, x4 = (x[..., k, None] for k in range(4))
    b = KOWALIK_B
    model = x1 * (b * b + b * x2) / (b * b + b * x3 + x4)
    return np.sum((KOWALIK_A - model) ** 2, axis=-1)


def _f16(x):
    """Six-hump camel back. Min -1.0316 at (+-0.08983, -+0.7126)."""
    x1, x2 = x[..., 0], x[..., 1]
    return (4.0 * x1 ** 2 - 2.1 * x1 ** 4 + x1 ** 6 / 3.0
            + x1 * x2 - 4.0 * x2 ** 2 + 4.0 * x2 ** 4)


def _f17(x):
    """Branin. Min ~0.397887 at (pi, 2.275) and two mirror basins."""
    x1, x2 = x[..., 0], x[..., 1]
    a = x2 - 5.1 / (4.0 * np.pi ** 2) * x1 ** 2 + 5.0 / np.pi * x1 - 6.0
    return a ** 2 + 10.0 * (1.0 - 1.0 / (8.0 * np.pi)) * np.cos(x1) + 10.0


def _f18(x):
    """Goldstein-Price. Min 3 at (0, -1)."""
    x1, x2 = x[..., 0], x[..., 1]
    first = 1.0 + (x1 + x2 + 1.0) ** 2 * (
        19.0 - 14.0 * x1 + 3.0 * x1 ** 2 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2 ** 2
    )
    second = 30.0 + (2.0 * x1 - 3.0 * x2) ** 2 * (
        18.0 - 32.0 * x1 + 12.0 * x1 ** 2 + 48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2 ** 2
    )
    return first * second


def _hartmann(x, a, p):
    sq = np.sum(a * (x[..., None, :] - p) ** 2, axis=-1)
    return -np.sum(HARTMANN_C * np.exp(-sq), axis=-1)


def _f19(x):
    """Hartmann 3-D. Min -3.86278."""
    return _hartmann(x, HARTMANN3_A, HARTMANN3_P)


def _f20(x):
    """Hartmann 6-D. Min -3.32237."""
    return _hartmann(x, HARTMANN6_A, HARTMANN6_P)


def _shekel(x, m):
    diff = x[..., None, :] - SHEKEL_A[:m]
    return -np.sum(1.0 / (np.sum(diff * diff, axis=-1) + SHEKEL_C[:m]), axis=-1)


def _f21(x):
    """Shekel with 5 wells. Min -10.1532 near (4, 4, 4, 4)."""
    return _shekel(x, 5)


def _f22(x):
    """Shekel with 7 wells. Min -10.4029 near (4, 4, 4, 4)."""
    return _shekel(x, 7)


def _f23(x):
    """Shekel with 10 wells. Min -10.5364 near (4, 4, 4, 4)."""
    return _shekel(x, 10)


# --- registry ----------------------------------------------------------------

# id -> (fn, dim, low, high, iterations, known_optimum, optimizer point)
_BUILTIN_ROWS = [
    ("F1", _f1, 30, -100.0, 100.0, 1000, 0.0, np.zeros(30)),
    ("F2", _f2, 30, -10.0, 10.0, 1000, 0.0, np.zeros(30)),
    ("F3", _f3, 30, -100.0, 100.0, 1000, 0.0, np.zeros(30)),
    ("F4", _f4, 30, -100.0, 100.0, 1000, 0.0, np.zeros(30)),
    ("F5", _f5, 30, -30.0, 30.0, 1000, 0.0, np.ones(30)),
    ("F6", _f6, 30, -100.0, 100.0, 1000, 0.0, np.zeros(30)),
    ("F7", _f7, 30, -1.28, 1.28, 1000, None, None),
    ("F8", _f8, 30, -500.0, 500.0, 1000, -12569.4866, np.full(30, 420.9687)),
    ("F9", _f9, 30, -5.12, 5.12, 1000, 0.0, np.zeros(30)),
    ("F10", _f10, 30, -32.0, 32.0, 1000, 0.0, np.zeros(30)),
    ("F11", _f11, 30, -600.0, 600.0, 1000, 0.0, np.zeros(30)),
    ("F12", _f12, 30, -50.0, 50.0, 1000, 0.0, np.full(30, -1.0)),
    ("F13", _f13, 30, -50.0, 50.0, 1000, 0.0, np.ones(30)),
    ("F14", _f14, 2, -65.53, 65.53, 500, 0.998004, np.array([-32.0, -32.0])),
    ("F15", _f15, 4, -5.0, 5.0, 500, 3.075e-4,
     np.array([0.192833, 0.190836, 0.123117, 0.135766])),
    ("F16", _f16, 2, -5.0, 5.0, 1000, -1.0316285, np.array([0.08983, -0.7126])),
    ("F17", _f17, 2, None, None, 500, 0.397887, np.array([np.pi, 2.275])),
    ("F18", _f18, 2, -5.0, 5.0, 500, 3.0, np.array([0.0, -1.0])),
    ("F19", _f19, 3, 0.0, 1.0, 500, -3.86278,
     np.array([0.114614, 0.555649, 0.852547])),
    ("F20", _f20, 6, 0.0, 1.0, 500, -3.32237,
     np.array([0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573])),
    ("F21", _f21, 4, 0.0, 10.0, 500, -10.1532, np.full(4, 4.0)),
    ("F22", _f22, 4, 0.0, 10.0, 500, -10.4029, np.full(4, 4.0)),
    ("F23", _f23, 4, 0.0, 10.0, 500, -10.5364, np.full(4, 4.0)),
]


def _build_registry():
    registry = {}
    optima = {}
    for fid, fn, dim, low, high, iters, known, point in _BUILTIN_ROWS:
        if fid == "F17":  # rectangular domain, not a cube
            bounds = Bounds(np.array([-5.0, 0.0]), np.array([10.0, 15.0]))
        else:
            bounds = Bounds.cube(low, high, dim)
        spec = ObjectiveSpec(
            id=fid,
            dimension=dim,
            bounds=bounds,
            direction=Direction.MINIMISE,
            default_population=50,
            default_iterations=iters,
            known_optimum=known,
        )
        registry[fid] = Objective(spec, fn, stochastic=(fid == "F7"), batch=True)
        if point is not None:
            optima[fid] = _readonly(point)
    return registry, optima


_REGISTRY, _OPTIMUM_POSITIONS = _build_registry()
_BUILTIN_IDS = tuple(_REGISTRY)


def builtin_ids() -> tuple:
    """Ids of the 23 builtin benchmark functions, in catalog order."""
    return _BUILTIN_IDS


def function_ids() -> list:
    """All currently addressable ids: builtins first, then registered."""
    return list(_REGISTRY)


def get_objective(fid: str) -> Objective:
    """Look up a registered objective; unknown ids raise ``KeyError``."""
    try:
        return _REGISTRY[fid]
    except KeyError:
        raise KeyError(f"unknown function id {fid!r}") from None


def spec_of(fid: str) -> ObjectiveSpec:
    """Full spec of a function id."""
    return get_objective(fid).spec


def optimum_position(fid: str) -> Optional[np.ndarray]:
    """Literature optimizer point of a builtin, if one is catalogued."""
    get_objective(fid)
    return _OPTIMUM_POSITIONS.get(fid)


def register(spec: ObjectiveSpec, fn: Callable, *, stochastic: bool = False,
             batch: bool = False) -> str:
    """Add a user objective to the registry and return its id.

    ``fn`` takes a ``(d,)`` vector (and an RNG stream when ``stochastic``)
    and returns a scalar. Duplicate ids raise ``ValueError``.
    """
    if spec.id in _REGISTRY:
        raise ValueError(f"function id {spec.id!r} is already registered")
    _REGISTRY[spec.id] = Objective(spec, fn, stochastic=stochastic, batch=batch)
    return spec.id


def unregister(fid: str) -> None:
    """Remove a user-registered objective; builtins cannot be removed."""
    if fid in _BUILTIN_IDS:
        raise ValueError(f"builtin function {fid!r} cannot be unregistered")
    _REGISTRY.pop(fid, None)


def evaluate(fid: str, x, rng: Optional[np.random.Generator] = None) -> float:
    """Evaluate function ``fid`` at point ``x``.

    ``x`` must be a vector of the function's dimension; it does not have
    to lie inside the bounds. Stochastic functions (F7) require an
    explicit RNG stream so that runs stay reproducible.
    """
    obj = get_objective(fid)
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != obj.spec.dimension:
        raise ValueError(
            f"{fid} expects a vector of length {obj.spec.dimension}, "
            f"got shape {x.shape}"
        )
    if obj.stochastic:
        if rng is None:
            raise ValueError(f"{fid} is stochastic and requires an rng stream")
        return float(obj.fn(x, rng))
    return float(obj.fn(x))


def catalog() -> list:
    """JSON-ready catalog: one dict per known function."""
    rows = []
    for fid, obj in _REGISTRY.items():
        spec = obj.spec
        rows.append(
            {
                "id": spec.id,
                "dimension": spec.dimension,
                "bounds": [[float(lo), float(hi)]
                           for lo, hi in zip(spec.bounds.lower, spec.bounds.upper)],
                "direction": spec.direction.value,
                "defaults": {
                    "population": spec.default_population,
                    "iterations": spec.default_iterations,
                },
                "known_optimum": spec.known_optimum,
            }
        )
    return rows

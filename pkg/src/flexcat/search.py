"""Landscape scans, derivative-free optimizers, and the conjecture harness.

Catalysts of dimension 2 are parameterized by a single weight: sorted
states (1-c, c) with c in [0, 0.5] for majorization searches, and plain
states (c, 1-c) with c in [0, 1] (ground-level population) in the thermal
setting. Grid cells are independent pure evaluations; scans may be chunked
across threads (FLEXCAT_THREADS, default all cores) without changing any
result because chunks are aggregated in index order.
"""

from __future__ import annotations

import json
import math
import os
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .errors import BadRange, DimensionMismatch, SamplingFailed, WrongDimension
from .majorize import incomparable, vidal_probability
from .probvec import (
    CMP_TOL,
    Cycle,
    ProbVec,
    SchmidtVec,
    as_prob_vec,
    as_schmidt_vec,
    sort_desc,
    tensor,
)
from .thermo import (
    dominance_diagonal,
    dominance_matrix,
    gibbs_vector,
    lorenz_breakpoints_batch,
)

PARAM_PRECISION = 1e-6


@dataclass(frozen=True)
class GridSpec:
    """Axis bounds and point counts for a rectangular 2-D scan."""

    lo1: float
    hi1: float
    lo2: float
    hi2: float
    steps1: int
    steps2: int

    def __post_init__(self) -> None:
        if not (self.lo1 < self.hi1 and self.lo2 < self.hi2):
            raise BadRange("axis bounds must satisfy lo < hi")
        if self.steps1 < 2 or self.steps2 < 2:
            raise BadRange("each axis needs at least 2 grid points")

    def axis1(self) -> np.ndarray:
        return np.linspace(self.lo1, self.hi1, self.steps1)

    def axis2(self) -> np.ndarray:
        return np.linspace(self.lo2, self.hi2, self.steps2)


@dataclass(frozen=True)
class LandscapeGrid:
    """Row-major scan result: values[i, j] belongs to (axis1[i], axis2[j])."""

    spec: GridSpec
    values: np.ndarray
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in ("probability", "feasibility"):
            raise BadRange(f"unknown landscape kind {self.kind!r}")
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.spec.steps1, self.spec.steps2):
            raise DimensionMismatch(
                f"values shape {vals.shape} != grid {(self.spec.steps1, self.spec.steps2)}"
            )
        if self.kind == "probability" and (vals.min() < -1e-12 or vals.max() > 1 + 1e-12):
            raise BadRange("probability values must lie in [0, 1]")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class OptResult:
    """Optimizer outcome; value is the objective re-evaluated at params."""

    params: tuple[float, ...]
    value: float
    iterations: int


DEFAULT_ENT_GRID = GridSpec(0.0, 0.5, 0.0, 0.5, 201, 201)
DEFAULT_THERMO_GRID = GridSpec(0.0, 1.0, 0.0, 1.0, 401, 401)


def _worker_count() -> int:
    env = os.environ.get("FLEXCAT_THREADS", "").strip()
    if env:
        try:
            n = int(env)
        except ValueError as exc:
            raise BadRange(f"FLEXCAT_THREADS must be an integer, got {env!r}") from exc
        return max(1, n)
    return os.cpu_count() or 1


def _chunked_rows(total: int, compute: Callable[[int, int], np.ndarray]) -> np.ndarray:
    """Evaluate row blocks [lo, hi) possibly in parallel, concatenated in order."""
    workers = min(_worker_count(), total)
    if workers <= 1:
        return compute(0, total)
    edges = np.linspace(0, total, workers + 1).astype(int)
    spans = [(int(lo), int(hi)) for lo, hi in zip(edges, edges[1:]) if hi > lo]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda span: compute(*span), spans))
    return np.concatenate(parts, axis=0)


# ---------------------------------------------------------------------------
# entanglement scans (k = 2)
# ---------------------------------------------------------------------------


def _sorted_tensor_rows(v: np.ndarray, cs: np.ndarray) -> np.ndarray:
    """Rows of v ⊗ (1-c, c) for each c, sorted non-increasingly."""
    rows = np.concatenate([v[None, :] * (1.0 - cs)[:, None], v[None, :] * cs[:, None]], axis=1)
    rows.sort(axis=1)
    return rows[:, ::-1]


def _prefix_matrix(v: np.ndarray, cs: np.ndarray) -> np.ndarray:
    return np.cumsum(_sorted_tensor_rows(v, cs), axis=1)


def _tail_matrix(v: np.ndarray, cs: np.ndarray) -> np.ndarray:
    rows = _sorted_tensor_rows(v, cs)
    return np.cumsum(rows[:, ::-1], axis=1)[:, ::-1]


def _min_tail_ratio(sx: np.ndarray, sy: np.ndarray) -> np.ndarray:
    """P[i, j] = min_l sx[i, l] / sy[j, l], skipping empty target tails."""

    def block(lo: int, hi: int) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            r = sx[lo:hi, None, :] / sy[None, :, :]
        r = np.where(sy[None, :, :] == 0.0, np.inf, r)
        return r.min(axis=2)

    return _chunked_rows(sx.shape[0], block)


def _majorization_matrix(px: np.ndarray, py: np.ndarray) -> np.ndarray:
    """M[i, j] = row i of px is prefix-dominated by row j of py."""

    def block(lo: int, hi: int) -> np.ndarray:
        return np.all(px[lo:hi, None, :-1] <= py[None, :, :-1] + CMP_TOL, axis=2)

    return _chunked_rows(px.shape[0], block)


def per_step_probability(
    x: SchmidtVec | Sequence[float], y: SchmidtVec | Sequence[float], cycle: Cycle
) -> float:
    """Geometric mean of the per-step conversion probabilities around a cycle."""
    sx = as_schmidt_vec(x)
    sy = as_schmidt_vec(y)
    factors = []
    for ci, cj in cycle.pairs():
        p = vidal_probability(sort_desc(tensor(sx, ci)), sort_desc(tensor(sy, cj)))
        if p == 0.0:
            return 0.0
        factors.append(p)
    return math.prod(factors) ** (1.0 / cycle.n)


def _check_ent_range(spec: GridSpec) -> None:
    if spec.hi1 > 0.5 or spec.hi2 > 0.5:
        raise BadRange("catalyst weight above 0.5 breaks sortedness of (1-c, c)")
    if spec.lo1 < 0.0 or spec.lo2 < 0.0:
        raise BadRange("catalyst weight must be non-negative")


def scan_pflex_landscape(
    x: SchmidtVec | Sequence[float], y: SchmidtVec | Sequence[float], spec: GridSpec
) -> LandscapeGrid:
    """Per-step probability of the 2-cycle [(1-c1, c1), (1-c2, c2)] on a grid."""
    _check_ent_range(spec)
    vx = as_schmidt_vec(x).as_array()
    vy = as_schmidt_vec(y).as_array()
    a1 = spec.axis1()
    a2 = spec.axis2()
    p_fwd = _min_tail_ratio(_tail_matrix(vx, a1), _tail_matrix(vy, a2))
    p_bwd = _min_tail_ratio(_tail_matrix(vx, a2), _tail_matrix(vy, a1))
    values = np.sqrt(np.clip(p_fwd, 0.0, 1.0) * np.clip(p_bwd, 0.0, 1.0).T)
    return LandscapeGrid(spec, np.clip(values, 0.0, 1.0), "probability")


def _search_directions(dims: int) -> list[tuple[float, ...]]:
    """Coordinate moves plus, beyond 1-D, the two all-coordinates diagonals.

    The diagonal moves keep the ascent from stalling on ridge-aligned optima
    (the per-step objective is symmetric in its parameters, so its maxima
    often sit on such ridges).
    """
    directions: list[tuple[float, ...]] = []
    for i in range(dims):
        unit = [0.0] * dims
        unit[i] = 1.0
        directions.append(tuple(unit))
        directions.append(tuple(-v for v in unit))
    if dims > 1:
        directions.append(tuple([1.0] * dims))
        directions.append(tuple([-1.0] * dims))
    return directions


def _pattern_search(
    f: Callable[[Sequence[float]], float],
    start: Sequence[float],
    step: float,
    bounds: Sequence[tuple[float, float]],
    min_step: float = PARAM_PRECISION,
) -> tuple[tuple[float, ...], float, int]:
    """Shrinking-step compass ascent; only strict improvements move."""
    params = [float(v) for v in start]
    value = f(params)
    evals = 1
    directions = _search_directions(len(params))
    while step > min_step:
        best_val = value
        best = None
        for direction in directions:
            cand = [
                min(max(p + step * dv, lo), hi)
                for p, dv, (lo, hi) in zip(params, direction, bounds)
            ]
            if cand == params:
                continue
            v = f(cand)
            evals += 1
            if v > best_val:
                best_val = v
                best = cand
        if best is None:
            step /= 2.0
        else:
            params, value = best, best_val
    return tuple(params), value, evals


def best_standard(
    x: SchmidtVec | Sequence[float], y: SchmidtVec | Sequence[float], resolution: float = 0.0025
) -> OptResult:
    """Best constant catalyst (1-c, c): grid scan of c plus local refinement."""
    if not 0.0 < resolution <= 0.5:
        raise BadRange("resolution must lie in (0, 0.5]")
    vx = as_schmidt_vec(x)
    vy = as_schmidt_vec(y)
    cs = np.linspace(0.0, 0.5, int(round(0.5 / resolution)) + 1)
    sx = _tail_matrix(vx.as_array(), cs)
    sy = _tail_matrix(vy.as_array(), cs)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = sx / sy
    ratios = np.where(sy == 0.0, np.inf, ratios)
    diag = np.clip(ratios.min(axis=1), 0.0, 1.0)
    start = int(np.argmax(diag))

    def objective(params: Sequence[float]) -> float:
        c = params[0]
        return per_step_probability(vx, vy, Cycle((SchmidtVec((1.0 - c, c)),)))

    params, value, evals = _pattern_search(
        objective, [float(cs[start])], float(cs[1] - cs[0]), [(0.0, 0.5)]
    )
    return OptResult(params, value, evals)


def best_flexible(
    x: SchmidtVec | Sequence[float],
    y: SchmidtVec | Sequence[float],
    spec: GridSpec = DEFAULT_ENT_GRID,
) -> OptResult:
    """Best 2-cycle of catalysts: global grid argmax plus local refinement.

    The objective is symmetric under swapping the two weights; the returned
    params are canonicalized to non-increasing order.
    """
    vx = as_schmidt_vec(x)
    vy = as_schmidt_vec(y)
    grid = scan_pflex_landscape(vx, vy, spec)
    flat = int(np.argmax(grid.values))  # ties break at the lowest row-major index
    i, j = divmod(flat, spec.steps2)
    a1 = spec.axis1()
    a2 = spec.axis2()

    def objective(params: Sequence[float]) -> float:
        c1, c2 = params
        cycle = Cycle((SchmidtVec((1.0 - c1, c1)), SchmidtVec((1.0 - c2, c2))))
        return per_step_probability(vx, vy, cycle)

    pitch = max(float(a1[1] - a1[0]), float(a2[1] - a2[0]))
    bounds = [(spec.lo1, spec.hi1), (spec.lo2, spec.hi2)]
    params, value, evals = _pattern_search(objective, [float(a1[i]), float(a2[j])], pitch, bounds)
    # constant cycles lie on the grid diagonal, so the result must never fall
    # below a matching-resolution constant-catalyst search
    if spec.lo1 == spec.lo2 == 0.0 and spec.hi1 == spec.hi2 == 0.5 and spec.steps1 == spec.steps2:
        std = best_standard(x, y, resolution=pitch)
        evals += std.iterations
        if std.value > value:
            params, value = (std.params[0], std.params[0]), std.value
    elif spec.lo1 == spec.lo2 and spec.hi1 == spec.hi2 and spec.steps1 == spec.steps2:
        diag_start = int(np.argmax(np.diagonal(grid.values)))
        diag_params, diag_value, diag_evals = _pattern_search(
            lambda prm: objective([prm[0], prm[0]]),
            [float(a1[diag_start])],
            pitch,
            [(spec.lo1, spec.hi1)],
        )
        evals += diag_evals
        if diag_value > value:
            params, value = (diag_params[0], diag_params[0]), diag_value
    ordered = tuple(sorted(params, reverse=True))
    return OptResult(ordered, objective(ordered), evals + 1)


# ---------------------------------------------------------------------------
# thermal scans (k = 2, states (c, 1-c))
# ---------------------------------------------------------------------------


def _thermo_rows(v: np.ndarray, cs: np.ndarray) -> np.ndarray:
    """Rows of v ⊗ (c, 1-c) in composite index order (system major)."""
    weights = np.stack([cs, 1.0 - cs], axis=1)
    return (v[None, :, None] * weights[:, None, :]).reshape(len(cs), 2 * len(v))


def _composite_gamma(levels_s: Sequence[float], levels_c: Sequence[float], beta: float) -> np.ndarray:
    gs = gibbs_vector(levels_s, beta).as_array()
    gc = gibbs_vector(levels_c, beta).as_array()
    return np.outer(gs, gc).ravel()


def scan_thermo_feasibility(
    p: ProbVec | Sequence[float],
    q: ProbVec | Sequence[float],
    levels_s: Sequence[float],
    levels_c: Sequence[float],
    beta: float,
    spec: GridSpec = DEFAULT_THERMO_GRID,
) -> LandscapeGrid:
    """Feasibility (1.0/0.0) of the thermal 2-cycle [(c1, 1-c1), (c2, 1-c2)]."""
    vp = as_prob_vec(p).as_array()
    vq = as_prob_vec(q).as_array()
    if len(levels_s) != len(vp) or len(vp) != len(vq):
        raise DimensionMismatch("states and system levels must share dimension")
    if len(levels_c) != 2:
        raise DimensionMismatch("catalyst parameterization needs exactly 2 levels")
    gamma = _composite_gamma(levels_s, levels_c, beta)
    a1 = spec.axis1()
    a2 = spec.axis2()
    xp1, yp1 = lorenz_breakpoints_batch(_thermo_rows(vp, a1), gamma)
    xp2, yp2 = lorenz_breakpoints_batch(_thermo_rows(vp, a2), gamma)
    xq1, yq1 = lorenz_breakpoints_batch(_thermo_rows(vq, a1), gamma)
    xq2, yq2 = lorenz_breakpoints_batch(_thermo_rows(vq, a2), gamma)

    fwd = _chunked_rows(len(a1), lambda lo, hi: dominance_matrix(xp1[lo:hi], yp1[lo:hi], xq2, yq2))
    bwd = _chunked_rows(len(a2), lambda lo, hi: dominance_matrix(xp2[lo:hi], yp2[lo:hi], xq1, yq1))
    feasible = fwd & bwd.T
    return LandscapeGrid(spec, feasible.astype(float), "feasibility")


def scan_thermo_standard(
    p: ProbVec | Sequence[float],
    q: ProbVec | Sequence[float],
    levels_s: Sequence[float],
    levels_c: Sequence[float],
    beta: float,
    num: int = 1001,
) -> np.ndarray:
    """Feasibility of constant thermal catalysts (c, 1-c) on a diagonal grid.

    Returns a boolean vector over c = linspace(0, 1, num).
    """
    vp = as_prob_vec(p).as_array()
    vq = as_prob_vec(q).as_array()
    if len(levels_s) != len(vp) or len(vp) != len(vq):
        raise DimensionMismatch("states and system levels must share dimension")
    if len(levels_c) != 2:
        raise DimensionMismatch("catalyst parameterization needs exactly 2 levels")
    gamma = _composite_gamma(levels_s, levels_c, beta)
    cs = np.linspace(0.0, 1.0, num)
    xp, yp = lorenz_breakpoints_batch(_thermo_rows(vp, cs), gamma)
    xq, yq = lorenz_breakpoints_batch(_thermo_rows(vq, cs), gamma)
    return dominance_diagonal(xp, yp, xq, yq)


# ---------------------------------------------------------------------------
# random instances and the conjecture harness
# ---------------------------------------------------------------------------

MAX_SAMPLE_ATTEMPTS = 100_000


def _draw_sorted_simplex(rng: np.random.Generator, d: int) -> SchmidtVec:
    draws = rng.exponential(1.0, d)
    vec = np.sort(draws / draws.sum())[::-1]
    return SchmidtVec(tuple(vec))


def _sample_incomparable(rng: np.random.Generator, d: int) -> tuple[SchmidtVec, SchmidtVec, int]:
    for attempt in range(1, MAX_SAMPLE_ATTEMPTS + 1):
        x = _draw_sorted_simplex(rng, d)
        y = _draw_sorted_simplex(rng, d)
        if incomparable(x, y):
            return x, y, attempt
    raise SamplingFailed(f"no incomparable pair in {MAX_SAMPLE_ATTEMPTS} attempts")


def sample_incomparable_pair(rng_seed: int, d: int) -> tuple[SchmidtVec, SchmidtVec]:
    """Deterministic incomparable pair of sorted flat-simplex samples."""
    if d < 3:
        raise WrongDimension("incomparable pairs need dimension >= 3")
    x, y, _ = _sample_incomparable(np.random.default_rng(rng_seed), d)
    return x, y


@dataclass(frozen=True)
class ConjectureCandidate:
    """Instance where a flexible cycle was found but no standard catalyst."""

    trial: int
    x: tuple[float, ...]
    y: tuple[float, ...]
    cycle_weights: tuple[float, ...]
    best_standard_weight: float
    best_standard_margin: float


@dataclass(frozen=True)
class ConjectureReport:
    """Summary of a random-instance search for flexible-only transformations."""

    trials: int
    seed: int
    d: int
    k: int
    n: int
    resolution: float
    raw_pairs_drawn: int
    flexible_feasible_trials: int
    standard_on_grid_trials: int
    standard_by_refinement_trials: int
    candidates: tuple[ConjectureCandidate, ...]

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))


def _standard_margin(px: np.ndarray, py: np.ndarray, c: float) -> float:
    """Worst prefix-sum slack of x⊗(1-c,c) against y⊗(1-c,c); >= 0 means feasible."""
    left = np.concatenate([px * (1.0 - c), px * c])
    right = np.concatenate([py * (1.0 - c), py * c])
    left.sort()
    right.sort()
    diffs = np.cumsum(right[::-1]) - np.cumsum(left[::-1])
    return float(diffs[:-1].min())


def _bool_power(m: np.ndarray, n: int) -> np.ndarray:
    out = m.copy()
    for _ in range(n - 1):
        out = (out.astype(np.uint8) @ m.astype(np.uint8)) > 0
    return out


def _reconstruct_cycle(m: np.ndarray, n: int) -> list[int]:
    """Lowest-index closed walk of length n in the step-feasibility digraph."""
    powers = [np.eye(m.shape[0], dtype=bool)]
    for _ in range(n):
        powers.append((powers[-1].astype(np.uint8) @ m.astype(np.uint8)) > 0)
    start = int(np.flatnonzero(np.diagonal(powers[n]))[0])
    walk = [start]
    current = start
    for remaining in range(n - 1, 0, -1):
        nexts = np.flatnonzero(m[current] & powers[remaining][:, start])
        current = int(nexts[0])
        walk.append(current)
    return walk


def conjecture_search(
    trials: int,
    seed: int,
    d: int = 4,
    grid_resolution: float = 0.005,
    k: int = 2,
    n: int = 2,
) -> ConjectureReport:
    """Search random incomparable pairs for flexible-only transformations.

    Per trial: draw an incomparable pair, grid-search length-n cycles of
    2-dimensional catalysts, and whenever a cycle exists also search the
    constant-catalyst diagonal (same grid plus shrinking-step refinement).
    Trials where the cycle succeeds but every constant catalyst fails are
    reported as candidates with full reproduction data.
    """
    if k != 2:
        raise WrongDimension("only 2-dimensional catalyst grids are implemented")
    if n < 1:
        raise BadRange("cycle length must be at least 1")
    if trials < 0:
        raise BadRange("trials must be non-negative")
    cs = np.linspace(0.0, 0.5, int(round(0.5 / grid_resolution)) + 1)
    raw_pairs = 0
    flexible_trials = 0
    standard_grid = 0
    standard_refined = 0
    candidates: list[ConjectureCandidate] = []
    for trial in range(trials):
        rng = np.random.default_rng((seed, trial))
        x, y, attempts = _sample_incomparable(rng, d)
        raw_pairs += attempts
        px = x.as_array()
        py = y.as_array()
        m = _majorization_matrix(_prefix_matrix(px, cs), _prefix_matrix(py, cs))
        if not bool(np.diagonal(_bool_power(m, n)).any()):
            continue
        flexible_trials += 1
        diag = np.diagonal(m)
        if bool(diag.any()):
            standard_grid += 1
            continue
        margins = np.array([_standard_margin(px, py, c) for c in cs])
        start = float(cs[int(np.argmax(margins))])
        params, margin, _ = _pattern_search(
            lambda prm: _standard_margin(px, py, prm[0]),
            [start],
            float(cs[1] - cs[0]),
            [(0.0, 0.5)],
        )
        if margin >= -CMP_TOL:
            standard_refined += 1
            continue
        walk = _reconstruct_cycle(m, n)
        candidates.append(
            ConjectureCandidate(
                trial=trial,
                x=x.values,
                y=y.values,
                cycle_weights=tuple(float(cs[i]) for i in walk),
                best_standard_weight=params[0],
                best_standard_margin=margin,
            )
        )
    return ConjectureReport(
        trials=trials,
        seed=seed,
        d=d,
        k=k,
        n=n,
        resolution=grid_resolution,
        raw_pairs_drawn=raw_pairs,
        flexible_feasible_trials=flexible_trials,
        standard_on_grid_trials=standard_grid,
        standard_by_refinement_trials=standard_refined,
        candidates=tuple(candidates),
    )

"""Comparison solvers sharing the tour/matrix substrate: a genetic algorithm
(order crossover, swap mutation, tournament selection, elitism) and
simulated annealing (random 2-opt reversal neighborhood, Metropolis
acceptance, geometric cooling). Both are deterministic per seed.
"""

from __future__ import annotations

import math
import random
import statistics
import time
from dataclasses import dataclass

from .errors import ConfigError
from .instance import (
    Instance,
    Tour,
    build_distance_matrix,
    canonicalize,
    cycle_length,
    random_tour,
    tour_length,
)
from .pso import RunResult


@dataclass(frozen=True)
class GaConfig:
    population: int = 50
    generations: int = 200
    crossover_rate: float = 0.9
    mutation_rate: float = 0.2
    tournament_k: int = 3
    elitism: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.population < 1 or self.generations < 1:
            raise ConfigError("population and generations must be >= 1")
        if not 0.0 <= self.crossover_rate <= 1.0 or not 0.0 <= self.mutation_rate <= 1.0:
            raise ConfigError("crossover_rate and mutation_rate must be in [0, 1]")
        if not 1 <= self.tournament_k <= self.population:
            raise ConfigError("tournament_k must be in 1..population")
        if not 0 <= self.elitism <= self.population:
            raise ConfigError("elitism must be in 0..population")


@dataclass(frozen=True)
class SaConfig:
    initial_temp: float | None = None  # None = AUTO (spread of sampled deltas)
    cooling: float = 0.995
    iters_per_temp: int | None = None  # None = n^2
    min_temp: float = 1e-3
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.cooling < 1.0:
            raise ConfigError("cooling must be in (0, 1)")
        if self.min_temp <= 0:
            raise ConfigError("min_temp must be > 0")
        if self.initial_temp is not None:
            if self.initial_temp <= 0:
                raise ConfigError("initial_temp must be > 0 (or None for AUTO)")
            if self.min_temp >= self.initial_temp:
                raise ConfigError("min_temp must be below initial_temp")
        if self.iters_per_temp is not None and self.iters_per_temp < 1:
            raise ConfigError("iters_per_temp must be >= 1 when set")


def order_crossover(p1: Tour, p2: Tour, cut_l: int, cut_r: int) -> Tour:
    """OX1: the child keeps p1[cut_l:cut_r] in place; remaining positions are
    filled cyclically from position cut_r with p2's cities in cyclic order
    starting at index cut_r, skipping cities already present."""
    n = len(p1)
    if len(p2) != n:
        raise ValueError(f"parent sizes differ: {n} vs {len(p2)}")
    if not 0 <= cut_l < cut_r <= n:
        raise ValueError(f"cuts must satisfy 0 <= cut_l < cut_r <= n, got ({cut_l}, {cut_r})")
    segment = p1[cut_l:cut_r]
    placed = set(segment)
    fill = tuple(city for city in p2[cut_r:] + p2[:cut_r] if city not in placed)
    wrap = n - cut_r  # cities that land on positions cut_r..n-1
    return fill[wrap:] + segment + fill[:wrap]


def swap_mutation(t: Tour, rng: random.Random) -> Tour:
    """Swap two distinct uniform positions (two draws: first position, then
    an offset that skips it)."""
    n = len(t)
    if n < 2:
        raise ValueError("swap mutation needs at least two cities")
    i = rng.randrange(n)
    j = rng.randrange(n - 1)
    if j >= i:
        j += 1
    order = list(t)
    order[i], order[j] = order[j], order[i]
    return tuple(order)


def _tournament(costs: list[float], k: int, rng: random.Random) -> int:
    """Index of the best of k uniformly drawn candidates (with replacement);
    cost ties go to the lower population index."""
    best = rng.randrange(len(costs))
    for _ in range(k - 1):
        c = rng.randrange(len(costs))
        if (costs[c], c) < (costs[best], best):
            best = c
    return best


def run_ga(instance: Instance, cfg: GaConfig) -> RunResult:
    """Generational GA. Per generation: carry the elite, then fill with
    offspring (tournament parents; OX1 with probability crossover_rate, else
    a copy of parent 1; swap mutation with probability mutation_rate).
    Tracks the best-ever tour, so the history never increases."""
    start = time.perf_counter()
    rng = random.Random(cfg.seed)
    m = build_distance_matrix(instance)
    rows = m.rows()
    n = instance.n

    population = [random_tour(n, rng) for _ in range(cfg.population)]
    costs = [cycle_length(t, rows) for t in population]
    evaluations = cfg.population

    best_tour, best_cost = population[0], costs[0]
    for t, c in zip(population[1:], costs[1:]):
        if c < best_cost:
            best_tour, best_cost = t, c
    history = [best_cost]

    for _ in range(cfg.generations):
        ranked = sorted(range(cfg.population), key=lambda i: (costs[i], i))
        new_pop = [population[i] for i in ranked[:cfg.elitism]]
        new_costs = [costs[i] for i in ranked[:cfg.elitism]]
        while len(new_pop) < cfg.population:
            i1 = _tournament(costs, cfg.tournament_k, rng)
            i2 = _tournament(costs, cfg.tournament_k, rng)
            if rng.random() < cfg.crossover_rate:
                cut_l = rng.randrange(n)
                cut_r = rng.randrange(cut_l + 1, n + 1)
                child = order_crossover(population[i1], population[i2], cut_l, cut_r)
            else:
                child = population[i1]
            if rng.random() < cfg.mutation_rate and n >= 2:
                child = swap_mutation(child, rng)
            cost = cycle_length(child, rows)
            evaluations += 1
            new_pop.append(child)
            new_costs.append(cost)
        population, costs = new_pop, new_costs
        for t, c in zip(population, costs):
            if c < best_cost:
                best_tour, best_cost = t, c
        history.append(best_cost)

    final_tour = canonicalize(best_tour)
    return RunResult(
        best_tour=final_tour,
        best_cost=tour_length(final_tour, m),
        iterations_run=cfg.generations,
        cost_history=tuple(history),
        evaluations=evaluations,
        wall_time=time.perf_counter() - start,
    )


def sa_accept(delta: float, temp: float, rng: random.Random) -> bool:
    """Metropolis rule: improving moves always pass; a worsening move passes
    with probability exp(-delta/temp), judged against one uniform draw."""
    if temp <= 0:
        raise ValueError("temperature must be > 0")
    if delta < 0:
        return True
    return rng.random() < math.exp(-delta / temp)


def _draw_reversal(n: int, rng: random.Random) -> tuple[int, int]:
    """Uniform segment reversal (i, j), i < j, excluding the degenerate
    full-tour reversal (0, n-1). Needs n >= 3."""
    while True:
        i = rng.randrange(n)
        j = rng.randrange(n - 1)
        if j >= i:
            j += 1
        if i > j:
            i, j = j, i
        if not (i == 0 and j == n - 1):
            return i, j


def _reversal_delta(order: list[int], i: int, j: int, rows) -> float:
    a, b = order[i - 1], order[i]
    c, e = order[j], order[(j + 1) % len(order)]
    return rows[a][c] + rows[b][e] - rows[a][b] - rows[c][e]


def run_sa(instance: Instance, cfg: SaConfig) -> RunResult:
    """Simulated annealing from a random tour.

    AUTO initial temperature is the spread (population standard deviation)
    of 100 sampled random-reversal deltas at the starting tour. Each
    temperature level runs iters_per_temp proposals, then multiplies the
    temperature by the cooling factor; the run stops at min_temp. The
    history records the best-ever cost once per level. Evaluation counts
    include every proposed neighbor.
    """
    start = time.perf_counter()
    rng = random.Random(cfg.seed)
    m = build_distance_matrix(instance)
    rows = m.rows()
    n = instance.n

    order = list(random_tour(n, rng))
    current = cycle_length(order, rows)
    evaluations = 1
    best_tour, best_cost = tuple(order), current
    history = [best_cost]

    if n <= 2:  # no non-degenerate reversal exists
        final = canonicalize(best_tour)
        return RunResult(final, tour_length(final, m), 0, tuple(history),
                         evaluations, time.perf_counter() - start)

    if cfg.initial_temp is not None:
        temp = cfg.initial_temp
    else:
        samples = []
        for _ in range(100):
            i, j = _draw_reversal(n, rng)
            samples.append(_reversal_delta(order, i, j, rows))
        temp = statistics.pstdev(samples)

    iters = cfg.iters_per_temp if cfg.iters_per_temp is not None else n * n
    levels = 0
    while temp > cfg.min_temp:
        for _ in range(iters):
            i, j = _draw_reversal(n, rng)
            delta = _reversal_delta(order, i, j, rows)
            evaluations += 1
            if sa_accept(delta, temp, rng):
                order[i:j + 1] = order[i:j + 1][::-1]
                current += delta
                if current < best_cost:
                    # re-score canonically so the recorded best is exact
                    actual = cycle_length(order, rows)
                    if actual < best_cost:
                        best_tour, best_cost = tuple(order), actual
        current = cycle_length(order, rows)  # shed accumulated float drift
        temp *= cfg.cooling
        levels += 1
        history.append(best_cost)

    final = canonicalize(best_tour)
    return RunResult(
        best_tour=final,
        best_cost=tour_length(final, m),
        iterations_run=levels,
        cost_history=tuple(history),
        evaluations=evaluations,
        wall_time=time.perf_counter() - start,
    )

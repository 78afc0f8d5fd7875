import math
import random

import pytest

import tspmeta as tm
from conftest import random_instance

FIVE_CITY_OPT_COST = 15.15298244508295


class TestOrderCrossover:
    def test_reference_example(self):
        child = tm.order_crossover((0, 1, 2, 3, 4), (4, 3, 2, 1, 0), 1, 3)
        assert child == (3, 1, 2, 0, 4)

    def test_identical_parents(self):
        p = (2, 0, 3, 1)
        for cuts in [(0, 1), (1, 3), (0, 4), (3, 4)]:
            assert tm.order_crossover(p, p, *cuts) == p

    def test_full_segment_copies_parent_one(self):
        p1, p2 = (3, 1, 4, 0, 2), (0, 1, 2, 3, 4)
        assert tm.order_crossover(p1, p2, 0, 5) == p1

    def test_invalid_cuts(self):
        p = (0, 1, 2)
        for cuts in [(2, 2), (3, 1), (-1, 2), (0, 4)]:
            with pytest.raises(ValueError):
                tm.order_crossover(p, p, *cuts)

    def test_child_is_always_a_permutation(self):
        rng = random.Random(17)
        for _ in range(500):
            n = rng.randint(2, 10)
            p1, p2 = tm.random_tour(n, rng), tm.random_tour(n, rng)
            cut_l = rng.randrange(n)
            cut_r = rng.randrange(cut_l + 1, n + 1)
            child = tm.order_crossover(p1, p2, cut_l, cut_r)
            tm.validate_tour(child, n)
            assert child[cut_l:cut_r] == p1[cut_l:cut_r]


class TestSwapMutation:
    def test_two_cities(self):
        assert tm.swap_mutation((0, 1), random.Random(0)) == (1, 0)

    def test_exactly_two_positions_differ(self):
        rng = random.Random(23)
        for _ in range(300):
            n = rng.randint(2, 12)
            t = tm.random_tour(n, rng)
            mutated = tm.swap_mutation(t, rng)
            tm.validate_tour(mutated, n)
            assert sum(a != b for a, b in zip(t, mutated)) == 2

    def test_same_drawn_pair_is_an_involution(self):
        t = (4, 2, 0, 3, 1)
        once = tm.swap_mutation(t, random.Random(99))
        assert tm.swap_mutation(once, random.Random(99)) == t

    def test_too_small(self):
        with pytest.raises(ValueError):
            tm.swap_mutation((0,), random.Random(0))


class TestRunGa:
    def test_five_city_defaults_find_optimum(self, five_city):
        for seed in range(5):
            result = tm.run_ga(five_city, tm.GaConfig(seed=seed))
            assert result.best_cost == pytest.approx(FIVE_CITY_OPT_COST, abs=1e-9)

    def test_no_variation_operators(self, five_city):
        # one individual carried by elitism, mutation off: nothing ever changes
        cfg = tm.GaConfig(population=1, elitism=1, mutation_rate=0.0,
                          tournament_k=1, generations=20, seed=7)
        initial = tm.random_tour(5, random.Random(7))
        result = tm.run_ga(five_city, cfg)
        assert result.best_tour == tm.canonicalize(initial)
        assert len(set(result.cost_history)) == 1

    def test_history_non_increasing(self, five_city):
        for seed in range(3):
            history = tm.run_ga(five_city, tm.GaConfig(seed=seed)).cost_history
            assert all(a >= b for a, b in zip(history, history[1:]))

    def test_deterministic(self, five_city):
        a = tm.run_ga(five_city, tm.GaConfig(seed=3))
        b = tm.run_ga(five_city, tm.GaConfig(seed=3))
        assert (a.best_tour, a.best_cost, a.cost_history, a.evaluations) == \
               (b.best_tour, b.best_cost, b.cost_history, b.evaluations)

    def test_valid_output_on_random_instances(self):
        rng = random.Random(31)
        for _ in range(5):
            inst = random_instance(rng, rng.randint(2, 10))
            cfg = tm.GaConfig(population=8, generations=10, seed=rng.randrange(100))
            result = tm.run_ga(inst, cfg)
            tm.validate_tour(result.best_tour, inst.n)
            assert result.best_cost == tm.tour_length(
                result.best_tour, tm.build_distance_matrix(inst))

    @pytest.mark.parametrize("kwargs", [
        dict(population=0),
        dict(generations=0),
        dict(crossover_rate=1.5),
        dict(mutation_rate=-0.1),
        dict(tournament_k=0),
        dict(tournament_k=51),
        dict(elitism=51),
    ])
    def test_config_validation(self, kwargs):
        with pytest.raises(tm.ConfigError):
            tm.GaConfig(**kwargs)


class TestSaAccept:
    def test_improving_always_accepted(self):
        rng = random.Random(0)
        assert all(tm.sa_accept(-1.0, t, rng) for t in (0.01, 1.0, 100.0))

    def test_zero_delta_accepted(self):
        assert tm.sa_accept(0.0, 5.0, random.Random(0))

    def test_acceptance_frequency_at_delta_equals_temp(self):
        rng = random.Random(0)
        n = 100_000
        accepted = sum(tm.sa_accept(2.5, 2.5, rng) for _ in range(n))
        assert accepted / n == pytest.approx(math.exp(-1), abs=0.005)

    def test_bad_temperature(self):
        with pytest.raises(ValueError):
            tm.sa_accept(1.0, 0.0, random.Random(0))


class TestRunSa:
    def test_five_city_defaults_find_optimum(self, five_city):
        for seed in range(5):
            result = tm.run_sa(five_city, tm.SaConfig(seed=seed))
            assert result.best_cost == pytest.approx(FIVE_CITY_OPT_COST, abs=1e-9)

    def test_geometric_level_count(self, five_city):
        # temp sequence 1.0 -> 0.5 -> 0.25 stops once not above 0.3: two levels
        cfg = tm.SaConfig(initial_temp=1.0, cooling=0.5, min_temp=0.3,
                          iters_per_temp=10, seed=0)
        assert tm.run_sa(five_city, cfg).iterations_run == 2

    def test_history_non_increasing(self, five_city):
        for seed in range(3):
            history = tm.run_sa(five_city, tm.SaConfig(seed=seed)).cost_history
            assert all(a >= b for a, b in zip(history, history[1:]))

    def test_deterministic(self, five_city):
        a = tm.run_sa(five_city, tm.SaConfig(seed=13))
        b = tm.run_sa(five_city, tm.SaConfig(seed=13))
        assert (a.best_tour, a.best_cost, a.cost_history, a.evaluations) == \
               (b.best_tour, b.best_cost, b.cost_history, b.evaluations)

    def test_tiny_instances(self):
        two = tm.Instance.from_coords("two", [(0, 0), (3, 4)])
        result = tm.run_sa(two, tm.SaConfig(seed=0))
        assert result.best_tour == (0, 1)
        assert result.best_cost == pytest.approx(10.0, abs=1e-12)

    def test_valid_output_on_random_instances(self):
        rng = random.Random(37)
        for _ in range(5):
            inst = random_instance(rng, rng.randint(2, 10))
            result = tm.run_sa(inst, tm.SaConfig(iters_per_temp=20, min_temp=0.01,
                                                 seed=rng.randrange(100)))
            tm.validate_tour(result.best_tour, inst.n)
            assert result.best_cost == tm.tour_length(
                result.best_tour, tm.build_distance_matrix(inst))

    @pytest.mark.parametrize("kwargs", [
        dict(cooling=0.0),
        dict(cooling=1.0),
        dict(min_temp=0.0),
        dict(initial_temp=-1.0),
        dict(initial_temp=0.5, min_temp=0.5),
        dict(iters_per_temp=0),
    ])
    def test_config_validation(self, kwargs):
        with pytest.raises(tm.ConfigError):
            tm.SaConfig(**kwargs)

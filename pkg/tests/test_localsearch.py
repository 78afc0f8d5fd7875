import random

import pytest

import tspmeta as tm
from tspmeta.localsearch import IMPROVEMENT_EPS
from conftest import random_instance

FIVE_CITY_OPT_COST = 15.15298244508295


def improving_reversal_exists(tour, m) -> bool:
    """Oracle scan: try every segment reversal and recompute the full tour
    length from scratch (independent of the solver's O(1) delta formula)."""
    n = len(tour)
    base = tm.tour_length(tour, m)
    for i in range(n - 1):
        for j in range(i + 1, n):
            if i == 0 and j == n - 1:
                continue
            candidate = tour[:i] + tour[i:j + 1][::-1] + tour[j + 1:]
            if tm.tour_length(candidate, m) < base - IMPROVEMENT_EPS:
                return True
    return False


class TestTwoOpt:
    def test_uncrosses_unit_square(self, unit_square):
        m = tm.build_distance_matrix(unit_square)
        crossing = (0, 2, 1, 3)
        assert tm.tour_length(crossing, m) == pytest.approx(4.828427124746190, abs=1e-9)
        fixed = tm.two_opt(crossing, m)
        assert tm.tour_length(fixed, m) == pytest.approx(4.0, abs=1e-12)
        assert tm.canonicalize(fixed) == (0, 1, 2, 3)

    def test_optimal_tour_is_fixed_point(self, five_city):
        m = tm.build_distance_matrix(five_city)
        out = tm.two_opt((0, 1, 2, 3, 4), m)
        assert tm.canonicalize(out) == (0, 1, 2, 3, 4)

    def test_three_cities_unchanged(self):
        inst = tm.Instance.from_coords("tri", [(0, 0), (5, 0), (0, 5)])
        m = tm.build_distance_matrix(inst)
        assert tm.two_opt((2, 0, 1), m) == (2, 0, 1)

    def test_local_optimality_certificate(self):
        rng = random.Random(100)
        for _ in range(40):
            inst = random_instance(rng, rng.randint(4, 20))
            m = tm.build_distance_matrix(inst)
            tour = tm.random_tour(m.n, rng)
            out = tm.two_opt(tour, m)
            tm.validate_tour(out, m.n)
            assert tm.tour_length(out, m) <= tm.tour_length(tour, m) + 1e-12
            assert not improving_reversal_exists(out, m)

    def test_deterministic(self):
        rng = random.Random(8)
        inst = random_instance(rng, 15)
        m = tm.build_distance_matrix(inst)
        tour = tm.random_tour(15, rng)
        assert tm.two_opt(tour, m) == tm.two_opt(tour, m)


class TestThreeOpt:
    def test_five_city_reaches_optimum_from_every_start(self, five_city):
        # all 12 distinct undirected tours as starting points
        import itertools
        m = tm.build_distance_matrix(five_city)
        starts = [(0,) + p for p in itertools.permutations(range(1, 5)) if p[0] < p[-1]]
        assert len(starts) == 12
        for start in starts:
            out = tm.three_opt(start, m)
            assert tm.tour_length(out, m) == pytest.approx(FIVE_CITY_OPT_COST, abs=1e-9)

    def test_improvement_only_and_validity(self):
        rng = random.Random(200)
        for _ in range(25):
            inst = random_instance(rng, rng.randint(4, 12))
            m = tm.build_distance_matrix(inst)
            tour = tm.random_tour(m.n, rng)
            out = tm.three_opt(tour, m)
            tm.validate_tour(out, m.n)
            assert tm.tour_length(out, m) <= tm.tour_length(tour, m) + 1e-12

    def test_output_admits_no_improving_two_opt_move(self):
        rng = random.Random(300)
        for _ in range(15):
            inst = random_instance(rng, 8)
            m = tm.build_distance_matrix(inst)
            out = tm.three_opt(tm.random_tour(8, rng), m)
            assert not improving_reversal_exists(out, m)

    def test_deterministic(self):
        rng = random.Random(9)
        inst = random_instance(rng, 10)
        m = tm.build_distance_matrix(inst)
        tour = tm.random_tour(10, rng)
        assert tm.three_opt(tour, m) == tm.three_opt(tour, m)

    def test_tiny_instances_returned_unchanged(self):
        inst = tm.Instance.from_coords("two", [(0, 0), (1, 0)])
        m = tm.build_distance_matrix(inst)
        assert tm.three_opt((1, 0), m) == (1, 0)

from fractions import Fraction

import pytest

from negdep import (
    FixedDraw,
    RandomDraw,
    equal_strength,
    knockout_fixed_draw,
    knockout_random_draw,
    knockout_spec,
    make_pmf,
    pair_score_law,
    round_robin_distribution,
    round_robin_spec,
)

F = Fraction

# The 4-player equal-strength fixed-bracket score law, written out by hand:
# exactly one of the first two coordinates is positive, likewise the last two,
# and the halves' winners meet in the final.
TABLE1_ROWS = [
    ((0, 1, 0, 2), F(1, 8)),
    ((0, 1, 2, 0), F(1, 8)),
    ((0, 2, 1, 0), F(1, 8)),
    ((0, 2, 0, 1), F(1, 8)),
    ((1, 0, 0, 2), F(1, 8)),
    ((1, 0, 2, 0), F(1, 8)),
    ((2, 0, 1, 0), F(1, 8)),
    ((2, 0, 0, 1), F(1, 8)),
]


@pytest.fixture(scope="session")
def table1():
    return make_pmf(4, TABLE1_ROWS)


@pytest.fixture(scope="session")
def table1_built():
    return knockout_fixed_draw(equal_strength(2, FixedDraw((1, 2, 3, 4))))


def three_player_round_robin_spec():
    """n=3 constant-sum round robin: one fair 0/1 pair, two uniform {0,2,5} pairs."""
    u025 = [(0, F(1, 3)), (2, F(1, 3)), (5, F(1, 3))]
    return round_robin_spec(3, {
        (1, 2): pair_score_law(1, [(0, F(1, 2)), (1, F(1, 2))]),
        (1, 3): pair_score_law(5, u025),
        (2, 3): pair_score_law(5, u025),
    })


@pytest.fixture(scope="session")
def round_robin3():
    return round_robin_distribution(three_player_round_robin_spec())


def dominance_knockout_spec(p12, p34, draw):
    """4 players: 3 and 4 beat 1; 2 beats 3 and 4; p12, p34 parametrize the rest."""
    one, zero = F(1), F(0)
    matrix = [
        [zero, p12, zero, zero],
        [1 - p12, zero, one, one],
        [one, zero, zero, p34],
        [one, zero, 1 - p34, zero],
    ]
    return knockout_spec(2, matrix, draw)


@pytest.fixture(scope="session")
def random_draw_counterexample():
    return knockout_random_draw(dominance_knockout_spec(F(1), F(1), RandomDraw()))


@pytest.fixture(scope="session")
def fixed_draw_counterexample():
    return knockout_fixed_draw(
        dominance_knockout_spec(F(1, 2), F(1, 2), FixedDraw((1, 2, 3, 4)))
    )

import random

import pytest
from hypothesis import given, strategies as st

from altan.catalog import EXCESS_TWO_SMALLEST, cycle_graph, hexagon, path_graph
from altan.matchings import count_perfect_matchings
from altan.patch import parse_bec

from oracles import brute_matchings, random_graph


def test_examples():
    assert count_perfect_matchings(parse_bec("53225221").graph) == 9
    assert count_perfect_matchings(hexagon().graph) == 2
    assert count_perfect_matchings(path_graph(3)) == 0


@pytest.mark.parametrize("code", sorted(EXCESS_TWO_SMALLEST))
def test_figure_counts(code):
    assert count_perfect_matchings(parse_bec(code).graph) == EXCESS_TWO_SMALLEST[code][2]


def test_even_cycles_and_chains():
    assert count_perfect_matchings(cycle_graph(8)) == 2
    # linear acenes have eps + 1 Kekule structures
    assert count_perfect_matchings(parse_bec("55").graph) == 3


@given(st.integers(0, 2**32 - 1))
def test_matches_brute_force(seed):
    G = random_graph(random.Random(seed), 10)
    assert count_perfect_matchings(G) == brute_matchings(G)

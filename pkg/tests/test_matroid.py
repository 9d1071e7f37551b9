import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from slantkit.matroid import (FreeMatroid, GraphicMatroid, PartitionMatroid,
                              brute_force_max_weight, matroid_intersection_max_weight)


def test_free_on_tree():
    g = GraphicMatroid(4, [(0, 1), (1, 2), (2, 3)])
    chosen, w = matroid_intersection_max_weight(FreeMatroid(3), g, [1, 1, 1])
    assert chosen == {0, 1, 2} and w == 3


def test_parallel_edges_with_cap():
    p = PartitionMatroid(2, {0: "x", 1: "x"}, {"x": 1})
    g = GraphicMatroid(2, [(0, 1), (0, 1)])
    chosen, w = matroid_intersection_max_weight(p, g, [2, 1])
    assert chosen == {0} and w == 2


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        matroid_intersection_max_weight(FreeMatroid(2), FreeMatroid(3), [1, 1])
    with pytest.raises(ValueError):
        matroid_intersection_max_weight(FreeMatroid(1), FreeMatroid(1), [-1])


def test_partition_blocks_and_independence():
    p = PartitionMatroid(5, {0: "a", 1: "a", 2: "b"}, {"a": 1, "b": 0})
    assert p.blocks == {"a": [0, 1], "b": [2]}
    assert p.is_independent([0, 3, 4])
    assert not p.is_independent([0, 1])
    assert not p.is_independent([2])


def test_graphic_rank():
    g = GraphicMatroid(3, [(0, 1), (1, 2), (0, 2), (0, 1)])
    assert g.rank(range(4)) == 2
    assert not g.is_independent([0, 3])


@st.composite
def instances(draw):
    n = draw(st.integers(1, 8))
    nv = draw(st.integers(2, 5))
    edges = [tuple(draw(st.lists(st.integers(0, nv - 1), min_size=2, max_size=2)))
             for _ in range(n)]
    blocks = draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    caps = {b: draw(st.integers(0, 3)) for b in set(blocks)}
    weights = draw(st.lists(st.integers(0, 5), min_size=n, max_size=n))
    block_of = {i: b for i, b in enumerate(blocks) if b != 3}
    return (PartitionMatroid(n, block_of, {b: caps[b] for b in set(block_of.values())}),
            GraphicMatroid(nv, edges), weights)


@given(instances())
def test_matches_exhaustive_search(inst):
    p, g, w = inst
    chosen, weight = matroid_intersection_max_weight(p, g, w)
    assert p.is_independent(chosen) and g.is_independent(chosen)
    assert weight == sum(w[e] for e in chosen)
    assert weight == brute_force_max_weight(p, g, w)[1]


def test_exhaustive_oracle_itself():
    # the oracle against a literal scan, on a fixed random instance
    rng = random.Random(5)
    n = 7
    edges = [(rng.randrange(4), rng.randrange(4)) for _ in range(n)]
    p = PartitionMatroid(n, {i: i % 3 for i in range(n)}, {0: 1, 1: 2, 2: 1})
    g = GraphicMatroid(4, edges)
    w = [rng.randint(0, 4) for _ in range(n)]
    best = max(sum(w[e] for e in s) for r in range(n + 1) for s in itertools.combinations(range(n), r)
               if p.is_independent(s) and g.is_independent(s))
    assert brute_force_max_weight(p, g, w)[1] == best

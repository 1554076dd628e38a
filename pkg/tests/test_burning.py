import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import trees
from treeburn.burning import (
    BurningSequence,
    ball_sizes,
    is_valid_burning,
    is_valid_cover,
    pad_sequence,
    repair_sequence,
    simulate,
)
from treeburn.errors import BadVertexId
from treeburn.generators import path, perfect_binary, prop1_maximal, star
from treeburn.tree import closed_neighborhood


def test_sequence_rejects_repeats():
    with pytest.raises(ValueError):
        BurningSequence((1, 2, 1))


def test_single_vertex():
    tr = simulate(path(1), [0])
    assert tr.burned_after == (frozenset({0}),)


def test_p3_center():
    p3 = path(3)
    assert not is_valid_burning(p3, [1])
    assert is_valid_burning(p3, [1, 0]) and is_valid_burning(p3, [1, 2])


def test_new_source_waits_a_step_before_spreading():
    # the second source is lit in step 2 and has not spread when step 2 ends
    tr = simulate(path(5), [0, 4])
    assert tr.burned_after[1] == frozenset({0, 1, 4})


def test_p9_examples():
    p9 = path(9)
    assert is_valid_burning(p9, [2, 6, 8]) and is_valid_cover(p9, [2, 6, 8])
    v = is_valid_burning(p9, [4, 1, 8])
    assert not v and v.reason == "UnburnedRemain"
    assert not is_valid_cover(p9, [4, 1, 8])
    assert not is_valid_cover(p9, [4, 5, 8])


def test_p4_single_source():
    v = is_valid_burning(path(4), [0])
    assert not v.valid and v.reason == "UnburnedRemain"


def test_reasons():
    assert is_valid_burning(path(3), []).reason == "NoSources"
    assert is_valid_burning(path(3), [0, 0]).reason == "DuplicateSource"
    assert is_valid_burning(path(3), [1, 0, 2]).reason == "SourceAlreadyBurnt(step=3)"
    with pytest.raises(BadVertexId):
        is_valid_burning(path(3), [5])


def test_all_vertices_is_lenient_valid():
    # every vertex listed: lenient simulation always burns everything,
    # while strict validity depends on the order
    s = star(3)
    assert is_valid_burning(s, [0, 1, 2, 3], strict=False)
    assert not is_valid_burning(s, [0, 1, 2, 3])
    assert is_valid_burning(path(6), list(range(6)))


def test_prop1_witness_cover():
    t, _, w = prop1_maximal(3)
    assert is_valid_cover(t, w)


def test_perfect_root_then_leaves():
    t, rv = perfect_binary(2)
    assert is_valid_burning(t, [0, 3, 6])
    assert not is_valid_burning(t, [0, 3])


def test_trace_json_and_collisions():
    tr = simulate(path(4), [1, 0, 3])
    js = tr.to_json()
    assert js["k"] == 3 and js["burned_after"] == [1, 3, 4]
    assert tr.collisions == []
    assert simulate(path(4), [1, 0, 2]).collisions == [3]


def test_pad_sequence():
    t, rv = perfect_binary(2)
    s = pad_sequence(t, [0], 3)
    assert 1 <= s.k <= 3 and s[0] == 0 and is_valid_burning(t, s)
    assert pad_sequence(t, [0, 3, 6], 3).sources == (0, 3, 6)
    # a centre source plus two padded ones cannot finish P_9: 0,1 and 7,8 are 6 apart
    p9 = pad_sequence(path(9), [4], 3)
    assert p9.sources == (4, 0, 1) and not is_valid_burning(path(9), p9)
    with pytest.raises(ValueError):
        pad_sequence(t, [0, 1], 1)


def test_pad_stops_when_burnt():
    s = pad_sequence(path(3), [1, 0], 5)
    assert s.sources == (1, 0)


def test_repair_replaces_burnt_sources():
    seq, replaced = repair_sequence(path(5), [2, 0, 1])
    assert replaced == [3] and seq.sources == (2, 0, 4) and is_valid_burning(path(5), seq)


def test_ball_sizes_match_neighbourhoods():
    t, _, w = prop1_maximal(3)
    assert ball_sizes(t, w) == [len(closed_neighborhood(t, v, 2 - i)) for i, v in enumerate(w)]


@st.composite
def tree_and_sequence(draw):
    t = draw(trees(max_n=40))
    k = draw(st.integers(1, min(t.n, 7)))
    seq = draw(st.permutations(range(t.n)))[:k]
    return t, seq


@settings(max_examples=300, deadline=None)
@given(tree_and_sequence())
def test_validators_agree(pair):
    t, seq = pair
    assert bool(is_valid_burning(t, seq)) == is_valid_cover(t, seq)


@settings(max_examples=100, deadline=None)
@given(tree_and_sequence())
def test_trace_monotone_and_padding_keeps_validity(pair):
    t, seq = pair
    tr = simulate(t, seq)
    for a, b in zip(tr.burned_after, tr.burned_after[1:]):
        assert a <= b
    if is_valid_burning(t, seq):
        assert is_valid_burning(t, pad_sequence(t, seq, len(seq) + 3))


def test_disjoint_ball_counts_match_first_burns():
    t, _, w = prop1_maximal(4)
    tr = simulate(t, w)
    k = w.k
    # with disjoint balls every vertex is reached by exactly one source
    sizes = ball_sizes(t, w)
    assert sum(sizes) == t.n == len(tr.burned)

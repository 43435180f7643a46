"""Tests for silting quiver enumeration and export."""

from __future__ import annotations

import json
from itertools import combinations

import pytest

from pysilting.algebra import build_algebra
from pysilting.complexes import (
    direct_sum,
    in_add,
    iso_complexes,
    presentation_complex,
    regular,
    shift,
    stalk,
)
from pysilting.const import FORMAT_DOT, FORMAT_JSON, RIGHT
from pysilting.errors import CapExceededError, InputError
from pysilting.explorer import (
    covering_pairs,
    discreteness_probe,
    edges_are_covering,
    enumerate_interval,
    export_graph,
    is_connected,
    left_connected_to_top,
    load_graph,
    reaches_by_left_mutation,
    search_two_term_silting,
    two_term_silting,
)
from pysilting.modules import simple
from pysilting.silting import (
    bongartz_complete,
    dominates_nu,
    end_algebra,
    is_tilting_via_nu,
    mutate,
    nu_orbit_order,
    regular_record,
    shift_record,
)
from pysilting.torsion import two_term_reduce


def _two_term_graph(algebra, cap=100):
    return enumerate_interval(regular_record(algebra), regular_record(algebra, 1), cap)


@pytest.fixture(scope="module")
def k2_graph(k2):
    return _two_term_graph(k2)


@pytest.mark.slow
@pytest.mark.parametrize(
    ("name", "count"), [("a3", 14), ("k2", 6), ("sn22", 6), ("n3", 20)]
)
def test_two_term_counts(request, name, count):
    algebra = request.getfixturevalue(name)
    assert len(two_term_silting(algebra)) == count


def test_k2_graph_shape(k2, k2_graph):
    assert len(k2_graph) == 6
    assert k2_graph.complete
    assert k2_graph.top == regular_record(k2).fingerprint
    assert iso_complexes(k2_graph.record(k2_graph.bottom).complex, regular(k2, 1))
    # the Hasse diagram is a hexagon
    assert len(k2_graph.edges()) == 6
    assert all(r.is_tilting for r in k2_graph.records)


def test_k2_graph_order(k2_graph):
    assert is_connected(k2_graph)
    assert left_connected_to_top(k2_graph)
    assert edges_are_covering(k2_graph)
    assert len(covering_pairs(k2_graph)) == len(k2_graph.edges())


@pytest.mark.slow
@pytest.mark.parametrize("name", ["a3", "n3", "k2", "sn22"])
def test_two_term_graph_order(request, name):
    algebra = request.getfixturevalue(name)
    graph = _two_term_graph(algebra)
    assert graph.complete
    assert edges_are_covering(graph)
    assert left_connected_to_top(graph)
    assert all(len(r.summands) == algebra.rank for r in graph.records)


@pytest.mark.slow
def test_search_agrees_with_mutation(a3):
    found = search_two_term_silting(a3)
    explored = two_term_silting(a3)
    assert len(found) == len(explored) == 14
    for record in found:
        assert any(iso_complexes(record.complex, other.complex) for other in explored)


def test_sn22_tilting_members(sn22):
    records = two_term_silting(sn22)
    tilting = [r for r in records if r.is_tilting]
    assert len(tilting) == 2
    for record in tilting:
        assert iso_complexes(record.complex, regular(sn22)) or iso_complexes(
            record.complex, regular(sn22, 1)
        )


def test_single_node_interval(a3):
    graph = enumerate_interval(regular_record(a3), regular_record(a3))
    assert len(graph) == 1
    assert graph.edges() == []
    assert graph.bottom == graph.top
    assert graph.complete


def test_interval_must_be_ordered(a3):
    with pytest.raises(InputError):
        enumerate_interval(regular_record(a3, 1), regular_record(a3))


def test_dot_is_deterministic(k2, k2_graph):
    first = export_graph(k2_graph, FORMAT_DOT)
    assert first == export_graph(_two_term_graph(k2), FORMAT_DOT)
    assert first.startswith("digraph silting {\n")
    assert first.endswith("}\n")
    assert first.count(" -> ") == 6
    assert "style=dashed" not in first


def test_dot_shift_identified(k2_graph):
    text = export_graph(k2_graph, FORMAT_DOT, shift_identify=True)
    node_lines = [line for line in text.splitlines() if "[label=" in line and "->" not in line]
    assert len(node_lines) == 5
    assert "style=dashed" in text
    assert " [1]\"" in text


def test_json_round_trip(k2, k2_graph):
    text = export_graph(k2_graph, FORMAT_JSON)
    assert text == export_graph(k2_graph, FORMAT_JSON)
    loaded = load_graph(k2, json.loads(text))
    assert loaded == k2_graph
    assert export_graph(loaded, FORMAT_JSON) == text


def test_shift_identified_json_is_not_loadable(k2, k2_graph):
    text = export_graph(k2_graph, FORMAT_JSON, shift_identify=True)
    data = json.loads(text)
    assert data["shift_identified"]
    assert any(edge["shift"] == 1 for edge in data["edges"])
    with pytest.raises(InputError):
        load_graph(k2, data)


def test_unknown_format(k2_graph):
    with pytest.raises(InputError):
        export_graph(k2_graph, "svg")


def test_kronecker_interval_is_infinite(kronecker):
    with pytest.raises(CapExceededError) as err:
        two_term_silting(kronecker, cap=8)
    assert len(err.value.partial) == 8
    assert not err.value.partial.complete


def test_kronecker_shift_reached_by_left_mutation(kronecker):
    assert reaches_by_left_mutation(regular_record(kronecker), regular(kronecker, 1), depth=2)
    assert not reaches_by_left_mutation(
        regular_record(kronecker), regular(kronecker, 1), depth=1
    )


def test_discreteness_probe(k2, kronecker):
    assert discreteness_probe(k2, 1) == {1: 6}
    assert discreteness_probe(kronecker, 1, cap=8) == {1: None}


def _kronecker_unreachable(kronecker):
    return direct_sum(
        kronecker,
        [presentation_complex(simple(kronecker, "1")), stalk(kronecker, ("2",), -1)],
    )


@pytest.mark.slow
def test_kronecker_needs_a_right_mutation(kronecker):
    target = _kronecker_unreachable(kronecker)
    top = regular_record(kronecker)
    assert not reaches_by_left_mutation(top, target, depth=6)

    index = next(i for i, s in enumerate(top.summands) if s.terms == {0: ("1",)})
    lower = mutate(top, index, RIGHT)
    assert reaches_by_left_mutation(lower, target, depth=3)

    # the BFS passes A > P1 + X1 > X2 + X1 > X2 + X3 on its way down
    step = mutate(top, 1 - index)
    for _ in range(2):
        step = mutate(step, 1 - step.created)
    assert reaches_by_left_mutation(top, step.complex, depth=3)
    assert not reaches_by_left_mutation(top, step.complex, depth=2)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["k2", "n3"])
def test_three_term_interval_reduces(request, name):
    algebra = request.getfixturevalue(name)
    graph = enumerate_interval(regular_record(algebra), regular_record(algebra, 2))
    assert graph.complete
    assert is_connected(graph)
    assert left_connected_to_top(graph)
    for record in graph.records:
        # raises if any of the order bounds around the reduction fails
        reduced = two_term_reduce(shift_record(record, -2))
        assert reduced.is_silting


@pytest.mark.slow
@pytest.mark.parametrize("name", ["sn22", "n3"])
def test_nakayama_suite(request, name):
    algebra = request.getfixturevalue(name)
    for record in two_term_silting(algebra):
        assert record.is_tilting == is_tilting_via_nu(record)
        assert nu_orbit_order(record) <= 2
        if record.is_tilting:
            assert dominates_nu(record)
            assert build_algebra(end_algebra(record)).nakayama.self_injective


def _summand_subsets(record):
    pieces = record.summands
    return [
        [pieces[k] for k in chosen]
        for size in range(1, len(pieces) + 1)
        for chosen in combinations(range(len(pieces)), size)
    ]


@pytest.mark.slow
@pytest.mark.parametrize("name", ["k2", "n3"])
def test_bongartz_suite(request, name):
    algebra = request.getfixturevalue(name)
    top = regular_record(algebra)
    for record in _two_term_graph(algebra).records:
        for pieces in _summand_subsets(record):
            target = shift(direct_sum(algebra, pieces), -1)
            completion = bongartz_complete(top, target)
            assert completion.is_silting
            assert in_add(target, completion.summands)


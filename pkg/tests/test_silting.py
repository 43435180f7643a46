"""Tests for classification, mutation, resolution towers and completion."""

from __future__ import annotations

import pytest

from pysilting import silting
from pysilting.algebra import build_algebra
from pysilting.complexes import (
    ProjComplex,
    compare_order,
    direct_sum,
    in_add,
    iso_complexes,
    presentation_complex,
    regular,
    shift,
    stalk,
    zero_complex,
)
from pysilting.const import (
    LEFT,
    RIGHT,
    STATUS_NOT_PRESILTING,
    STATUS_PRESILTING,
    STATUS_SILTING,
    STATUS_TILTING,
)
from pysilting.errors import (
    CapExceededError,
    InputError,
    NotSelfInjectiveError,
    NotSiltingError,
    OrderViolatedError,
    SummandOutOfRangeError,
    UInAddTError,
)
from pysilting.fixtures import a3_almost_complete, a3_complements, n3_tilting, n3_two_term
from pysilting.modules import simple
from pysilting.silting import (
    CERT_GENERATION,
    CERT_MUTATION,
    MutationPath,
    MutationStep,
    SiltingRecord,
    bongartz_complete,
    classify,
    connect_descend,
    dominates_nu,
    end_algebra,
    is_left_connected,
    is_presilting,
    is_tilting_via_nu,
    k0_determinant,
    make_closer,
    mutate,
    nu_orbit_order,
    regular_record,
    replay,
    resolution_tower,
    shift_record,
)


def test_regular_record(a3):
    record = regular_record(a3)
    assert record.status == STATUS_TILTING
    assert record.certificate == CERT_GENERATION
    assert len(record.summands) == 3
    assert abs(k0_determinant(record.summands)) == 1
    assert iso_complexes(record.complex, regular(a3))


def test_classify_regular_matches_record(n3):
    record = classify(regular(n3, 2))
    assert record.status == STATUS_TILTING
    assert record.tower_length == 0


def test_classify_n3_tilting(n3):
    record = classify(n3_tilting(n3))
    assert record.status == STATUS_TILTING
    assert record.certificate == CERT_GENERATION
    assert record.tower_length is not None
    assert len(record.summands) == 3


def test_classify_not_presilting(a3):
    record = classify(direct_sum(a3, [regular(a3), regular(a3, 1)]))
    assert record.status == STATUS_NOT_PRESILTING
    assert not record.is_silting


def test_classify_presilting_only(a3):
    record = classify(stalk(a3, ("1",)))
    assert record.status == STATUS_PRESILTING
    assert is_presilting(record.complex)


def test_classify_makes_basic(a3):
    record = classify(direct_sum(a3, [regular(a3), stalk(a3, ("2",))]))
    assert record.is_tilting
    assert len(record.summands) == 3


def _kronecker_left(kronecker) -> ProjComplex:
    a = kronecker.path_element(["a"])
    b = kronecker.path_element(["b"])
    return ProjComplex(kronecker, {-1: ("2",), 0: ("1", "1")}, {-1: [[a], [b]]})


def test_left_mutation_kronecker(kronecker):
    record = regular_record(kronecker)
    index = next(i for i, s in enumerate(record.summands) if s.terms == {0: ("2",)})
    mutated = mutate(record, index, LEFT)
    expected = direct_sum(kronecker, [stalk(kronecker, ("1",)), _kronecker_left(kronecker)])
    assert mutated.is_silting
    assert mutated.certificate == CERT_MUTATION
    assert iso_complexes(mutated.complex, expected)
    assert compare_order(record.complex, mutated.complex)
    assert mutated.provenance == (MutationStep(record.fingerprint, index, LEFT),)
    assert mutated.root is record.complex


def test_right_mutation_kronecker(kronecker):
    record = regular_record(kronecker)
    index = next(i for i, s in enumerate(record.summands) if s.terms == {0: ("1",)})
    mutated = mutate(record, index, RIGHT)
    expected = direct_sum(
        kronecker,
        [presentation_complex(simple(kronecker, "1")), stalk(kronecker, ("2",), -1)],
    )
    assert iso_complexes(shift(mutated.complex, 1), expected)
    assert compare_order(mutated.complex, record.complex)


@pytest.mark.parametrize("index", [0, 1, 2])
def test_left_then_right_returns(n3, index):
    record = classify(n3_tilting(n3))
    there = mutate(record, index, LEFT)
    back = mutate(there, there.created, RIGHT)
    assert iso_complexes(back.complex, record.complex)
    assert len(back.provenance) == 2
    assert back.root is record.complex


def test_mutation_errors(a3):
    record = regular_record(a3)
    with pytest.raises(SummandOutOfRangeError):
        mutate(record, 3)
    with pytest.raises(InputError):
        mutate(record, 0, "sideways")
    with pytest.raises(NotSiltingError):
        mutate(classify(stalk(a3, ("1",))), 0)


def test_mutations_of_symmetric_stay_tilting(k2):
    record = regular_record(k2)
    for index in range(2):
        assert mutate(record, index, LEFT).status == STATUS_TILTING


def test_replay_reproduces(k2):
    record = mutate(mutate(regular_record(k2), 0, LEFT), 1, LEFT)
    steps = [(step.summand, step.direction) for step in record.provenance]
    assert iso_complexes(replay(regular(k2), steps).complex, record.complex)


# (n, l) whose completion P3 + S1[n] + M[l] is tilting
A3_TILTING_COMPLETIONS = {(-2, -1), (-1, -1), (-1, 0), (0, 0)}


@pytest.mark.parametrize("n", [-2, -1, 0, 1, 2])
def test_a3_complements_are_silting(a3, n):
    almost = a3_almost_complete(a3, n)
    assert classify(almost).status == STATUS_PRESILTING
    for ell, complement in a3_complements(a3, n, range(-2, 3)):
        record = classify(direct_sum(a3, [almost, complement]))
        assert record.is_silting, f"l={ell}"
        assert record.is_tilting == ((n, ell) in A3_TILTING_COMPLETIONS), f"l={ell}"


@pytest.mark.parametrize("n", [1, 2])
def test_a3_far_completions_never_tilting(a3, n):
    almost = a3_almost_complete(a3, n)
    for ell, complement in a3_complements(a3, n, range(-3, n + 3)):
        record = classify(direct_sum(a3, [almost, complement]))
        assert record.status == STATUS_SILTING, f"l={ell}"


def test_resolution_tower_of_shift(a3):
    tower = resolution_tower(regular_record(a3), regular(a3, 1))
    assert tower.length == 1
    assert in_add(tower.last, regular_record(a3).summands)


def test_resolution_tower_needs_order(a3):
    with pytest.raises(OrderViolatedError):
        resolution_tower(regular_record(a3, 1), regular(a3))


def test_make_closer_moves_down(a3):
    record = regular_record(a3)
    target = regular(a3, 1)
    closer = make_closer(record, target)
    assert compare_order(record.complex, closer.complex)
    assert compare_order(closer.complex, target)
    assert not iso_complexes(closer.complex, record.complex)


def test_make_closer_rejects_member(a3):
    with pytest.raises(UInAddTError):
        make_closer(regular_record(a3), stalk(a3, ("1",)))


def test_connect_descend_to_shift(a3):
    record = regular_record(a3)
    path = connect_descend(record, regular(a3, 1))
    assert isinstance(path, MutationPath)
    assert len(path.steps) >= 3
    assert all(direction == LEFT for _, direction in path.steps)
    assert iso_complexes(path.records[-1].complex, regular(a3, 1))
    assert iso_complexes(replay(regular(a3), path.steps).complex, regular(a3, 1))


def test_connect_descend_completes_presilting(a3):
    target = stalk(a3, ("1",), -1)
    completed = connect_descend(regular_record(a3), target)
    assert not isinstance(completed, MutationPath)
    assert completed.is_silting
    assert in_add(target, completed.summands)


def test_is_left_connected(a3):
    assert is_left_connected(regular_record(a3), regular(a3, 1))
    assert not is_left_connected(regular_record(a3, 1), regular(a3))


def test_bongartz_complete(a3):
    target = shift(presentation_complex(simple(a3, "2")), -1)
    completion = bongartz_complete(regular_record(a3), target)
    assert completion.is_silting
    assert in_add(target, completion.summands)


def test_bongartz_needs_interval(a3):
    with pytest.raises(OrderViolatedError):
        bongartz_complete(regular_record(a3), stalk(a3, ("1",), 2))


def test_nu_orbit_of_regular(sn22):
    assert nu_orbit_order(regular_record(sn22)) == 1
    assert is_tilting_via_nu(regular_record(sn22))


def test_nu_orbit_of_mutation(sn22):
    mutated = mutate(regular_record(sn22), 0, LEFT)
    assert mutated.status == STATUS_SILTING
    assert not is_tilting_via_nu(mutated)
    assert nu_orbit_order(mutated) == 2


def test_nu_needs_self_injective(a3):
    with pytest.raises(NotSelfInjectiveError):
        nu_orbit_order(regular_record(a3))


def test_end_algebra_of_regular(a3, kronecker):
    presentation = end_algebra(regular_record(a3))
    assert len(presentation.quiver.vertices) == 3
    assert len(presentation.quiver.arrows) == 2
    assert build_algebra(presentation).dim == a3.dim

    presentation = end_algebra(regular_record(kronecker))
    assert len(presentation.quiver.arrows) == 2
    assert build_algebra(presentation).dim == kronecker.dim


def test_end_algebra_of_mutation(k2):
    mutated = mutate(regular_record(k2), 0, LEFT)
    assert build_algebra(end_algebra(mutated)).dim == k2.dim


def test_bongartz_trivial_cases(a3):
    record = regular_record(a3)
    assert iso_complexes(bongartz_complete(record, regular(a3)).complex, regular(a3))
    assert iso_complexes(bongartz_complete(record, zero_complex(a3)).complex, regular(a3, -1))


def test_bongartz_complete_n3(n3):
    target = ProjComplex(n3, {0: ("2",), 1: ("1",)}, {0: [[n3.path_element(["x1"])]]})
    completion = bongartz_complete(regular_record(n3), target)
    assert completion.is_tilting
    assert in_add(target, completion.summands)


def test_connect_descend_to_itself(a3):
    path = connect_descend(regular_record(a3), regular(a3))
    assert isinstance(path, MutationPath)
    assert path.steps == ()
    assert path.start == path.end


def test_connect_descend_n3(n3):
    target = shift(n3_two_term(n3), 1)
    path = connect_descend(regular_record(n3), target)
    assert isinstance(path, MutationPath)
    assert len(path.steps) >= 1
    assert iso_complexes(replay(regular(n3), path.steps).complex, target)


def test_connect_descend_kronecker_never_arrives(kronecker):
    target = direct_sum(
        kronecker,
        [presentation_complex(simple(kronecker, "1")), stalk(kronecker, ("2",), -1)],
    )
    with pytest.raises(CapExceededError) as err:
        connect_descend(regular_record(kronecker), target, cap=6)
    assert len(err.value.partial.steps) == 6


def _index(record, piece):
    return next(k for k, s in enumerate(record.summands) if iso_complexes(s, piece))


def test_n3_worked_mutations(n3):
    tilting = classify(n3_tilting(n3))
    long = next(k for k, s in enumerate(tilting.summands) if len(s.terms) == 3)
    reduced = mutate(tilting, long, LEFT)
    assert iso_complexes(reduced.complex, n3_two_term(n3))

    first = classify(n3_two_term(n3))
    short = ProjComplex(n3, {0: ("2",), 1: ("3",)}, {0: [[n3.path_element(["x3", "x1"])]]})
    middle = mutate(first, _index(first, short), LEFT)
    step = ProjComplex(n3, {0: ("2",), 1: ("1",)}, {0: [[n3.path_element(["x1"])]]})
    last = mutate(middle, _index(middle, step), LEFT)
    assert iso_complexes(last.complex, regular(n3))


def test_dominates_nu(sn22, a3):
    assert dominates_nu(regular_record(sn22))
    with pytest.raises(NotSelfInjectiveError):
        dominates_nu(regular_record(a3))


def test_bongartz_raises_when_completion_is_not_silting(a3, monkeypatch):
    record = regular_record(a3)
    monkeypatch.setattr(
        silting, "classify", lambda complex_: SiltingRecord(complex_, STATUS_PRESILTING, ())
    )
    with pytest.raises(NotSiltingError):
        bongartz_complete(record, shift(presentation_complex(simple(a3, "2")), -1))


def test_kronecker_left_mutation_chain(kronecker):
    top = regular_record(kronecker)
    first = mutate(top, next(i for i, s in enumerate(top.summands) if s.terms == {0: ("2",)}))
    second = mutate(first, 1 - first.created)
    third = mutate(second, 1 - second.created)
    chain = [top, first, second, third]
    assert iso_complexes(first.summands[first.created], _kronecker_left(kronecker))
    created = second.summands[second.created]
    assert sorted(created.terms[-1]) == ["2", "2"]
    assert sorted(created.terms[0]) == ["1", "1", "1"]
    for upper, lower in zip(chain, chain[1:]):
        assert lower.is_tilting
        assert compare_order(upper.complex, lower.complex)
        assert not iso_complexes(upper.complex, lower.complex)
    # each step keeps the summand made by the one before
    assert in_add(first.summands[first.created], second.summands)
    assert in_add(second.summands[second.created], third.summands)


def test_shift_record_matches_classify(n3):
    record = classify(n3_tilting(n3))
    moved = shift_record(record, 2)
    direct = classify(shift(n3_tilting(n3), 2))
    assert moved.status == direct.status == STATUS_TILTING
    assert len(moved.summands) == len(direct.summands)
    for ours, theirs in zip(moved.summands, direct.summands):
        assert iso_complexes(ours, theirs)

"""Tests for complexes of projectives and the homotopy category."""

from __future__ import annotations

import pytest

from pysilting.complexes import (
    ProjComplex,
    cohomology,
    compare_order,
    cone,
    decompose_complex,
    direct_sum,
    fingerprint,
    hom_dim,
    identity_chain_map,
    iso_complexes,
    k0_class,
    label,
    length,
    minimize,
    minimize_with_maps,
    morphism_space,
    nu_complex,
    presentation_complex,
    regular,
    serre_dimensions,
    shift,
    stalk,
    window_normalize,
)
from pysilting.errors import InputError
from pysilting.fixtures import n3_tilting
from pysilting.modules import is_isomorphic, projective, simple


def test_differentials_must_square_to_zero(a3):
    with pytest.raises(InputError):
        ProjComplex(
            a3,
            {0: ("2",), 1: ("1",), 2: ("1",)},
            {0: [[a3.path_element(["a"])]], 1: [[a3.idempotent("1")]]},
        )


def test_entries_in_wrong_corner_rejected(a3):
    with pytest.raises(InputError):
        ProjComplex(a3, {0: ("1",), 1: ("2",)}, {0: [[a3.path_element(["a"])]]})


def test_hom_between_regular(a3, n3):
    assert hom_dim(regular(a3), regular(a3)) == a3.dim
    assert hom_dim(regular(n3), regular(n3), 1) == 0
    assert hom_dim(regular(n3), regular(n3, 1), -1) == n3.dim


def test_order_between_shifts(a3):
    assert compare_order(regular(a3), regular(a3, 1))
    assert not compare_order(regular(a3, 1), regular(a3))
    assert compare_order(regular(a3), regular(a3))


def test_contractible_complex_minimizes_to_zero(a3):
    contractible = ProjComplex(a3, {0: ("1",), 1: ("1",)}, {0: [[a3.idempotent("1")]]})
    assert minimize(contractible).is_zero
    assert length(contractible) == 0


def test_minimize_keeps_radical_part(a3):
    mixed = direct_sum(
        a3,
        [
            ProjComplex(a3, {0: ("2",), 1: ("2",)}, {0: [[a3.idempotent("2")]]}),
            presentation_complex(simple(a3, "1")),
        ],
    )
    minimal, forward, backward = minimize_with_maps(mixed)
    assert minimal.terms == {-1: ("2",), 0: ("1",)}
    assert forward.source is mixed
    assert backward.target is mixed
    composite = forward.compose(backward)
    assert morphism_space(minimal, minimal).coordinates(
        composite
    ) == morphism_space(minimal, minimal).coordinates(identity_chain_map(minimal))


def test_cone_of_identity_is_contractible(n3):
    x = n3_tilting(n3)
    assert minimize(cone(identity_chain_map(x))).is_zero


def test_presentation_cohomology(a3):
    module = simple(a3, "1")
    x = presentation_complex(module)
    assert is_isomorphic(cohomology(x, 0), module)
    assert cohomology(x, -1).is_zero
    assert label(x) == "(-1) P2 -[a]-> P1"


def test_shift_moves_window(a3):
    x = presentation_complex(simple(a3, "1"))
    moved = shift(x, 2)
    assert (moved.lo, moved.hi) == (-3, -2)
    assert window_normalize(moved)[1] == -3
    assert iso_complexes(window_normalize(moved)[0], shift(x, -1))


def test_k0_class(a3):
    assert k0_class(presentation_complex(simple(a3, "1"))) == (1, -1, 0)
    assert k0_class(regular(a3, 1)) == (-1, -1, -1)


def test_decomposition_and_isomorphism(n3):
    parts = decompose_complex(n3_tilting(n3))
    assert len(parts) == 3
    swapped = direct_sum(n3, list(reversed(parts)))
    assert iso_complexes(swapped, n3_tilting(n3))
    assert fingerprint(swapped) == fingerprint(n3_tilting(n3))
    assert not iso_complexes(n3_tilting(n3), regular(n3))


def test_projective_stalks_are_not_isomorphic(k2):
    assert not iso_complexes(stalk(k2, ("1",)), stalk(k2, ("2",)))
    assert iso_complexes(stalk(k2, ("1", "2")), stalk(k2, ("2", "1")))


def test_nakayama_on_complexes(sn22, n3):
    assert iso_complexes(nu_complex(regular(sn22)), regular(sn22))
    assert iso_complexes(nu_complex(stalk(sn22, ("1",))), stalk(sn22, ("2",)))
    assert iso_complexes(nu_complex(n3_tilting(n3)), n3_tilting(n3))


def _perfect_objects(algebra):
    return [
        regular(algebra),
        *(stalk(algebra, (v,)) for v in algebra.vertices),
        *(presentation_complex(simple(algebra, v)) for v in algebra.vertices),
    ]


@pytest.mark.parametrize(
    "name",
    [
        "a3",
        pytest.param("n3", marks=pytest.mark.slow),
        pytest.param("k2", marks=pytest.mark.slow),
        pytest.param("sn22", marks=pytest.mark.slow),
        pytest.param("kronecker", marks=pytest.mark.slow),
    ],
)
def test_serre_duality(request, name):
    algebra = request.getfixturevalue(name)
    objects = _perfect_objects(algebra)
    for p in objects:
        for x in objects:
            for i in range(-4, 5):
                first, second = serre_dimensions(p, x, i)
                assert first == second, f"{label(p)} {label(x)} i={i}"


def test_null_homotopic_maps(a3):
    x = presentation_complex(simple(a3, "1"))
    space = morphism_space(x, x)
    assert space.dim == 1
    assert not space.is_null_homotopic(identity_chain_map(x))
    assert projective(a3, "1").dim == 3


def _k2_two_term(k2):
    # the hexagon of two-term silting objects over K2, plus two shifts
    a = k2.path_element(["a"])
    b = k2.path_element(["b"])
    p1, p2 = stalk(k2, ("1",)), stalk(k2, ("2",))
    x = ProjComplex(k2, {-1: ("2",), 0: ("1",)}, {-1: [[a]]})
    y = ProjComplex(k2, {-1: ("1",), 0: ("2",)}, {-1: [[b]]})
    return [
        regular(k2),
        direct_sum(k2, [p1, x]),
        direct_sum(k2, [p2, y]),
        direct_sum(k2, [shift(p2, 1), x]),
        direct_sum(k2, [shift(p1, 1), y]),
        regular(k2, 1),
        regular(k2, 2),
        regular(k2, -1),
    ]


def test_order_axioms(k2):
    objects = _k2_two_term(k2)
    above = {
        (i, j): compare_order(x, y)
        for i, x in enumerate(objects)
        for j, y in enumerate(objects)
    }
    indices = range(len(objects))
    for i in indices:
        assert above[i, i]
    for i in indices:
        for j in indices:
            if i != j and above[i, j] and above[j, i]:
                assert iso_complexes(objects[i], objects[j])
            for k in indices:
                if above[i, j] and above[j, k]:
                    assert above[i, k]


def test_order_is_antisymmetric_up_to_isomorphism(k2):
    x = _k2_two_term(k2)[1]
    same = direct_sum(k2, list(reversed(decompose_complex(x))))
    assert compare_order(x, same)
    assert compare_order(same, x)
    assert iso_complexes(x, same)


def _length_samples(a3, n3):
    return [
        regular(a3, 2),
        shift(presentation_complex(simple(a3, "1")), -1),
        n3_tilting(n3),
        shift(n3_tilting(n3), 1),
        direct_sum(n3, [regular(n3), regular(n3, 3)]),
    ]


@pytest.mark.parametrize(("index", "expected"), [(0, 1), (1, 2), (2, 3), (3, 3), (4, 4)])
def test_length_matches_order_window(a3, n3, index, expected):
    x = _length_samples(a3, n3)[index]
    algebra = x.algebra
    minimal = minimize(x)
    assert length(x) == expected == minimal.hi - minimal.lo + 1
    # A[-hi] >= X >= A[-lo], and neither bound can be tightened
    assert compare_order(regular(algebra, -minimal.hi), x)
    assert compare_order(x, regular(algebra, -minimal.lo))
    assert not compare_order(regular(algebra, 1 - minimal.hi), x)
    assert not compare_order(x, regular(algebra, -minimal.lo - 1))

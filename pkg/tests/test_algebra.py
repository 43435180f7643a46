"""Tests for quivers, presentations and algebras."""

from __future__ import annotations

import pytest

from pysilting import linalg
from pysilting.algebra import AlgebraPresentation, Arrow, Quiver, build_algebra, cartan_matrix
from pysilting.errors import InputError, MalformedRelationError, PossiblyInfiniteError
from pysilting.fixtures import N3, builtin_algebra


def test_dimensions(a3, n3, k2, sn22, kronecker):
    assert a3.dim == 6
    assert n3.dim == 12
    assert k2.dim == 6
    assert sn22.dim == 4
    assert kronecker.dim == 4


def test_basis_is_degree_lex(a3):
    lengths = [len(p) for p in a3.basis]
    assert lengths == sorted(lengths)
    assert [p.render() for p in a3.basis if len(p) == 2] == ["ab"]


def test_paths_compose_left_to_right(n3):
    x1 = n3.path_element(["x1"])
    x2 = n3.path_element(["x2"])
    assert n3.multiply(x1, x2) == n3.path_element(["x1", "x2"])
    assert n3.multiply(x2, x1) == {}
    cycle = n3.path_element(["x1", "x2", "x3"])
    assert n3.multiply(cycle, x1) == {}


def test_cartan_matrix(a3, n3):
    assert cartan_matrix(a3) == [[1, 1, 1], [0, 1, 1], [0, 0, 1]]
    assert cartan_matrix(n3) == [[2, 1, 1], [1, 2, 1], [1, 1, 2]]


def test_nakayama_data(a3, n3, k2, sn22, kronecker):
    assert not a3.nakayama.self_injective
    assert not kronecker.nakayama.self_injective
    assert n3.nakayama.symmetric
    assert k2.nakayama.symmetric
    assert sn22.nakayama.self_injective
    assert not sn22.nakayama.symmetric
    assert sn22.nakayama.permutation == {"1": "2", "2": "1"}


def test_opposite_round_trip(k2):
    assert k2.opposite.opposite is k2
    assert k2.opposite.dim == k2.dim


def test_element_terms_round_trip(n3):
    x = n3.add(n3.path_element(["x1"]), n3.scale(n3.field(-2), n3.path_element(["x1", "x2"])))
    assert n3.element_from_terms(n3.element_to_terms(x)) == x
    assert n3.render_element(x) == "x1 - 2*x1x2"


def test_trivial_path_document(a3):
    assert a3.path_element(["e2"]) == a3.idempotent("2")


def test_infinite_algebra_is_reported(qq):
    quiver = Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "2", "1")))
    with pytest.raises(PossiblyInfiniteError):
        build_algebra(AlgebraPresentation(quiver, (), qq), path_cap=6)


def test_non_parallel_relation_rejected(qq):
    quiver = Quiver(("1", "2", "3"), (Arrow("a", "1", "2"), Arrow("b", "2", "3")))
    with pytest.raises(MalformedRelationError):
        AlgebraPresentation(
            quiver,
            (((qq.one, quiver.path(["a", "b"])), (qq.one, quiver.path(["a"]))),),
            qq,
        )


def test_unknown_arrow_in_path(qq):
    quiver = Quiver(("1", "2"), (Arrow("a", "1", "2"),))
    with pytest.raises(InputError):
        quiver.path(["a", "z"])


def test_prime_field(qq):
    gf = linalg.Field(5)
    algebra = builtin_algebra(N3, gf)
    assert algebra.dim == 12
    assert gf.render(gf(-1)) == "4"
    with pytest.raises(InputError):
        linalg.Field(6)

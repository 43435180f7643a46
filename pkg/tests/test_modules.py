"""Tests for representations, maps and AR theory."""

from __future__ import annotations

import pytest

from pysilting import linalg
from pysilting.errors import CapExceededError
from pysilting.modules import (
    Representation,
    ar_sequence,
    decompose,
    direct_sum,
    ext1_dim,
    hom_dim,
    injective,
    is_injective,
    is_isomorphic,
    is_projective,
    list_indecomposables,
    nu_module,
    projective,
    projective_presentation,
    simple,
    summands,
    tau,
    tau_inverse,
)


def test_projectives_and_injectives(a3):
    assert projective(a3, "1").dimension_vector == (1, 1, 1)
    assert projective(a3, "3").dimension_vector == (0, 0, 1)
    assert injective(a3, "3").dimension_vector == (1, 1, 1)
    assert is_isomorphic(injective(a3, "3"), projective(a3, "1"))
    assert is_injective(projective(a3, "1"))
    assert not is_projective(simple(a3, "1"))


def test_loewy_series(a3, n3):
    assert projective(a3, "1").loewy() == "(1/2/3)"
    assert projective(n3, "3").loewy() == "(3/1/2/3)"


def test_hom_dimensions(a3):
    assert hom_dim(projective(a3, "2"), projective(a3, "1")) == 1
    assert hom_dim(projective(a3, "1"), projective(a3, "2")) == 0
    assert hom_dim(simple(a3, "2"), simple(a3, "2")) == 1


def test_presentation_of_simple(a3):
    pres = projective_presentation(simple(a3, "1"))
    assert pres.p0 == ("1",)
    assert pres.p1 == ("2",)
    assert pres.entries[0][0] == a3.path_element(["a"])


def test_auslander_reiten_translate(a3):
    assert is_isomorphic(tau(simple(a3, "2")), simple(a3, "3"))
    assert is_isomorphic(tau_inverse(simple(a3, "3")), simple(a3, "2"))
    assert tau(projective(a3, "2")).is_zero


def test_ar_sequence(a3):
    sequence = ar_sequence(simple(a3, "2"))
    assert is_isomorphic(sequence.left, simple(a3, "3"))
    assert is_isomorphic(sequence.middle, projective(a3, "2"))


def test_ext1(a3):
    assert ext1_dim(simple(a3, "2"), simple(a3, "3")) == 1
    assert ext1_dim(simple(a3, "3"), simple(a3, "2")) == 0
    assert ext1_dim(simple(a3, "1"), simple(a3, "3")) == 0


def test_nakayama_on_modules(a3, n3):
    assert is_isomorphic(nu_module(projective(a3, "2")), injective(a3, "2"))
    assert is_isomorphic(nu_module(injective(a3, "2"), "inverse"), projective(a3, "2"))
    assert is_isomorphic(nu_module(projective(n3, "1")), projective(n3, "1"))


def test_decomposition(k2, qq):
    total = direct_sum([simple(k2, "1"), projective(k2, "2"), simple(k2, "1")]).module
    pieces = decompose(total)
    assert sorted((m.dimension_vector, n) for m, n in pieces) == [((1, 0), 2), ((1, 2), 1)]
    assert len(summands(total)) == 3


def test_relations_checked(a3, qq):
    from pysilting.errors import InputError

    quiver_module = Representation(
        a3, {"1": 1, "2": 1}, {"a": linalg.matrix(qq, [[qq.one]], 1, 1)}
    )
    assert quiver_module.loewy() == "(1/2)"
    with pytest.raises(InputError):
        Representation(a3, {"1": 1, "4": 1})


@pytest.mark.parametrize(("name", "count"), [("a3", 6), ("k2", 6), ("n3", 12)])
def test_indecomposable_counts(request, name, count):
    algebra = request.getfixturevalue(name)
    assert len(list_indecomposables(algebra)) == count


def test_kronecker_is_representation_infinite(kronecker):
    with pytest.raises(CapExceededError):
        list_indecomposables(kronecker, cap=12)

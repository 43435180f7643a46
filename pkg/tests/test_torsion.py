"""Tests for torsion classes and the two-term silting objects they induce."""

from __future__ import annotations

from itertools import combinations

import pytest

from pysilting import linalg, torsion
from pysilting.complexes import cohomology, compare_order, iso_complexes, regular
from pysilting.const import STATUS_PRESILTING
from pysilting.errors import (
    InputError,
    NotCovariantlyFiniteError,
    NotSiltingError,
    OrderViolatedError,
)
from pysilting.fixtures import n3_tilting, n3_two_term
from pysilting.modules import Representation, injective, is_isomorphic, projective, simple
from pysilting.silting import SiltingRecord, classify, regular_record
from pysilting.torsion import (
    class_data,
    injective_perp,
    okuyama_rickard,
    okuyama_rickard_complex,
    perp_class,
    torsion_complex,
    torsion_part,
    torsion_silting,
    two_term_reduce,
)


@pytest.fixture(scope="module")
def a3_perp_s2(a3):
    return perp_class(simple(a3, "2"))


def test_perp_of_zero_is_everything(n3):
    cls = injective_perp(n3, n3.vertices)
    assert len(cls.indecomposables) == 12
    assert cls.perp == []
    assert cls.annihilator == []


def test_perp_of_injectives_is_zero(a3):
    cls = injective_perp(a3, [])
    assert cls.indecomposables == []
    assert len(cls.annihilator) == a3.dim
    assert iso_complexes(torsion_complex(cls), regular(a3))


def test_membership(a3, a3_perp_s2):
    assert len(a3_perp_s2.indecomposables) == 4
    assert a3_perp_s2.contains(simple(a3, "1"))
    assert a3_perp_s2.contains(simple(a3, "3"))
    assert not a3_perp_s2.contains(simple(a3, "2"))
    assert len(a3_perp_s2.perp) == 1
    assert is_isomorphic(a3_perp_s2.perp[0], simple(a3, "2"))
    assert a3_perp_s2.verify_closure()


def test_torsion_part(a3, a3_perp_s2):
    inclusion = torsion_part(a3_perp_s2, projective(a3, "2"))
    assert inclusion.source.dim == 1
    assert is_isomorphic(inclusion.source, simple(a3, "3"))

    whole = torsion_part(a3_perp_s2, projective(a3, "1"))
    assert whole.source.dim == 3


def test_ext_projectives(a3, a3_perp_s2):
    found = a3_perp_s2.ext_projectives
    assert len(found) == 3
    for module in (simple(a3, "1"), simple(a3, "3"), projective(a3, "1")):
        assert any(is_isomorphic(module, x) for x in found)
    assert a3_perp_s2.covariantly_finite


def test_ext_injectives_of_everything(n3):
    cls = injective_perp(n3, n3.vertices)
    assert len(cls.ext_injectives) == 3


def test_torsion_silting_is_two_term(a3, a3_perp_s2):
    record = torsion_silting(a3_perp_s2)
    assert record.is_silting
    assert len(record.summands) == 3
    assert compare_order(regular(a3, -1), record.complex)
    assert compare_order(record.complex, regular(a3))


def test_okuyama_rickard_extremes(n3):
    assert iso_complexes(okuyama_rickard_complex(n3, n3.vertices), regular(n3, -1))
    assert iso_complexes(okuyama_rickard_complex(n3, []), regular(n3))


@pytest.mark.parametrize("vertices", [["1"], ["1", "2"]])
def test_okuyama_rickard_matches_torsion(n3, vertices):
    record = okuyama_rickard(n3, vertices)
    assert record.is_tilting
    induced = torsion_silting(injective_perp(n3, vertices))
    assert iso_complexes(record.complex, induced.complex)


def test_okuyama_rickard_unknown_vertex(n3):
    with pytest.raises(InputError):
        okuyama_rickard_complex(n3, ["7"])


def test_nu_stable_over_symmetric(n3):
    assert injective_perp(n3, ["2"]).nu_stable()


def test_two_term_reduce_n3(n3):
    reduced = two_term_reduce(classify(n3_tilting(n3)))
    assert iso_complexes(reduced.complex, n3_two_term(n3))
    assert reduced.is_tilting


def test_two_term_reduce_of_regular(a3):
    reduced = two_term_reduce(regular_record(a3))
    assert iso_complexes(reduced.complex, regular(a3))


def test_two_term_reduce_needs_order(a3):
    with pytest.raises(OrderViolatedError):
        two_term_reduce(regular_record(a3, 1))


def test_class_data_extremes(n3):
    everything = class_data(injective_perp(n3, n3.vertices))
    assert len(everything.ext_projectives) == 3
    for module in everything.ext_projectives:
        assert any(is_isomorphic(module, projective(n3, v)) for v in n3.vertices)
    assert everything.annihilator == ()
    assert everything.covariantly_finite

    nothing = class_data(injective_perp(n3, []))
    assert nothing.ext_projectives == ()
    assert nothing.ext_injectives == ()
    assert len(nothing.annihilator) == n3.dim


def _three_over_one(n3):
    fld = n3.field
    return Representation(n3, {"3": 1, "1": 1}, {"x3": linalg.matrix(fld, [[fld.one]], 1, 1)})


def test_n3_worked_class(n3):
    cls = perp_class(cohomology(n3_tilting(n3), 0))
    assert len(cls.indecomposables) == 3
    for module in (simple(n3, "1"), simple(n3, "3"), _three_over_one(n3)):
        assert cls.contains(module)
    data = class_data(cls)
    assert len(data.ext_projectives) == 2
    assert any(is_isomorphic(x, simple(n3, "1")) for x in data.ext_projectives)
    assert any(is_isomorphic(x, _three_over_one(n3)) for x in data.ext_projectives)
    assert iso_complexes(torsion_silting(cls).complex, n3_two_term(n3))


def test_n3_torsion_part_of_injective(n3):
    cls = perp_class(cohomology(n3_tilting(n3), 0))
    inclusion = torsion_part(cls, injective(n3, "2"))
    assert cls.contains(inclusion.source)
    assert inclusion.source.dim <= injective(n3, "2").dim


def _subsets(vertices):
    return [list(c) for k in range(len(vertices) + 1) for c in combinations(vertices, k)]


@pytest.mark.slow
@pytest.mark.parametrize("name", ["n3", "k2", "sn22"])
def test_okuyama_rickard_suite(request, name):
    algebra = request.getfixturevalue(name)
    for vertices in _subsets(algebra.vertices):
        record = okuyama_rickard(algebra, vertices)
        cls = injective_perp(algebra, vertices)
        assert record.is_silting
        assert iso_complexes(record.complex, torsion_silting(cls).complex)
        assert record.is_tilting == cls.nu_stable()


def test_perp_class_needs_finitely_many_indecomposables(kronecker):
    with pytest.raises(NotCovariantlyFiniteError):
        perp_class(simple(kronecker, "1"), cap=12)


def test_torsion_silting_raises_when_not_silting(a3, a3_perp_s2, monkeypatch):
    monkeypatch.setattr(
        torsion, "classify", lambda complex_: SiltingRecord(complex_, STATUS_PRESILTING, ())
    )
    with pytest.raises(NotSiltingError):
        torsion_silting(a3_perp_s2)

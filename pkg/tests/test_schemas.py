"""Tests for document schemas and runtime settings."""

from __future__ import annotations

import logging

import pytest

from pysilting import linalg
from pysilting.complexes import iso_complexes, presentation_complex
from pysilting.const import FORMAT_DOT, LEFT
from pysilting.errors import InputError
from pysilting.fixtures import n3_tilting
from pysilting.modules import is_isomorphic, projective, simple
from pysilting.schemas import (
    Settings,
    complex_from_document,
    complex_to_document,
    dump_document,
    load_algebra,
    module_from_document,
    module_to_document,
    parse_document,
    presentation_to_document,
    record_from_document,
    record_to_document,
)
from pysilting.silting import mutate, regular_record

A2_DOCUMENT = {
    "vertices": ["1", "2"],
    "arrows": [{"name": "a", "source": "1", "target": "2"}],
}

LOOP_DOCUMENT = {
    "vertices": ["1"],
    "arrows": [{"name": "x", "source": "1", "target": "1"}],
    "relations": [[{"coeff": 1, "path": ["x", "x", "x"]}]],
    "field": {"gf": 3},
}


def test_minimal_algebra_document():
    algebra = load_algebra(A2_DOCUMENT)
    assert algebra.dim == 3
    assert algebra.field == linalg.Field()


def test_algebra_document_with_relations():
    algebra = load_algebra(LOOP_DOCUMENT)
    assert algebra.dim == 3
    assert algebra.field.characteristic == 3


def test_field_argument_overrides_document():
    algebra = load_algebra(LOOP_DOCUMENT, linalg.Field(5))
    assert algebra.field.characteristic == 5


def test_presentation_round_trip(n3):
    document = presentation_to_document(n3.presentation)
    assert load_algebra(document).dim == n3.dim
    assert presentation_to_document(load_algebra(document).presentation) == document


@pytest.mark.parametrize(
    "document",
    [
        {"vertices": []},
        {"vertices": ["1"], "arrows": [{"name": "a", "source": "1"}]},
        {"vertices": ["1"], "relations": [[]]},
        {"vertices": ["1"], "field": {"gf": 1}},
        {"vertices": ["1"], "field": "reals"},
    ],
)
def test_invalid_algebra_documents(document):
    with pytest.raises(InputError):
        load_algebra(document)


def test_module_round_trip(a3):
    module = projective(a3, "1")
    document = module_to_document(module)
    assert document["dims"] == {"1": 1, "2": 1, "3": 1}
    assert is_isomorphic(module_from_document(a3, document), module)


def test_module_document_shape_checked(a3):
    with pytest.raises(InputError):
        module_from_document(a3, {"dims": {"1": 1, "2": 1}, "maps": {"a": [[1, 0]]}})
    with pytest.raises(InputError):
        module_from_document(a3, {"dims": {"1": 1}, "maps": {"z": [[1]]}})


def test_complex_round_trip(n3, a3):
    for complex_ in (n3_tilting(n3), presentation_complex(simple(a3, "1"))):
        document = complex_to_document(complex_)
        assert all(isinstance(d, str) for d in document["degrees"])
        restored = complex_from_document(complex_.algebra, document)
        assert iso_complexes(restored, complex_)
        assert complex_to_document(restored) == document


def test_complex_document_checked(a3):
    with pytest.raises(InputError):
        complex_from_document(a3, {"degrees": {"zero": ["1"]}})


def test_rejected_document_is_logged(a3, caplog):
    with caplog.at_level(logging.DEBUG, logger="pysilting.schemas"), pytest.raises(InputError):
        complex_from_document(a3, {"degrees": {"zero": ["1"]}})
    assert "Rejected complex" in caplog.text


def test_record_round_trip(k2):
    record = mutate(regular_record(k2), 1, LEFT)
    document = record_to_document(record)
    restored = record_from_document(k2, document)
    assert restored.status == record.status
    assert restored.certificate == record.certificate
    assert restored.provenance == record.provenance
    assert restored.created == record.created
    assert restored.fingerprint == record.fingerprint
    assert iso_complexes(restored.root, regular_record(k2).complex)


def test_dump_document_is_canonical():
    text = dump_document({"b": 1, "a": [1, 2]})
    assert text == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'
    assert parse_document(text) == {"a": [1, 2], "b": 1}


def test_parse_document_rejects_garbage():
    with pytest.raises(InputError):
        parse_document("{not json", "complex")


def test_settings_defaults():
    settings = Settings.from_options({})
    assert settings.field == linalg.Field()
    assert settings.bfs_cap > 0


def test_settings_values():
    settings = Settings.from_options({"field": "gf:7", "format": FORMAT_DOT, "tower_cap": 3})
    assert settings.field.characteristic == 7
    assert settings.format == FORMAT_DOT
    assert settings.tower_cap == 3


@pytest.mark.parametrize(
    "options",
    [
        {"field": "gf:6"},
        {"field": "complex"},
        {"bfs_cap": 0},
        {"format": "svg"},
        {"unknown": 1},
    ],
)
def test_settings_rejected(options):
    with pytest.raises(InputError):
        Settings.from_options(options)

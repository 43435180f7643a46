"""Voluptuous schemas and canonical JSON documents."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

import voluptuous as vol

from . import linalg
from .algebra import AlgebraPresentation, Arrow, Quiver, build_algebra
from .complexes import ProjComplex
from .const import (
    CONF_ARROWS,
    CONF_COEFF,
    CONF_DEGREES,
    CONF_DIFFERENTIALS,
    CONF_DIMS,
    CONF_FIELD,
    CONF_GF,
    CONF_PATH,
    CONF_RELATIONS,
    CONF_VERTICES,
    DEFAULT_BFS_CAP,
    DEFAULT_DESCENT_CAP,
    DEFAULT_FIELD,
    DEFAULT_INDECOMPOSABLE_CAP,
    DEFAULT_PATH_CAP,
    DEFAULT_TOWER_CAP,
    DIRECTIONS,
    FIELD_RATIONALS,
    FORMAT_JSON,
    FORMATS,
    STATUS_ORDER,
)
from .errors import InputError
from .modules import Representation
from .silting import CERT_GENERATION, CERT_MUTATION, CERT_NONE, MutationStep, SiltingRecord

if TYPE_CHECKING:
    from .algebra import Algebra

_LOGGER = logging.getLogger(__name__)

CONF_NAME = "name"
CONF_SOURCE = "source"
CONF_TARGET = "target"
CONF_MAPS = "maps"
CONF_COMPLEX = "complex"
CONF_STATUS = "status"
CONF_SUMMANDS = "summands"
CONF_CERTIFICATE = "certificate"
CONF_PROVENANCE = "provenance"
CONF_ROOT = "root"
CONF_CREATED = "created"
CONF_TOWER_LENGTH = "tower_length"
CONF_PARENT = "parent"
CONF_SUMMAND = "summand"
CONF_DIRECTION = "direction"
CONF_FINGERPRINT = "fingerprint"
CONF_RENDERED = "rendered"

Scalar = vol.Any(int, str)

TERM_SCHEMA = vol.Schema(
    {vol.Required(CONF_COEFF): Scalar, vol.Required(CONF_PATH): [str]}
)

FIELD_SCHEMA = vol.Any(
    FIELD_RATIONALS,
    vol.Schema({vol.Required(CONF_GF): vol.All(int, vol.Range(min=2))}),
)

ALGEBRA_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_VERTICES): vol.All([str], vol.Length(min=1)),
        vol.Optional(CONF_ARROWS, default=list): [
            {
                vol.Required(CONF_NAME): str,
                vol.Required(CONF_SOURCE): str,
                vol.Required(CONF_TARGET): str,
            }
        ],
        vol.Optional(CONF_RELATIONS, default=list): [vol.All([TERM_SCHEMA], vol.Length(min=1))],
        vol.Optional(CONF_FIELD, default=FIELD_RATIONALS): FIELD_SCHEMA,
    }
)

MODULE_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_DIMS): {str: vol.All(int, vol.Range(min=0))},
        vol.Optional(CONF_MAPS, default=dict): {str: [[Scalar]]},
    }
)

COMPLEX_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_DEGREES): {vol.Coerce(int): [str]},
        vol.Optional(CONF_DIFFERENTIALS, default=dict): {vol.Coerce(int): [[[TERM_SCHEMA]]]},
    }
)

STEP_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_PARENT): str,
        vol.Required(CONF_SUMMAND): vol.All(int, vol.Range(min=0)),
        vol.Required(CONF_DIRECTION): vol.In(DIRECTIONS),
    }
)

RECORD_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_COMPLEX): COMPLEX_SCHEMA,
        vol.Required(CONF_STATUS): vol.In(STATUS_ORDER),
        vol.Required(CONF_SUMMANDS): [COMPLEX_SCHEMA],
        vol.Optional(CONF_CERTIFICATE, default=CERT_NONE): vol.In(
            (CERT_NONE, CERT_GENERATION, CERT_MUTATION)
        ),
        vol.Optional(CONF_PROVENANCE, default=list): [STEP_SCHEMA],
        vol.Optional(CONF_ROOT, default=None): vol.Any(None, COMPLEX_SCHEMA),
        vol.Optional(CONF_CREATED, default=None): vol.Any(None, vol.All(int, vol.Range(min=0))),
        vol.Optional(CONF_TOWER_LENGTH, default=None): vol.Any(None, vol.All(int, vol.Range(min=0))),
        vol.Optional(CONF_FINGERPRINT): str,
        vol.Optional(CONF_RENDERED): str,
    }
)

SETTINGS_SCHEMA = vol.Schema(
    {
        vol.Optional("field", default=DEFAULT_FIELD): str,
        vol.Optional("path_cap", default=DEFAULT_PATH_CAP): vol.All(int, vol.Range(min=1)),
        vol.Optional("bfs_cap", default=DEFAULT_BFS_CAP): vol.All(int, vol.Range(min=1)),
        vol.Optional("indecomposable_cap", default=DEFAULT_INDECOMPOSABLE_CAP): vol.All(
            int, vol.Range(min=1)
        ),
        vol.Optional("tower_cap", default=DEFAULT_TOWER_CAP): vol.All(int, vol.Range(min=1)),
        vol.Optional("descent_cap", default=DEFAULT_DESCENT_CAP): vol.All(int, vol.Range(min=1)),
        vol.Optional("format", default=FORMAT_JSON): vol.In(FORMATS),
    }
)


@dataclass(frozen=True)
class Settings:
    """Validated runtime options."""

    field: linalg.Field
    path_cap: int = DEFAULT_PATH_CAP
    bfs_cap: int = DEFAULT_BFS_CAP
    indecomposable_cap: int = DEFAULT_INDECOMPOSABLE_CAP
    tower_cap: int = DEFAULT_TOWER_CAP
    descent_cap: int = DEFAULT_DESCENT_CAP
    format: str = FORMAT_JSON

    @classmethod
    def from_options(cls, options: dict[str, Any]) -> Settings:
        """Validate raw options before any computation."""
        data = validate(SETTINGS_SCHEMA, options, "options")
        return cls(field=linalg.Field.from_descriptor(data.pop("field")), **data)


def validate(schema: vol.Schema, data: Any, what: str) -> Any:
    """
    Validate a document, turning schema failures into InputError.

    Args:
        schema: the voluptuous schema
        data: the parsed document
        what: name used in the error message

    Returns:
        The validated data with defaults filled in

    """
    try:
        return schema(data)
    except vol.Invalid as err:
        _LOGGER.debug("Rejected %s at %s", what, err.path)
        msg = f"Invalid {what}: {err}"
        raise InputError(msg) from err


def dump_document(data: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_document(text: str, what: str = "document") -> Any:
    """Parse JSON text."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        msg = f"Invalid {what}: {err}"
        raise InputError(msg) from err


# Algebras


def _field_from_document(value: Any) -> linalg.Field:
    if value == FIELD_RATIONALS:
        return linalg.Field(0)
    return linalg.Field(value[CONF_GF])


def _field_to_document(fld: linalg.Field) -> Any:
    if fld.characteristic:
        return {CONF_GF: fld.characteristic}
    return FIELD_RATIONALS


def presentation_from_document(
    data: Any, fld: linalg.Field | None = None
) -> AlgebraPresentation:
    """
    Read an algebra document.

    Args:
        data: the parsed document
        fld: field overriding the one in the document

    Returns:
        The presentation

    """
    data = validate(ALGEBRA_SCHEMA, data, "algebra")
    quiver = Quiver(
        tuple(data[CONF_VERTICES]),
        tuple(
            Arrow(a[CONF_NAME], a[CONF_SOURCE], a[CONF_TARGET]) for a in data[CONF_ARROWS]
        ),
    )
    fld = fld or _field_from_document(data[CONF_FIELD])
    relations = tuple(
        tuple((fld(term[CONF_COEFF]), quiver.path(term[CONF_PATH])) for term in relation)
        for relation in data[CONF_RELATIONS]
    )
    return AlgebraPresentation(quiver, relations, fld)


def presentation_to_document(presentation: AlgebraPresentation) -> dict[str, Any]:
    """Inverse of presentation_from_document."""
    fld = presentation.field
    return {
        CONF_VERTICES: list(presentation.quiver.vertices),
        CONF_ARROWS: [
            {CONF_NAME: a.name, CONF_SOURCE: a.source, CONF_TARGET: a.target}
            for a in presentation.quiver.arrows
        ],
        CONF_RELATIONS: [
            [{CONF_COEFF: fld.render(c), CONF_PATH: p.words()} for c, p in relation]
            for relation in presentation.relations
        ],
        CONF_FIELD: _field_to_document(fld),
    }


def load_algebra(
    data: Any, fld: linalg.Field | None = None, path_cap: int = DEFAULT_PATH_CAP
) -> Algebra:
    """Build the algebra of a document."""
    return build_algebra(presentation_from_document(data, fld), path_cap)


# Modules


def module_from_document(algebra: Algebra, data: Any) -> Representation:
    """Read a module document: dimensions per vertex and a matrix per arrow."""
    data = validate(MODULE_SCHEMA, data, "module")
    fld = algebra.field
    dims = data[CONF_DIMS]
    maps = {}
    for name, rows in data[CONF_MAPS].items():
        arrow = algebra.quiver.arrow_map.get(name)
        if arrow is None:
            msg = f"Module gives a matrix for unknown arrow {name}"
            raise InputError(msg)
        nrows, ncols = dims.get(arrow.target, 0), dims.get(arrow.source, 0)
        if len(rows) != nrows or any(len(row) != ncols for row in rows):
            msg = f"Arrow {name} needs a {nrows} x {ncols} matrix"
            raise InputError(msg)
        maps[name] = linalg.matrix(fld, [[fld(x) for x in row] for row in rows], nrows, ncols)
    return Representation(algebra, dims, maps)


def module_to_document(module: Representation) -> dict[str, Any]:
    """Inverse of module_from_document."""
    fld = module.field
    return {
        CONF_DIMS: {v: d for v, d in module.dims.items() if d},
        CONF_MAPS: {
            name: [[fld.render(x) for x in row] for row in linalg.rows_of(mat)]
            for name, mat in module.maps.items()
            if mat.shape[0] and mat.shape[1]
        },
    }


# Complexes and records


def complex_from_document(algebra: Algebra, data: Any) -> ProjComplex:
    """Read a complex document: vertex lists per degree and element matrices."""
    data = validate(COMPLEX_SCHEMA, data, "complex")
    differentials = {
        d: [[algebra.element_from_terms(terms) for terms in row] for row in matrix]
        for d, matrix in data[CONF_DIFFERENTIALS].items()
    }
    return ProjComplex(algebra, data[CONF_DEGREES], differentials)


def complex_to_document(complex_: ProjComplex) -> dict[str, Any]:
    """Inverse of complex_from_document; degree keys are strings."""
    algebra = complex_.algebra
    return {
        CONF_DEGREES: {str(d): list(vs) for d, vs in complex_.terms.items()},
        CONF_DIFFERENTIALS: {
            str(d): [[algebra.element_to_terms(x) for x in row] for row in matrix]
            for d, matrix in complex_.diffs.items()
        },
    }


def record_to_document(record: SiltingRecord) -> dict[str, Any]:
    """A silting record with its provenance chain."""
    return {
        CONF_COMPLEX: complex_to_document(record.complex),
        CONF_STATUS: record.status,
        CONF_SUMMANDS: [complex_to_document(s) for s in record.summands],
        CONF_CERTIFICATE: record.certificate,
        CONF_PROVENANCE: [
            {CONF_PARENT: s.parent, CONF_SUMMAND: s.summand, CONF_DIRECTION: s.direction}
            for s in record.provenance
        ],
        CONF_ROOT: None if record.root is None else complex_to_document(record.root),
        CONF_CREATED: record.created,
        CONF_TOWER_LENGTH: record.tower_length,
        CONF_FINGERPRINT: record.fingerprint,
    }


def record_from_document(algebra: Algebra, data: Any) -> SiltingRecord:
    """Inverse of record_to_document."""
    data = validate(RECORD_SCHEMA, data, "silting record")
    root = data[CONF_ROOT]
    return SiltingRecord(
        complex_from_document(algebra, data[CONF_COMPLEX]),
        data[CONF_STATUS],
        tuple(complex_from_document(algebra, s) for s in data[CONF_SUMMANDS]),
        data[CONF_CERTIFICATE],
        tuple(
            MutationStep(s[CONF_PARENT], s[CONF_SUMMAND], s[CONF_DIRECTION])
            for s in data[CONF_PROVENANCE]
        ),
        None if root is None else complex_from_document(algebra, root),
        data[CONF_CREATED],
        data[CONF_TOWER_LENGTH],
    )

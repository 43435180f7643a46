"""Helper functions for the pysilting command line."""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import TYPE_CHECKING, Any

from .complexes import ProjComplex, presentation_complex, regular, shift, stalk
from .errors import InputError
from .fixtures import builtin_algebra
from .modules import injective, projective, simple
from .schemas import complex_from_document, load_algebra, module_from_document, parse_document

if TYPE_CHECKING:
    from . import linalg
    from .algebra import Algebra
    from .modules import Representation

_LOGGER = logging.getLogger(__name__)

BUILTIN_PREFIX = "@"

# @A, @A[n], @P(i), @P(i)[n], @pres(S_i), @pres(I_i)[n]
_REGULAR = re.compile(r"^@A(?:\[(-?\d+)\])?$")
_PROJECTIVE = re.compile(r"^@P\((\w+)\)(?:\[(-?\d+)\])?$")
_PRESENTATION = re.compile(r"^@pres\(([SPI])_?(\w+)\)(?:\[(-?\d+)\])?$")


def read_json(path: str, what: str) -> Any:
    """
    Read and parse a JSON document from disk.

    Args:
        path: file path
        what: name of the document used in error messages

    Returns:
        The parsed document

    """
    _LOGGER.debug("Reading %s from %s", what, path)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        msg = f"Cannot read {what} {path}: {err.strerror}"
        raise InputError(msg) from err
    return parse_document(text, what)


def resolve_algebra(ref: str, fld: linalg.Field | None, path_cap: int) -> Algebra:
    """
    Build an algebra from a file path or a builtin name such as @N3.

    Args:
        ref: path or builtin reference
        fld: field overriding the document's, if given
        path_cap: longest truncation tried

    Returns:
        The algebra

    """
    if ref.startswith(BUILTIN_PREFIX):
        return builtin_algebra(ref[len(BUILTIN_PREFIX) :], fld, path_cap)
    return load_algebra(read_json(ref, "algebra"), fld, path_cap)


def _shift_of(text: str | None) -> int:
    return int(text) if text else 0


def _vertex(algebra: Algebra, label: str) -> str:
    if label not in algebra.vertices:
        msg = f"Unknown vertex {label}"
        raise InputError(msg)
    return label


def resolve_complex(algebra: Algebra, ref: str) -> ProjComplex:
    """
    Build a complex from a file path or a builtin constructor.

    Builtins: @A, @A[n], @P(i), @pres(S_i) with an optional [n] shift
    on the last two; @pres also accepts P_i and I_i.

    Args:
        algebra: the algebra
        ref: path or builtin reference

    Returns:
        The complex

    """
    if not ref.startswith(BUILTIN_PREFIX):
        return complex_from_document(algebra, read_json(ref, "complex"))
    _LOGGER.debug("Resolving builtin complex %s", ref)
    if match := _REGULAR.match(ref):
        return regular(algebra, _shift_of(match.group(1)))
    if match := _PROJECTIVE.match(ref):
        complex_ = stalk(algebra, (_vertex(algebra, match.group(1)),))
        return shift(complex_, _shift_of(match.group(2)))
    if match := _PRESENTATION.match(ref):
        kind, vertex, offset = match.groups()
        build = {"S": simple, "P": projective, "I": injective}[kind]
        module = build(algebra, _vertex(algebra, vertex))
        return shift(presentation_complex(module), _shift_of(offset))
    msg = f"Unknown builtin complex {ref}"
    raise InputError(msg)


def resolve_module(algebra: Algebra, ref: str) -> Representation:
    """Module from a file path or one of @S(i), @P(i), @I(i)."""
    match = re.match(r"^@([SPI])\((\w+)\)$", ref)
    if match:
        build = {"S": simple, "P": projective, "I": injective}[match.group(1)]
        return build(algebra, _vertex(algebra, match.group(2)))
    return module_from_document(algebra, read_json(ref, "module"))


def parse_vertices(algebra: Algebra, text: str) -> list[str]:
    """
    Split a comma-separated vertex list.

    Args:
        algebra: the algebra
        text: e.g. "1,3"; empty for no vertices

    Returns:
        The vertices in the given order

    """
    labels = [part.strip() for part in text.split(",") if part.strip()]
    return [_vertex(algebra, v) for v in labels]

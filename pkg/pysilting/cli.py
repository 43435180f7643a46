"""Command line interface for pysilting."""

from __future__ import annotations

import argparse
import logging
import sys
from typing import TYPE_CHECKING, Any

import colorlog

from .algebra import cartan_matrix
from .complexes import compare_order, render_complex, shift
from .const import (
    DEFAULT_BFS_CAP,
    DEFAULT_DESCENT_CAP,
    DEFAULT_FIELD,
    DEFAULT_INDECOMPOSABLE_CAP,
    DEFAULT_PATH_CAP,
    DEFAULT_TOWER_CAP,
    DIRECTIONS,
    DOMAIN,
    EXIT_FALSE,
    EXIT_OK,
    FORMAT_JSON,
    FORMATS,
    LEFT,
    VERSION,
)
from .errors import InputError, SiltingError
from .explorer import enumerate_interval, export_graph, search_two_term_silting, two_term_silting
from .helpers import parse_vertices, resolve_algebra, resolve_complex, resolve_module
from .modules import list_indecomposables, nu_module, summands, tau
from .schemas import (
    Settings,
    dump_document,
    module_to_document,
    presentation_to_document,
    record_to_document,
)
from .silting import (
    MutationPath,
    bongartz_complete,
    classify,
    connect_descend,
    end_algebra,
    mutate,
    regular_record,
)
from .torsion import okuyama_rickard, perp_class, torsion_silting, two_term_reduce

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from .algebra import Algebra
    from .silting import SiltingRecord

_LOGGER = logging.getLogger(__name__)

LOG_FORMAT = "%(log_color)s%(levelname)-8s%(reset)s %(name)s: %(message)s"


def setup_logging(verbosity: int) -> None:
    """Install a colored handler on standard error for the package logger."""
    handler = colorlog.StreamHandler(sys.stderr)
    handler.setFormatter(colorlog.ColoredFormatter(LOG_FORMAT))
    logger = logging.getLogger(DOMAIN)
    logger.handlers[:] = [handler]
    logger.propagate = False
    if verbosity > 0:
        logger.setLevel(logging.DEBUG)
    elif verbosity < 0:
        logger.setLevel(logging.WARNING)
    else:
        logger.setLevel(logging.INFO)


def _emit(document: Any) -> None:
    """Write a document to standard output."""
    text = document if isinstance(document, str) else dump_document(document)
    sys.stdout.write(text)


def _path_document(path: MutationPath) -> dict[str, Any]:
    return {
        "start": path.start,
        "end": path.end,
        "steps": [{"summand": k, "direction": d} for k, d in path.steps],
    }


def _record_document(record: SiltingRecord) -> dict[str, Any]:
    document = record_to_document(record)
    document["rendered"] = render_complex(record.complex)
    return document


def _settings(args: argparse.Namespace) -> Settings:
    return Settings.from_options(
        {
            "field": args.field or DEFAULT_FIELD,
            "path_cap": args.path_cap,
            "bfs_cap": args.bfs_cap,
            "indecomposable_cap": args.indecomposable_cap,
            "tower_cap": args.tower_cap,
            "descent_cap": args.descent_cap,
            "format": getattr(args, "format", FORMAT_JSON),
        }
    )


def _algebra(args: argparse.Namespace, settings: Settings) -> Algebra:
    fld = None if args.field is None else settings.field
    return resolve_algebra(args.algebra, fld, settings.path_cap)


# Subcommands


def cmd_algebra_info(args: argparse.Namespace, settings: Settings) -> int:
    """Presentation, dimension, Cartan matrix and Nakayama data."""
    algebra = _algebra(args, settings)
    data = algebra.nakayama
    _emit(
        {
            "presentation": presentation_to_document(algebra.presentation),
            "dimension": algebra.dim,
            "cartan": cartan_matrix(algebra),
            "self_injective": data.self_injective,
            "symmetric": data.symmetric,
            "nakayama_permutation": data.permutation,
        }
    )
    return EXIT_OK


def cmd_algebra_indecomposables(args: argparse.Namespace, settings: Settings) -> int:
    """Every indecomposable module, by dimension vector and Loewy series."""
    algebra = _algebra(args, settings)
    modules = list_indecomposables(algebra, settings.indecomposable_cap)
    _emit(
        [
            {"dims": list(m.dimension_vector), "loewy": m.loewy()}
            for m in modules
        ]
    )
    return EXIT_OK


def cmd_module_info(args: argparse.Namespace, settings: Settings) -> int:
    """Decomposition, Loewy series, tau and nu of a module."""
    algebra = _algebra(args, settings)
    module = resolve_module(algebra, args.module)
    _emit(
        {
            "module": module_to_document(module),
            "loewy": module.loewy(),
            "summands": [m.loewy() for m in summands(module)],
            "tau": module_to_document(tau(module)),
            "nu": module_to_document(nu_module(module)),
        }
    )
    return EXIT_OK


def cmd_classify(args: argparse.Namespace, settings: Settings) -> int:
    """Classify a complex; predicate false unless it is silting."""
    algebra = _algebra(args, settings)
    record = classify(resolve_complex(algebra, args.complex), settings.tower_cap)
    _LOGGER.info("Status: %s", record.status)
    _emit(_record_document(record))
    return EXIT_OK if record.is_silting else EXIT_FALSE


def _silting_record(algebra: Algebra, ref: str, settings: Settings) -> SiltingRecord:
    return classify(resolve_complex(algebra, ref), settings.tower_cap)


def cmd_mutate(args: argparse.Namespace, settings: Settings) -> int:
    """Irreducible mutation at one summand."""
    algebra = _algebra(args, settings)
    record = _silting_record(algebra, args.complex, settings)
    _emit(_record_document(mutate(record, args.summand, args.direction)))
    return EXIT_OK


def cmd_complete(args: argparse.Namespace, settings: Settings) -> int:
    """Complete a presilting U, by Bongartz when T[-1] >= U >= T, else by descent."""
    algebra = _algebra(args, settings)
    record = _silting_record(algebra, args.complex, settings)
    target = resolve_complex(algebra, args.target)
    if compare_order(shift(record.complex, -1), target) and compare_order(target, record.complex):
        _LOGGER.info("Using Bongartz completion")
        _emit(_record_document(bongartz_complete(record, target)))
        return EXIT_OK
    _LOGGER.info("Using descent by left mutation")
    result = connect_descend(record, target, settings.descent_cap)
    if isinstance(result, MutationPath):
        result = result.records[-1] if result.records else record
    _emit(_record_document(result))
    return EXIT_OK


def cmd_connect(args: argparse.Namespace, settings: Settings) -> int:
    """Mutation path from T down to U; predicate false when U is not below T."""
    algebra = _algebra(args, settings)
    record = _silting_record(algebra, args.complex, settings)
    target = resolve_complex(algebra, args.target)
    if not compare_order(record.complex, target):
        _LOGGER.info("U is not below T")
        return EXIT_FALSE
    result = connect_descend(record, target, settings.descent_cap)
    if not isinstance(result, MutationPath):
        _LOGGER.info("U is not silting; printing the completion reached")
        _emit(_record_document(result))
        return EXIT_FALSE
    _emit(_path_document(result))
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace, settings: Settings) -> int:
    """Two-term reduction of a silting P with A[-l] >= P >= A."""
    algebra = _algebra(args, settings)
    record = _silting_record(algebra, args.complex, settings)
    _emit(_record_document(two_term_reduce(record)))
    return EXIT_OK


def cmd_two_term(args: argparse.Namespace, settings: Settings) -> int:
    """Every silting T with A >= T >= A[1]."""
    algebra = _algebra(args, settings)
    if args.search:
        records = search_two_term_silting(algebra, settings.indecomposable_cap)
    else:
        records = two_term_silting(algebra, settings.bfs_cap)
    _LOGGER.info("Found %s two-term silting objects", len(records))
    _emit([_record_document(r) for r in records])
    return EXIT_OK


def cmd_quiver(args: argparse.Namespace, settings: Settings) -> int:
    """Silting quiver of the interval [A[bottom], A[top]]."""
    algebra = _algebra(args, settings)
    if args.bottom < args.top:
        msg = "--bottom must be at least --top"
        raise InputError(msg)
    graph = enumerate_interval(
        regular_record(algebra, args.top), regular_record(algebra, args.bottom), settings.bfs_cap
    )
    _LOGGER.info("Interval has %s silting objects", len(graph))
    _emit(export_graph(graph, settings.format, shift_identify=args.shift_identify))
    return EXIT_OK


def cmd_torsion(args: argparse.Namespace, settings: Settings) -> int:
    """T_C for C = perp M, or the Okuyama-Rickard complex of an idempotent."""
    algebra = _algebra(args, settings)
    if args.perp is not None:
        module = resolve_module(algebra, args.perp)
        record = torsion_silting(perp_class(module, settings.indecomposable_cap))
    else:
        record = okuyama_rickard(algebra, parse_vertices(algebra, args.or_idempotent))
    _emit(_record_document(record))
    return EXIT_OK


def cmd_end_algebra(args: argparse.Namespace, settings: Settings) -> int:
    """Quiver with relations of End(T)."""
    algebra = _algebra(args, settings)
    record = _silting_record(algebra, args.complex, settings)
    _emit(presentation_to_document(end_algebra(record)))
    return EXIT_OK


# Parser


def _add_algebra(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("algebra", help="algebra file or builtin such as @N3")


def _add_complex(parser: argparse.ArgumentParser, name: str = "complex") -> None:
    parser.add_argument(name, help="complex file or builtin such as @A, @A[1], @P(1), @pres(S_1)")


def _leaf(
    subparsers: Any, name: str, handler: Callable[..., int], help_text: str
) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(name, help=help_text)
    parser.set_defaults(handler=handler)
    _add_algebra(parser)
    return parser


def build_parser() -> argparse.ArgumentParser:
    """Parser with every subcommand."""
    parser = argparse.ArgumentParser(
        prog=DOMAIN, description="Silting mutation over finite-dimensional algebras"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    parser.add_argument(
        "--field", default=None, help=f"rationals or gf:p (default: the document's, else {DEFAULT_FIELD})"
    )
    parser.add_argument("--path-cap", type=int, default=DEFAULT_PATH_CAP)
    parser.add_argument("--bfs-cap", type=int, default=DEFAULT_BFS_CAP)
    parser.add_argument("--indecomposable-cap", type=int, default=DEFAULT_INDECOMPOSABLE_CAP)
    parser.add_argument("--tower-cap", type=int, default=DEFAULT_TOWER_CAP)
    parser.add_argument("--descent-cap", type=int, default=DEFAULT_DESCENT_CAP)
    groups = parser.add_subparsers(dest="group", required=True)

    algebra = groups.add_parser("algebra", help="inspect an algebra").add_subparsers(
        dest="command", required=True
    )
    _leaf(algebra, "info", cmd_algebra_info, "presentation and Nakayama data")
    _leaf(algebra, "indecomposables", cmd_algebra_indecomposables, "indecomposable modules")

    module = groups.add_parser("module", help="inspect a module").add_subparsers(
        dest="command", required=True
    )
    info = _leaf(module, "info", cmd_module_info, "decomposition, tau and nu")
    info.add_argument("module", help="module file or @S(i), @P(i), @I(i)")

    silt = groups.add_parser("silt", help="silting objects").add_subparsers(
        dest="command", required=True
    )
    _add_complex(_leaf(silt, "classify", cmd_classify, "presilting, silting or tilting"))
    mutate_parser = _leaf(silt, "mutate", cmd_mutate, "irreducible mutation")
    _add_complex(mutate_parser)
    mutate_parser.add_argument("--summand", type=int, required=True, help="0-based summand index")
    mutate_parser.add_argument("--direction", choices=DIRECTIONS, default=LEFT)
    for name, handler, help_text in (
        ("complete", cmd_complete, "complete a presilting U below T"),
        ("connect", cmd_connect, "left mutation path from T to U"),
    ):
        sub = _leaf(silt, name, handler, help_text)
        _add_complex(sub)
        _add_complex(sub, "target")
    _add_complex(_leaf(silt, "reduce", cmd_reduce, "two-term reduction"))
    two_term = _leaf(silt, "two-term", cmd_two_term, "two-term silting objects")
    two_term.add_argument("--search", action="store_true", help="search compatible families instead of mutating")
    quiver = _leaf(silt, "quiver", cmd_quiver, "silting quiver of [A[bottom], A[top]]")
    quiver.add_argument("--bottom", type=int, default=1)
    quiver.add_argument("--top", type=int, default=0)
    quiver.add_argument("--format", choices=FORMATS, default=FORMAT_JSON)
    quiver.add_argument("--shift-identify", action="store_true")

    torsion = groups.add_parser("torsion", help="torsion classes").add_subparsers(
        dest="command", required=True
    )
    torsion_silt = _leaf(torsion, "silt", cmd_torsion, "silting object of a torsion class")
    choice = torsion_silt.add_mutually_exclusive_group(required=True)
    choice.add_argument("--perp", help="module M with C = perp M")
    choice.add_argument("--or-idempotent", help="vertices of e, comma separated")

    end = groups.add_parser("end-algebra", help="quiver with relations of End(T)")
    end.set_defaults(handler=cmd_end_algebra)
    _add_algebra(end)
    _add_complex(end)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """
    Run one invocation.

    Args:
        argv: arguments without the program name

    Returns:
        The exit code

    """
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(1 if args.verbose else -1 if args.quiet else 0)
    try:
        settings = _settings(args)
        return args.handler(args, settings)
    except SiltingError as err:
        _LOGGER.error("%s: %s", type(err).__name__, err)  # noqa: TRY400
        return err.exit_code
    except Exception:
        _LOGGER.exception("Unexpected failure")
        raise

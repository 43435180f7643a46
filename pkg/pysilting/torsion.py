"""Torsion classes of the form perp M and the silting objects they induce."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING

from . import linalg
from .complexes import (
    ProjComplex,
    compare_order,
    direct_sum,
    emat_zero,
    minimize,
    nu_cohomology,
    presentation_complex,
    regular,
    shift,
    stalk,
)
from .const import DEFAULT_INDECOMPOSABLE_CAP
from .errors import (
    CapExceededError,
    InputError,
    NotCovariantlyFiniteError,
    NotSiltingError,
    OrderViolatedError,
)
from .modules import (
    ModuleMap,
    ProjectiveModule,
    Representation,
    cokernel,
    contains_isomorphic,
    direct_sum as module_sum,
    generated_spaces,
    hom_dim,
    hom_modules,
    injective,
    list_indecomposables,
    nu_module,
    submodule,
    summands,
    tau,
    top_generators,
)
from .silting import SiltingRecord, classify

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

    from .algebra import Algebra, Element

_LOGGER = logging.getLogger(__name__)


class TorsionClass:
    """The torsion class perp M = {X : Hom(X, M) = 0} with its derived data."""

    def __init__(
        self,
        cogenerator: Representation,
        indecomposables: Sequence[Representation],
    ) -> None:
        """
        Split the indecomposables into C and the rest.

        Args:
            cogenerator: M
            indecomposables: every indecomposable module of the algebra

        """
        self.algebra = cogenerator.algebra
        self.cogenerator = cogenerator
        self.all_indecomposables = list(indecomposables)
        self.indecomposables = [
            x for x in self.all_indecomposables if hom_dim(x, cogenerator) == 0
        ]

    def __repr__(self) -> str:
        """Sizes only."""
        return (
            f"TorsionClass({len(self.indecomposables)} of "
            f"{len(self.all_indecomposables)} indecomposables)"
        )

    def contains(self, module: Representation) -> bool:
        """Whether a module lies in C."""
        return hom_dim(module, self.cogenerator) == 0

    def in_perp(self, module: Representation) -> bool:
        """Whether a module lies in C^perp."""
        return all(hom_dim(x, module) == 0 for x in self.indecomposables)

    @cached_property
    def perp(self) -> list[Representation]:
        """Indecomposables of C^perp."""
        return [y for y in self.all_indecomposables if self.in_perp(y)]

    def verify_closure(self) -> bool:
        """C = perp(C^perp) on the indecomposable list."""
        closure = [
            x
            for x in self.all_indecomposables
            if all(hom_dim(x, y) == 0 for y in self.perp)
        ]
        return len(closure) == len(self.indecomposables) and all(
            contains_isomorphic(self.indecomposables, x) for x in closure
        )

    @cached_property
    def ext_projectives(self) -> list[Representation]:
        """Indecomposables X of C with tau X in C^perp."""
        return [x for x in self.indecomposables if self.in_perp(tau(x))]

    @cached_property
    def ext_injectives(self) -> list[Representation]:
        """Indecomposable summands of the torsion parts of the injectives."""
        found: list[Representation] = []
        for v in self.algebra.vertices:
            part = torsion_part(self, injective(self.algebra, v)).source
            for piece in summands(part):
                if not contains_isomorphic(found, piece):
                    found.append(piece)
        return found

    @cached_property
    def annihilator(self) -> list[Element]:
        """Basis of {a in A : X a = 0 for every X in C}."""
        algebra = self.algebra
        fld = algebra.field
        rows: list[list[object]] = []
        for x in self.indecomposables:
            # one linear condition per matrix entry of each corner e_v A e_w
            conditions: dict[tuple[str, str, int, int], list[object]] = {}
            for k, path in enumerate(algebra.basis):
                for r, row in enumerate(linalg.rows_of(x.path_matrix(path))):
                    for c, value in enumerate(row):
                        if value:
                            key = (path.source, path.target, r, c)
                            conditions.setdefault(key, [fld.zero] * algebra.dim)[k] = value
            rows.extend(conditions.values())
        if not rows:
            vectors = [linalg.unit_vector(fld, algebra.dim, k) for k in range(algebra.dim)]
        else:
            vectors = linalg.nullspace(fld, linalg.matrix(fld, rows, len(rows), algebra.dim))
        return [{k: value for k, value in enumerate(vec) if value} for vec in vectors]

    @cached_property
    def covariantly_finite(self) -> bool:
        """
        Covariant finiteness.

        Every torsion class of a representation-finite algebra is covariantly
        finite, and the class is only built once the indecomposables are
        known. The count of Ext-projectives is compared with the number of
        simple A/ann C-modules as a consistency check.
        """
        supported = [
            v for v in self.algebra.vertices if any(x.dims[v] for x in self.indecomposables)
        ]
        if len(self.ext_projectives) != len(supported):
            _LOGGER.warning(
                "%s Ext-projectives but %s simple modules over A/ann C",
                len(self.ext_projectives),
                len(supported),
            )
        return True

    def nu_stable(self) -> bool:
        """Whether nu X lies in C for every indecomposable X of C."""
        return all(self.contains(nu_module(x)) for x in self.indecomposables)


@dataclass(frozen=True)
class ClassData:
    """Ext-projectives, Ext-injectives and annihilator of a torsion class."""

    ext_projectives: tuple[Representation, ...]
    ext_injectives: tuple[Representation, ...]
    annihilator: tuple[Element, ...]
    covariantly_finite: bool


def class_data(cls: TorsionClass) -> ClassData:
    """Snapshot of the derived data of a class."""
    return ClassData(
        tuple(cls.ext_projectives),
        tuple(cls.ext_injectives),
        tuple(cls.annihilator),
        cls.covariantly_finite,
    )


def perp_class(
    module: Representation, cap: int = DEFAULT_INDECOMPOSABLE_CAP
) -> TorsionClass:
    """
    The torsion class perp M.

    Args:
        module: M
        cap: most indecomposables knitted

    Returns:
        The class with its indecomposables

    Raises:
        NotCovariantlyFiniteError: knitting passed the cap, so the class is
            not known to be covariantly finite

    """
    try:
        indecomposables = list_indecomposables(module.algebra, cap)
    except CapExceededError as err:
        msg = f"Indecomposables not exhausted within {cap}; perp M may not be covariantly finite"
        raise NotCovariantlyFiniteError(msg) from err
    cls = TorsionClass(module, indecomposables)
    _LOGGER.debug("perp M has %s indecomposables", len(cls.indecomposables))
    return cls


def _common_kernel(module: Representation, maps: Sequence[ModuleMap]) -> ModuleMap:
    """Inclusion of the intersection of the kernels of some maps."""
    fld = module.field
    spaces = {}
    for v in module.algebra.vertices:
        blocks = [f.blocks[v] for f in maps if f.target.dims[v]]
        if not blocks or not module.dims[v]:
            spaces[v] = [linalg.unit_vector(fld, module.dims[v], i) for i in range(module.dims[v])]
            continue
        stacked = linalg.stack_rows(fld, blocks, module.dims[v])
        spaces[v] = linalg.nullspace(fld, stacked)
    return submodule(module, spaces)


def torsion_part(cls: TorsionClass, module: Representation) -> ModuleMap:
    """
    Inclusion of t(X), the largest submodule of X in C.

    K_0 = X and K_{i+1} is the common kernel of Hom(K_i, M) until stable.

    Args:
        cls: the torsion class perp M
        module: X

    Returns:
        The inclusion t(X) -> X

    """
    inclusion = ModuleMap(
        module,
        module,
        {v: linalg.identity(module.field, d) for v, d in module.dims.items()},
    )
    while True:
        current = inclusion.source
        homs = hom_modules(current, cls.cogenerator)
        if not homs:
            break
        step = _common_kernel(current, homs)
        if step.source.dim == current.dim:
            break
        inclusion = inclusion.compose(step)
    rest = cokernel(inclusion).target
    if not cls.in_perp(rest):
        msg = "Torsion-free quotient is not in C^perp"
        raise ValueError(msg)
    return inclusion


# Silting objects from torsion classes


def _inverse_nakayama_vertices(module: Representation) -> tuple[str, ...]:
    """Vertices of the projective nu^-1 V, read from its top."""
    return tuple(v for v, _ in top_generators(nu_module(module, "inverse")))


def torsion_complex(cls: TorsionClass) -> ProjComplex:
    """
    T_C in degrees 0 and 1.

    Minimal presentations of the Ext-projectives of C, plus nu^-1 V in degree
    0 for V the sum of the indecomposable injectives in C^perp.

    Args:
        cls: a torsion class; it is covariantly finite once built

    Returns:
        The complex T_C

    """
    algebra = cls.algebra
    parts = [presentation_complex(x, 0) for x in cls.ext_projectives]
    for v in algebra.vertices:
        candidate = injective(algebra, v)
        if cls.in_perp(candidate):
            parts.append(stalk(algebra, _inverse_nakayama_vertices(candidate), 0))
    return minimize(direct_sum(algebra, parts))


def torsion_silting(cls: TorsionClass) -> SiltingRecord:
    """Classified T_C."""
    record = classify(torsion_complex(cls))
    if not record.is_silting:
        msg = f"T_C classified as {record.status}"
        raise NotSiltingError(msg)
    if cls.nu_stable() and not record.is_tilting:
        _LOGGER.warning("nu C lies in C but T_C is not tilting")
    return record


def _vertex_subset(algebra: Algebra, vertices: Iterable[str]) -> list[str]:
    chosen = set(vertices)
    unknown = chosen - set(algebra.vertices)
    if unknown:
        msg = f"Unknown vertices in idempotent: {sorted(unknown)}"
        raise InputError(msg)
    return [v for v in algebra.vertices if v in chosen]


def okuyama_rickard_complex(algebra: Algebra, vertices: Iterable[str]) -> ProjComplex:
    """
    The complex P(eA(1-e)A) -> eA in degrees 0, 1 plus (1-e)A in degree 0.

    Args:
        algebra: the algebra
        vertices: the vertices summed in e

    Returns:
        The minimized complex

    """
    inside = _vertex_subset(algebra, vertices)
    outside = [v for v in algebra.vertices if v not in inside]
    top = ProjectiveModule(algebra, inside)
    seeds: dict[str, list[linalg.Vector]] = {}
    for w in outside:
        for k, v in enumerate(inside):
            for b in algebra.between(v, w):
                elements: list[Element] = [{} for _ in inside]
                elements[k] = {b: algebra.field.one}
                seeds.setdefault(w, []).append(top.vector(w, elements))
    inclusion = submodule(top, generated_spaces(top, seeds))
    generators = top_generators(inclusion.source)
    columns = [top.elements(w, inclusion.apply(w, u)) for w, u in generators]
    entries = emat_zero(len(inside), len(columns))
    for c, column in enumerate(columns):
        for r, x in enumerate(column):
            entries[r][c] = x
    complex_ = ProjComplex(
        algebra,
        {0: (*(w for w, _ in generators), *outside), 1: tuple(inside)},
        {0: [[*row, *({} for _ in outside)] for row in entries]},
    )
    return minimize(complex_)


def okuyama_rickard(algebra: Algebra, vertices: Iterable[str]) -> SiltingRecord:
    """Classified Okuyama-Rickard complex of the idempotent over the given vertices."""
    return classify(okuyama_rickard_complex(algebra, vertices))


def injective_perp(algebra: Algebra, vertices: Iterable[str]) -> TorsionClass:
    """perp nu((1-e)A), the torsion class matching the Okuyama-Rickard complex."""
    inside = _vertex_subset(algebra, vertices)
    modules = [injective(algebra, v) for v in algebra.vertices if v not in inside]
    return perp_class(module_sum(modules, algebra).module)


def two_term_reduce(record: SiltingRecord) -> SiltingRecord:
    """
    Two-term silting T with T[-l+1] >= P >= T for P between A[-l] and A.

    T is T_C for C = perp H^0(nu P).

    Args:
        record: silting P with A[-l] >= P >= A

    Returns:
        The classified two-term T

    """
    algebra = record.algebra
    p = record.complex
    a = regular(algebra)
    if not compare_order(p, a):
        msg = "Two-term reduction needs P >= A"
        raise OrderViolatedError(msg)
    width = max(1, p.hi if p.hi is not None else 0)
    length = next(
        (n for n in range(1, width + 1) if compare_order(regular(algebra, -n), p)), None
    )
    if length is None:
        msg = f"P is not below A[-{width}]"
        raise OrderViolatedError(msg)
    cls = perp_class(nu_cohomology(p, 0))
    result = torsion_silting(cls)
    t = result.complex
    checks = {
        "A[-1] >= T": compare_order(regular(algebra, -1), t),
        "T >= A": compare_order(t, a),
        "T[-l+1] >= P": compare_order(shift(t, 1 - length), p),
        "P >= T": compare_order(p, t),
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        msg = f"Two-term reduction violates {', '.join(failed)}"
        raise OrderViolatedError(msg)
    _LOGGER.debug("Reduced a silting object of length %s to two terms", length)
    return result

"""Quivers, presentations and finite-dimensional path algebras with relations."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, Any

from . import linalg
from .const import CONF_COEFF, CONF_PATH, DEFAULT_PATH_CAP, SYMMETRIC_FORM_TRIES
from .errors import (
    InputError,
    MalformedRelationError,
    NotSelfInjectiveError,
    PossiblyInfiniteError,
)
from .linalg import Field

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence

_LOGGER = logging.getLogger(__name__)

# Sparse algebra element: basis index -> nonzero coefficient
Element = dict[int, Any]

TRIVIAL_PREFIX = "e"


@dataclass(frozen=True)
class Arrow:
    """An arrow of a quiver."""

    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A path of a quiver, arrows read left to right."""

    source: str
    target: str
    arrows: tuple[str, ...] = ()

    def __len__(self) -> int:
        """Number of arrows."""
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        """Whether this is the idempotent at its source."""
        return not self.arrows

    def words(self) -> list[str]:
        """Document form: arrow names, or the idempotent name."""
        if self.is_trivial:
            return [f"{TRIVIAL_PREFIX}{self.source}"]
        return list(self.arrows)

    def render(self) -> str:
        """Compact label, e.g. e1 or x3x1."""
        return "".join(self.words())

    def then(self, other: Path) -> Path | None:
        """Concatenation self then other, or None when they do not compose."""
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)

    def reversed(self) -> Path:
        """The same path read in the opposite quiver."""
        return Path(self.target, self.source, tuple(reversed(self.arrows)))


@dataclass(frozen=True)
class Quiver:
    """A finite quiver with ordered vertices and arrows."""

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self) -> None:
        """Validate labels."""
        if len(set(self.vertices)) != len(self.vertices):
            msg = f"Vertex labels must be unique: {list(self.vertices)}"
            raise InputError(msg)
        names = [arrow.name for arrow in self.arrows]
        if len(set(names)) != len(names):
            msg = f"Arrow names must be unique: {names}"
            raise InputError(msg)
        trivial = {f"{TRIVIAL_PREFIX}{v}" for v in self.vertices}
        for arrow in self.arrows:
            if arrow.source not in self.vertices or arrow.target not in self.vertices:
                msg = f"Arrow {arrow.name} joins undeclared vertices"
                raise InputError(msg)
            if arrow.name in trivial:
                msg = f"Arrow name {arrow.name} clashes with an idempotent"
                raise InputError(msg)

    @cached_property
    def arrow_map(self) -> dict[str, Arrow]:
        """Arrows by name."""
        return {arrow.name: arrow for arrow in self.arrows}

    @cached_property
    def vertex_position(self) -> dict[str, int]:
        """Declaration index of each vertex."""
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_position(self) -> dict[str, int]:
        """Declaration index of each arrow."""
        return {arrow.name: i for i, arrow in enumerate(self.arrows)}

    def key(self, path: Path) -> tuple[int, tuple[int, ...], int]:
        """Degree-lex sort key, ties broken by declaration order."""
        return (
            len(path),
            tuple(self.arrow_position[name] for name in path.arrows),
            self.vertex_position[path.source],
        )

    def trivial(self, vertex: str) -> Path:
        """The trivial path at a vertex."""
        return Path(vertex, vertex)

    def path(self, words: Sequence[str]) -> Path:
        """
        Read a path from its document form.

        Args:
            words: arrow names left to right, or a single idempotent name

        Returns:
            The path

        """
        words = list(words)
        if len(words) == 1 and words[0] not in self.arrow_map:
            name = words[0]
            vertex = name[len(TRIVIAL_PREFIX) :]
            if name.startswith(TRIVIAL_PREFIX) and vertex in self.vertex_position:
                return self.trivial(vertex)
        if not words:
            msg = "Empty path; write trivial paths as e<vertex>"
            raise InputError(msg)
        try:
            arrows = [self.arrow_map[name] for name in words]
        except KeyError as err:
            msg = f"Unknown arrow {err.args[0]} in path {words}"
            raise InputError(msg) from err
        for first, second in zip(arrows, arrows[1:], strict=False):
            if first.target != second.source:
                msg = f"Arrows {first.name} and {second.name} do not compose"
                raise InputError(msg)
        return Path(arrows[0].source, arrows[-1].target, tuple(words))

    def extend(self, paths: Iterable[Path]) -> list[Path]:
        """All one-arrow extensions of the given paths."""
        extended = []
        for path in paths:
            for arrow in self.arrows:
                if arrow.source == path.target:
                    extended.append(
                        Path(path.source, arrow.target, (*path.arrows, arrow.name))
                    )
        return extended

    def opposite(self) -> Quiver:
        """Quiver with every arrow reversed."""
        return Quiver(
            self.vertices,
            tuple(Arrow(a.name, a.target, a.source) for a in self.arrows),
        )


# A relation is a combination of parallel paths: ((coefficient, path), ...)
Term = tuple[Any, Path]
Relation = tuple[Term, ...]


@dataclass(frozen=True)
class AlgebraPresentation:
    """A quiver with relations over a field."""

    quiver: Quiver
    relations: tuple[Relation, ...] = ()
    field: Field = Field()

    def __post_init__(self) -> None:
        """Every relation combines parallel paths of length at least 2."""
        for relation in self.relations:
            paths = [path for _, path in relation]
            if not paths:
                msg = "Empty relation"
                raise MalformedRelationError(msg)
            ends = {(p.source, p.target) for p in paths}
            if len(ends) != 1:
                msg = f"Relation mixes non-parallel paths: {[p.render() for p in paths]}"
                raise MalformedRelationError(msg)
            short = [p.render() for p in paths if len(p) < 2]
            if short:
                msg = f"Relation terms must have length at least 2: {short}"
                raise MalformedRelationError(msg)

    @property
    def longest_relation(self) -> int:
        """Length of the longest path appearing in a relation."""
        return max((len(p) for rel in self.relations for _, p in rel), default=0)

    def opposite(self) -> AlgebraPresentation:
        """Presentation of the opposite algebra."""
        return AlgebraPresentation(
            self.quiver.opposite(),
            tuple(tuple((c, p.reversed()) for c, p in rel) for rel in self.relations),
            self.field,
        )


@dataclass(frozen=True)
class NakayamaData:
    """Self-injectivity, symmetry and the Nakayama permutation of an algebra."""

    self_injective: bool
    symmetric: bool | None = False
    # rho(v) = w means nu P_v is isomorphic to P_w
    permutation: dict[str, str] | None = None
    # functional on e_{rho(v)} A e_v realizing P_{rho(v)} = D(A e_v), keyed by v
    functionals: dict[str, Element] | None = None
    form: Element | None = None


class Algebra:
    """
    A finite-dimensional algebra kQ/I.

    The basis is the set of reduced paths, ordered degree-lex. Elements are
    sparse dicts from basis index to coefficient.
    """

    def __init__(
        self,
        presentation: AlgebraPresentation,
        basis: Sequence[Path],
        normal_forms: dict[Path, Element],
        truncation: int,
        path_cap: int = DEFAULT_PATH_CAP,
    ) -> None:
        """Wrap the output of the rewriting step; use build_algebra instead."""
        self.presentation = presentation
        self.quiver = presentation.quiver
        self.field = presentation.field
        self.basis: tuple[Path, ...] = tuple(basis)
        self.index = {path: i for i, path in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.path_cap = path_cap
        self._normal_forms = normal_forms
        self._truncation = truncation
        self._table: dict[tuple[int, int], Element] = {}

    def __repr__(self) -> str:
        """Short description."""
        return (
            f"Algebra(vertices={list(self.vertices)}, dim={self.dim}, "
            f"field={self.field.describe()})"
        )

    @property
    def vertices(self) -> tuple[str, ...]:
        """Vertex labels."""
        return self.quiver.vertices

    @property
    def rank(self) -> int:
        """Number of vertices."""
        return len(self.quiver.vertices)

    # Elements

    def reduce_path(self, path: Path) -> Element:
        """Normal form of an arbitrary path."""
        if len(path) >= self._truncation:
            return {}
        if path in self.index:
            return {self.index[path]: self.field.one}
        return dict(self._normal_forms.get(path, {}))

    def basis_product(self, i: int, j: int) -> Element:
        """Product of two basis paths."""
        key = (i, j)
        if key not in self._table:
            joined = self.basis[i].then(self.basis[j])
            self._table[key] = {} if joined is None else self.reduce_path(joined)
        return self._table[key]

    def multiply(self, x: Element, y: Element) -> Element:
        """Product x * y."""
        result: Element = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.basis_product(i, j).items():
                    result[k] = result.get(k, self.field.zero) + a * b * c
        return {k: v for k, v in result.items() if v}

    def add(self, x: Element, y: Element) -> Element:
        """Sum x + y."""
        result = dict(x)
        for k, v in y.items():
            result[k] = result.get(k, self.field.zero) + v
        return {k: v for k, v in result.items() if v}

    def scale(self, value: Any, x: Element) -> Element:
        """Scalar multiple."""
        if not value:
            return {}
        return {k: value * v for k, v in x.items()}

    def subtract(self, x: Element, y: Element) -> Element:
        """Difference x - y."""
        return self.add(x, self.scale(-self.field.one, y))

    def idempotent(self, vertex: str) -> Element:
        """The trivial path e_vertex."""
        return {self.index[self.quiver.trivial(vertex)]: self.field.one}

    def unit_coefficient(self, x: Element, vertex: str) -> Any:
        """Coefficient of e_vertex in x."""
        return x.get(self.index[self.quiver.trivial(vertex)], self.field.zero)

    def is_radical(self, x: Element) -> bool:
        """Whether x lies in the arrow ideal."""
        return all(not self.basis[k].is_trivial for k in x)

    def path_element(self, words: Sequence[str]) -> Element:
        """Element of a path given by its document form."""
        return self.reduce_path(self.quiver.path(words))

    def between(self, source: str, target: str) -> list[int]:
        """Basis indices of e_source A e_target."""
        return [
            k
            for k, path in enumerate(self.basis)
            if path.source == source and path.target == target
        ]

    def starting_at(self, vertex: str) -> list[int]:
        """Basis indices of e_vertex A."""
        return [k for k, path in enumerate(self.basis) if path.source == vertex]

    def ending_at(self, vertex: str) -> list[int]:
        """Basis indices of A e_vertex."""
        return [k for k, path in enumerate(self.basis) if path.target == vertex]

    def element_from_terms(self, terms: Iterable[dict[str, Any]]) -> Element:
        """Element from a list of {coeff, path} terms."""
        result: Element = {}
        for term in terms:
            coeff = self.field(term[CONF_COEFF])
            result = self.add(result, self.scale(coeff, self.path_element(term[CONF_PATH])))
        return result

    def element_to_terms(self, x: Element) -> list[dict[str, Any]]:
        """Inverse of element_from_terms, in basis order."""
        return [
            {CONF_COEFF: self.field.render(x[k]), CONF_PATH: self.basis[k].words()}
            for k in sorted(x)
        ]

    def render_element(self, x: Element) -> str:
        """Human readable form, e.g. x1 - 2*x3x1."""
        if not x:
            return "0"
        parts = []
        for k in sorted(x):
            coeff = self.field.render(x[k])
            label = self.basis[k].render()
            if coeff == "1":
                parts.append(label)
            elif coeff == "-1":
                parts.append(f"-{label}")
            else:
                parts.append(f"{coeff}*{label}")
        return " + ".join(parts).replace("+ -", "- ")

    # Structure

    @cached_property
    def nakayama(self) -> NakayamaData:
        """Nakayama data, computed once."""
        return nakayama_data(self)

    @cached_property
    def opposite(self) -> Algebra:
        """The opposite algebra; its opposite is this algebra again."""
        other = build_algebra(self.presentation.opposite(), self.path_cap)
        other.__dict__["opposite"] = self
        return other

    def functional(self, phi: Element, x: Element) -> Any:
        """Apply a linear functional given by coordinates."""
        total = self.field.zero
        for k, v in phi.items():
            if k in x:
                total += v * x[k]
        return total

    def nakayama_transport(self, alpha: Element, target: str, source: str) -> Element:
        """
        Transport nu of a map between projectives back to projectives.

        Args:
            alpha: element of e_target A e_source, i.e. a map P_source -> P_target
            target: vertex of the codomain
            source: vertex of the domain

        Returns:
            beta in e_rho(target) A e_rho(source) with nu(alpha) = beta up to
            the fixed identifications nu P_v = P_rho(v)

        """
        data = self.nakayama
        if not data.self_injective or data.permutation is None or data.functionals is None:
            msg = "Nakayama transport needs a self-injective algebra"
            raise NotSelfInjectiveError(msg)
        rho = data.permutation
        phi_target = data.functionals[target]
        phi_source = data.functionals[source]
        unknowns = self.between(rho[target], rho[source])
        e_source = self.idempotent(rho[source])
        rows = []
        rhs = []
        for y in self.ending_at(target):
            y_element = {y: self.field.one}
            rows.append(
                [
                    self.functional(phi_target, self.basis_product(k, y))
                    for k in unknowns
                ]
            )
            image = self.multiply(self.multiply(e_source, y_element), alpha)
            rhs.append(self.functional(phi_source, image))
        system = linalg.matrix(self.field, rows, len(rows), len(unknowns))
        solution = linalg.solve(self.field, system, rhs)
        if solution is None:
            msg = "Nakayama transport has no solution; functionals are inconsistent"
            raise NotSelfInjectiveError(msg)
        return {k: v for k, v in zip(unknowns, solution, strict=True) if v}


def _truncated_ideal(
    presentation: AlgebraPresentation, paths: list[Path], length: int
) -> tuple[list[list[Any]], tuple[int, ...]]:
    """
    Row-reduce the image of the relation ideal modulo paths longer than length.

    Args:
        presentation: the algebra presentation
        paths: every path of length at most length, sorted descending by key
        length: the truncation

    Returns:
        Reduced rows and pivot columns over the given path order

    """
    field = presentation.field
    quiver = presentation.quiver
    column = {path: i for i, path in enumerate(paths)}
    ending: dict[str, list[Path]] = {}
    starting: dict[str, list[Path]] = {}
    for path in paths:
        ending.setdefault(path.target, []).append(path)
        starting.setdefault(path.source, []).append(path)
    rows: list[list[Any]] = []
    for relation in presentation.relations:
        shortest = min(len(p) for _, p in relation)
        source = relation[0][1].source
        target = relation[0][1].target
        for left in ending.get(source, []):
            for right in starting.get(target, []):
                if len(left) + len(right) + shortest > length:
                    continue
                row = [field.zero] * len(paths)
                for coeff, path in relation:
                    full = Path(left.source, right.target, left.arrows + path.arrows + right.arrows)
                    if len(full) <= length:
                        row[column[full]] += coeff
                if any(row):
                    rows.append(row)
    _LOGGER.debug(
        "Truncation %s of %s: %s ideal rows over %s paths",
        length,
        list(quiver.vertices),
        len(rows),
        len(paths),
    )
    if not rows:
        return [], ()
    return linalg.rref(field, linalg.matrix(field, rows, len(rows), len(paths)))


def build_algebra(
    presentation: AlgebraPresentation, path_cap: int = DEFAULT_PATH_CAP
) -> Algebra:
    """
    Build kQ/I with a reduced-path basis.

    The ideal is reduced modulo paths longer than L for L = 1, 2, ... until
    every path of length L lies in the ideal; the quotient at that truncation
    is the algebra.

    Args:
        presentation: quiver, relations and field
        path_cap: longest truncation tried

    Returns:
        The algebra

    """
    if path_cap < presentation.longest_relation:
        msg = (
            f"Path cap {path_cap} is below the longest relation "
            f"({presentation.longest_relation})"
        )
        raise InputError(msg)
    quiver = presentation.quiver
    layers = [[quiver.trivial(v) for v in quiver.vertices]]
    for length in range(1, path_cap + 1):
        layers.append(quiver.extend(layers[-1]))
        paths = sorted(
            (p for layer in layers for p in layer), key=quiver.key, reverse=True
        )
        reduced, pivots = _truncated_ideal(presentation, paths, length)
        pivot_rows = dict(zip(pivots, reduced, strict=True))
        if all(_is_unit_row(pivot_rows.get(i), i) for i, p in enumerate(paths) if len(p) == length):
            return _assemble(presentation, paths, pivot_rows, length, path_cap)
    msg = f"Reduced paths survive at length {path_cap}; the algebra may be infinite"
    raise PossiblyInfiniteError(msg)


def _is_unit_row(row: list[Any] | None, position: int) -> bool:
    """Whether a reduced row is the unit vector at position."""
    if row is None:
        return False
    return all(not v for i, v in enumerate(row) if i != position)


def _assemble(
    presentation: AlgebraPresentation,
    paths: list[Path],
    pivot_rows: dict[int, list[Any]],
    length: int,
    path_cap: int,
) -> Algebra:
    """Read basis and normal forms off the reduced ideal."""
    quiver = presentation.quiver
    basis = sorted(
        (p for i, p in enumerate(paths) if i not in pivot_rows and len(p) < length),
        key=quiver.key,
    )
    index = {p: k for k, p in enumerate(basis)}
    normal_forms: dict[Path, Element] = {}
    for i, row in pivot_rows.items():
        if len(paths[i]) >= length:
            continue
        form = {}
        for j, value in enumerate(row):
            if j != i and value and len(paths[j]) < length:
                form[index[paths[j]]] = -value
        normal_forms[paths[i]] = form
    _LOGGER.debug("Built algebra of dimension %s at truncation %s", len(basis), length)
    return Algebra(presentation, basis, normal_forms, length, path_cap)


def multiply(algebra: Algebra, x: Element, y: Element) -> Element:
    """Product x * y in the algebra."""
    return algebra.multiply(x, y)


def opposite(algebra: Algebra) -> Algebra:
    """The opposite algebra."""
    return algebra.opposite


def cartan_matrix(algebra: Algebra) -> list[list[int]]:
    """Matrix of dim e_i A e_j."""
    return [
        [len(algebra.between(i, j)) for j in algebra.vertices] for i in algebra.vertices
    ]


def _right_socle(algebra: Algebra, vertex: str) -> list[linalg.Vector]:
    """Basis of soc(e_vertex A) in coordinates over e_vertex A."""
    field = algebra.field
    support = algebra.starting_at(vertex)
    rows = []
    for arrow in algebra.quiver.arrows:
        a = algebra.index[Path(arrow.source, arrow.target, (arrow.name,))]
        images = [algebra.basis_product(k, a) for k in support]
        touched = sorted({j for image in images for j in image})
        rows.extend([image.get(j, field.zero) for image in images] for j in touched)
    if not rows:
        return [linalg.unit_vector(field, len(support), i) for i in range(len(support))]
    return linalg.nullspace(field, linalg.matrix(field, rows, len(rows), len(support)))


def _pairing_invertible(algebra: Algebra, vertex: str, other: str, phi: Element) -> bool:
    """Whether (x, y) -> phi(xy) pairs e_vertex A with A e_other perfectly."""
    left = algebra.starting_at(vertex)
    right = algebra.ending_at(other)
    if len(left) != len(right):
        return False
    gram = [
        [algebra.functional(phi, algebra.basis_product(x, y)) for y in right]
        for x in left
    ]
    field = algebra.field
    return linalg.rank(field, linalg.matrix(field, gram, len(left), len(right))) == len(left)


def _symmetrizing_form(algebra: Algebra) -> tuple[bool | None, Element | None]:
    """Search for a nondegenerate symmetric associative form."""
    field = algebra.field
    n = algebra.dim
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            diff = algebra.subtract(algebra.basis_product(i, j), algebra.basis_product(j, i))
            if diff:
                rows.append([diff.get(k, field.zero) for k in range(n)])
    if rows:
        forms = linalg.nullspace(field, linalg.matrix(field, rows, len(rows), n))
    else:
        forms = [linalg.unit_vector(field, n, k) for k in range(n)]
    if not forms:
        return False, None
    tries = SYMMETRIC_FORM_TRIES
    if field.characteristic:
        tries = min(tries, field.characteristic - 1)
    for t in range(1, tries + 1):
        weights = [field(t**k) for k in range(len(forms))]
        coords = [
            sum((w * f[k] for w, f in zip(weights, forms, strict=True)), field.zero)
            for k in range(n)
        ]
        phi = {k: v for k, v in enumerate(coords) if v}
        gram = [
            [algebra.functional(phi, algebra.basis_product(i, j)) for j in range(n)]
            for i in range(n)
        ]
        if linalg.rank(field, linalg.matrix(field, gram, n, n)) == n:
            return True, phi
    _LOGGER.warning(
        "No nondegenerate symmetric form found in %s tries; symmetry indeterminate",
        tries,
    )
    return None, None


def nakayama_data(algebra: Algebra) -> NakayamaData:
    """
    Decide self-injectivity and symmetry and find the Nakayama permutation.

    Each P_i must have a simple socle S_j with P_i isomorphic to D(Ae_j); the
    isomorphism is given by a functional on e_i A e_j.

    Args:
        algebra: the algebra

    Returns:
        The Nakayama data

    """
    field = algebra.field
    socle_vertex: dict[str, str] = {}
    functionals: dict[str, Element] = {}
    for vertex in algebra.vertices:
        socle = _right_socle(algebra, vertex)
        if len(socle) != 1:
            _LOGGER.debug("Socle of P_%s has dimension %s", vertex, len(socle))
            return NakayamaData(self_injective=False)
        support = algebra.starting_at(vertex)
        nonzero = [support[i] for i, v in enumerate(socle[0]) if v]
        other = algebra.basis[nonzero[0]].target
        phi = {nonzero[0]: field.one}
        if not _pairing_invertible(algebra, vertex, other, phi):
            return NakayamaData(self_injective=False)
        socle_vertex[vertex] = other
        functionals[other] = phi
    if len(set(socle_vertex.values())) != algebra.rank:
        return NakayamaData(self_injective=False)
    permutation = {target: source for source, target in socle_vertex.items()}
    symmetric: bool | None = False
    form = None
    if all(permutation[v] == v for v in algebra.vertices):
        symmetric, form = _symmetrizing_form(algebra)
    _LOGGER.debug("Nakayama permutation %s, symmetric %s", permutation, symmetric)
    return NakayamaData(
        self_injective=True,
        symmetric=symmetric,
        permutation=permutation,
        functionals=functionals,
        form=form,
    )

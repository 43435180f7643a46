"""Finite-dimensional right modules as quiver representations."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Any

from . import linalg
from .const import DEFAULT_INDECOMPOSABLE_CAP, SPLIT_TRIES
from .errors import CapExceededError, InputError

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping, Sequence

    from .algebra import Algebra, Element, Path

_LOGGER = logging.getLogger(__name__)

Spaces = dict[str, list[linalg.Vector]]


class Representation:
    """A right module: a vector space per vertex and a matrix per arrow."""

    def __init__(
        self,
        algebra: Algebra,
        dims: Mapping[str, int],
        maps: Mapping[str, Any] | None = None,
        *,
        check: bool = True,
    ) -> None:
        """
        Build a representation.

        Args:
            algebra: the algebra acting on the right
            dims: dimension at each vertex (missing vertices are 0)
            maps: matrix of each arrow a: i -> j, shape dims[j] x dims[i]
            check: evaluate every relation on the matrices

        """
        self.algebra = algebra
        self.field = algebra.field
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        if any(d < 0 for d in self.dims.values()):
            msg = f"Negative dimension in {self.dims}"
            raise InputError(msg)
        unknown = set(dims) - set(algebra.vertices)
        if unknown:
            msg = f"Dimensions given at unknown vertices {sorted(unknown)}"
            raise InputError(msg)
        maps = maps or {}
        self.maps: dict[str, Any] = {}
        for arrow in algebra.quiver.arrows:
            shape = (self.dims[arrow.target], self.dims[arrow.source])
            mat = maps.get(arrow.name)
            if mat is None:
                mat = linalg.zeros(self.field, *shape)
            elif tuple(mat.shape) != shape:
                msg = f"Arrow {arrow.name} needs a {shape} matrix, got {mat.shape}"
                raise InputError(msg)
            self.maps[arrow.name] = mat
        self._paths: dict[Path, Any] = {}
        if check:
            self._check_relations()

    def __repr__(self) -> str:
        """Dimension vector and Loewy series."""
        return f"Representation(dims={list(self.dimension_vector)}, loewy={self.loewy()})"

    def _check_relations(self) -> None:
        """Every relation must act as zero."""
        for relation in self.algebra.presentation.relations:
            source = relation[0][1].source
            target = relation[0][1].target
            total = linalg.zeros(self.field, self.dims[target], self.dims[source])
            for coeff, path in relation:
                total = linalg.add(
                    self.field, total, linalg.scale(self.field, self.path_matrix(path), coeff)
                )
            if not linalg.is_zero(total):
                terms = [p.render() for _, p in relation]
                msg = f"Relation {terms} does not vanish on the representation"
                raise InputError(msg)

    @property
    def dim(self) -> int:
        """Total dimension."""
        return sum(self.dims.values())

    @property
    def dimension_vector(self) -> tuple[int, ...]:
        """Dimensions in vertex order."""
        return tuple(self.dims[v] for v in self.algebra.vertices)

    @property
    def is_zero(self) -> bool:
        """Whether the module is zero."""
        return self.dim == 0

    def path_matrix(self, path: Path) -> Any:
        """Action of a path, M_source -> M_target."""
        if path not in self._paths:
            mat = linalg.identity(self.field, self.dims[path.source])
            for name in path.arrows:
                mat = linalg.matmul(self.field, self.maps[name], mat)
            self._paths[path] = mat
        return self._paths[path]

    def action(self, x: Element, source: str, target: str) -> Any:
        """Action of the e_source A e_target part of an element."""
        total = linalg.zeros(self.field, self.dims[target], self.dims[source])
        for k, coeff in x.items():
            path = self.algebra.basis[k]
            if path.source == source and path.target == target:
                total = linalg.add(
                    self.field, total, linalg.scale(self.field, self.path_matrix(path), coeff)
                )
        return total

    def radical_series(self) -> list[Spaces]:
        """Subspaces rad^k M for k = 0, 1, ... down to zero."""
        series = [
            {
                v: [linalg.unit_vector(self.field, d, i) for i in range(d)]
                for v, d in self.dims.items()
            }
        ]
        while any(series[-1].values()):
            series.append(radical_of_spaces(self, series[-1]))
        return series

    def loewy_layers(self) -> list[dict[str, int]]:
        """Multiplicity of each simple in each radical layer, top first."""
        series = self.radical_series()
        return [
            {v: len(upper[v]) - len(lower[v]) for v in self.algebra.vertices}
            for upper, lower in zip(series, series[1:], strict=False)
        ]

    def loewy(self) -> str:
        """Stacked Loewy notation read top to socle, e.g. (3/1)."""
        layers = []
        for layer in self.loewy_layers():
            labels = [v for v in self.algebra.vertices for _ in range(layer[v])]
            layers.append(",".join(labels))
        return f"({'/'.join(layers)})" if layers else "0"


def radical_of_spaces(module: Representation, spaces: Spaces) -> Spaces:
    """Subspaces spanned by the images of the arrows on the given subspaces."""
    images: Spaces = {v: [] for v in module.algebra.vertices}
    for arrow in module.algebra.quiver.arrows:
        mat = module.maps[arrow.name]
        images[arrow.target].extend(
            linalg.apply(module.field, mat, vec) for vec in spaces[arrow.source]
        )
    return {
        v: linalg.span_basis(module.field, images[v], module.dims[v])
        for v in module.algebra.vertices
    }


def module_key(module: Representation) -> tuple[tuple[int, ...], str]:
    """Canonical sort key: dimension vector, then Loewy notation."""
    return (module.dimension_vector, module.loewy())


class ModuleMap:
    """A homomorphism of representations, one matrix per vertex."""

    def __init__(
        self,
        source: Representation,
        target: Representation,
        blocks: Mapping[str, Any] | None = None,
    ) -> None:
        """Store the blocks; missing vertices are zero."""
        self.source = source
        self.target = target
        self.field = source.field
        blocks = blocks or {}
        self.blocks: dict[str, Any] = {}
        for v in source.algebra.vertices:
            shape = (target.dims[v], source.dims[v])
            mat = blocks.get(v)
            if mat is None:
                mat = linalg.zeros(self.field, *shape)
            elif tuple(mat.shape) != shape:
                msg = f"Block at {v} needs shape {shape}, got {mat.shape}"
                raise InputError(msg)
            self.blocks[v] = mat

    def __repr__(self) -> str:
        """Shapes only."""
        return f"ModuleMap({self.source.dimension_vector} -> {self.target.dimension_vector})"

    def apply(self, vertex: str, vector: linalg.Vector) -> linalg.Vector:
        """Image of a vector at a vertex."""
        return linalg.apply(self.field, self.blocks[vertex], vector)

    def compose(self, first: ModuleMap) -> ModuleMap:
        """The composite self after first."""
        return ModuleMap(
            first.source,
            self.target,
            {
                v: linalg.matmul(self.field, self.blocks[v], first.blocks[v])
                for v in self.blocks
            },
        )

    def add(self, other: ModuleMap) -> ModuleMap:
        """Sum of parallel maps."""
        return ModuleMap(
            self.source,
            self.target,
            {v: linalg.add(self.field, self.blocks[v], other.blocks[v]) for v in self.blocks},
        )

    def scale(self, value: Any) -> ModuleMap:
        """Scalar multiple."""
        return ModuleMap(
            self.source,
            self.target,
            {v: linalg.scale(self.field, self.blocks[v], value) for v in self.blocks},
        )

    def total(self) -> Any:
        """Block diagonal matrix over all vertices."""
        return linalg.block_diagonal(self.field, list(self.blocks.values()))

    def flatten(self) -> linalg.Vector:
        """All entries, vertex by vertex, row-major."""
        return [
            entry
            for v in self.blocks
            for row in linalg.rows_of(self.blocks[v])
            for entry in row
        ]

    def is_zero(self) -> bool:
        """Whether every block vanishes."""
        return all(linalg.is_zero(mat) for mat in self.blocks.values())

    def is_invertible(self) -> bool:
        """Whether the map is an isomorphism."""
        if self.source.dims != self.target.dims:
            return False
        return all(
            bool(linalg.det(self.field, mat)) for mat in self.blocks.values()
        )

    def dual(self) -> ModuleMap:
        """The transpose map D(target) -> D(source)."""
        return ModuleMap(
            dual(self.target),
            dual(self.source),
            {v: linalg.transpose(self.field, mat) for v, mat in self.blocks.items()},
        )


def zero_map(source: Representation, target: Representation) -> ModuleMap:
    """The zero map."""
    return ModuleMap(source, target)


def identity_map(module: Representation) -> ModuleMap:
    """The identity map."""
    return ModuleMap(
        module,
        module,
        {v: linalg.identity(module.field, d) for v, d in module.dims.items()},
    )


def combine(maps: Sequence[ModuleMap], coefficients: linalg.Vector) -> ModuleMap:
    """Linear combination of parallel maps."""
    result = zero_map(maps[0].source, maps[0].target)
    for coeff, f in zip(coefficients, maps, strict=True):
        if coeff:
            result = result.add(f.scale(coeff))
    return result


def hom_modules(source: Representation, target: Representation) -> list[ModuleMap]:
    """
    Basis of Hom_A(source, target).

    The unknowns are the entries of one matrix per vertex; each arrow
    contributes the commutativity equations.

    Args:
        source: domain
        target: codomain

    Returns:
        A basis of the solution space, as module maps

    """
    field = source.field
    vertices = source.algebra.vertices
    offset: dict[str, int] = {}
    size = 0
    for v in vertices:
        offset[v] = size
        size += target.dims[v] * source.dims[v]
    if size == 0:
        return []
    rows: list[list[Any]] = []
    for arrow in source.algebra.quiver.arrows:
        i, j = arrow.source, arrow.target
        left = linalg.rows_of(target.maps[arrow.name])
        right = linalg.rows_of(source.maps[arrow.name])
        for r in range(target.dims[j]):
            for c in range(source.dims[i]):
                row = [field.zero] * size
                # (N_a f_i)[r][c] - (f_j M_a)[r][c]
                for s in range(target.dims[i]):
                    if left[r][s]:
                        row[offset[i] + s * source.dims[i] + c] += left[r][s]
                for s in range(source.dims[j]):
                    if right[s][c]:
                        row[offset[j] + r * source.dims[j] + s] -= right[s][c]
                if any(row):
                    rows.append(row)
    if rows:
        solutions = linalg.nullspace(field, linalg.matrix(field, rows, len(rows), size))
    else:
        solutions = [linalg.unit_vector(field, size, k) for k in range(size)]
    _LOGGER.debug(
        "Hom system %s x %s has %s solutions", len(rows), size, len(solutions)
    )
    maps = []
    for vector in solutions:
        blocks = {}
        for v in vertices:
            m, n = target.dims[v], source.dims[v]
            chunk = vector[offset[v] : offset[v] + m * n]
            blocks[v] = linalg.matrix(
                field, [chunk[r * n : (r + 1) * n] for r in range(m)], m, n
            )
        maps.append(ModuleMap(source, target, blocks))
    return maps


def hom_dim(source: Representation, target: Representation) -> int:
    """dim Hom_A(source, target)."""
    return len(hom_modules(source, target))


def span_rank(field: linalg.Field, maps: Sequence[ModuleMap]) -> int:
    """Dimension of the span of parallel maps."""
    vectors = [f.flatten() for f in maps]
    if not vectors or not vectors[0]:
        return 0
    return linalg.rank(field, linalg.matrix(field, vectors, len(vectors), len(vectors[0])))


# Submodules, quotients and sums


def generated_spaces(module: Representation, spaces: Mapping[str, Sequence[linalg.Vector]]) -> Spaces:
    """Smallest submodule containing the given vectors."""
    field = module.field
    current = {
        v: linalg.span_basis(field, spaces.get(v, []), module.dims[v])
        for v in module.algebra.vertices
    }
    changed = True
    while changed:
        changed = False
        for arrow in module.algebra.quiver.arrows:
            images = [
                linalg.apply(field, module.maps[arrow.name], vec)
                for vec in current[arrow.source]
            ]
            grown = linalg.span_basis(
                field, current[arrow.target] + images, module.dims[arrow.target]
            )
            if len(grown) > len(current[arrow.target]):
                current[arrow.target] = grown
                changed = True
    return current


def submodule(module: Representation, spaces: Mapping[str, Sequence[linalg.Vector]]) -> ModuleMap:
    """
    Inclusion of a submodule given by closed subspaces.

    Args:
        module: the ambient module
        spaces: spanning vectors at each vertex, closed under the arrows

    Returns:
        The inclusion map; its source is the submodule

    """
    field = module.field
    splittings = {
        v: linalg.Splitting(field, spaces.get(v, []), module.dims[v])
        for v in module.algebra.vertices
    }
    dims = {v: s.dim for v, s in splittings.items()}
    maps = {}
    for arrow in module.algebra.quiver.arrows:
        columns = [
            splittings[arrow.target].sub_coordinates(
                linalg.apply(field, module.maps[arrow.name], vec)
            )
            for vec in splittings[arrow.source].basis
        ]
        maps[arrow.name] = linalg.from_columns(field, columns, dims[arrow.target])
    sub = Representation(module.algebra, dims, maps, check=False)
    return ModuleMap(
        sub,
        module,
        {
            v: linalg.from_columns(field, s.basis, module.dims[v])
            for v, s in splittings.items()
        },
    )


def quotient(module: Representation, spaces: Mapping[str, Sequence[linalg.Vector]]) -> ModuleMap:
    """Projection onto the quotient by closed subspaces."""
    field = module.field
    splittings = {
        v: linalg.Splitting(field, spaces.get(v, []), module.dims[v])
        for v in module.algebra.vertices
    }
    dims = {v: module.dims[v] - s.dim for v, s in splittings.items()}
    maps = {}
    for arrow in module.algebra.quiver.arrows:
        columns = [
            splittings[arrow.target].quotient_coordinates(
                linalg.apply(field, module.maps[arrow.name], vec)
            )
            for vec in splittings[arrow.source].complement
        ]
        maps[arrow.name] = linalg.from_columns(field, columns, dims[arrow.target])
    quot = Representation(module.algebra, dims, maps, check=False)
    blocks = {}
    for v, s in splittings.items():
        columns = [
            s.quotient_coordinates(linalg.unit_vector(field, module.dims[v], k))
            for k in range(module.dims[v])
        ]
        blocks[v] = linalg.from_columns(field, columns, dims[v])
    return ModuleMap(module, quot, blocks)


def kernel(f: ModuleMap) -> ModuleMap:
    """Inclusion of the kernel."""
    spaces = {v: linalg.nullspace(f.field, mat) for v, mat in f.blocks.items()}
    return submodule(f.source, spaces)


def image_spaces(f: ModuleMap) -> Spaces:
    """Image of a map, as subspaces of the target."""
    return {
        v: linalg.span_basis(
            f.field,
            [linalg.column(mat, k) for k in range(mat.shape[1])],
            f.target.dims[v],
        )
        for v, mat in f.blocks.items()
    }


def image(f: ModuleMap) -> ModuleMap:
    """Inclusion of the image."""
    return submodule(f.target, image_spaces(f))


def cokernel(f: ModuleMap) -> ModuleMap:
    """Projection onto the cokernel."""
    return quotient(f.target, image_spaces(f))


def factor_through_mono(f: ModuleMap, mono: ModuleMap) -> ModuleMap:
    """The map g with mono after g equal to f, for f landing in the image of mono."""
    field = f.field
    blocks = {}
    for v, mat in f.blocks.items():
        columns = []
        for k in range(mat.shape[1]):
            solution = linalg.solve(field, mono.blocks[v], linalg.column(mat, k))
            if solution is None:
                msg = "Map does not factor through the monomorphism"
                raise ValueError(msg)
            columns.append(solution)
        blocks[v] = linalg.from_columns(field, columns, mono.source.dims[v])
    return ModuleMap(f.source, mono.source, blocks)


@dataclass
class DirectSum:
    """A direct sum with its structure maps."""

    module: Representation
    injections: list[ModuleMap] = field(default_factory=list)
    projections: list[ModuleMap] = field(default_factory=list)


def direct_sum(modules: Sequence[Representation], algebra: Algebra | None = None) -> DirectSum:
    """Direct sum of modules, with injections and projections."""
    if not modules:
        if algebra is None:
            msg = "Empty direct sum needs an algebra"
            raise InputError(msg)
        return DirectSum(Representation(algebra, {}))
    algebra = modules[0].algebra
    fld = algebra.field
    dims = {v: sum(m.dims[v] for m in modules) for v in algebra.vertices}
    maps = {
        arrow.name: linalg.block_diagonal(fld, [m.maps[arrow.name] for m in modules])
        for arrow in algebra.quiver.arrows
    }
    total = Representation(algebra, dims, maps, check=False)
    injections, projections = [], []
    offsets = dict.fromkeys(algebra.vertices, 0)
    for m in modules:
        inj, proj = {}, {}
        for v in algebra.vertices:
            rows = [
                [fld.one if r == offsets[v] + c else fld.zero for c in range(m.dims[v])]
                for r in range(dims[v])
            ]
            inj[v] = linalg.matrix(fld, rows, dims[v], m.dims[v])
            proj[v] = linalg.transpose(fld, inj[v])
            offsets[v] += m.dims[v]
        injections.append(ModuleMap(m, total, inj))
        projections.append(ModuleMap(total, m, proj))
    return DirectSum(total, injections, projections)


def radical(module: Representation) -> ModuleMap:
    """Inclusion of rad M."""
    full = {
        v: [linalg.unit_vector(module.field, d, i) for i in range(d)]
        for v, d in module.dims.items()
    }
    return submodule(module, radical_of_spaces(module, full))


def socle_spaces(module: Representation) -> Spaces:
    """soc M: vectors killed by every arrow."""
    fld = module.field
    spaces = {}
    for v in module.algebra.vertices:
        blocks = [
            module.maps[a.name] for a in module.algebra.quiver.arrows if a.source == v
        ]
        if not blocks:
            spaces[v] = [linalg.unit_vector(fld, module.dims[v], i) for i in range(module.dims[v])]
            continue
        stacked = linalg.stack_rows(fld, blocks, module.dims[v])
        spaces[v] = linalg.nullspace(fld, stacked)
    return spaces


def socle(module: Representation) -> ModuleMap:
    """Inclusion of soc M."""
    return submodule(module, socle_spaces(module))


def top(module: Representation) -> ModuleMap:
    """Projection M -> M / rad M."""
    return cokernel(radical(module))


# Projective and injective modules


class ProjectiveModule(Representation):
    """A sum of indecomposable projectives e_v A with path bases."""

    def __init__(self, algebra: Algebra, vertices: Sequence[str]) -> None:
        """Build the sum over the listed vertices, in order."""
        self.summands = tuple(vertices)
        self.slots = {
            w: [(k, b) for k, v in enumerate(self.summands) for b in algebra.between(v, w)]
            for w in algebra.vertices
        }
        position = {w: {slot: i for i, slot in enumerate(s)} for w, s in self.slots.items()}
        fld = algebra.field
        maps = {}
        for arrow in algebra.quiver.arrows:
            element = algebra.path_element([arrow.name])
            i, j = arrow.source, arrow.target
            columns = []
            for k, b in self.slots[i]:
                column = [fld.zero] * len(self.slots[j])
                for c, value in algebra.multiply({b: fld.one}, element).items():
                    column[position[j][(k, c)]] += value
                columns.append(column)
            maps[arrow.name] = linalg.from_columns(fld, columns, len(self.slots[j]))
        super().__init__(algebra, {w: len(s) for w, s in self.slots.items()}, maps, check=False)
        self._position = position

    def generator(self, k: int) -> linalg.Vector:
        """The idempotent of the k-th summand, at its vertex."""
        v = self.summands[k]
        e = self.algebra.index[self.algebra.quiver.trivial(v)]
        return linalg.unit_vector(self.field, self.dims[v], self._position[v][(k, e)])

    def vector(self, vertex: str, elements: Sequence[Element]) -> linalg.Vector:
        """Vector at a vertex from one element of e_{v_k} A e_vertex per summand."""
        vec = [self.field.zero] * self.dims[vertex]
        for k, x in enumerate(elements):
            for b, value in x.items():
                vec[self._position[vertex][(k, b)]] += value
        return vec

    def elements(self, vertex: str, vector: linalg.Vector) -> list[Element]:
        """Inverse of vector: split into one element per summand."""
        result: list[Element] = [{} for _ in self.summands]
        for (k, b), value in zip(self.slots[vertex], vector, strict=True):
            if value:
                result[k][b] = value
        return result


class InjectiveModule(Representation):
    """A sum of indecomposable injectives D(A e_v) with dual path bases."""

    def __init__(self, algebra: Algebra, vertices: Sequence[str]) -> None:
        """Build the sum over the listed vertices, in order."""
        self.summands = tuple(vertices)
        self.slots = {
            w: [(k, b) for k, v in enumerate(self.summands) for b in algebra.between(w, v)]
            for w in algebra.vertices
        }
        position = {w: {slot: i for i, slot in enumerate(s)} for w, s in self.slots.items()}
        fld = algebra.field
        maps = {}
        for arrow in algebra.quiver.arrows:
            element = algebra.path_element([arrow.name])
            i, j = arrow.source, arrow.target
            rows = []
            for k, y in self.slots[j]:
                row = [fld.zero] * len(self.slots[i])
                for q, value in algebra.multiply(element, {y: fld.one}).items():
                    row[position[i][(k, q)]] += value
                rows.append(row)
            maps[arrow.name] = linalg.matrix(fld, rows, len(self.slots[j]), len(self.slots[i]))
        super().__init__(algebra, {w: len(s) for w, s in self.slots.items()}, maps, check=False)
        self._position = position


def simple(algebra: Algebra, vertex: str) -> Representation:
    """The simple module S_vertex."""
    return Representation(algebra, {vertex: 1})


def projective(algebra: Algebra, vertex: str) -> ProjectiveModule:
    """The indecomposable projective P_vertex = e_vertex A."""
    return ProjectiveModule(algebra, [vertex])


def injective(algebra: Algebra, vertex: str) -> InjectiveModule:
    """The indecomposable injective I_vertex = D(A e_vertex)."""
    return InjectiveModule(algebra, [vertex])


def projective_map(
    source: ProjectiveModule, target: Representation, images: Sequence[linalg.Vector]
) -> ModuleMap:
    """
    Map out of a sum of projectives given by the images of its generators.

    Args:
        source: sum of projectives e_{v_k} A
        target: any module
        images: images[k] lies in target at vertex v_k

    Returns:
        The unique map sending the k-th idempotent to images[k]

    """
    fld = source.field
    algebra = source.algebra
    blocks = {}
    for w in algebra.vertices:
        columns = [
            linalg.apply(fld, target.path_matrix(algebra.basis[b]), images[k])
            for k, b in source.slots[w]
        ]
        blocks[w] = linalg.from_columns(fld, columns, target.dims[w])
    return ModuleMap(source, target, blocks)


def projective_hom(
    source: ProjectiveModule,
    target: ProjectiveModule,
    entries: Sequence[Sequence[Element]],
) -> ModuleMap:
    """Map of sums of projectives from a matrix with entries in e_{target} A e_{source}."""
    images = [
        target.vector(v, [entries[r][c] for r in range(len(target.summands))])
        for c, v in enumerate(source.summands)
    ]
    return projective_map(source, target, images)


def nakayama_hom(
    source: InjectiveModule,
    target: InjectiveModule,
    entries: Sequence[Sequence[Element]],
) -> ModuleMap:
    """
    nu applied to the map of projectives with the given entries.

    Args:
        source: nu of the domain, as injectives
        target: nu of the codomain, as injectives
        entries: entries[r][c] in e_{target r} A e_{source c}

    Returns:
        The induced map f -> f(- * entry) of injectives

    """
    algebra = source.algebra
    fld = source.field
    blocks = {}
    for w in algebra.vertices:
        src_pos = {slot: i for i, slot in enumerate(source.slots[w])}
        rows = []
        for r, y in target.slots[w]:
            row = [fld.zero] * len(source.slots[w])
            for c in range(len(source.summands)):
                alpha = entries[r][c]
                if not alpha:
                    continue
                for q, value in algebra.multiply({y: fld.one}, alpha).items():
                    row[src_pos[(c, q)]] += value
            rows.append(row)
        blocks[w] = linalg.matrix(fld, rows, len(target.slots[w]), len(source.slots[w]))
    return ModuleMap(source, target, blocks)


def yoneda_basis(source: ProjectiveModule, target: Representation) -> list[ModuleMap]:
    """Basis of Hom(source, target) for a sum of projectives."""
    fld = source.field
    basis = []
    for k, v in enumerate(source.summands):
        for i in range(target.dims[v]):
            images = [
                linalg.unit_vector(fld, target.dims[u], i)
                if j == k
                else [fld.zero] * target.dims[u]
                for j, u in enumerate(source.summands)
            ]
            basis.append(projective_map(source, target, images))
    return basis


def top_generators(module: Representation) -> list[tuple[str, linalg.Vector]]:
    """Vectors whose classes form a basis of the top, vertex by vertex."""
    rad = radical_of_spaces(
        module,
        {
            v: [linalg.unit_vector(module.field, d, i) for i in range(d)]
            for v, d in module.dims.items()
        },
    )
    return [
        (v, linalg.unit_vector(module.field, module.dims[v], i))
        for v in module.algebra.vertices
        for i in linalg.complement_positions(module.field, rad[v], module.dims[v])
    ]


def projective_cover(module: Representation) -> ModuleMap:
    """Projective cover P0 -> M; the source is a ProjectiveModule."""
    generators = top_generators(module)
    cover = ProjectiveModule(module.algebra, [v for v, _ in generators])
    return projective_map(cover, module, [vec for _, vec in generators])


@dataclass
class Syzygy:
    """Projective cover of a module and the inclusion of its kernel."""

    cover: ModuleMap
    inclusion: ModuleMap

    @property
    def projective(self) -> ProjectiveModule:
        """P0."""
        return self.cover.source

    @property
    def module(self) -> Representation:
        """The first syzygy."""
        return self.inclusion.source


def syzygy(module: Representation) -> Syzygy:
    """Cover and first syzygy."""
    cover = projective_cover(module)
    return Syzygy(cover, kernel(cover))


@dataclass
class Presentation:
    """Minimal projective presentation P1 -> P0 -> M -> 0."""

    p0: tuple[str, ...]
    p1: tuple[str, ...]
    # entries[r][c] lies in e_{p0[r]} A e_{p1[c]}
    entries: list[list[Element]]


def projective_presentation(module: Representation) -> Presentation:
    """
    Minimal projective presentation of a module.

    Args:
        module: the module

    Returns:
        P1 -> P0 with P0 -> M a projective cover and P1 covering its kernel

    """
    data = syzygy(module)
    p0 = data.projective
    generators = top_generators(data.module)
    columns = [p0.elements(w, data.inclusion.apply(w, u)) for w, u in generators]
    entries = [[columns[c][r] for c in range(len(columns))] for r in range(len(p0.summands))]
    return Presentation(p0.summands, tuple(w for w, _ in generators), entries)


def is_projective(module: Representation) -> bool:
    """Whether the module is projective."""
    if module.is_zero:
        return True
    return projective_cover(module).source.dim == module.dim


def is_injective(module: Representation) -> bool:
    """Whether the module is injective."""
    return is_projective(dual(module))


# Duality, Nakayama functor and AR translation


def dual(module: Representation) -> Representation:
    """D M as a module over the opposite algebra."""
    fld = module.field
    return Representation(
        module.algebra.opposite,
        module.dims,
        {name: linalg.transpose(fld, mat) for name, mat in module.maps.items()},
        check=False,
    )


def _nakayama_of_presentation(module: Representation) -> ModuleMap:
    """nu applied to the minimal presentation of a module."""
    pres = projective_presentation(module)
    return nakayama_hom(
        InjectiveModule(module.algebra, pres.p1),
        InjectiveModule(module.algebra, pres.p0),
        pres.entries,
    )


def tau(module: Representation) -> Representation:
    """Auslander-Reiten translate D Tr M."""
    return kernel(_nakayama_of_presentation(module)).source


def tau_inverse(module: Representation) -> Representation:
    """Inverse translate Tr D M."""
    return dual(tau(dual(module)))


def nu_module(module: Representation, direction: str = "forward") -> Representation:
    """
    Nakayama functor D Hom(-, A) or its inverse Hom(DA, -).

    Args:
        module: the module
        direction: "forward" or "inverse"

    Returns:
        nu M or nu^-1 M

    """
    if direction == "forward":
        return cokernel(_nakayama_of_presentation(module)).target
    if direction == "inverse":
        return dual(nu_module(dual(module), "forward"))
    msg = f"Unknown direction {direction}"
    raise InputError(msg)


# Endomorphism rings and decomposition


def endomorphism_radical(
    maps: Sequence[ModuleMap], size: int
) -> list[linalg.Vector]:
    """
    Coefficient vectors spanning the radical of an algebra of endomorphisms.

    The radical is the kernel of the trace form (x, y) -> tr(xy).

    Args:
        maps: basis of the algebra, acting on a space of dimension size
        size: dimension of that space

    Returns:
        Coefficient vectors over maps

    """
    if not maps:
        return []
    fld = maps[0].field
    fld.require_radical_safe(max(len(maps), size))
    rows = [linalg.rows_of(f.total()) for f in maps]
    gram = []
    for a in rows:
        gram_row = []
        for b in rows:
            trace = fld.zero
            for r, a_row in enumerate(a):
                for s, value in enumerate(a_row):
                    if value and b[s][r]:
                        trace += value * b[s][r]
            gram_row.append(trace)
        gram.append(gram_row)
    return linalg.nullspace(fld, linalg.matrix(fld, gram, len(maps), len(maps)))


def is_local(maps: Sequence[ModuleMap], size: int) -> bool:
    """Whether the endomorphism algebra with this basis is local."""
    return len(maps) - len(endomorphism_radical(maps, size)) == 1


def _split_candidates(maps: Sequence[ModuleMap]) -> Iterator[ModuleMap]:
    """Basis maps, then the combinations sum t^k b_k."""
    fld = maps[0].field
    yield from maps
    tries = SPLIT_TRIES
    if fld.characteristic:
        tries = min(tries, fld.characteristic - 1)
    for t in range(2, tries + 1):
        yield combine(maps, [fld(t**k) for k in range(len(maps))])


def _primary_component(module: Representation, phi: ModuleMap, factor: Any) -> ModuleMap:
    """Inclusion of ker f(phi)^n."""
    fld = module.field
    spaces = {}
    for v, mat in phi.blocks.items():
        n = module.dims[v]
        if n == 0:
            spaces[v] = []
            continue
        value = linalg.power(fld, linalg.evaluate(fld, factor, mat), n)
        spaces[v] = linalg.nullspace(fld, value)
    return submodule(module, spaces)


def _split(module: Representation) -> list[Representation]:
    """Indecomposable summands, with repetition."""
    if module.is_zero:
        return []
    maps = hom_modules(module, module)
    if len(maps) == 1 or is_local(maps, module.dim):
        return [module]
    for phi in _split_candidates(maps):
        factors = linalg.irreducible_factors(module.field, phi.total())
        if len(factors) > 1:
            parts = [_primary_component(module, phi, f).source for f in factors]
            _LOGGER.debug(
                "Split %s into %s", module.dimension_vector, [p.dimension_vector for p in parts]
            )
            return [piece for part in parts for piece in _split(part)]
    _LOGGER.debug(
        "No splitting endomorphism of %s found; End/rad is a division algebra",
        module.dimension_vector,
    )
    return [module]


def find_isomorphism(first: Representation, second: Representation) -> ModuleMap | None:
    """
    Isomorphism between indecomposable modules, if any.

    End is local, so an iso exists iff some composite of basis maps is
    invertible.

    Args:
        first: an indecomposable module
        second: an indecomposable module

    Returns:
        An isomorphism first -> second, or None

    """
    if first.dims != second.dims:
        return None
    if first.is_zero:
        return zero_map(first, second)
    forward = hom_modules(first, second)
    backward = hom_modules(second, first)
    for f in forward:
        for g in backward:
            if g.compose(f).is_invertible():
                return f
    return None


def decompose(module: Representation) -> list[tuple[Representation, int]]:
    """
    Krull-Schmidt decomposition.

    Args:
        module: the module

    Returns:
        Pairwise non-isomorphic indecomposables with multiplicities, sorted
        by dimension vector then Loewy notation

    """
    groups: list[list[Representation]] = []
    for piece in _split(module):
        for group in groups:
            if module_key(group[0]) == module_key(piece) and find_isomorphism(group[0], piece):
                group.append(piece)
                break
        else:
            groups.append([piece])
    groups.sort(key=lambda g: module_key(g[0]))
    return [(g[0], len(g)) for g in groups]


def summands(module: Representation) -> list[Representation]:
    """Indecomposable summands with repetition, canonically ordered."""
    return [piece for piece, count in decompose(module) for _ in range(count)]


def is_indecomposable(module: Representation) -> bool:
    """Whether the module is nonzero and indecomposable."""
    return not module.is_zero and len(_split(module)) == 1


def is_isomorphic(first: Representation, second: Representation) -> bool:
    """Whether two modules are isomorphic."""
    if first.dims != second.dims:
        return False
    if [len(layer) for layer in first.radical_series()] != [
        len(layer) for layer in second.radical_series()
    ]:
        return False
    left = decompose(first)
    right = decompose(second)
    if len(left) != len(right):
        return False
    unmatched = list(right)
    for piece, count in left:
        for i, (other, other_count) in enumerate(unmatched):
            if count == other_count and find_isomorphism(piece, other):
                del unmatched[i]
                break
        else:
            return False
    return True


def contains_isomorphic(modules: Sequence[Representation], module: Representation) -> bool:
    """Whether an isomorphic copy of an indecomposable appears in the list."""
    key = module_key(module)
    return any(module_key(m) == key and find_isomorphism(m, module) for m in modules)


# Extensions and Auslander-Reiten sequences


def _restrictions(data: Syzygy, target: Representation) -> list[ModuleMap]:
    """Maps Omega M -> N that extend over the projective cover."""
    return [g.compose(data.inclusion) for g in yoneda_basis(data.projective, target)]


def ext1_dim(first: Representation, second: Representation) -> int:
    """
    dim Ext^1(first, second).

    Computed as Hom(Omega first, second) modulo the maps extending over the
    projective cover.

    Args:
        first: M
        second: N

    Returns:
        dim Ext^1(M, N)

    """
    data = syzygy(first)
    homs = hom_modules(data.module, second)
    if not homs:
        return 0
    return len(homs) - span_rank(first.field, _restrictions(data, second))


def lift_endomorphism(data: Syzygy, phi: ModuleMap) -> ModuleMap:
    """An endomorphism of P0 covering phi."""
    fld = phi.field
    cover = data.cover
    p0 = data.projective
    images = []
    for k, v in enumerate(p0.summands):
        wanted = phi.apply(v, cover.apply(v, p0.generator(k)))
        lifted = linalg.solve(fld, cover.blocks[v], wanted)
        images.append(lifted)
    return projective_map(p0, p0, images)


@dataclass
class ARSequence:
    """An almost split sequence 0 -> tau N -> E -> N -> 0."""

    left: Representation
    middle: Representation
    right: Representation

    @cached_property
    def middle_summands(self) -> list[Representation]:
        """Indecomposable summands of the middle term."""
        return summands(self.middle)


def ar_sequence(module: Representation) -> ARSequence:
    """
    Almost split sequence ending at an indecomposable non-projective module.

    The class is a nonzero element of Ext^1(N, tau N) killed by rad End(N);
    the middle term is the pushout of 0 -> Omega N -> P0 along it.

    Args:
        module: indecomposable non-projective N

    Returns:
        The sequence

    """
    fld = module.field
    data = syzygy(module)
    if data.projective.dim == module.dim:
        msg = "Almost split sequences end at non-projective modules"
        raise InputError(msg)
    left = tau(module)
    homs = hom_modules(data.module, left)
    restrictions = [f.flatten() for f in _restrictions(data, left)]
    size = len(homs[0].flatten())
    trivial = linalg.Splitting(fld, restrictions, size)
    ends = hom_modules(module, module)
    radical_maps = [combine(ends, c) for c in endomorphism_radical(ends, module.dim)]
    rows: list[list[Any]] = []
    for phi in radical_maps:
        restricted = factor_through_mono(
            lift_endomorphism(data, phi).compose(data.inclusion), data.inclusion
        )
        images = [trivial.quotient_coordinates(h.compose(restricted).flatten()) for h in homs]
        rows.extend([image[t] for image in images] for t in range(size - trivial.dim))
    if rows:
        socle = linalg.nullspace(fld, linalg.matrix(fld, rows, len(rows), len(homs)))
    else:
        socle = [linalg.unit_vector(fld, len(homs), i) for i in range(len(homs))]
    for coefficients in socle:
        h = combine(homs, coefficients)
        if not trivial.contains(h.flatten()):
            break
    else:
        msg = "No almost split class found; Ext^1(N, tau N) has no socle outside zero"
        raise ValueError(msg)
    total = direct_sum([left, data.projective])
    blocks = {
        v: linalg.stack_rows(
            fld,
            [h.blocks[v], linalg.scale(fld, data.inclusion.blocks[v], -fld.one)],
            data.module.dims[v],
        )
        for v in module.algebra.vertices
    }
    middle = cokernel(ModuleMap(data.module, total.module, blocks)).target
    _LOGGER.debug(
        "AR sequence %s -> %s -> %s",
        left.dimension_vector,
        middle.dimension_vector,
        module.dimension_vector,
    )
    return ARSequence(left, middle, module)


def _neighbours(module: Representation) -> list[Representation]:
    """Neighbours of an indecomposable in the AR quiver, plus its translates."""
    found: list[Representation] = []
    if is_projective(module):
        found.extend(summands(radical(module).source))
    else:
        sequence = ar_sequence(module)
        found.append(sequence.left)
        found.extend(sequence.middle_summands)
    if is_injective(module):
        found.extend(summands(quotient(module, socle_spaces(module)).target))
    else:
        found.append(tau_inverse(module))
    return [m for m in found if not m.is_zero]


def list_indecomposables(
    algebra: Algebra, cap: int = DEFAULT_INDECOMPOSABLE_CAP
) -> list[Representation]:
    """
    All indecomposable modules up to isomorphism, by knitting from projectives.

    Args:
        algebra: the algebra
        cap: most modules accepted before giving up

    Returns:
        The indecomposables, canonically sorted

    """
    found: list[Representation] = []
    queue: deque[Representation] = deque(projective(algebra, v) for v in algebra.vertices)
    while queue:
        module = queue.popleft()
        if contains_isomorphic(found, module):
            continue
        found.append(module)
        if len(found) > cap:
            msg = f"More than {cap} indecomposables; the algebra may be representation-infinite"
            raise CapExceededError(msg, partial=sorted(found, key=module_key))
        queue.extend(_neighbours(module))
    _LOGGER.debug("Knitting closed with %s indecomposables", len(found))
    return sorted(found, key=module_key)

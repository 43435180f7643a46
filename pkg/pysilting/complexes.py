"""Bounded complexes of projectives and their homotopy category."""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Any

from . import linalg
from .const import SPLIT_TRIES
from .errors import InputError
from .modules import (
    InjectiveModule,
    ModuleMap,
    ProjectiveModule,
    Representation,
    cokernel,
    endomorphism_radical,
    factor_through_mono,
    kernel,
    nakayama_hom,
    projective_hom,
    projective_presentation,
    submodule,
    top_generators,
)

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping, Sequence

    from .algebra import Algebra, Element

_LOGGER = logging.getLogger(__name__)

# Matrix of algebra elements; entry [r][c] lies in e_{row vertex} A e_{column vertex}
EMatrix = list[list["Element"]]


# Element matrices


def emat_zero(rows: int, cols: int) -> EMatrix:
    """Zero element matrix."""
    return [[{} for _ in range(cols)] for _ in range(rows)]


def emat_identity(algebra: Algebra, vertices: Sequence[str]) -> EMatrix:
    """Identity map of a sum of projectives."""
    return [
        [algebra.idempotent(v) if r == c else {} for c in range(len(vertices))]
        for r, v in enumerate(vertices)
    ]


def emat_mul(algebra: Algebra, left: EMatrix, right: EMatrix, inner: int) -> EMatrix:
    """Composite left after right; inner is the middle dimension."""
    rows = len(left)
    cols = len(right[0]) if right else 0
    result = emat_zero(rows, cols)
    for r in range(rows):
        for c in range(cols):
            acc: Element = {}
            for k in range(inner):
                if left[r][k] and right[k][c]:
                    acc = algebra.add(acc, algebra.multiply(left[r][k], right[k][c]))
            result[r][c] = acc
    return result


def emat_add(algebra: Algebra, left: EMatrix, right: EMatrix) -> EMatrix:
    """Entrywise sum."""
    return [
        [algebra.add(a, b) for a, b in zip(row_a, row_b, strict=True)]
        for row_a, row_b in zip(left, right, strict=True)
    ]


def emat_scale(algebra: Algebra, matrix: EMatrix, value: Any) -> EMatrix:
    """Scalar multiple."""
    return [[algebra.scale(value, x) for x in row] for row in matrix]


def emat_is_zero(matrix: EMatrix) -> bool:
    """Whether every entry vanishes."""
    return all(not x for row in matrix for x in row)


class ProjComplex:
    """
    A bounded complex of finitely generated projectives.

    Terms are tuples of vertex labels (meaning the sum of the e_v A); the
    differential d^d: X^d -> X^{d+1} is an element matrix with rows indexed
    by X^{d+1} and columns by X^d.
    """

    def __init__(
        self,
        algebra: Algebra,
        terms: Mapping[int, Sequence[str]],
        differentials: Mapping[int, EMatrix] | None = None,
        *,
        check: bool = True,
    ) -> None:
        """
        Build a complex.

        Args:
            algebra: the algebra
            terms: vertex labels per degree; empty degrees may be omitted
            differentials: d^d per degree; missing ones are zero
            check: validate entries and d after d = 0

        """
        self.algebra = algebra
        differentials = differentials or {}
        self.terms: dict[int, tuple[str, ...]] = {
            int(d): tuple(vs) for d, vs in sorted(terms.items()) if vs
        }
        for d, vs in self.terms.items():
            for v in vs:
                if v not in algebra.quiver.vertex_position:
                    msg = f"Unknown vertex {v} in degree {d}"
                    raise InputError(msg)
        self.diffs: dict[int, EMatrix] = {}
        for d, source in self.terms.items():
            target = self.terms.get(d + 1)
            if target is None:
                continue
            matrix = differentials.get(d)
            if matrix is None:
                matrix = emat_zero(len(target), len(source))
            if len(matrix) != len(target) or any(len(row) != len(source) for row in matrix):
                msg = f"Differential in degree {d} must be {len(target)} x {len(source)}"
                raise InputError(msg)
            self.diffs[d] = [[dict(x) for x in row] for row in matrix]
        extra = {int(d) for d, m in differentials.items() if m and not emat_is_zero(m)}
        if extra - set(self.diffs):
            msg = f"Differentials given in degrees without both terms: {sorted(extra - set(self.diffs))}"
            raise InputError(msg)
        self._morphisms: dict[tuple[int, int], tuple[ProjComplex, MorphismSpace]] = {}
        if check:
            self._check()

    def _check(self) -> None:
        """Entries lie in the right corners and d after d vanishes."""
        algebra = self.algebra
        for d, matrix in self.diffs.items():
            for r, row in enumerate(matrix):
                for c, x in enumerate(row):
                    for k in x:
                        path = algebra.basis[k]
                        if path.source != self.terms[d + 1][r] or path.target != self.terms[d][c]:
                            msg = (
                                f"Entry ({r}, {c}) of d^{d} contains {path.render()}, "
                                f"not in e{self.terms[d + 1][r]} A e{self.terms[d][c]}"
                            )
                            raise InputError(msg)
        for d, matrix in self.diffs.items():
            if d + 1 in self.diffs:
                square = emat_mul(algebra, self.diffs[d + 1], matrix, len(self.terms[d + 1]))
                if not emat_is_zero(square):
                    msg = f"d^{d + 1} after d^{d} is not zero"
                    raise InputError(msg)

    def __repr__(self) -> str:
        """One-line label."""
        return f"ProjComplex({label(self)})"

    @property
    def is_zero(self) -> bool:
        """Whether every term vanishes."""
        return not self.terms

    @property
    def lo(self) -> int | None:
        """Lowest nonzero degree."""
        return min(self.terms) if self.terms else None

    @property
    def hi(self) -> int | None:
        """Highest nonzero degree."""
        return max(self.terms) if self.terms else None

    def term(self, degree: int) -> tuple[str, ...]:
        """Vertex labels in a degree."""
        return self.terms.get(degree, ())

    def diff(self, degree: int) -> EMatrix:
        """d^degree, zero when absent."""
        if degree in self.diffs:
            return self.diffs[degree]
        return emat_zero(len(self.term(degree + 1)), len(self.term(degree)))

    @cached_property
    def modules(self) -> dict[int, ProjectiveModule]:
        """Each term as a module."""
        return {d: ProjectiveModule(self.algebra, vs) for d, vs in self.terms.items()}

    def module(self, degree: int) -> ProjectiveModule:
        """The term in a degree as a module."""
        if degree in self.modules:
            return self.modules[degree]
        return ProjectiveModule(self.algebra, ())

    @cached_property
    def module_complex(self) -> ModuleComplex:
        """The same complex with module terms."""
        return ModuleComplex(
            self.algebra,
            self.modules,
            {
                d: projective_hom(self.modules[d], self.modules[d + 1], m)
                for d, m in self.diffs.items()
            },
        )

    @property
    def size(self) -> int:
        """Total vector-space dimension of all terms."""
        return sum(m.dim for m in self.modules.values())

    @cached_property
    def pieces(self) -> list[ProjComplex]:
        """Indecomposable summands, computed once."""
        return decompose_complex(self)

    @cached_property
    def radical(self) -> list[ChainMap]:
        """Strict chain endomorphisms spanning the radical of Z^0(X, X)."""
        return radical_endomorphisms(self)


def zero_complex(algebra: Algebra) -> ProjComplex:
    """The zero complex."""
    return ProjComplex(algebra, {})


def stalk(algebra: Algebra, vertices: Sequence[str], degree: int = 0) -> ProjComplex:
    """A sum of projectives concentrated in one degree."""
    return ProjComplex(algebra, {degree: tuple(vertices)})


def regular(algebra: Algebra, shift_by: int = 0) -> ProjComplex:
    """The stalk complex A[shift_by]."""
    return stalk(algebra, algebra.vertices, -shift_by)


def shift(complex_: ProjComplex, n: int) -> ProjComplex:
    """X[n]: degrees move down by n and differentials pick up (-1)^n."""
    sign = complex_.algebra.field(-1 if n % 2 else 1)
    return ProjComplex(
        complex_.algebra,
        {d - n: vs for d, vs in complex_.terms.items()},
        {d - n: emat_scale(complex_.algebra, m, sign) for d, m in complex_.diffs.items()},
        check=False,
    )


def direct_sum(algebra: Algebra, complexes: Sequence[ProjComplex]) -> ProjComplex:
    """Direct sum, summands in the given order."""
    degrees = sorted({d for x in complexes for d in x.terms})
    terms = {d: tuple(v for x in complexes for v in x.term(d)) for d in degrees}
    diffs = {}
    for d in degrees:
        if d + 1 not in terms:
            continue
        matrix = emat_zero(len(terms[d + 1]), len(terms[d]))
        row_off = col_off = 0
        for x in complexes:
            block = x.diff(d)
            for r, row in enumerate(block):
                for c, entry in enumerate(row):
                    matrix[row_off + r][col_off + c] = dict(entry)
            row_off += len(x.term(d + 1))
            col_off += len(x.term(d))
        diffs[d] = matrix
    return ProjComplex(algebra, terms, diffs, check=False)


def presentation_complex(module: Representation, degree: int = -1) -> ProjComplex:
    """
    Minimal presentation of a module as a two-term complex.

    Args:
        module: the module
        degree: degree of P1; P0 sits one degree higher

    Returns:
        P1 -> P0 with cohomology the module in degree + 1

    """
    pres = projective_presentation(module)
    return ProjComplex(
        module.algebra,
        {degree: pres.p1, degree + 1: pres.p0},
        {degree: pres.entries},
        check=False,
    )


def k0_class(complex_: ProjComplex) -> tuple[int, ...]:
    """Alternating sum of the terms in the Grothendieck group."""
    vertices = complex_.algebra.vertices
    counts = dict.fromkeys(vertices, 0)
    for d, vs in complex_.terms.items():
        for v in vs:
            counts[v] += -1 if d % 2 else 1
    return tuple(counts[v] for v in vertices)


# Complexes of modules


class ModuleComplex:
    """A bounded complex of arbitrary modules."""

    def __init__(
        self,
        algebra: Algebra,
        terms: Mapping[int, Representation],
        differentials: Mapping[int, ModuleMap] | None = None,
    ) -> None:
        """Store terms and differentials; missing differentials are zero."""
        self.algebra = algebra
        self.terms = {d: m for d, m in sorted(terms.items()) if not m.is_zero}
        self.diffs = {
            d: f
            for d, f in (differentials or {}).items()
            if d in self.terms and d + 1 in self.terms
        }
        self._zero = Representation(algebra, {})

    def term(self, degree: int) -> Representation:
        """Module in a degree."""
        return self.terms.get(degree, self._zero)

    def diff(self, degree: int) -> ModuleMap:
        """Differential out of a degree."""
        if degree in self.diffs:
            return self.diffs[degree]
        return ModuleMap(self.term(degree), self.term(degree + 1))

    @property
    def lo(self) -> int | None:
        """Lowest nonzero degree."""
        return min(self.terms) if self.terms else None

    @property
    def hi(self) -> int | None:
        """Highest nonzero degree."""
        return max(self.terms) if self.terms else None

    def cohomology(self, degree: int) -> Representation:
        """H^degree as a module."""
        inclusion = kernel(self.diff(degree))
        incoming = factor_through_mono(self.diff(degree - 1), inclusion)
        return cokernel(incoming).target


def cohomology(complex_: ProjComplex | ModuleComplex, degree: int) -> Representation:
    """H^degree(X) as a module."""
    if isinstance(complex_, ProjComplex):
        complex_ = complex_.module_complex
    return complex_.cohomology(degree)


# Hom complexes


class _HomComplex:
    """Hom^n(X, Y) for X projective, laid out by Yoneda over summands of X."""

    def __init__(self, source: ProjComplex, target: ModuleComplex) -> None:
        self.source = source
        self.target = target
        self.field = source.algebra.field

    def layout(self, n: int) -> tuple[list[tuple[int, int, int, int]], int]:
        """Blocks (degree, summand, offset, size) of Hom^n."""
        blocks = []
        offset = 0
        for d, vs in self.source.terms.items():
            module = self.target.term(d + n)
            for c, v in enumerate(vs):
                size = module.dims[v]
                if size:
                    blocks.append((d, c, offset, size))
                    offset += size
        return blocks, offset

    def delta(self, n: int) -> Any:
        """The differential Hom^n -> Hom^{n+1}, f -> d f - (-1)^n f d."""
        fld = self.field
        columns, ncols = self.layout(n)
        rows, nrows = self.layout(n + 1)
        row_pos = {(d, c): (off, size) for d, c, off, size in rows}
        entries = [[fld.zero] * ncols for _ in range(nrows)]
        sign = -fld.one if n % 2 == 0 else fld.one

        def place(row_key: tuple[int, int], col_off: int, matrix: Any, scale: Any) -> None:
            if row_key not in row_pos:
                return
            row_off, _ = row_pos[row_key]
            for i, row in enumerate(linalg.rows_of(matrix)):
                for j, value in enumerate(row):
                    if value:
                        entries[row_off + i][col_off + j] += scale * value

        for d, c, off, _ in columns:
            v = self.source.terms[d][c]
            place((d, c), off, self.target.diff(d + n).blocks[v], fld.one)
            if d - 1 in self.source.diffs:
                incoming = self.source.diffs[d - 1]
                for c2, v2 in enumerate(self.source.terms[d - 1]):
                    alpha = incoming[c][c2]
                    if alpha:
                        place((d - 1, c2), off, self.target.term(d + n).action(alpha, v, v2), sign)
        return linalg.matrix(fld, entries, nrows, ncols)

    def cocycles(self, n: int) -> list[linalg.Vector]:
        """Basis of the kernel of delta^n."""
        _, size = self.layout(n)
        if size == 0:
            return []
        return linalg.nullspace(self.field, self.delta(n))

    def coboundaries(self, n: int) -> list[linalg.Vector]:
        """Spanning set of the image of delta^{n-1}."""
        matrix = self.delta(n - 1)
        return [linalg.column(matrix, k) for k in range(matrix.shape[1])]

    def dim(self, n: int) -> int:
        """dim H^n."""
        _, size = self.layout(n)
        if size == 0:
            return 0
        outgoing = linalg.rank(self.field, self.delta(n))
        incoming = linalg.rank(self.field, self.delta(n - 1))
        return size - outgoing - incoming


@dataclass
class ChainMap:
    """
    A chain map X -> Y[shift].

    components[d] is an element matrix X^d -> Y^{d+shift}.
    """

    source: ProjComplex
    target: ProjComplex
    components: dict[int, EMatrix] = field(default_factory=dict)
    shift: int = 0

    def component(self, degree: int) -> EMatrix:
        """Component out of a degree, zero when absent."""
        if degree in self.components:
            return self.components[degree]
        return emat_zero(len(self.target.term(degree + self.shift)), len(self.source.term(degree)))

    def compose(self, first: ChainMap) -> ChainMap:
        """The composite self after first (shifts add)."""
        algebra = self.source.algebra
        components = {}
        for d in first.source.terms:
            middle = d + first.shift
            inner = len(first.target.term(middle))
            if not inner or not self.target.term(middle + self.shift):
                continue
            components[d] = emat_mul(
                algebra, self.component(middle), first.component(d), inner
            )
        return ChainMap(first.source, self.target, components, first.shift + self.shift)

    def add(self, other: ChainMap) -> ChainMap:
        """Sum of parallel maps."""
        algebra = self.source.algebra
        degrees = set(self.components) | set(other.components)
        return ChainMap(
            self.source,
            self.target,
            {d: emat_add(algebra, self.component(d), other.component(d)) for d in degrees},
            self.shift,
        )

    def scale(self, value: Any) -> ChainMap:
        """Scalar multiple."""
        algebra = self.source.algebra
        return ChainMap(
            self.source,
            self.target,
            {d: emat_scale(algebra, m, value) for d, m in self.components.items()},
            self.shift,
        )

    def is_zero(self) -> bool:
        """Whether every component vanishes."""
        return all(emat_is_zero(m) for m in self.components.values())

    def scalar_matrix(self, degree: int) -> Any:
        """Component modulo the radical, as a scalar matrix."""
        algebra = self.source.algebra
        fld = algebra.field
        rows_v = self.target.term(degree + self.shift)
        cols_v = self.source.term(degree)
        comp = self.component(degree)
        rows = [
            [
                algebra.unit_coefficient(comp[r][c], rv) if rv == cv else fld.zero
                for c, cv in enumerate(cols_v)
            ]
            for r, rv in enumerate(rows_v)
        ]
        return linalg.matrix(fld, rows, len(rows_v), len(cols_v))

    def is_invertible_mod_radical(self) -> bool:
        """Whether every component is invertible; for minimal complexes, a homotopy equivalence."""
        if self.shift:
            return False
        for d in set(self.source.terms) | set(self.target.terms):
            if sorted(self.source.term(d)) != sorted(self.target.term(d)):
                return False
            if not linalg.det(self.source.algebra.field, self.scalar_matrix(d)):
                return False
        return True


def identity_chain_map(complex_: ProjComplex) -> ChainMap:
    """Identity of a complex."""
    return ChainMap(
        complex_,
        complex_,
        {d: emat_identity(complex_.algebra, vs) for d, vs in complex_.terms.items()},
    )


def combine_chain_maps(maps: Sequence[ChainMap], coefficients: linalg.Vector) -> ChainMap:
    """Linear combination of parallel chain maps."""
    result = ChainMap(maps[0].source, maps[0].target, {}, maps[0].shift)
    for coeff, f in zip(coefficients, maps, strict=True):
        if coeff:
            result = result.add(f.scale(coeff))
    return result


class MorphismSpace:
    """
    Hom_K(X, Y[n]) between complexes of projectives with explicit representatives.

    Classes are represented by strict chain maps; coordinates are taken
    modulo null-homotopic maps.
    """

    def __init__(self, source: ProjComplex, target: ProjComplex, n: int = 0) -> None:
        """Solve for cocycles and coboundaries of the Hom complex."""
        self.source = source
        self.target = target
        self.n = n
        self.field = source.algebra.field
        self._hom = _HomComplex(source, target.module_complex)
        self._blocks, self.size = self._hom.layout(n)
        boundary = self._hom.coboundaries(n) if self.size else []
        self._trivial = linalg.Splitting(self.field, boundary, self.size)
        self.cocycles = self._hom.cocycles(n)
        chosen: list[linalg.Vector] = []
        images: list[linalg.Vector] = []
        for vector in self.cocycles:
            image = self._trivial.quotient_coordinates(vector)
            if not any(image):
                continue
            trial = [*images, image]
            if linalg.rank(
                self.field, linalg.matrix(self.field, trial, len(trial), len(image))
            ) == len(trial):
                chosen.append(vector)
                images.append(image)
        self._representatives = chosen
        self._images = images

    @property
    def dim(self) -> int:
        """Dimension of the space of homotopy classes."""
        return len(self._representatives)

    def to_chain_map(self, vector: linalg.Vector) -> ChainMap:
        """Chain map with the given Hom^n coordinates."""
        components: dict[int, EMatrix] = {}
        for d, c, off, size in self._blocks:
            module = self.target.module(d + self.n)
            elements = module.elements(self.source.terms[d][c], vector[off : off + size])
            matrix = components.setdefault(
                d, emat_zero(len(self.target.term(d + self.n)), len(self.source.terms[d]))
            )
            for r, x in enumerate(elements):
                matrix[r][c] = x
        return ChainMap(self.source, self.target, components, self.n)

    def to_vector(self, chain_map: ChainMap) -> linalg.Vector:
        """Hom^n coordinates of a chain map."""
        vector = [self.field.zero] * self.size
        for d, c, off, size in self._blocks:
            module = self.target.module(d + self.n)
            comp = chain_map.component(d)
            column = [comp[r][c] for r in range(len(self.target.term(d + self.n)))]
            vector[off : off + size] = module.vector(self.source.terms[d][c], column)
        return vector

    @cached_property
    def basis(self) -> list[ChainMap]:
        """Representatives of a basis of homotopy classes."""
        return [self.to_chain_map(v) for v in self._representatives]

    @cached_property
    def cocycle_maps(self) -> list[ChainMap]:
        """All strict chain maps, as a basis."""
        return [self.to_chain_map(v) for v in self.cocycles]

    def is_null_homotopic(self, chain_map: ChainMap) -> bool:
        """Whether a chain map is zero in the homotopy category."""
        return self._trivial.contains(self.to_vector(chain_map))

    def coordinates(self, chain_map: ChainMap) -> linalg.Vector:
        """Coordinates of the class of a chain map in the basis."""
        image = self._trivial.quotient_coordinates(self.to_vector(chain_map))
        if not self._images:
            return []
        system = linalg.from_columns(self.field, self._images, len(image))
        solution = linalg.solve(self.field, system, image)
        if solution is None:
            msg = "Map is not a chain map"
            raise InputError(msg)
        return solution

    def class_span_rank(self, maps: Sequence[ChainMap]) -> int:
        """Dimension of the span of the classes of some chain maps."""
        images = [self._trivial.quotient_coordinates(self.to_vector(f)) for f in maps]
        images = [v for v in images if any(v)]
        if not images:
            return 0
        return linalg.rank(self.field, linalg.matrix(self.field, images, len(images), len(images[0])))


def morphism_space(source: ProjComplex, target: ProjComplex, n: int = 0) -> MorphismSpace:
    """MorphismSpace, cached on the source complex."""
    key = (id(target), n)
    cached = source._morphisms.get(key)  # noqa: SLF001
    if cached is None or cached[0] is not target:
        cached = (target, MorphismSpace(source, target, n))
        source._morphisms[key] = cached  # noqa: SLF001
    return cached[1]


@dataclass
class HomSpace:
    """Hom_K(X, Y[i]): its dimension and representatives when Y is projective."""

    source: ProjComplex
    target: ProjComplex | ModuleComplex
    shift: int
    dim: int
    basis: list[ChainMap] = field(default_factory=list)


def hom_space(
    source: ProjComplex, target: ProjComplex | ModuleComplex, i: int = 0
) -> HomSpace:
    """
    Hom in the homotopy category from a complex of projectives.

    Args:
        source: X, a complex of projectives
        target: Y, a complex of projectives or of arbitrary modules
        i: the shift

    Returns:
        Hom(X, Y[i]) with representatives when Y is projective

    """
    if isinstance(target, ProjComplex):
        space = morphism_space(source, target, i)
        return HomSpace(source, target, i, space.dim, space.basis)
    return HomSpace(source, target, i, _HomComplex(source, target).dim(i))


def hom_dim(source: ProjComplex, target: ProjComplex | ModuleComplex, i: int = 0) -> int:
    """dim Hom(X, Y[i])."""
    if isinstance(target, ProjComplex):
        target = target.module_complex
    return _HomComplex(source, target).dim(i)


def compare_order(first: ProjComplex, second: ProjComplex) -> bool:
    """X >= Y: Hom(X, Y[i]) = 0 for every i > 0."""
    if first.is_zero or second.is_zero:
        return True
    top = second.hi - first.lo
    return all(hom_dim(first, second, i) == 0 for i in range(1, top + 1))


# Minimization


def _unit_inverse(algebra: Algebra, alpha: Element, vertex: str) -> Element:
    """Inverse of a unit of e_v A e_v by the geometric series."""
    fld = algebra.field
    unit = algebra.unit_coefficient(alpha, vertex)
    inverse_unit = fld.one / unit
    e = algebra.idempotent(vertex)
    nilpotent = algebra.subtract(e, algebra.scale(inverse_unit, alpha))
    total = dict(e)
    term = dict(e)
    while True:
        term = algebra.multiply(term, nilpotent)
        if not term:
            break
        total = algebra.add(total, term)
    return algebra.scale(inverse_unit, total)


def _find_unit(complex_: ProjComplex) -> tuple[int, int, int] | None:
    """First differential entry that is a unit of some e_v A e_v."""
    algebra = complex_.algebra
    for d, matrix in complex_.diffs.items():
        for r, row in enumerate(matrix):
            v = complex_.terms[d + 1][r]
            for c, x in enumerate(row):
                if complex_.terms[d][c] == v and algebra.unit_coefficient(x, v):
                    return d, r, c
    return None


@dataclass
class _Elimination:
    """One Gaussian elimination step with its homotopy equivalences."""

    result: ProjComplex
    forward: ChainMap
    backward: ChainMap


def _eliminate(complex_: ProjComplex, d: int, r: int, c: int, with_maps: bool) -> _Elimination:
    """Remove the contractible summand P_v -> P_v at entry (r, c) of d^d."""
    algebra = complex_.algebra
    fld = algebra.field
    terms = complex_.terms
    matrix = complex_.diffs[d]
    v = terms[d][c]
    inverse = _unit_inverse(algebra, matrix[r][c], v)
    keep_cols = [j for j in range(len(terms[d])) if j != c]
    keep_rows = [i for i in range(len(terms[d + 1])) if i != r]
    # gamma * inverse for each kept row, inverse * beta for each kept column
    gamma_inv = {i: algebra.multiply(matrix[i][c], inverse) for i in keep_rows}
    inv_beta = {j: algebra.multiply(inverse, matrix[r][j]) for j in keep_cols}
    new_terms = dict(terms)
    new_terms[d] = tuple(terms[d][j] for j in keep_cols)
    new_terms[d + 1] = tuple(terms[d + 1][i] for i in keep_rows)
    new_diffs = {k: m for k, m in complex_.diffs.items() if k not in (d - 1, d, d + 1)}
    new_diffs[d] = [
        [
            algebra.subtract(matrix[i][j], algebra.multiply(matrix[i][c], inv_beta[j]))
            for j in keep_cols
        ]
        for i in keep_rows
    ]
    if d - 1 in complex_.diffs:
        new_diffs[d - 1] = [complex_.diffs[d - 1][j] for j in keep_cols]
    if d + 1 in complex_.diffs:
        new_diffs[d + 1] = [[row[i] for i in keep_rows] for row in complex_.diffs[d + 1]]
    result = ProjComplex(algebra, new_terms, new_diffs, check=False)
    if not with_maps:
        return _Elimination(result, None, None)  # type: ignore[arg-type]
    minus = -fld.one
    forward: dict[int, EMatrix] = {}
    backward: dict[int, EMatrix] = {}
    for k, vs in terms.items():
        if k == d:
            forward[k] = [
                [algebra.idempotent(vs[j]) if j == jj else {} for j in range(len(vs))]
                for jj in keep_cols
            ]
            backward[k] = [
                [
                    algebra.scale(minus, inv_beta[jj])
                    if j == c
                    else (algebra.idempotent(vs[j]) if j == jj else {})
                    for jj in keep_cols
                ]
                for j in range(len(vs))
            ]
        elif k == d + 1:
            forward[k] = [
                [
                    algebra.scale(minus, gamma_inv[ii])
                    if i == r
                    else (algebra.idempotent(vs[i]) if i == ii else {})
                    for i in range(len(vs))
                ]
                for ii in keep_rows
            ]
            backward[k] = [
                [algebra.idempotent(vs[i]) if i == ii else {} for ii in keep_rows]
                for i in range(len(vs))
            ]
        else:
            forward[k] = emat_identity(algebra, vs)
            backward[k] = emat_identity(algebra, vs)
    return _Elimination(
        result,
        ChainMap(complex_, result, forward),
        ChainMap(result, complex_, backward),
    )


def minimize(complex_: ProjComplex) -> ProjComplex:
    """Remove every contractible summand; all differential entries end up radical."""
    current = complex_
    steps = 0
    while (pivot := _find_unit(current)) is not None:
        current = _eliminate(current, *pivot, with_maps=False).result
        steps += 1
    if steps:
        _LOGGER.debug("Minimized away %s contractible summands", steps)
    return current


def minimize_with_maps(complex_: ProjComplex) -> tuple[ProjComplex, ChainMap, ChainMap]:
    """
    Minimize and keep the homotopy equivalences.

    Args:
        complex_: any complex of projectives

    Returns:
        (minimal complex, map into it, map out of it)

    """
    current = complex_
    forward = identity_chain_map(complex_)
    backward = identity_chain_map(complex_)
    while (pivot := _find_unit(current)) is not None:
        step = _eliminate(current, *pivot, with_maps=True)
        forward = step.forward.compose(forward)
        backward = backward.compose(step.backward)
        current = step.result
    return current, forward, backward


def length(complex_: ProjComplex) -> int:
    """Number of degrees spanned by the minimized complex."""
    minimal = minimize(complex_)
    if minimal.is_zero:
        return 0
    return minimal.hi - minimal.lo + 1


def window_normalize(complex_: ProjComplex) -> tuple[ProjComplex, int]:
    """Shift so the lowest nonzero degree is 0; returns (X[lo], lo)."""
    minimal = minimize(complex_)
    if minimal.is_zero:
        return minimal, 0
    return shift(minimal, minimal.lo), minimal.lo


# Cones


def cone(f: ChainMap) -> ProjComplex:
    """
    Mapping cone of a strict chain map f: X -> Y.

    cone^d = X^{d+1} + Y^d with differential [[-d_X, 0], [f, d_Y]].

    Args:
        f: a chain map with shift 0

    Returns:
        The cone

    """
    if f.shift:
        msg = "Cones are taken of degree-0 chain maps"
        raise InputError(msg)
    x, y = f.source, f.target
    algebra = x.algebra
    minus = -algebra.field.one
    degrees = sorted({d - 1 for d in x.terms} | set(y.terms))
    terms = {d: x.term(d + 1) + y.term(d) for d in degrees}
    diffs = {}
    for d in degrees:
        if d + 1 not in terms or not terms[d + 1] or not terms[d]:
            continue
        nx_src, ny_src = len(x.term(d + 1)), len(y.term(d))
        nx_tgt, ny_tgt = len(x.term(d + 2)), len(y.term(d + 1))
        matrix = emat_zero(nx_tgt + ny_tgt, nx_src + ny_src)
        dx = x.diff(d + 1)
        for r in range(nx_tgt):
            for c in range(nx_src):
                matrix[r][c] = algebra.scale(minus, dx[r][c])
        fx = f.component(d + 1)
        for r in range(ny_tgt):
            for c in range(nx_src):
                matrix[nx_tgt + r][c] = dict(fx[r][c])
        dy = y.diff(d)
        for r in range(ny_tgt):
            for c in range(ny_src):
                matrix[nx_tgt + r][nx_src + c] = dict(dy[r][c])
        diffs[d] = matrix
    return ProjComplex(algebra, terms, diffs, check=False)


def cocone(f: ChainMap) -> tuple[ProjComplex, ChainMap]:
    """
    Cocone Z = cone(f)[-1] of f: X -> Y with the map Z -> X.

    Args:
        f: a chain map with shift 0

    Returns:
        The cocone and its structure map to the source of f

    """
    z = shift(cone(f), -1)
    x = f.source
    algebra = x.algebra
    components = {}
    for d, vs in x.terms.items():
        width = len(z.term(d))
        components[d] = [
            [algebra.idempotent(v) if j == i else {} for j in range(width)]
            for i, v in enumerate(vs)
        ]
    return z, ChainMap(z, x, components)


# Decomposition and isomorphism


class _GradedEndomorphism:
    """A chain endomorphism viewed degree by degree as module maps."""

    def __init__(self, complex_: ProjComplex, chain_map: ChainMap) -> None:
        self.field = complex_.algebra.field
        self.chain_map = chain_map
        self.degree_maps = {
            d: projective_hom(complex_.modules[d], complex_.modules[d], chain_map.component(d))
            for d in complex_.terms
        }

    def total(self) -> Any:
        """Block diagonal matrix over degrees and vertices."""
        return linalg.block_diagonal(
            self.field, [f.total() for f in self.degree_maps.values()]
        )


def radical_endomorphisms(complex_: ProjComplex) -> list[ChainMap]:
    """Strict chain endomorphisms spanning the radical of Z^0(X, X), by the trace form."""
    maps = morphism_space(complex_, complex_, 0).cocycle_maps
    if not maps:
        return []
    graded = [_GradedEndomorphism(complex_, f) for f in maps]
    return [
        combine_chain_maps(maps, c) for c in endomorphism_radical(graded, complex_.size)
    ]


def _candidates(maps: Sequence[ChainMap]) -> Iterator[ChainMap]:
    """Basis maps, then the combinations sum t^k b_k."""
    fld = maps[0].source.algebra.field
    yield from maps
    tries = SPLIT_TRIES
    if fld.characteristic:
        tries = min(tries, fld.characteristic - 1)
    for t in range(2, tries + 1):
        yield combine_chain_maps(maps, [fld(t**k) for k in range(len(maps))])


def _subcomplex(complex_: ProjComplex, spaces: Mapping[int, Mapping[str, list[linalg.Vector]]]) -> ProjComplex:
    """Summand of a complex given by d-stable projective subspaces of each term."""
    algebra = complex_.algebra
    fld = algebra.field
    generators: dict[int, list[tuple[str, linalg.Vector]]] = {}
    for d, module in complex_.modules.items():
        inclusion = submodule(module, spaces[d])
        generators[d] = [
            (w, inclusion.apply(w, u)) for w, u in top_generators(inclusion.source)
        ]
    terms = {d: tuple(w for w, _ in gens) for d, gens in generators.items()}
    diffs = {}
    for d, gens in generators.items():
        if d + 1 not in generators or not generators[d + 1] or not gens:
            continue
        outgoing = complex_.module_complex.diff(d)
        target_module = complex_.modules[d + 1]
        matrix = emat_zero(len(generators[d + 1]), len(gens))
        for c, (w, vec) in enumerate(gens):
            image = outgoing.apply(w, vec)
            unknowns = []
            columns = []
            for g, (w2, vec2) in enumerate(generators[d + 1]):
                for b in algebra.between(w2, w):
                    unknowns.append((g, b))
                    columns.append(
                        linalg.apply(fld, target_module.path_matrix(algebra.basis[b]), vec2)
                    )
            if not columns:
                continue
            system = linalg.from_columns(fld, columns, target_module.dims[w])
            solution = linalg.solve(fld, system, image)
            if solution is None:
                msg = "Subspaces are not stable under the differential"
                raise ValueError(msg)
            for (g, b), value in zip(unknowns, solution, strict=True):
                if value:
                    matrix[g][c][b] = value
        diffs[d] = matrix
    return ProjComplex(algebra, terms, diffs, check=False)


def _split_complex(complex_: ProjComplex) -> list[ProjComplex]:
    """Indecomposable summands of a minimal complex, with repetition."""
    if complex_.is_zero:
        return []
    maps = morphism_space(complex_, complex_, 0).cocycle_maps
    if len(maps) - len(complex_.radical) == 1:
        return [complex_]
    fld = complex_.algebra.field
    for phi in _candidates(maps):
        endo = _GradedEndomorphism(complex_, phi)
        factors = linalg.irreducible_factors(fld, endo.total())
        if len(factors) < 2:
            continue
        parts = []
        for factor in factors:
            spaces = {}
            for d, f in endo.degree_maps.items():
                spaces[d] = {}
                for v, mat in f.blocks.items():
                    n = mat.shape[0]
                    if n == 0:
                        spaces[d][v] = []
                        continue
                    value = linalg.power(fld, linalg.evaluate(fld, factor, mat), n)
                    spaces[d][v] = linalg.nullspace(fld, value)
            parts.append(minimize(_subcomplex(complex_, spaces)))
        _LOGGER.debug("Split complex into %s parts", len(parts))
        return [piece for part in parts for piece in _split_complex(part)]
    _LOGGER.debug("No splitting chain endomorphism found; treating as indecomposable")
    return [complex_]


def complex_key(complex_: ProjComplex) -> tuple[Any, ...]:
    """Canonical order: window, then term multisets, then the rendered differentials."""
    position = complex_.algebra.quiver.vertex_position
    terms = tuple(
        (d, tuple(sorted(position[v] for v in vs))) for d, vs in complex_.terms.items()
    )
    return (complex_.lo if complex_.terms else 0, complex_.hi if complex_.terms else 0, terms, label(complex_))


def find_complex_isomorphism(first: ProjComplex, second: ProjComplex) -> ChainMap | None:
    """
    Isomorphism between indecomposable minimal complexes, if any.

    Args:
        first: indecomposable minimal complex
        second: indecomposable minimal complex

    Returns:
        A chain map first -> second invertible in every degree, or None

    """
    if _term_profile(first) != _term_profile(second):
        return None
    forward = morphism_space(first, second, 0).basis
    backward = morphism_space(second, first, 0).basis
    for f in forward:
        for g in backward:
            if g.compose(f).is_invertible_mod_radical():
                return f
    return None


def _term_profile(complex_: ProjComplex) -> dict[int, tuple[str, ...]]:
    """Sorted term multisets."""
    return {d: tuple(sorted(vs)) for d, vs in complex_.terms.items()}


def decompose_complex(complex_: ProjComplex) -> list[ProjComplex]:
    """
    Indecomposable summands of a complex, with repetition.

    Args:
        complex_: any complex of projectives

    Returns:
        Minimal indecomposable summands in canonical order, isomorphic copies
        adjacent

    """
    pieces = _split_complex(minimize(complex_))
    groups: list[list[ProjComplex]] = []
    for piece in sorted(pieces, key=complex_key):
        for group in groups:
            if find_complex_isomorphism(group[0], piece) is not None:
                group.append(group[0])
                break
        else:
            groups.append([piece])
    groups.sort(key=lambda g: complex_key(g[0]))
    return [x for group in groups for x in group]


def basic_summands(complexes: Sequence[ProjComplex]) -> list[ProjComplex]:
    """One representative per isomorphism class of indecomposables, canonically ordered."""
    found: list[ProjComplex] = []
    for x in complexes:
        for piece in decompose_complex(x):
            if not any(find_complex_isomorphism(y, piece) is not None for y in found):
                found.append(piece)
    return sorted(found, key=complex_key)


def iso_complexes(first: ProjComplex, second: ProjComplex) -> bool:
    """Whether two complexes are isomorphic in the homotopy category."""
    x, y = minimize(first), minimize(second)
    if _term_profile(x) != _term_profile(y):
        return False
    left, right = decompose_complex(x), decompose_complex(y)
    if len(left) != len(right):
        return False
    unmatched = list(right)
    for piece in left:
        for i, other in enumerate(unmatched):
            if find_complex_isomorphism(piece, other) is not None:
                del unmatched[i]
                break
        else:
            return False
    return True


def in_add(complex_: ProjComplex, summands: Sequence[ProjComplex]) -> bool:
    """Whether every indecomposable summand of a complex is isomorphic to one listed."""
    return all(
        any(find_complex_isomorphism(s, piece) is not None for s in summands)
        for piece in complex_.pieces
    )


# Nakayama functor


def nu_complex(complex_: ProjComplex) -> ProjComplex | ModuleComplex:
    """
    nu X.

    For self-injective algebras the terms P_v become P_rho(v) and entries are
    transported; otherwise the complex of injectives is returned.

    Args:
        complex_: a complex of projectives

    Returns:
        A ProjComplex when the algebra is self-injective, else a ModuleComplex

    """
    algebra = complex_.algebra
    data = algebra.nakayama
    if data.self_injective and data.permutation is not None:
        rho = data.permutation
        terms = {d: tuple(rho[v] for v in vs) for d, vs in complex_.terms.items()}
        diffs = {
            d: [
                [
                    algebra.nakayama_transport(x, complex_.terms[d + 1][r], complex_.terms[d][c])
                    if x
                    else {}
                    for c, x in enumerate(row)
                ]
                for r, row in enumerate(matrix)
            ]
            for d, matrix in complex_.diffs.items()
        }
        return ProjComplex(algebra, terms, diffs, check=False)
    return injective_complex(complex_)


def injective_complex(complex_: ProjComplex) -> ModuleComplex:
    """nu X as a complex of injective modules."""
    algebra = complex_.algebra
    terms = {d: InjectiveModule(algebra, vs) for d, vs in complex_.terms.items()}
    diffs = {
        d: nakayama_hom(terms[d], terms[d + 1], m) for d, m in complex_.diffs.items()
    }
    return ModuleComplex(algebra, terms, diffs)


def nu_cohomology(complex_: ProjComplex, degree: int) -> Representation:
    """H^degree(nu X) for any algebra."""
    return injective_complex(complex_).cohomology(degree)


def serre_dimensions(first: ProjComplex, second: ProjComplex, i: int) -> tuple[int, int]:
    """(dim Hom(P, X[i]), dim Hom(X[i], nu P)); equal by Serre duality."""
    return (
        hom_dim(first, second, i),
        hom_dim(shift(second, i), injective_complex(first), 0),
    )


# Fingerprints and rendering


def cohomology_table(complex_: ProjComplex) -> list[tuple[int, tuple[int, ...]]]:
    """Dimension vectors of the nonzero cohomology."""
    table = []
    for d in complex_.terms:
        h = cohomology(complex_, d)
        if not h.is_zero:
            table.append((d, h.dimension_vector))
    return table


def fingerprint(complex_: ProjComplex) -> str:
    """
    Short digest of window, term multisets and cohomology of the minimized complex.

    Isomorphic complexes share a fingerprint; equal fingerprints still need
    iso_complexes to confirm.

    Args:
        complex_: any complex of projectives

    Returns:
        A 16-character hexadecimal digest

    """
    minimal = minimize(complex_)
    profile = sorted(_term_profile(minimal).items())
    text = repr((minimal.lo, minimal.hi, profile, cohomology_table(minimal)))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _render_matrix(algebra: Algebra, matrix: EMatrix) -> str:
    """Rows separated by semicolons."""
    return "; ".join(", ".join(algebra.render_element(x) for x in row) for row in matrix)


def label(complex_: ProjComplex) -> str:
    """One-line rendering, e.g. (0) P2 -[x1]-> P1."""
    if complex_.is_zero:
        return "0"
    algebra = complex_.algebra
    parts = []
    for d in range(complex_.lo, complex_.hi + 1):
        vs = complex_.term(d)
        parts.append("+".join(f"P{v}" for v in vs) if vs else "0")
        if d < complex_.hi:
            parts.append(f"-[{_render_matrix(algebra, complex_.diff(d))}]->")
    return f"({complex_.lo}) " + " ".join(parts)


def render_complex(complex_: ProjComplex) -> str:
    """Column layout: one line per degree with its outgoing differential."""
    if complex_.is_zero:
        return "0"
    algebra = complex_.algebra
    lines = []
    for d in range(complex_.lo, complex_.hi + 1):
        vs = complex_.term(d)
        line = f"({d}) " + ("+".join(f"P{v}" for v in vs) if vs else "0")
        if d < complex_.hi and vs and complex_.term(d + 1):
            line += f"  d = [{_render_matrix(algebra, complex_.diff(d))}]"
        lines.append(line)
    return "\n".join(lines)

"""Silting objects: classification, approximations, mutation and completion."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING

from sympy import Matrix

from . import linalg
from .algebra import AlgebraPresentation, Arrow, Path, Quiver, build_algebra
from .complexes import (
    ChainMap,
    ProjComplex,
    basic_summands,
    cocone,
    combine_chain_maps,
    compare_order,
    complex_key,
    cone,
    direct_sum,
    find_complex_isomorphism,
    fingerprint,
    hom_dim,
    identity_chain_map,
    in_add,
    iso_complexes,
    k0_class,
    minimize,
    minimize_with_maps,
    morphism_space,
    nu_complex,
    regular,
    shift,
    stalk,
)
from .const import (
    DEFAULT_DESCENT_CAP,
    DEFAULT_NU_ORBIT_CAP,
    DEFAULT_TOWER_CAP,
    LEFT,
    RIGHT,
    STATUS_NOT_PRESILTING,
    STATUS_ORDER,
    STATUS_PRESILTING,
    STATUS_SILTING,
    STATUS_TILTING,
)
from .errors import (
    CapExceededError,
    GenerationUndecidedError,
    InputError,
    NotPresiltingError,
    NotSelfInjectiveError,
    NotSiltingError,
    OrderViolatedError,
    SummandOutOfRangeError,
    UInAddTError,
)

if TYPE_CHECKING:
    from collections.abc import Sequence

    from .algebra import Algebra

_LOGGER = logging.getLogger(__name__)

CERT_NONE = "none"
CERT_GENERATION = "generation"
CERT_MUTATION = "mutation"


@dataclass(frozen=True)
class MutationStep:
    """One irreducible mutation: the parent, the summand index and the direction."""

    parent: str
    summand: int
    direction: str


@dataclass(frozen=True, eq=False)
class SiltingRecord:
    """A minimized basic complex with its silting status and certificate."""

    complex: ProjComplex
    status: str
    summands: tuple[ProjComplex, ...]
    certificate: str = CERT_NONE
    # mutations leading from root to this record
    provenance: tuple[MutationStep, ...] = ()
    root: ProjComplex | None = None
    # index of the summand produced by the last mutation
    created: int | None = None
    tower_length: int | None = None

    @cached_property
    def fingerprint(self) -> str:
        """Fingerprint of the complex."""
        return fingerprint(self.complex)

    @property
    def algebra(self) -> Algebra:
        """The algebra."""
        return self.complex.algebra

    @property
    def is_silting(self) -> bool:
        """Whether the status is silting or tilting."""
        return STATUS_ORDER.index(self.status) >= STATUS_ORDER.index(STATUS_SILTING)

    @property
    def is_tilting(self) -> bool:
        """Whether the status is tilting."""
        return self.status == STATUS_TILTING


@dataclass(frozen=True)
class MutationPath:
    """Iterated irreducible mutation from one silting object to another."""

    start: str
    end: str
    steps: tuple[tuple[int, str], ...] = ()
    records: tuple[SiltingRecord, ...] = field(default=(), compare=False)


@dataclass
class TowerStep:
    """Triangle U_{i+1} -> T_i -> U_i -> U_{i+1}[1] of a resolution tower."""

    approximated: ProjComplex
    approximation: ChainMap
    connecting: ChainMap | None = None

    @property
    def approximating(self) -> ProjComplex:
        """T_i."""
        return self.approximation.source


@dataclass
class ResolutionTower:
    """Resolution of U by add T; the last step has U_l in add T."""

    steps: list[TowerStep]

    @property
    def length(self) -> int:
        """l, the index of the first U_l lying in add T."""
        return len(self.steps) - 1

    @property
    def last(self) -> ProjComplex:
        """T_l = U_l."""
        return self.steps[-1].approximated


# Predicates


def is_presilting(complex_: ProjComplex) -> bool:
    """Hom(T, T[i]) = 0 for every i > 0."""
    if complex_.is_zero:
        return True
    width = complex_.hi - complex_.lo
    return all(hom_dim(complex_, complex_, i) == 0 for i in range(1, width + 1))


def negative_vanishing(complex_: ProjComplex) -> bool:
    """Hom(T, T[i]) = 0 for every i < 0."""
    if complex_.is_zero:
        return True
    width = complex_.hi - complex_.lo
    return all(hom_dim(complex_, complex_, -i) == 0 for i in range(1, width + 1))


def _tilting(complex_: ProjComplex) -> bool:
    """Tilting test for a silting complex; symmetric algebras skip it."""
    if complex_.algebra.nakayama.symmetric:
        return True
    return negative_vanishing(complex_)


def k0_determinant(summands: Sequence[ProjComplex]) -> int:
    """Determinant of the classes of the summands in K_0 = Z^n."""
    if not summands:
        return 1
    return int(Matrix([list(k0_class(s)) for s in summands]).det())


# Approximations


def _complement_maps(source: ProjComplex, target: ProjComplex, generated: Sequence[ChainMap]) -> list[ChainMap]:
    """Basis maps whose classes complete the span of generated to Hom(source, target)."""
    space = morphism_space(source, target)
    fld = space.field
    rows = [c for c in (space.coordinates(f) for f in generated) if any(c)]
    current = linalg.rank(fld, linalg.matrix(fld, rows, len(rows), space.dim)) if rows else 0
    chosen = []
    for k, f in enumerate(space.basis):
        trial = [*rows, linalg.unit_vector(fld, space.dim, k)]
        grown = linalg.rank(fld, linalg.matrix(fld, trial, len(trial), space.dim))
        if grown > current:
            rows = trial
            current = grown
            chosen.append(f)
    return chosen


def _radical_between(source: ProjComplex, target: ProjComplex, same: bool) -> list[ChainMap]:
    """Radical maps between indecomposables."""
    if same:
        return source.radical
    return morphism_space(source, target).basis


def left_approximation(complex_: ProjComplex, summands: Sequence[ProjComplex]) -> ChainMap:
    """
    Minimal left add M-approximation.

    Args:
        complex_: X
        summands: pairwise non-isomorphic indecomposables N_j with M = sum N_j

    Returns:
        f: X -> M' with M' a sum of copies of the N_j

    """
    chosen: list[tuple[ProjComplex, ChainMap]] = []
    for j, target in enumerate(summands):
        if not morphism_space(complex_, target).dim:
            continue
        generated = []
        for k, other in enumerate(summands):
            radical = _radical_between(other, target, same=j == k)
            if not radical:
                continue
            for h in morphism_space(complex_, other).basis:
                generated.extend(a.compose(h) for a in radical)
        chosen.extend((target, f) for f in _complement_maps(complex_, target, generated))
    algebra = complex_.algebra
    approx_target = direct_sum(algebra, [n for n, _ in chosen])
    components = {
        d: [row for _, f in chosen for row in f.component(d)] for d in complex_.terms
    }
    _LOGGER.debug("Left approximation uses %s summands", len(chosen))
    return ChainMap(complex_, approx_target, components)


def right_approximation(complex_: ProjComplex, summands: Sequence[ProjComplex]) -> ChainMap:
    """
    Minimal right add M-approximation.

    Args:
        complex_: U
        summands: pairwise non-isomorphic indecomposables N_j with M = sum N_j

    Returns:
        g: M' -> U with M' a sum of copies of the N_j

    """
    chosen: list[tuple[ProjComplex, ChainMap]] = []
    for j, source in enumerate(summands):
        if not morphism_space(source, complex_).dim:
            continue
        generated = []
        for k, other in enumerate(summands):
            radical = _radical_between(source, other, same=j == k)
            if not radical:
                continue
            for h in morphism_space(other, complex_).basis:
                generated.extend(h.compose(a) for a in radical)
        chosen.extend((source, g) for g in _complement_maps(source, complex_, generated))
    algebra = complex_.algebra
    approx_source = direct_sum(algebra, [n for n, _ in chosen])
    components = {}
    for d in approx_source.terms:
        rows = len(complex_.term(d))
        blocks = [g.component(d) for _, g in chosen]
        components[d] = [[x for block in blocks for x in block[r]] for r in range(rows)]
    _LOGGER.debug("Right approximation uses %s summands", len(chosen))
    return ChainMap(approx_source, complex_, components)


def minimal_approximation(complex_: ProjComplex, other: ProjComplex, side: str = LEFT) -> ChainMap:
    """
    Minimal add M-approximation of X on either side.

    Args:
        complex_: X
        other: M
        side: "left" for X -> M', "right" for M' -> X

    Returns:
        The approximation as a strict chain map

    """
    summands = basic_summands([other])
    if side == LEFT:
        return left_approximation(complex_, summands)
    if side == RIGHT:
        return right_approximation(complex_, summands)
    msg = f"Unknown side {side}"
    raise InputError(msg)


# Classification


def regular_record(algebra: Algebra, shift_by: int = 0) -> SiltingRecord:
    """The silting object A[shift_by]; tilting."""
    summands = tuple(
        sorted(
            (stalk(algebra, (v,), -shift_by) for v in algebra.vertices),
            key=complex_key,
        )
    )
    return SiltingRecord(
        direct_sum(algebra, summands),
        STATUS_TILTING,
        summands,
        CERT_GENERATION,
        tower_length=0,
    )


def classify(complex_: ProjComplex, tower_cap: int = DEFAULT_TOWER_CAP) -> SiltingRecord:
    """
    Decide presilting, silting and tilting.

    Generation is certified by resolving A[m] by add T, m chosen so that
    T >= A[m]; the resolution terminates exactly when A lies in thick T.

    Args:
        complex_: T
        tower_cap: most triangles tried when certifying generation

    Returns:
        The record of the minimized basic object

    """
    algebra = complex_.algebra
    summands = tuple(basic_summands([complex_]))
    basic = direct_sum(algebra, summands)
    if not is_presilting(basic):
        _LOGGER.debug("Object with %s summands is not presilting", len(summands))
        return SiltingRecord(basic, STATUS_NOT_PRESILTING, summands)
    presilting = SiltingRecord(basic, STATUS_PRESILTING, summands)
    if len(summands) != algebra.rank:
        return presilting
    if abs(k0_determinant(summands)) != 1:
        _LOGGER.debug("Summand classes are not a basis of K_0")
        return presilting
    try:
        tower = _tower(summands, regular(algebra, -basic.lo), tower_cap, verify=False)
    except CapExceededError as err:
        msg = f"Generation not certified within {tower_cap} triangles"
        raise GenerationUndecidedError(msg, record=presilting) from err
    status = STATUS_TILTING if _tilting(basic) else STATUS_SILTING
    return SiltingRecord(
        basic, status, summands, CERT_GENERATION, tower_length=tower.length
    )


def _require_silting(record: SiltingRecord) -> None:
    if not record.is_silting:
        msg = f"Expected a silting object, got status {record.status}"
        raise NotSiltingError(msg)


# Mutation


def mutate(record: SiltingRecord, summand: int, direction: str = LEFT) -> SiltingRecord:
    """
    Irreducible mutation at one indecomposable summand.

    Left: X -> M' -> Y -> X[1] with the minimal left add M-approximation,
    the result is Y + M. Right is dual.

    Args:
        record: a silting record
        summand: 0-based index into record.summands
        direction: "left" or "right"

    Returns:
        The mutated record with provenance

    """
    _require_silting(record)
    if not 0 <= summand < len(record.summands):
        msg = f"Summand {summand} out of range 0..{len(record.summands) - 1}"
        raise SummandOutOfRangeError(msg)
    algebra = record.algebra
    x = record.summands[summand]
    rest = [s for i, s in enumerate(record.summands) if i != summand]
    if direction == LEFT:
        f = left_approximation(x, rest)
        y = minimize(cone(f))
    elif direction == RIGHT:
        g = right_approximation(x, rest)
        y = minimize(cocone(g)[0])
    else:
        msg = f"Unknown direction {direction}"
        raise InputError(msg)
    summands = sorted([*rest, y], key=complex_key)
    created = next(i for i, s in enumerate(summands) if s is y)
    result = direct_sum(algebra, summands)
    status = STATUS_TILTING if _tilting(result) else STATUS_SILTING
    _LOGGER.debug("Mutated summand %s to the %s: %r", summand, direction, y)
    return SiltingRecord(
        result,
        status,
        tuple(summands),
        CERT_MUTATION,
        (*record.provenance, MutationStep(record.fingerprint, summand, direction)),
        record.root if record.provenance else record.complex,
        created,
    )


def replay(root: ProjComplex, steps: Sequence[tuple[int, str]]) -> SiltingRecord:
    """Re-derive a record from its root and the mutation steps."""
    record = classify(root)
    for summand, direction in steps:
        record = mutate(record, summand, direction)
    return record


# Resolution towers


def _is_radical_map(g: ChainMap) -> bool:
    """g: U -> T lies in the radical: g after s is radical for every s: T -> U."""
    t, u = g.target, g.source
    if t.is_zero or u.is_zero:
        return True
    endo = morphism_space(t, t)
    radical = linalg.Splitting(
        endo.field, [endo.to_vector(f) for f in t.radical], endo.size
    )
    return all(
        radical.contains(endo.to_vector(g.compose(s)))
        for s in morphism_space(t, u).basis
    )


def _tower(
    summands: Sequence[ProjComplex], complex_: ProjComplex, cap: int, *, verify: bool
) -> ResolutionTower:
    """Triangles U_{i+1} -> T_i -> U_i with T_i -> U_i minimal right approximations."""
    steps: list[TowerStep] = []
    current = minimize(complex_)
    for _ in range(cap + 1):
        if in_add(current, summands):
            steps.append(TowerStep(current, identity_chain_map(current)))
            _LOGGER.debug("Tower closed after %s triangles", len(steps) - 1)
            return ResolutionTower(steps)
        g = right_approximation(current, summands)
        following, structure = cocone(g)
        following, _, backward = minimize_with_maps(following)
        connecting = structure.compose(backward)
        if verify and not _is_radical_map(connecting):
            msg = "Connecting map of the tower is not radical"
            raise ValueError(msg)
        steps.append(TowerStep(current, g, connecting))
        current = following
    msg = f"Resolution tower longer than {cap}"
    raise CapExceededError(msg, partial=ResolutionTower(steps))


def resolution_tower(
    record: SiltingRecord, complex_: ProjComplex, cap: int = DEFAULT_TOWER_CAP
) -> ResolutionTower:
    """
    Resolve U by add T.

    Args:
        record: silting T
        complex_: U with T >= U
        cap: most triangles

    Returns:
        The tower; every connecting map is checked to be radical

    """
    _require_silting(record)
    if not compare_order(record.complex, complex_):
        msg = "Resolution towers need T >= U"
        raise OrderViolatedError(msg)
    return _tower(record.summands, complex_, cap, verify=True)


def make_closer(record: SiltingRecord, complex_: ProjComplex) -> SiltingRecord:
    """
    Irreducible left mutation P of T with T > P >= U.

    The mutated summand is an indecomposable summand of the last term of
    the resolution tower of U, the first one in summand order.

    Args:
        record: silting T
        complex_: presilting U with T >= U, not in add T

    Returns:
        The record of P

    """
    _require_silting(record)
    target = minimize(complex_)
    if in_add(target, record.summands):
        msg = "U already lies in add T"
        raise UInAddTError(msg)
    if not is_presilting(target):
        msg = "make_closer needs a presilting U"
        raise NotPresiltingError(msg)
    tower = resolution_tower(record, target)
    candidates = [
        k
        for k, s in enumerate(record.summands)
        if any(find_complex_isomorphism(s, piece) is not None for piece in tower.last.pieces)
    ]
    result = mutate(record, min(candidates), LEFT)
    if iso_complexes(result.complex, record.complex) or not compare_order(record.complex, result.complex):
        msg = "Mutation did not go strictly down"
        raise OrderViolatedError(msg)
    if not compare_order(result.complex, target):
        msg = "Mutation overshot U"
        raise OrderViolatedError(msg)
    return result


def connect_descend(
    record: SiltingRecord, complex_: ProjComplex, cap: int = DEFAULT_DESCENT_CAP
) -> MutationPath | SiltingRecord:
    """
    Iterate make_closer until U lies in add T_i.

    Args:
        record: silting T
        complex_: presilting U with T >= U
        cap: most mutations

    Returns:
        The mutation path when U is silting, else the silting T_i completing U

    """
    _require_silting(record)
    target = minimize(complex_)
    if not compare_order(record.complex, target):
        msg = "connect_descend needs T >= U"
        raise OrderViolatedError(msg)
    silting_target = len(basic_summands([target])) == record.algebra.rank
    current = record
    steps: list[tuple[int, str]] = []
    records: list[SiltingRecord] = []
    while not in_add(target, current.summands):
        if len(steps) >= cap:
            msg = f"No descent to U within {cap} mutations"
            raise CapExceededError(
                msg, partial=MutationPath(record.fingerprint, current.fingerprint, tuple(steps), tuple(records))
            )
        current = make_closer(current, target)
        steps.append((current.provenance[-1].summand, LEFT))
        records.append(current)
        _LOGGER.debug("Descent step %s", len(steps))
    if silting_target:
        return MutationPath(record.fingerprint, current.fingerprint, tuple(steps), tuple(records))
    return current


def is_left_connected(
    record: SiltingRecord, complex_: ProjComplex, cap: int = DEFAULT_DESCENT_CAP
) -> bool:
    """Whether silting U is reached from T by iterated irreducible left mutation."""
    if not compare_order(record.complex, complex_):
        return False
    return isinstance(connect_descend(record, complex_, cap), MutationPath)


# Completion


def bongartz_complete(record: SiltingRecord, complex_: ProjComplex) -> SiltingRecord:
    """
    Complete a presilting U with T[-1] >= U >= T.

    V is the cocone of a minimal right add U-approximation of T and the
    result is U + V made basic.

    Args:
        record: silting T
        complex_: presilting U

    Returns:
        The classified completion

    """
    _require_silting(record)
    target = minimize(complex_)
    if not is_presilting(target):
        msg = "Bongartz completion needs a presilting U"
        raise NotPresiltingError(msg)
    if not (
        compare_order(shift(record.complex, -1), target)
        and compare_order(target, record.complex)
    ):
        msg = "Bongartz completion needs T[-1] >= U >= T"
        raise OrderViolatedError(msg)
    summands = basic_summands([target])
    g = right_approximation(record.complex, summands)
    complement = minimize(cocone(g)[0])
    completion = classify(direct_sum(record.algebra, [target, complement]))
    if not completion.is_silting:
        msg = f"Bongartz completion classified as {completion.status}"
        raise NotSiltingError(msg)
    return completion


# Nakayama functor


def _require_self_injective(algebra: Algebra) -> None:
    if not algebra.nakayama.self_injective:
        msg = "The algebra is not self-injective"
        raise NotSelfInjectiveError(msg)


def nu_orbit_order(record: SiltingRecord, cap: int = DEFAULT_NU_ORBIT_CAP) -> int:
    """Least n >= 1 with nu^n T isomorphic to T."""
    _require_self_injective(record.algebra)
    _require_silting(record)
    current = record.complex
    for n in range(1, cap + 1):
        current = nu_complex(current)
        if iso_complexes(current, record.complex):
            return n
    msg = f"nu-orbit longer than {cap}"
    raise CapExceededError(msg)


def is_tilting_via_nu(record: SiltingRecord) -> bool:
    """Whether nu T is isomorphic to T."""
    _require_self_injective(record.algebra)
    _require_silting(record)
    return iso_complexes(nu_complex(record.complex), record.complex)


def dominates_nu(record: SiltingRecord) -> bool:
    """Whether T >= nu T; holds for every tilting T."""
    _require_self_injective(record.algebra)
    return compare_order(record.complex, nu_complex(record.complex))


# Endomorphism algebra


def _span(field_: linalg.Field, vectors: Sequence[linalg.Vector], size: int) -> list[linalg.Vector]:
    return linalg.span_basis(field_, [v for v in vectors if any(v)], size)


def end_algebra(record: SiltingRecord) -> AlgebraPresentation:
    """
    Quiver and relations of End(T).

    Vertices are summand indices; arrows i -> j are a basis of
    rad(T_j, T_i) modulo rad^2; relations span the kernel of the path
    algebra on paths of length two up to the nilpotency index.

    Args:
        record: silting T

    Returns:
        The presentation of End(T)

    """
    _require_silting(record)
    summands = record.summands
    algebra = record.algebra
    fld = algebra.field
    n = len(summands)
    labels = [str(i) for i in range(n)]
    # e_i B e_j = Hom(T_j, T_i)
    spaces = {(i, j): morphism_space(summands[j], summands[i]) for i in range(n) for j in range(n)}
    radical: dict[tuple[int, int], list[ChainMap]] = {}
    for (i, j), space in spaces.items():
        radical[(i, j)] = summands[i].radical if i == j else space.basis
    arrows: list[Arrow] = []
    values: dict[str, ChainMap] = {}
    for (i, j), space in spaces.items():
        rad_coords = _span(fld, [space.coordinates(f) for f in radical[(i, j)]], space.dim)
        square = _span(
            fld,
            [
                space.coordinates(x.compose(y))
                for k in range(n)
                for x in radical[(i, k)]
                for y in radical[(k, j)]
            ],
            space.dim,
        )
        rows = list(square)
        current = len(rows)
        for vector in rad_coords:
            trial = [*rows, vector]
            if linalg.rank(fld, linalg.matrix(fld, trial, len(trial), space.dim)) > current:
                rows = trial
                current += 1
                name = f"b{len(arrows)}"
                arrows.append(Arrow(name, labels[i], labels[j]))
                values[name] = combine_chain_maps(space.basis, vector)
    quiver = Quiver(tuple(labels), tuple(arrows))
    layer = [(Path(a.source, a.target, (a.name,)), values[a.name]) for a in arrows]
    columns: dict[tuple[str, str], list[tuple[Path, linalg.Vector]]] = {}
    for length in range(2, algebra.path_cap + 1):
        grown = []
        for path, value in layer:
            for arrow in arrows:
                if arrow.source == path.target:
                    grown.append(
                        (Path(path.source, arrow.target, (*path.arrows, arrow.name)), value.compose(values[arrow.name]))
                    )
        layer = []
        for path, value in grown:
            space = spaces[(int(path.source), int(path.target))]
            coords = space.coordinates(value)
            columns.setdefault((path.source, path.target), []).append((path, coords))
            if any(coords):
                layer.append((path, value))
        if not layer:
            _LOGGER.debug("Radical of End(T) vanishes in length %s", length)
            break
    else:
        msg = f"Radical of End(T) survives at length {algebra.path_cap}"
        raise CapExceededError(msg)
    relations = []
    for (i, j), entries in columns.items():
        size = spaces[(int(i), int(j))].dim
        if size:
            mat = linalg.from_columns(fld, [c for _, c in entries], size)
            kernel = linalg.nullspace(fld, mat)
        else:
            kernel = [linalg.unit_vector(fld, len(entries), k) for k in range(len(entries))]
        for vector in kernel:
            relations.append(
                tuple((value, path) for value, (path, _) in zip(vector, entries, strict=True) if value)
            )
    presentation = AlgebraPresentation(quiver, tuple(relations), fld)
    built = build_algebra(presentation, algebra.path_cap)
    expected = sum(space.dim for space in spaces.values())
    if built.dim != expected:
        msg = f"End(T) has dimension {expected} but its presentation gives {built.dim}"
        raise ValueError(msg)
    _LOGGER.debug("End(T): %s arrows, %s relations", len(arrows), len(relations))
    return presentation


def shift_record(record: SiltingRecord, n: int) -> SiltingRecord:
    """
    The record of T[n] without reclassifying.

    Shifting keeps the status and the summand order; provenance does not carry over.
    """
    return SiltingRecord(
        shift(record.complex, n),
        record.status,
        tuple(shift(s, n) for s in record.summands),
        record.certificate,
    )

"""Worked algebras and complexes used by the CLI builtins and the tests."""

from __future__ import annotations

from typing import TYPE_CHECKING

from . import linalg
from .algebra import Algebra, AlgebraPresentation, Arrow, Quiver, build_algebra
from .complexes import ProjComplex, direct_sum, presentation_complex, shift, stalk
from .const import DEFAULT_PATH_CAP
from .errors import InputError
from .modules import Representation, projective, simple

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable

A3 = "A3"
N3 = "N3"
K2 = "K2"
SN22 = "SN22"
KRONECKER = "KRONECKER"


def _zero_relations(quiver: Quiver, fld: linalg.Field, words: Iterable[list[str]]) -> tuple:
    return tuple(((fld.one, quiver.path(w)),) for w in words)


def a3(fld: linalg.Field) -> AlgebraPresentation:
    """Path algebra of 1 -a-> 2 -b-> 3."""
    quiver = Quiver(("1", "2", "3"), (Arrow("a", "1", "2"), Arrow("b", "2", "3")))
    return AlgebraPresentation(quiver, (), fld)


def n3(fld: linalg.Field) -> AlgebraPresentation:
    """Symmetric Nakayama algebra on the 3-cycle with paths of length 4 zero."""
    quiver = Quiver(
        ("1", "2", "3"),
        (Arrow("x1", "1", "2"), Arrow("x2", "2", "3"), Arrow("x3", "3", "1")),
    )
    cycle = ["x1", "x2", "x3"]
    words = [[cycle[(i + k) % 3] for k in range(4)] for i in range(3)]
    return AlgebraPresentation(quiver, _zero_relations(quiver, fld, words), fld)


def _two_cycle() -> Quiver:
    return Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "2", "1")))


def k2(fld: linalg.Field) -> AlgebraPresentation:
    """Symmetric Nakayama algebra on the 2-cycle with aba = bab = 0."""
    quiver = _two_cycle()
    return AlgebraPresentation(
        quiver, _zero_relations(quiver, fld, [["a", "b", "a"], ["b", "a", "b"]]), fld
    )


def sn22(fld: linalg.Field) -> AlgebraPresentation:
    """Self-injective Nakayama algebra on the 2-cycle with ab = ba = 0."""
    quiver = _two_cycle()
    return AlgebraPresentation(
        quiver, _zero_relations(quiver, fld, [["a", "b"], ["b", "a"]]), fld
    )


def kronecker(fld: linalg.Field) -> AlgebraPresentation:
    """Two parallel arrows a, b: 1 -> 2."""
    quiver = Quiver(("1", "2"), (Arrow("a", "1", "2"), Arrow("b", "1", "2")))
    return AlgebraPresentation(quiver, (), fld)


BUILTINS: dict[str, Callable[[linalg.Field], AlgebraPresentation]] = {
    A3: a3,
    N3: n3,
    K2: k2,
    SN22: sn22,
    KRONECKER: kronecker,
}


def builtin_algebra(
    name: str, fld: linalg.Field | None = None, path_cap: int = DEFAULT_PATH_CAP
) -> Algebra:
    """
    Build one of the named algebras.

    Args:
        name: A3, N3, K2, SN22 or KRONECKER (case-insensitive)
        fld: ground field, rationals by default
        path_cap: longest truncation tried

    Returns:
        The algebra

    """
    factory = BUILTINS.get(name.upper())
    if factory is None:
        msg = f"Unknown builtin algebra {name}; choose from {sorted(BUILTINS)}"
        raise InputError(msg)
    return build_algebra(factory(fld or linalg.Field()), path_cap)


# Complexes over N3


def _entry(algebra: Algebra, *words: str) -> dict[int, object]:
    return algebra.path_element(list(words))


def n3_tilting(algebra: Algebra) -> ProjComplex:
    """
    The tilting complex over N3 in degrees 0, 1, 2.

    (P2 -x2x3x1-> P2 -x1-> P1) + P2 + (P2 -x3x1-> P3)
    """
    long = ProjComplex(
        algebra,
        {0: ("2",), 1: ("2",), 2: ("1",)},
        {0: [[_entry(algebra, "x2", "x3", "x1")]], 1: [[_entry(algebra, "x1")]]},
    )
    return direct_sum(algebra, [long, stalk(algebra, ("2",)), _n3_short(algebra)])


def _n3_short(algebra: Algebra) -> ProjComplex:
    return ProjComplex(
        algebra, {0: ("2",), 1: ("3",)}, {0: [[_entry(algebra, "x3", "x1")]]}
    )


def n3_two_term(algebra: Algebra) -> ProjComplex:
    """Its two-term reduction (P2 -x1-> P1) + P2 + (P2 -x3x1-> P3)."""
    first = ProjComplex(algebra, {0: ("2",), 1: ("1",)}, {0: [[_entry(algebra, "x1")]]})
    return direct_sum(algebra, [first, stalk(algebra, ("2",)), _n3_short(algebra)])


# Complements over A3


def _top_two(algebra: Algebra) -> Representation:
    """The module 1/2."""
    fld = algebra.field
    return Representation(
        algebra, {"1": 1, "2": 1}, {"a": linalg.matrix(fld, [[fld.one]], 1, 1)}
    )


def a3_almost_complete(algebra: Algebra, n: int) -> ProjComplex:
    """P3 + S1[n] over A3."""
    return direct_sum(
        algebra,
        [stalk(algebra, ("3",)), shift(presentation_complex(simple(algebra, "1")), n)],
    )


def a3_complements(algebra: Algebra, n: int, window: Iterable[int]) -> list[tuple[int, ProjComplex]]:
    """
    Complements M[l] of P3 + S1[n] over A3, one for each l in the window.

    For n >= 0: (1/2)[l] for l < 0, P1[l] for 0 <= l <= n, P2[l] for l > n.
    For n < 0: (1/2)[l] for l <= n, S2[l] for n < l < 0, P2[l] for l >= 0.

    Args:
        algebra: the path algebra of A3
        n: shift of S1
        window: the values of l

    Returns:
        (l, M[l]) pairs

    """
    top_two = _top_two(algebra)
    result = []
    for ell in window:
        if ell < 0 and ell <= n:
            module = top_two
        elif n >= 0:
            module = projective(algebra, "1") if ell <= n else projective(algebra, "2")
        else:
            module = simple(algebra, "2") if ell < 0 else projective(algebra, "2")
        result.append((ell, shift(presentation_complex(module), ell)))
    return result

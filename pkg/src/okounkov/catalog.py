"""Built-in surface models and the reference data they are tested against.

Del Pezzo blow-ups of the plane in up to eight general points (negative
curves generated from the classical degree/multiplicity patterns), the
blow-up of three collinear points, and a Picard-rank-3 K3 surface whose
effective cone is spanned by three (-2)-curves forming a hyperplane
section.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as _F
from functools import lru_cache
from itertools import combinations
from typing import Callable, Mapping

from .errors import InputError
from .lattice import DivClass, SurfaceModel


def _dp_class(r: int, degree: int, mults: Mapping[int, int]) -> DivClass:
    """degree*H - sum mults[i]*E_i on the blow-up in r points (1-based)."""
    coords = [degree] + [0] * r
    for i, m in mults.items():
        coords[i] = -m
    return DivClass(tuple(coords))


def exceptional(r: int, i: int) -> DivClass:
    return _dp_class(r, 0, {i: -1})


def line_through(r: int, i: int, j: int) -> DivClass:
    return _dp_class(r, 1, {i: 1, j: 1})


def conic_through(r: int, points: tuple[int, ...]) -> DivClass:
    if len(points) != 5:
        raise InputError("a conic passes through five points")
    return _dp_class(r, 2, {i: 1 for i in points})


def conic_missing(r: int, k: int) -> DivClass:
    """On r = 6: the conic through the five points other than the k-th."""
    return conic_through(r, tuple(i for i in range(1, r + 1) if i != k))


def _del_pezzo_negative_curves(r: int) -> list[DivClass]:
    curves = [exceptional(r, i) for i in range(1, r + 1)]
    curves += [line_through(r, i, j) for i, j in combinations(range(1, r + 1), 2)]
    if r >= 5:
        curves += [conic_through(r, pts) for pts in combinations(range(1, r + 1), 5)]
    if r >= 7:
        # cubics through seven points, double in one of them
        for pts in combinations(range(1, r + 1), 7):
            for double in pts:
                curves.append(
                    _dp_class(r, 3, {i: (2 if i == double else 1) for i in pts})
                )
    if r >= 8:
        # quartics through all eight, double in three
        for doubles in combinations(range(1, 9), 3):
            curves.append(
                _dp_class(r, 4, {i: (2 if i in doubles else 1) for i in range(1, 9)})
            )
        # quintics through all eight, double in six
        for doubles in combinations(range(1, 9), 6):
            curves.append(
                _dp_class(r, 5, {i: (2 if i in doubles else 1) for i in range(1, 9)})
            )
        # sextics through all eight, double in seven and triple in one
        for triple in range(1, 9):
            curves.append(
                _dp_class(r, 6, {i: (3 if i == triple else 2) for i in range(1, 9)})
            )
    return curves


def del_pezzo(r: int) -> SurfaceModel:
    """Blow-up of the plane in r general points, flag curve a general line."""
    if not 1 <= r <= 8:
        raise InputError("del Pezzo blow-ups are defined for 1 <= r <= 8")
    labels = ["H"] + [f"E{i}" for i in range(1, r + 1)]
    form = [[0] * (r + 1) for _ in range(r + 1)]
    form[0][0] = 1
    for i in range(1, r + 1):
        form[i][i] = -1
    curves = _del_pezzo_negative_curves(r)
    gens = list(curves)
    if r == 1:
        # a single blown-up point: the ruling class is needed to span Eff
        gens.append(_dp_class(r, 1, {1: 1}))
    flag = DivClass(tuple([1] + [0] * r))
    return SurfaceModel.create(labels, form, gens, flag, negative_curves=curves)


def collinear_three() -> SurfaceModel:
    """Blow-up of three collinear points; the strict transform of the common
    line is a (-2)-curve spanning the effective cone with the exceptionals."""
    labels = ["H", "E1", "E2", "E3"]
    form = [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]
    line = DivClass((1, -1, -1, -1))
    gens = [DivClass((0, 1, 0, 0)), DivClass((0, 0, 1, 0)), DivClass((0, 0, 0, 1)), line]
    return SurfaceModel.create(labels, form, gens, DivClass((1, 0, 0, 0)))


def k3_example() -> SurfaceModel:
    """K3 surface of Picard rank 3: two lines and a conic forming a
    hyperplane section span the effective cone; the flag curve is the
    hyperplane class L1 + L2 + D."""
    labels = ["L1", "L2", "D"]
    form = [[-2, 1, 2], [1, -2, 2], [2, 2, -2]]
    gens = [DivClass((1, 0, 0)), DivClass((0, 1, 0)), DivClass((0, 0, 1))]
    return SurfaceModel.create(labels, form, gens, DivClass((1, 1, 1)))


@dataclass(frozen=True)
class CatalogEntry:
    """A named surface plus the reference values the tests pin down."""

    name: str
    build: Callable[[], SurfaceModel]
    expected: Mapping[str, object] = field(default_factory=dict)

    def model(self) -> SurfaceModel:
        return _cached_model(self.name)


@lru_cache(maxsize=None)
def _cached_model(name: str) -> SurfaceModel:
    return CATALOG[name].build()


def _dp6_table() -> list[tuple[tuple[DivClass, ...], DivClass]]:
    """Concrete instantiations of the seven chamber-support patterns on the
    blow-up of six points, with the expected basis element for each."""
    r = 6
    e = lambda i: exceptional(r, i)
    l = lambda i, j: line_through(r, i, j)
    c = lambda k: conic_missing(r, k)
    d = lambda *coords: DivClass(tuple(coords))
    return [
        ((e(1), e(2), e(3)), d(1, 0, 0, 0, 0, 0, 0)),
        ((l(1, 2), l(1, 3), e(4)), d(3, -2, -1, -1, 0, 0, 0)),
        ((l(1, 2), l(1, 3), l(2, 3), e(4)), d(4, -2, -2, -2, 0, 0, 0)),
        ((c(1), l(2, 3), l(2, 4)), d(7, 0, -4, -3, -3, -2, -2)),
        ((c(1), l(2, 3), l(2, 4), l(3, 4), e(1)), d(8, 0, -4, -4, -4, -2, -2)),
        ((c(1), c(2), l(3, 4)), d(10, -2, -2, -5, -5, -4, -4)),
        ((c(1), c(2), l(3, 4), l(3, 5), l(4, 5)), d(12, -2, -2, -6, -6, -6, -4)),
    ]


_DP6_EXPECTED = {
    "negative_curve_count": 27,
    "table": _dp6_table,
    "worked_example": {
        "divisor": DivClass((7, -2, -1, -3, -2, -2, 0)),
        "terms": (
            (_F(2), DivClass((1, 0, 0, 0, 0, 0, 0))),
            (_F(1, 2), DivClass((8, -3, -2, -5, -3, -3, 0))),
            (_F(1, 2), DivClass((2, -1, 0, -1, -1, -1, 0))),
        ),
        "body": (
            (_F(0), _F(0)),
            (_F(5, 2), _F(0)),
            (_F(5, 2), _F(1)),
            (_F(2), _F(5)),
            (_F(0), _F(7)),
        ),
        "area": _F(27, 2),
        "alternative_terms": (
            DivClass((3, -2, -1, -1, 0, 0, 0)),
            DivClass((4, 0, 0, -2, -2, -2, 0)),
        ),
    },
}

_COLLINEAR_EXPECTED = {
    "chamber_count": 12,
    "basis": (
        DivClass((1, 0, 0, 0)),
        DivClass((3, -1, -1, -1)),
        DivClass((2, -1, -1, 0)),
        DivClass((2, -1, 0, -1)),
        DivClass((2, 0, -1, -1)),
        DivClass((1, -1, 0, 0)),
        DivClass((1, 0, -1, 0)),
        DivClass((1, 0, 0, -1)),
    ),
    "boundary_rays": (
        DivClass((1, -1, 0, 0)),
        DivClass((1, 0, -1, 0)),
        DivClass((1, 0, 0, -1)),
    ),
    "example_divisor": DivClass((15, -3, -3, -1)),
    "example_terms": (
        (_F(8), DivClass((1, 0, 0, 0))),
        (_F(1), DivClass((3, -1, -1, -1))),
        (_F(2), DivClass((2, -1, -1, 0))),
    ),
    "example_body": (
        (_F(0), _F(0)),
        (_F(12), _F(0)),
        (_F(10), _F(4)),
        (_F(8), _F(7)),
        (_F(0), _F(15)),
    ),
    "example_area": _F(103),
}

_K3_EXPECTED = {
    "chamber_count": 5,
    "basis": (
        DivClass((1, 1, 1)),
        DivClass((3, 2, 2)),
        DivClass((2, 3, 2)),
        DivClass((1, 1, 2)),
        DivClass((2, 2, 1)),
        DivClass((1, 0, 1)),
        DivClass((0, 1, 1)),
    ),
    "boundary_rays": (DivClass((1, 0, 1)), DivClass((0, 1, 1))),
    "building_blocks": {(4, 1), (9, 2), (6, 1), (3, 0)},
}

_DP2_EXPECTED = {
    # three distinct chambers sharing the basis element H
    "shared_element_supports": (
        (),  # nef chamber
        (DivClass((0, 1, 0)),),
        (DivClass((0, 0, 1)),),
        (DivClass((0, 1, 0)), DivClass((0, 0, 1))),
    ),
    "shared_element": DivClass((1, 0, 0)),
}

_DP_CURVE_COUNTS = {1: 1, 2: 3, 3: 6, 4: 10, 5: 16, 6: 27, 7: 56, 8: 240}


def _entry(name: str, build: Callable[[], SurfaceModel], expected) -> CatalogEntry:
    return CatalogEntry(name=name, build=build, expected=expected)


CATALOG: dict[str, CatalogEntry] = {
    **{
        f"dp{r}": _entry(
            f"dp{r}",
            (lambda rr: (lambda: del_pezzo(rr)))(r),
            {
                "negative_curve_count": _DP_CURVE_COUNTS[r],
                **(_DP6_EXPECTED if r == 6 else {}),
                **(_DP2_EXPECTED if r == 2 else {}),
            },
        )
        for r in range(1, 9)
    },
    "collinear3": _entry("collinear3", collinear_three, _COLLINEAR_EXPECTED),
    "k3-bf": _entry("k3-bf", k3_example, _K3_EXPECTED),
}


def catalog_model(name: str) -> SurfaceModel:
    if name not in CATALOG:
        raise InputError(f"unknown catalog surface {name!r}")
    return _cached_model(name)

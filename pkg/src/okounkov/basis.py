"""Construction of the Minkowski basis.

One nef class per chamber support, obtained by solving the orthogonality
system Gram(S) * alpha = -(C.N_i) with unit flag coefficient and scaling to
a primitive integral class, together with one primitive representative for
each extremal nef ray of self-intersection zero.  Okounkov bodies of basis
elements are triangles Delta(height, length) for the chamber elements and
vertical segments for the boundary rays.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import InputError, InternalError
from .lattice import (
    DivClass,
    SurfaceModel,
    curve_gram,
    curve_rows,
    flag_row,
    gen_rows,
    intersect,
    is_negative_definite_gram,
    is_nef,
    nef_cone,
    pair_rows,
    primitive_integral,
    scaling_ratio,
    solve_exact,
)
from .zariski import ChamberSupport, enumerate_chamber_supports


@dataclass(frozen=True)
class BasisElement:
    """A Minkowski basis divisor with its elementary body data.

    Chamber elements have length = d_coeff > 0 and body the triangle of the
    given height and length; boundary rays have length = d_coeff = 0 and
    body the vertical segment of the given height.
    """

    divisor: DivClass
    support: ChamberSupport
    height: Fraction
    length: Fraction
    d_coeff: Fraction

    def is_boundary_ray(self) -> bool:
        return self.length == 0


@dataclass(frozen=True)
class MinkowskiBasis:
    elements: tuple[BasisElement, ...]
    by_support: tuple[tuple[ChamberSupport, BasisElement], ...]

    @property
    def index(self) -> dict[ChamberSupport, BasisElement]:
        return dict(self.by_support)

    @property
    def divisors(self) -> tuple[DivClass, ...]:
        return tuple(e.divisor for e in self.elements)


@lru_cache(maxsize=None)
def _element_for_indices(
    s: SurfaceModel, indices: tuple[int, ...]
) -> Optional[BasisElement]:
    gram = curve_gram(s)
    sub = [[gram[i][j] for j in indices] for i in indices]
    if not is_negative_definite_gram(sub):
        raise InputError("support is not negative definite")
    flag_values = pair_rows([curve_rows(s)[i] for i in indices], s.flag_curve)
    rhs = [-Fraction(v, s.flag_curve.den) for v in flag_values]
    sols = solve_exact(sub, [rhs])
    if sols is None:
        raise InternalError("negative definite Gram matrix was singular")
    alphas = sols[0]
    raw = s.flag_curve
    for i, a in zip(indices, alphas):
        if a < 0:
            raise InternalError(
                "orthogonality system produced a negative coefficient; "
                "negative curves are not honestly irreducible"
            )
        raw = raw + a * s.negative_curves[i]
    divisor = primitive_integral(raw)
    if not is_nef(s, divisor):
        return None
    d_coeff = scaling_ratio(divisor, raw)
    for idx in indices:
        if intersect(s, divisor, s.negative_curves[idx]) != 0:
            raise InternalError("basis element not orthogonal to its support")
    height = intersect(s, s.flag_curve, divisor)
    # mu_C(divisor) equals d_coeff: divisor - d_coeff*C is effective with
    # negative definite support, and pairing divisor against it shows no
    # larger multiple of C can be subtracted.
    return BasisElement(
        divisor=divisor,
        support=ChamberSupport(indices),
        height=height,
        length=d_coeff,
        d_coeff=d_coeff,
    )


def basis_element_for_support(
    s: SurfaceModel, supp: ChamberSupport
) -> Optional[BasisElement]:
    """The nef class orthogonal to the support inside span(C, support).

    Returns None when the solved class fails nefness, which happens exactly
    when the support is negative definite but not a genuine chamber support.
    """
    return _element_for_indices(s, tuple(supp.indices))


def boundary_ray_element(s: SurfaceModel, ray: DivClass) -> BasisElement:
    """Zero-length basis element for a nef extremal ray with square zero."""
    divisor = primitive_integral(ray)
    if not is_nef(s, divisor) or intersect(s, divisor, divisor) != 0:
        raise InputError("not a nef class of self-intersection zero")
    height = intersect(s, s.flag_curve, divisor)
    if height <= 0:
        raise InternalError("flag curve not positive on a nef boundary ray")
    return BasisElement(
        divisor=divisor,
        support=ChamberSupport(()),
        height=height,
        length=Fraction(0),
        d_coeff=Fraction(0),
    )


def nef_boundary_rays(s: SurfaceModel) -> tuple[DivClass, ...]:
    """Primitive generators of the nef-cone extremal rays with square zero."""
    rays = [
        g
        for g in nef_cone(s).generators
        if intersect(s, g, g) == 0
    ]
    return tuple(sorted(rays, key=lambda d: d.nums))


@lru_cache(maxsize=None)
def minkowski_basis(s: SurfaceModel) -> MinkowskiBasis:
    """Chamber elements for every chamber support plus the boundary rays.

    Distinct chambers frequently share an element; elements are
    deduplicated by divisor class and every support keeps a pointer to its
    element.
    """
    elements: dict[DivClass, BasisElement] = {}
    by_support: list[tuple[ChamberSupport, BasisElement]] = []
    for supp in enumerate_chamber_supports(s):
        element = basis_element_for_support(s, supp)
        if element is None:
            raise InternalError(
                "chamber support without a nef basis element; "
                "chamber enumeration and basis solving disagree"
            )
        canonical = elements.setdefault(element.divisor, element)
        by_support.append((supp, canonical))
    for ray in nef_boundary_rays(s):
        element = boundary_ray_element(s, ray)
        elements.setdefault(element.divisor, element)
    return MinkowskiBasis(tuple(elements.values()), tuple(by_support))

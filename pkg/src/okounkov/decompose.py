"""Minkowski decomposition of nef rational classes.

The loop: take the basis element M of the chamber whose support is Null(D),
subtract the largest multiple tau*M keeping the remainder nef, and recurse.
Each step strictly enlarges the null set, so the loop ends after at most
rank-many steps in either zero or a class on a square-zero extremal nef ray.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .basis import BasisElement, basis_element_for_support, boundary_ray_element
from .errors import DomainError, InternalError
from .lattice import (
    DivClass,
    SurfaceModel,
    gen_rows,
    intersect,
    is_nef,
    pair_rows,
    primitive_integral,
    scaling_ratio,
)
from .zariski import ZariskiPair, null_set, zariski_decompose


@dataclass(frozen=True)
class Decomposition:
    """Ordered weights on basis elements summing exactly to the input."""

    input: DivClass
    terms: tuple[tuple[Fraction, BasisElement], ...]
    dropped_negative: tuple[tuple[int, Fraction], ...] = ()

    def reconstruct(self, s: SurfaceModel) -> DivClass:
        total = DivClass((0,) * s.rank)
        for weight, element in self.terms:
            total = total + weight * element.divisor
        return total

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(w for w, _ in self.terms)


def tau_max(s: SurfaceModel, d: DivClass, m: DivClass) -> Fraction:
    """sup{t : d - t*m nef}, as an exact minimum of facet ratios."""
    if m.is_zero():
        raise DomainError("tau is undefined against the zero class")
    if not is_nef(s, d) or not is_nef(s, m):
        raise DomainError("tau requires nef classes")
    d_vals = pair_rows(gen_rows(s), d)
    m_vals = pair_rows(gen_rows(s), m)
    best: Optional[Fraction] = None
    for dv, mv in zip(d_vals, m_vals):
        if mv > 0:
            ratio = Fraction(dv * m.den, mv * d.den)
            if best is None or ratio < best:
                best = ratio
    if best is None:
        raise DomainError(
            "tau is unbounded: subtracting this class never violates nefness"
        )
    return best


def decompose(s: SurfaceModel, d: DivClass) -> Decomposition:
    """Express a nef rational class over the Minkowski basis.

    The resulting weights reproduce d exactly and the Minkowski sum of the
    term bodies is the Okounkov body of d.
    """
    if not is_nef(s, d):
        raise DomainError("only nef classes admit a Minkowski decomposition")
    terms: list[tuple[Fraction, BasisElement]] = []
    current = d
    previous_support: Optional[frozenset[int]] = None
    for _ in range(s.rank + 1):
        if current.is_zero():
            break
        if intersect(s, current, current) == 0:
            ray = primitive_integral(current)
            element = boundary_ray_element(s, ray)
            terms.append((scaling_ratio(current, ray), element))
            current = DivClass((0,) * s.rank)
            break
        supp = null_set(s, current)
        support_set = frozenset(supp.indices)
        if previous_support is not None and not (previous_support < support_set):
            raise InternalError("null set failed to grow along the decomposition")
        previous_support = support_set
        element = basis_element_for_support(s, supp)
        if element is None:
            raise InternalError("big nef class whose null set is not a chamber support")
        tau = tau_max(s, current, element.divisor)
        if tau <= 0:
            raise InternalError("vanishing step against the chamber element")
        terms.append((tau, element))
        current = current - tau * element.divisor
    if not current.is_zero():
        raise InternalError("decomposition failed to terminate within rank steps")
    result = Decomposition(input=d, terms=tuple(terms))
    if result.reconstruct(s) != d:
        raise InternalError("decomposition does not reconstruct its input")
    return result


def decompose_big(s: SurfaceModel, d: DivClass) -> Decomposition:
    """Decomposition of the positive part of a big class.

    For a general flag the Okounkov bodies of d and of its positive part
    coincide, so the dropped negative part is recorded as metadata only.
    """
    pair: ZariskiPair = zariski_decompose(s, d)
    if intersect(s, pair.positive, pair.positive) <= 0:
        raise DomainError("class is not big (positive part has square zero)")
    inner = decompose(s, pair.positive)
    return Decomposition(
        input=d,
        terms=inner.terms,
        dropped_negative=pair.negative_coeffs,
    )

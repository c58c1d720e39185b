"""Zariski decomposition and the chamber structure it induces on the big cone.

The decomposition D = P + N is computed by iterative support augmentation:
start from the curves D meets negatively, solve the orthogonality system on
that support, and enlarge the support while the candidate positive part
still meets some negative curve negatively.  The loop also runs over the
ordered field Q(eps) of first-order jets a + b*eps, which is what the
body sweep uses to read off the support of D - t*C just beyond a breakpoint.
Every returned pair carries a machine-checkable certificate (P nef, P.N = 0,
negative definite support, exact reconstruction).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .errors import DomainError, InputError, InternalError, ResourceLimitError
from .lattice import (
    DivClass,
    SurfaceModel,
    curve_gram,
    curve_rows,
    gen_rows,
    interior_nef_point,
    is_negative_definite,
    is_negative_definite_gram,
    is_nef,
    pair_rows,
    solve_exact,
)


@dataclass(frozen=True)
class ChamberSupport:
    """A sorted set of negative-curve indices (support of a Zariski chamber)."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(sorted(set(int(i) for i in self.indices)))
        object.__setattr__(self, "indices", idx)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)

    def curves(self, s: SurfaceModel) -> tuple[DivClass, ...]:
        return tuple(s.negative_curves[i] for i in self.indices)


@dataclass(frozen=True)
class ZariskiPair:
    """Positive part P and the expansion of the negative part N."""

    positive: DivClass
    negative_coeffs: tuple[tuple[int, Fraction], ...]  # (curve index, coeff > 0)

    @property
    def coeff_map(self) -> dict[int, Fraction]:
        return dict(self.negative_coeffs)

    def support(self) -> ChamberSupport:
        return ChamberSupport(tuple(i for i, _ in self.negative_coeffs))

    def negative_part(self, s: SurfaceModel) -> DivClass:
        total = DivClass((0,) * s.rank)
        for i, c in self.negative_coeffs:
            total = total + c * s.negative_curves[i]
        return total

    def verify(self, s: SurfaceModel, original: DivClass) -> None:
        """Re-check all certificate conditions; raises InternalError on failure."""
        if not is_nef(s, self.positive):
            raise InternalError("positive part is not nef")
        rows = curve_rows(s)
        for i, c in self.negative_coeffs:
            if c <= 0:
                raise InternalError("nonpositive coefficient in negative part")
        support = [i for i, _ in self.negative_coeffs]
        for i in support:
            if Fraction(
                sum(r * n for r, n in zip(rows[i], self.positive.nums)),
                self.positive.den,
            ) != 0:
                raise InternalError("positive part not orthogonal to its support")
        if support and not is_negative_definite(s, support):
            raise InternalError("support of negative part not negative definite")
        if self.positive + self.negative_part(s) != original:
            raise InternalError("P + N does not reconstruct the input class")


def _augmented_support(
    s: SurfaceModel, d0: DivClass, d1: Optional[DivClass]
) -> tuple[list[int], list[Fraction], list[Fraction], DivClass, DivClass]:
    """Support loop for the class d0 + eps*d1 over the ordered field Q(eps).

    Returns (support order, value coefficients, slope coefficients, P0, P1)
    with P(eps) = P0 + eps*P1 and N(eps) = sum (a0_i + eps*a1_i) N_i.
    With d1 = None this is the plain decomposition of d0.  Raises
    DomainError when the input cannot be pseudo-effective (support stops
    being negative definite).
    """
    rows = curve_rows(s)
    gram = curve_gram(s)
    ncurves = len(rows)
    zero = DivClass((0,) * s.rank)
    d1_eff = d1 if d1 is not None else zero

    support: list[int] = []
    in_support = set()
    a0: list[Fraction] = []
    a1: list[Fraction] = []
    p0, p1 = d0, d1_eff
    for _ in range(ncurves + 1):
        v0 = pair_rows(rows, p0)
        v1 = pair_rows(rows, p1)
        entering = None
        for j in range(ncurves):
            if j in in_support:
                continue
            if v0[j] < 0 or (v0[j] == 0 and v1[j] < 0):
                entering = j
                break
        if entering is None:
            return support, a0, a1, p0, p1
        support.append(entering)
        in_support.add(entering)
        sub = [[gram[i][j] for j in support] for i in support]
        if not is_negative_definite_gram(sub):
            raise DomainError(
                "class is not pseudo-effective: candidate negative-part support "
                "is not negative definite"
            )
        rhs0 = [Fraction(x, d0.den) for x in pair_rows([rows[i] for i in support], d0)]
        rhs1 = [
            Fraction(x, d1_eff.den)
            for x in pair_rows([rows[i] for i in support], d1_eff)
        ]
        sols = solve_exact(sub, [rhs0, rhs1])
        if sols is None:
            raise InternalError("negative definite Gram matrix was singular")
        a0, a1 = sols
        p0, p1 = d0, d1_eff
        for i, idx in enumerate(support):
            if a0[i] != 0:
                p0 = p0 - a0[i] * s.negative_curves[idx]
            if a1[i] != 0:
                p1 = p1 - a1[i] * s.negative_curves[idx]
    raise InternalError("support augmentation failed to terminate")


def _psef_failure_detail(s: SurfaceModel, d: DivClass) -> str:
    """Name a violated effective-cone functional when cheaply computable."""
    try:
        from .lattice import eff_facets

        facets, lin = eff_facets(s)
        for f in facets:
            if sum(x * n for x, n in zip(f, d.nums)) < 0:
                return f"violated effective-cone facet {list(f)}"
        for l in lin:
            if sum(x * n for x, n in zip(l, d.nums)) != 0:
                return f"violated effective-cone lineality {list(l)}"
        return "certificate construction failed"
    except ResourceLimitError:
        return "certificate construction failed (facet list too large to name one)"


def zariski_decompose(s: SurfaceModel, d: DivClass) -> ZariskiPair:
    """The unique Zariski decomposition of a pseudo-effective rational class."""
    if d.dim != s.rank:
        raise InputError("divisor class rank does not match the surface")
    support, coeffs, _, positive, _ = _augmented_support(s, d, None)
    if any(c < 0 for c in coeffs):
        raise DomainError(
            "class is not pseudo-effective: negative-part solution has a "
            f"negative coefficient; {_psef_failure_detail(s, d)}"
        )
    if any(x < 0 for x in pair_rows(gen_rows(s), positive)):
        raise DomainError(
            "class is not pseudo-effective: candidate positive part is not nef; "
            + _psef_failure_detail(s, d)
        )
    pair = ZariskiPair(
        positive,
        tuple((i, c) for i, c in zip(support, coeffs) if c > 0),
    )
    pair.verify(s, d)
    return pair


def null_set(s: SurfaceModel, p: DivClass) -> ChamberSupport:
    """Indices of negative curves orthogonal to the nef class p.

    For big nef p this is the support of p's Zariski chamber; for nef
    classes on the boundary of the big cone it may fail to be negative
    definite and carries no chamber meaning.
    """
    values = pair_rows(gen_rows(s), p)
    if any(x < 0 for x in values):
        raise DomainError("null set is only defined for nef classes")
    curve_values = pair_rows(curve_rows(s), p)
    return ChamberSupport(tuple(i for i, v in enumerate(curve_values) if v == 0))


def neg_support(s: SurfaceModel, d: DivClass) -> ChamberSupport:
    """Support of the negative part (strictly positive coefficients only)."""
    return zariski_decompose(s, d).support()


def chamber_certificate(
    s: SurfaceModel, indices: Sequence[int]
) -> Optional[DivClass]:
    """A big nef class P with Null(P) exactly the given negative curves.

    Built as A + sum c_i N_i with A an interior nef point; returns None when
    no such class exists (the set is then not a genuine chamber support).
    """
    idx = sorted(set(indices))
    ample = interior_nef_point(s)
    if not idx:
        p = ample
    else:
        gram = curve_gram(s)
        sub = [[gram[i][j] for j in idx] for i in idx]
        rhs = [
            Fraction(x) for x in pair_rows([curve_rows(s)[i] for i in idx], ample)
        ]
        sols = solve_exact(sub, [rhs])
        if sols is None:
            return None
        p = ample
        for i, c in zip(idx, sols[0]):
            p = p - c * s.negative_curves[i]
    if any(x < 0 for x in pair_rows(gen_rows(s), p)):
        return None
    curve_values = pair_rows(curve_rows(s), p)
    chosen = set(idx)
    for j, v in enumerate(curve_values):
        if (v == 0) != (j in chosen):
            return None
    return p


@lru_cache(maxsize=None)
def enumerate_chamber_supports(s: SurfaceModel) -> tuple[ChamberSupport, ...]:
    """All Zariski chamber supports, including the empty (nef) one.

    Depth-first growth over negative-definite subsets (principal submatrices
    of negative definite matrices are negative definite, so pruning is
    sound), each candidate confirmed by an explicit nef certificate class.
    """
    gram = curve_gram(s)
    n = len(gram)
    found: list[tuple[int, ...]] = []

    def grow(current: list[int], start: int) -> None:
        found.append(tuple(current))
        for j in range(start, n):
            candidate = current + [j]
            sub = [[gram[a][b] for b in candidate] for a in candidate]
            if is_negative_definite_gram(sub):
                grow(candidate, j + 1)

    grow([], 0)
    supports = []
    for idx in found:
        if chamber_certificate(s, idx) is not None:
            supports.append(ChamberSupport(idx))
    supports.sort(key=lambda c: (len(c.indices), c.indices))
    return tuple(supports)

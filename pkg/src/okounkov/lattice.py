"""Exact rational linear algebra over a Neron-Severi-type lattice.

Divisor classes are stored as an integer numerator vector with one common
positive denominator, so intersection products and cone tests reduce to
integer arithmetic with a single normalization at the end.  Rational
polyhedral cones are converted between generator and facet descriptions by
an exact double-description algorithm; everything stays in arbitrary
precision integers, no floating point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import DomainError, InputError, InternalError, ResourceLimitError

# All scalar arithmetic is exact; Fraction already has the canonical-form
# invariants required (reduced, positive denominator).
Rat = Fraction

# Cap on intermediate ray counts in double description.  Ranks here are
# small (<= ~16) but ray counts can explode for large catalogs; computations
# that would exceed the cap fail fast instead of appearing to hang.
DEFAULT_RAY_LIMIT = 8192

IntVec = tuple[int, ...]


def _gcd_seq(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = math.gcd(g, x)
        if g == 1:
            return 1
    return g


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _primitive_vec(v: Sequence[int]) -> IntVec:
    g = _gcd_seq(v)
    if g == 0:
        raise InputError("zero vector has no primitive representative")
    return tuple(x // g for x in v)


# --------------------------------------------------------------------------
# divisor classes
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class DivClass:
    """A rational divisor class: integer numerators over one denominator."""

    nums: IntVec
    den: int = 1

    def __post_init__(self):
        if self.den == 0:
            raise InputError("divisor class denominator must be nonzero")
        nums = tuple(int(x) for x in self.nums)
        den = int(self.den)
        if den < 0:
            nums = tuple(-x for x in nums)
            den = -den
        g = math.gcd(_gcd_seq(nums), den)
        if g > 1:
            nums = tuple(x // g for x in nums)
            den //= g
        object.__setattr__(self, "nums", nums)
        object.__setattr__(self, "den", den)

    @classmethod
    def of(cls, values: Iterable[int | Fraction]) -> "DivClass":
        fracs = [Fraction(v) for v in values]
        den = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        return cls(tuple(f.numerator * (den // f.denominator) for f in fracs), den)

    @property
    def dim(self) -> int:
        return len(self.nums)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self.den) for n in self.nums)

    def is_zero(self) -> bool:
        return all(n == 0 for n in self.nums)

    def is_integral(self) -> bool:
        return self.den == 1

    def __add__(self, other: "DivClass") -> "DivClass":
        if self.dim != other.dim:
            raise InputError("divisor classes of different rank")
        return DivClass(
            tuple(a * other.den + b * self.den for a, b in zip(self.nums, other.nums)),
            self.den * other.den,
        )

    def __sub__(self, other: "DivClass") -> "DivClass":
        return self + (-other)

    def __neg__(self) -> "DivClass":
        return DivClass(tuple(-n for n in self.nums), self.den)

    def __mul__(self, c: int | Fraction):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        c = Fraction(c)
        return DivClass(
            tuple(n * c.numerator for n in self.nums), self.den * c.denominator
        )

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if self.den == 1:
            return f"DivClass({list(self.nums)})"
        return f"DivClass({list(self.nums)}, den={self.den})"


def primitive_integral(v: DivClass) -> DivClass:
    """The unique positive multiple of v with coprime integer coordinates."""
    if v.is_zero():
        raise InputError("zero class has no primitive representative")
    return DivClass(_primitive_vec(v.nums), 1)


def scaling_ratio(num: DivClass, of: DivClass) -> Fraction:
    """The positive rational c with num = c * of (classes must be parallel)."""
    for a, b in zip(num.nums, of.nums):
        if b != 0:
            return Fraction(a * of.den, b * num.den)
    raise InputError("cannot take ratio against the zero class")


# --------------------------------------------------------------------------
# exact matrix helpers (lists of Fractions or ints, small sizes)
# --------------------------------------------------------------------------


def solve_exact(
    matrix: Sequence[Sequence[int | Fraction]],
    rhs_cols: Sequence[Sequence[int | Fraction]],
) -> Optional[list[list[Fraction]]]:
    """Solve matrix @ x = rhs for each right-hand-side column.

    Returns one solution vector per column, or None when the matrix is
    singular.  Plain fraction-free-ish Gaussian elimination; sizes here are
    at most the Picard rank.
    """
    n = len(matrix)
    if n == 0:
        return [[] for _ in rhs_cols]
    work = [
        [Fraction(matrix[i][j]) for j in range(n)]
        + [Fraction(col[i]) for col in rhs_cols]
        for i in range(n)
    ]
    m = n + len(rhs_cols)
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] != 0), None)
        if piv is None:
            return None
        work[col], work[piv] = work[piv], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[col])]
    return [[work[i][n + k] for i in range(n)] for k in range(len(rhs_cols))]


def invert_exact(matrix: Sequence[Sequence[int | Fraction]]) -> Optional[list[list[Fraction]]]:
    n = len(matrix)
    ident = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    cols = solve_exact(matrix, ident)
    if cols is None:
        return None
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(map(int, r)) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def matrix_rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    work = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(work[0]) if work else 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = 1 / work[rank][col]
        work[rank] = [x * inv for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col] != 0:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def signature_symmetric(rows: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """Signature (n_plus, n_minus, n_zero) of a symmetric matrix.

    Congruence diagonalization: exact, and valid by Sylvester's law of
    inertia.  Zero diagonals are repaired by adding a row/column pair.
    """
    n = len(rows)
    a = [[Fraction(x) for x in r] for r in rows]
    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            swap = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if swap is not None:
                for r in range(n):
                    a[r][k], a[r][swap] = a[r][swap], a[r][k]
                a[k], a[swap] = a[swap], a[k]
            else:
                other = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if other is None:
                    continue  # row/column k is identically zero from here on
                for r in range(n):
                    a[r][k] += a[r][other]
                a[k] = [a[k][c] + a[other][c] for c in range(n)]
        piv = a[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        # paired row/column elimination; the matrix stays symmetric, so the
        # column half amounts to zeroing the pivot row past the diagonal
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f != 0:
                a[i] = [a[i][c] - f * a[k][c] for c in range(n)]
        for j in range(k + 1, n):
            a[k][j] = Fraction(0)
    return pos, neg, n - pos - neg


def is_negative_definite_gram(gram: Sequence[Sequence[int]]) -> bool:
    """Leading-principal-minor test: signs must alternate starting negative."""
    n = len(gram)
    for k in range(1, n + 1):
        minor = det_int([row[:k] for row in gram[:k]])
        if minor == 0 or (minor > 0) != (k % 2 == 0):
            return False
    return True


# --------------------------------------------------------------------------
# intersection form and surface model
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class IntersectionForm:
    """Symmetric integer intersection matrix of signature (1, rank-1)."""

    rows: tuple[IntVec, ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InputError("intersection matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise InputError(
                        f"intersection matrix not symmetric at ({i},{j})"
                    )
        object.__setattr__(self, "rows", rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def apply(self, nums: Sequence[int]) -> IntVec:
        """Matrix-vector product over the integers."""
        return tuple(_dot(row, nums) for row in self.rows)

    def signature(self) -> tuple[int, int, int]:
        return signature_symmetric(self.rows)


@dataclass(frozen=True)
class SurfaceModel:
    """Intersection form, effective-cone generators, negative curves, flag.

    Validation happens at construction: any SurfaceModel in existence has
    Hodge-index signature, a big and nef flag curve, and a clean list of
    primitive integral negative curves contained in the generators.
    """

    rank: int
    labels: tuple[str, ...]
    form: IntersectionForm
    eff_generators: tuple[DivClass, ...]
    flag_curve: DivClass
    negative_curves: tuple[DivClass, ...]

    def __post_init__(self):
        if self.form.rank != self.rank:
            raise InputError("intersection matrix size differs from rank")
        if len(self.labels) != self.rank:
            raise InputError("label count differs from rank")
        sig = self.form.signature()
        if sig != (1, self.rank - 1, 0):
            raise InputError(
                f"intersection form has signature {sig}, expected (1, {self.rank - 1}, 0)"
            )
        if not self.eff_generators:
            raise InputError("need at least one effective-cone generator")
        for g in self.eff_generators + (self.flag_curve,) + self.negative_curves:
            if g.dim != self.rank:
                raise InputError("divisor class of wrong rank in surface data")
            if not g.is_integral():
                raise InputError("surface data classes must be integral")
        if any(g.is_zero() for g in self.eff_generators):
            raise InputError("zero class among effective generators")
        if matrix_rank([g.nums for g in self.eff_generators]) != self.rank:
            raise InputError("effective generators do not span the lattice")
        c = self.flag_curve
        if self._pair_int(c, c) <= 0:
            raise InputError("flag curve must have positive self-intersection")
        for g in self.eff_generators:
            if self._pair_int(c, g) < 0:
                raise InputError("flag curve is not nef against the generators")
        seen = set()
        gens = set(self.eff_generators)
        for n in self.negative_curves:
            if self._pair_int(n, n) >= 0:
                raise InputError("negative curve with nonnegative self-intersection")
            if n.nums != _primitive_vec(n.nums):
                raise InputError("negative curves must be primitive")
            if n in seen:
                raise InputError("duplicate negative curve")
            if n not in gens:
                raise InputError("negative curve missing from effective generators")
            seen.add(n)
        for i, a in enumerate(self.negative_curves):
            for b in self.negative_curves[:i]:
                if self._pair_int(a, b) < 0:
                    raise InputError(
                        "distinct negative curves with negative intersection"
                    )

    def _pair_int(self, a: DivClass, b: DivClass) -> int:
        return _dot(self.form.apply(a.nums), b.nums)

    @classmethod
    def create(
        cls,
        labels: Sequence[str],
        form_rows: Sequence[Sequence[int]],
        eff_generators: Sequence[Sequence[int] | DivClass],
        flag_curve: Sequence[int] | DivClass,
        negative_curves: Optional[Sequence[Sequence[int] | DivClass]] = None,
    ) -> "SurfaceModel":
        form = IntersectionForm(tuple(tuple(r) for r in form_rows))

        def as_class(v) -> DivClass:
            return v if isinstance(v, DivClass) else DivClass(tuple(int(x) for x in v))

        gens = tuple(as_class(g) for g in eff_generators)
        flag = as_class(flag_curve)
        if negative_curves is None:
            negs = tuple(
                g for g in gens if _dot(form.apply(g.nums), g.nums) < 0
            )
        else:
            negs = tuple(as_class(n) for n in negative_curves)
        return cls(len(labels), tuple(labels), form, gens, flag, negs)


# cached per-model integer pairing rows -------------------------------------


@lru_cache(maxsize=None)
def curve_rows(s: SurfaceModel) -> tuple[IntVec, ...]:
    """form @ N for each negative curve N (integer functionals)."""
    return tuple(s.form.apply(n.nums) for n in s.negative_curves)


@lru_cache(maxsize=None)
def gen_rows(s: SurfaceModel) -> tuple[IntVec, ...]:
    return tuple(s.form.apply(g.nums) for g in s.eff_generators)


@lru_cache(maxsize=None)
def flag_row(s: SurfaceModel) -> IntVec:
    return s.form.apply(s.flag_curve.nums)


@lru_cache(maxsize=None)
def curve_gram(s: SurfaceModel) -> tuple[IntVec, ...]:
    rows = curve_rows(s)
    return tuple(
        tuple(_dot(rows[i], n.nums) for n in s.negative_curves)
        for i in range(len(s.negative_curves))
    )


def pair_rows(rows: Sequence[IntVec], v: DivClass) -> list[int]:
    """Numerators of row.v for each functional row; denominator is v.den."""
    return [_dot(row, v.nums) for row in rows]


def intersect(s: SurfaceModel, a: DivClass, b: DivClass) -> Fraction:
    """Exact intersection product a.b on the surface."""
    if a.dim != s.rank or b.dim != s.rank:
        raise InputError("divisor class rank does not match the surface")
    return Fraction(_dot(s.form.apply(a.nums), b.nums), a.den * b.den)


def self_intersection(s: SurfaceModel, a: DivClass) -> Fraction:
    return intersect(s, a, a)


def is_nef(s: SurfaceModel, v: DivClass) -> bool:
    """Nonnegative against every effective generator."""
    return all(x >= 0 for x in pair_rows(gen_rows(s), v))


def is_negative_definite(s: SurfaceModel, subset: Sequence[int]) -> bool:
    """Whether the chosen negative curves have negative definite Gram matrix."""
    idx = list(subset)
    if any(i < 0 or i >= len(s.negative_curves) for i in idx):
        raise InputError("negative-curve index out of range")
    gram = curve_gram(s)
    sub = [[gram[i][j] for j in idx] for i in idx]
    return is_negative_definite_gram(sub)


# --------------------------------------------------------------------------
# cones and double description
# --------------------------------------------------------------------------


def extreme_rays(
    ineqs: Sequence[IntVec], dim: int, ray_limit: int = DEFAULT_RAY_LIMIT
) -> tuple[list[IntVec], list[IntVec]]:
    """Extremal rays and lineality basis of {x : a.x >= 0 for all a}.

    Incremental double description.  The cone starts as all of R^dim
    (pure lineality); each inequality either consumes a lineality dimension
    or splits the current rays, with new rays produced only for adjacent
    positive/negative pairs (combinatorial adjacency test).
    """
    rows: list[IntVec] = []
    seen_rows = set()
    for a in ineqs:
        if len(a) != dim:
            raise InputError("inequality of wrong dimension")
        if all(x == 0 for x in a):
            continue
        p = _primitive_vec(a)
        if p not in seen_rows:
            seen_rows.add(p)
            rows.append(p)

    lin: list[IntVec] = [
        tuple(1 if i == j else 0 for i in range(dim)) for j in range(dim)
    ]
    rays: list[IntVec] = []
    zerosets: list[set[int]] = []
    processed: list[IntVec] = []

    for a in rows:
        lvals = [_dot(a, v) for v in lin]
        pivot = next((k for k, x in enumerate(lvals) if x != 0), None)
        if pivot is not None:
            v0, av0 = lin[pivot], lvals[pivot]
            if av0 < 0:
                v0, av0 = tuple(-x for x in v0), -av0
            new_lin = []
            for k, v in enumerate(lin):
                if k == pivot:
                    continue
                if lvals[k] == 0:
                    new_lin.append(v)
                else:
                    new_lin.append(
                        _primitive_vec(
                            tuple(av0 * x - lvals[k] * y for x, y in zip(v, v0))
                        )
                    )
            new_rays = []
            for r, zs in zip(rays, zerosets):
                ar = _dot(a, r)
                if ar == 0:
                    new_rays.append(r)
                    zs.add(len(processed))
                else:
                    new_rays.append(
                        _primitive_vec(
                            tuple(av0 * x - ar * y for x, y in zip(r, v0))
                        )
                    )
                    zs.add(len(processed))
            rays = new_rays
            rays.append(v0)
            zerosets.append(set(range(len(processed))))
            lin = new_lin
            processed.append(a)
            continue

        vals = [_dot(a, r) for r in rays]
        if all(v >= 0 for v in vals):
            for zs, v in zip(zerosets, vals):
                if v == 0:
                    zs.add(len(processed))
            processed.append(a)
            continue

        pos = [i for i, v in enumerate(vals) if v > 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        min_tight = dim - len(lin) - 2
        combos: list[tuple[IntVec, set[int]]] = []
        for i in pos:
            for j in neg:
                common = zerosets[i] & zerosets[j]
                if len(common) < min_tight:
                    continue
                adjacent = True
                for k, zs in enumerate(zerosets):
                    if k != i and k != j and common <= zs:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vec = _primitive_vec(
                    tuple(
                        vals[i] * y - vals[j] * x
                        for x, y in zip(rays[i], rays[j])
                    )
                )
                combos.append((vec, common | {len(processed)}))
        keep = pos + zero
        rays = [rays[i] for i in keep]
        zerosets = [
            zerosets[i] | ({len(processed)} if vals[i] == 0 else set())
            for i in keep
        ]
        for vec, zs in combos:
            rays.append(vec)
            zerosets.append(zs)
        processed.append(a)
        if len(rays) > ray_limit:
            raise ResourceLimitError(
                f"double description exceeded {ray_limit} rays; "
                "this cone is too large for exact enumeration"
            )

    return sorted(set(rays)), sorted(lin)


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone given by generators; facets computed lazily.

    Facet functionals use the plain coordinate pairing and satisfy
    "inside <=> value >= 0"; lineality functionals (present only for
    non-full-dimensional duals) must vanish.
    """

    generators: tuple[DivClass, ...]
    known_facets: Optional[tuple[IntVec, ...]] = None

    def __post_init__(self):
        gens = tuple(
            primitive_integral(g) for g in self.generators if not g.is_zero()
        )
        if not gens:
            raise InputError("cone needs at least one nonzero generator")
        object.__setattr__(self, "generators", tuple(dict.fromkeys(gens)))

    @property
    def dim_ambient(self) -> int:
        return self.generators[0].dim


@lru_cache(maxsize=None)
def cone_facet_data(c: Cone) -> tuple[tuple[IntVec, ...], tuple[IntVec, ...]]:
    """(facet functionals, lineality functionals) describing c by inequalities."""
    if c.known_facets is not None:
        return c.known_facets, ()
    rays, lin = extreme_rays([g.nums for g in c.generators], c.dim_ambient)
    return tuple(rays), tuple(lin)


def cone_contains(c: Cone, v: DivClass) -> bool:
    """Membership test via the facet description (zero class always inside)."""
    if v.dim != c.dim_ambient:
        raise InputError("class rank does not match cone")
    facets, lin = cone_facet_data(c)
    return all(_dot(f, v.nums) >= 0 for f in facets) and all(
        _dot(l, v.nums) == 0 for l in lin
    )


def dual_cone(s: SurfaceModel, c: Cone) -> Cone:
    """The cone of classes pairing >= 0 with every generator of c.

    Output generators are primitive integral extremal rays; when c is
    full-dimensional the input functionals that define facets are attached
    so membership tests need no further conversion.
    """
    ineqs = [s.form.apply(g.nums) for g in c.generators]
    rays, lin = extreme_rays(ineqs, s.rank)
    gens = [DivClass(r) for r in rays]
    for l in lin:
        gens.append(DivClass(l))
        gens.append(DivClass(tuple(-x for x in l)))
    if not gens:
        raise InputError("dual cone is trivial")
    facets: Optional[tuple[IntVec, ...]] = None
    if not lin:
        keep = []
        for row in dict.fromkeys(_primitive_vec(a) for a in ineqs):
            tight = [r for r in rays if _dot(row, r) == 0]
            if tight and matrix_rank(tight) == s.rank - 1:
                keep.append(row)
        facets = tuple(keep)
    return Cone(tuple(gens), known_facets=facets)


@lru_cache(maxsize=None)
def eff_cone(s: SurfaceModel) -> Cone:
    return Cone(s.eff_generators)


@lru_cache(maxsize=None)
def nef_cone(s: SurfaceModel) -> Cone:
    return dual_cone(s, eff_cone(s))


@lru_cache(maxsize=None)
def eff_facets(s: SurfaceModel) -> tuple[tuple[IntVec, ...], tuple[IntVec, ...]]:
    return cone_facet_data(eff_cone(s))


@lru_cache(maxsize=None)
def interior_nef_point(s: SurfaceModel) -> DivClass:
    """An integral class strictly positive against every effective generator."""
    total = DivClass((0,) * s.rank)
    for g in nef_cone(s).generators:
        total = total + g
    if any(x <= 0 for x in pair_rows(gen_rows(s), total)):
        raise InternalError("nef cone has no interior point; model degenerate")
    return primitive_integral(total)

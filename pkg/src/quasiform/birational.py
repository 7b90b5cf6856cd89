"""Birational geometry of quasilinear quadrics.

Decision procedures for domination in essential dimension, stable
equivalence, and birational equivalence, plus two constructions with exact
symbolic certificates: the ruling of a quadric whose first Witt index
exceeds 1, and the regularity report for a quadric as a scheme.

The ruling of X with first Witt index r writes X birationally as
Y x P^{r-1}, where Y drops the last r-1 coefficients: the isotropic
vectors of X over k(Y) form an r-dimensional space with basis s_1,...,s_r,
giving phi(y, [c_1:...:c_r]) = [sum c_i s_i(y)]; composing the basis with a
projection pi: X -> Y and solving for fiber functions f_i recovers the
generic point of X exactly, which is the certificate that phi has an
inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from ._elim import nullspace
from .errors import (
    DivisionByZero,
    EmbeddingFailure,
    InconsistencyDetected,
    NotRuled,
)
from .fieldtower import FieldTower, TowerElem, fresh_names
from .forms import QuasilinearForm, is_anisotropic, total_index
from .gf2poly import Poly, RatFn, poly_divmod_exact, poly_lcm
from .maps import RationalMap, projectively_equal
from .splitting import (
    essential_dimension,
    first_witt_index,
    function_field,
    splitting_pattern,
    total_index_over,
)
from .sqlinalg import isotropic_kernel_basis, span_saturate, tower_linear_solve


def is_isotropic_over(p: QuasilinearForm, q: QuasilinearForm) -> bool:
    """Whether p acquires a new isotropic vector over the function field
    of q (for anisotropic p: whether p becomes isotropic there)."""
    if p.field != q.field:
        raise ValueError("forms live over different base fields")
    ff = function_field(q)
    return total_index_over(p, ff.tower) > total_index(p)


class DominationVerdict(Enum):
    """Ordering of two quadrics by essential dimension and isotropy."""

    X_BELOW_Y = "X<Y"
    Y_BELOW_X = "Y<X"
    EQUIVALENT = "equivalent"
    INCOMPARABLE = "incomparable"


def essdim_domination_check(X: QuasilinearForm,
                            Y: QuasilinearForm) -> DominationVerdict:
    """Compare two anisotropic forms by mutual isotropy over function
    fields, cross-checking the computed essential dimensions.

    When Y is isotropic over k(X), the essential dimension of X cannot
    exceed that of Y, with equality exactly when X is also isotropic over
    k(Y); the check raises InconsistencyDetected if the computed data ever
    contradict this, which would be a library bug rather than a possible
    mathematical outcome.
    """
    es_x = essential_dimension(X)
    es_y = essential_dimension(Y)
    y_over_x = is_isotropic_over(Y, X)
    x_over_y = is_isotropic_over(X, Y)
    if y_over_x:
        if es_x > es_y or (es_x == es_y) != x_over_y:
            raise InconsistencyDetected(
                "essential dimensions contradict the isotropy data")
    if x_over_y:
        if es_y > es_x or (es_y == es_x) != y_over_x:
            raise InconsistencyDetected(
                "essential dimensions contradict the isotropy data")
    if y_over_x and x_over_y:
        return DominationVerdict.EQUIVALENT
    if y_over_x:
        return DominationVerdict.X_BELOW_Y
    if x_over_y:
        return DominationVerdict.Y_BELOW_X
    return DominationVerdict.INCOMPARABLE


def decide_stably_equivalent(X: QuasilinearForm, Y: QuasilinearForm) -> bool:
    """Stable equivalence: each form is isotropic over the other's
    function field."""
    return is_isotropic_over(Y, X) and is_isotropic_over(X, Y)


def decide_birational(X: QuasilinearForm, Y: QuasilinearForm) -> bool:
    """Birational equivalence of the projective quadrics: stable
    equivalence plus equal dimension (both reduce to a common quadric
    with first Witt index 1 times projective spaces, whose dimensions
    then match)."""
    return X.dim == Y.dim and decide_stably_equivalent(X, Y)


@dataclass(frozen=True)
class FiberMap:
    """Projection of a quadric onto a subquadric together with the fiber
    coordinates of a product decomposition: the data of a map into
    (quadric of Y) x P^{r-1}."""

    pi: RationalMap
    fibers: Tuple[TowerElem, ...]


def _cleared_vector(vec: Sequence[TowerElem]) -> List[TowerElem]:
    """The vector scaled by the least common multiple of all coefficient
    denominators, making every entry polynomial."""
    tower = vec[0].tower
    lcm = Poly.one(tower.base_vars)
    for e in vec:
        for fn in e.coeffs.values():
            if not fn.den.is_one:
                lcm = poly_lcm(lcm, fn.den)
    if lcm.is_one:
        return list(vec)
    scalar = tower.scalar(lcm)
    return [e * scalar for e in vec]


def _pull_basis(ff_y, s_basis: Sequence[Sequence[TowerElem]],
                pi_coords: Sequence[TowerElem],
                K: FieldTower) -> List[List[TowerElem]]:
    """Pull the isotropic basis back through the projection, avoiding
    fractions: each returned vector equals the substituted s_i times a
    nonzero scalar of K.

    The substitution sends the function-field coordinates of Y to the
    ratios pi_j/pi_1; instead of dividing, every entry tracks the needed
    power of the (denominator-cleared) leading coordinate and the whole
    vector is rescaled by the largest one.  The construction is
    deterministic, so certificate verification can recompute it exactly.
    """
    T_y = ff_y.tower
    pi_poly = _cleared_vector(pi_coords)
    d = pi_poly[0]
    images = dict(zip(ff_y.fresh_names, pi_poly[1:]))
    uvars = set(ff_y.fresh_names[:-1])
    gen_name = ff_y.fresh_names[-1]

    power_memo: Dict[Tuple[str, int], TowerElem] = {}

    def power(name: str, base: TowerElem, exp: int) -> TowerElem:
        key = (name, exp)
        got = power_memo.get(key)
        if got is None:
            got = base ** exp
            power_memo[key] = got
        return got

    gen_images: List[Tuple[TowerElem, int]] = []
    for name, _ in T_y.gens:
        if name == gen_name:
            gen_images.append((images[name], 1))
        else:
            gen_images.append((K.gen_by_name(name), 0))

    def homogenize(e: TowerElem) -> Tuple[TowerElem, int]:
        # entry image = N / d^k with polynomial N; returns (N, k)
        parts: List[Tuple[TowerElem, int]] = []
        top = 0
        for mask, fn in e.coeffs.items():
            gen_factor = K.one()
            gen_power = 0
            m = mask
            i = 0
            while m:
                if m & 1:
                    base, dpow = gen_images[i]
                    gen_factor = gen_factor * base
                    gen_power += dpow
                m >>= 1
                i += 1
            groups: Dict[Tuple[Tuple[str, int], ...], List] = {}
            for mono in fn.num.terms:
                assigned = tuple((n, x) for n, x in mono if n in uvars)
                rest = tuple((n, x) for n, x in mono if n not in uvars)
                groups.setdefault(assigned, []).append(rest)
            for assigned, rests in groups.items():
                part = K.scalar(Poly(rests, K.base_vars))
                k = gen_power
                for n, x in assigned:
                    part = part * power(n, images[n], x)
                    k += x
                parts.append((part * gen_factor, k))
                top = max(top, k)
        total = K.zero()
        for part, k in parts:
            total = total + part * power("~d", d, top - k)
        return total, top

    out: List[List[TowerElem]] = []
    for s in s_basis:
        entries = _cleared_vector(list(s))
        numerators: List[TowerElem] = []
        powers: List[int] = []
        for e in entries:
            n_elem, k = homogenize(e)
            numerators.append(n_elem)
            powers.append(k)
        kmax = max(powers)
        out.append([n * power("~d", d, kmax - k)
                    for n, k in zip(numerators, powers)])
    return out


class RulingCertificate:
    """Exact identity behind a ruling decomposition.

    Pulling the isotropic basis s_1,...,s_r back through the projection pi
    and recombining with the fiber functions f_i returns the generic point
    g of X up to the stored nonzero scale:

        f_1*(s_1 o pi) + ... + f_r*(s_r o pi) = scale * g.

    verify() recomputes the composition from scratch, including the
    isotropy of every s_i and of pi.
    """

    __slots__ = ("X", "Y", "s_basis", "pi", "fibers", "scale")

    def __init__(self, X: QuasilinearForm, Y: QuasilinearForm,
                 s_basis: Tuple[Tuple[TowerElem, ...], ...],
                 pi: RationalMap, fibers: Tuple[TowerElem, ...],
                 scale: TowerElem):
        self.X = X
        self.Y = Y
        self.s_basis = s_basis
        self.pi = pi
        self.fibers = fibers
        self.scale = scale

    def verify(self) -> bool:
        if self.scale.is_zero:
            return False
        ff_y = function_field(self.Y)
        x_over_y = self.X.over(ff_y.tower)
        for s in self.s_basis:
            if any(c.tower != ff_y.tower for c in s):
                return False
            if not x_over_y.evaluate(s).is_zero:
                return False
        ff_x = function_field(self.X)
        if self.pi.source_field != ff_x.tower or not self.pi.verify():
            return False
        if self.pi.coords[0].is_zero:
            return False
        try:
            pulled = _pull_basis(ff_y, self.s_basis, self.pi.coords,
                                 ff_x.tower)
        except (DivisionByZero, EmbeddingFailure, KeyError, ValueError):
            return False
        g = ff_x.generic_point
        for j in range(self.X.dim):
            combo = ff_x.tower.zero()
            for f, t in zip(self.fibers, pulled):
                combo = combo + f * t[j]
            if combo != self.scale * g[j]:
                return False
        return True

    def __repr__(self) -> str:
        return (f"RulingCertificate({self.X} ~ {self.Y} x P^"
                f"{len(self.fibers) - 1})")


@dataclass(frozen=True)
class RulingDecomposition:
    """A verified birational decomposition X ~ Y x P^{r-1}.

    `phi` maps the product into X by combining the isotropic basis with
    projective fiber coordinates; `psi` is the inverse data (projection to
    Y plus fiber functions); `certificate` proves phi(psi(x)) = scale * x.
    """

    X: QuasilinearForm
    r: int
    Y: QuasilinearForm
    s_basis: Tuple[Tuple[TowerElem, ...], ...]
    phi: RationalMap
    psi: FiberMap
    certificate: RulingCertificate

    def verify(self) -> bool:
        if self.r < 2 or self.Y.dim != self.X.dim - (self.r - 1):
            return False
        if len(self.s_basis) != self.r:
            return False
        if not self.phi.verify() or not self.psi.pi.verify():
            return False
        return self.certificate.verify()


def construct_ruling(X: QuasilinearForm) -> RulingDecomposition:
    """Decompose the quadric of X birationally as Y x P^{r-1}, where
    r = first_witt_index(X) and Y drops the last r-1 coefficients.

    Raises NotRuled when r = 1 (the decomposition would be trivial and no
    ruling exists along this route).  Every step is verified exactly;
    impossible failures raise InconsistencyDetected.
    """
    r = first_witt_index(X)
    if r < 2:
        raise NotRuled("first Witt index is 1")
    Y = X.subform(range(X.dim - (r - 1)))

    ff_y = function_field(Y)
    s_lists = isotropic_kernel_basis(X, ff_y.tower)
    if len(s_lists) != r:
        raise InconsistencyDetected(
            "isotropic space over the subquadric has the wrong dimension")
    s_basis = tuple(tuple(s) for s in s_lists)

    ff_x = function_field(X)
    K = ff_x.tower
    pi_candidates = isotropic_kernel_basis(Y, K)
    if not pi_candidates:
        raise InconsistencyDetected(
            "subform stayed anisotropic over the function field")
    pi_coords = pi_candidates[0]
    if pi_coords[0].is_zero:
        raise InconsistencyDetected(
            "projection chart degenerates: leading coordinate is zero")
    pi = RationalMap(K, pi_coords, Y)

    pulled = _pull_basis(ff_y, s_basis, pi_coords, K)
    g = list(ff_x.generic_point)
    fibers = tower_linear_solve(pulled, g)
    if fibers is None:
        raise InconsistencyDetected(
            "generic point is outside the pulled-back isotropic space")
    scale = K.one()
    for j in range(X.dim):
        combo = K.zero()
        for f, t in zip(fibers, pulled):
            combo = combo + f * t[j]
        if combo != g[j]:
            raise InconsistencyDetected("fiber solve failed to re-verify")
    certificate = RulingCertificate(X, Y, s_basis, pi, tuple(fibers), scale)

    fiber_names = fresh_names(ff_y.tower, "t", r - 1)
    product_field = ff_y.tower.extend_transcendental(fiber_names)
    ts = [product_field.var(n) for n in fiber_names]
    phi_coords: List[TowerElem] = []
    for j in range(X.dim):
        acc = ff_y.tower.embed(s_basis[0][j], product_field)
        for i in range(1, r):
            acc = acc + ts[i - 1] * ff_y.tower.embed(s_basis[i][j],
                                                     product_field)
        phi_coords.append(acc)
    phi = RationalMap(product_field, phi_coords, X)

    return RulingDecomposition(X=X, r=r, Y=Y, s_basis=s_basis, phi=phi,
                               psi=FiberMap(pi, tuple(fibers)),
                               certificate=certificate)


def unique_self_map_check(X: QuasilinearForm) -> bool:
    """Whether the quadric of X admits only one rational self-map route:
    true exactly when the isotropic kernel of X over its own function field
    is one-dimensional, in which case it must be spanned by the generic
    point (verified)."""
    ff = function_field(X)
    basis = isotropic_kernel_basis(X, ff.tower)
    if not basis:
        raise InconsistencyDetected(
            "form is anisotropic over its own function field")
    if len(basis) == 1:
        if not projectively_equal(basis[0], list(ff.generic_point)):
            raise InconsistencyDetected(
                "one-dimensional kernel misses the generic point")
        return True
    return False


@dataclass(frozen=True)
class RegularityReport:
    """Outcome of the regularity test with the individually evaluated
    conditions.

    `coefficient_products_independent`: the subset products of the scaled
    non-unit coefficients are independent over the squares (always
    evaluated).  `differentials_independent` and `generic_splitting` are
    evaluated only over purely rational base fields and are None
    otherwise.
    """

    regular: bool
    coefficient_products_independent: bool
    differentials_independent: Optional[bool]
    generic_splitting: Optional[bool]

    def __bool__(self) -> bool:
        return self.regular


def _differentials_independent(field: FieldTower,
                               elems: Sequence[TowerElem]) -> bool:
    """Linear independence over the field of the differentials of the
    given elements, via the Jacobian with respect to the base variables."""
    if not elems:
        return True
    variables = field.base_vars
    jacobian: List[List[RatFn]] = []
    for e in elems:
        fn = e.coeffs.get(0, RatFn.zero(variables))
        jacobian.append([fn.derivative(v) for v in variables])
    # columns of the transposed system are the elements; a nonzero
    # nullspace vector is a dependence among the differentials
    rows: List[List[Poly]] = []
    for v_index in range(len(variables)):
        entries = [row[v_index] for row in jacobian]
        lcm = Poly.one(variables)
        for fn in entries:
            if not fn.den.is_one:
                lcm = poly_lcm(lcm, fn.den)
        cleared = []
        for fn in entries:
            if fn.num.is_zero:
                cleared.append(Poly.zero(variables))
            else:
                cleared.append(fn.num * poly_divmod_exact(lcm, fn.den))
        rows.append(cleared)
    return not nullspace(rows, len(elems))


def is_regular_quadric(q: QuasilinearForm) -> RegularityReport:
    """Whether the projective quadric of q is a regular scheme.

    The form is first scaled so its last coefficient is 1.  The always
    available test is independence over the squares of all subset products
    of the remaining coefficients; over a purely rational base field the
    Jacobian test (independence of the coefficient differentials) and the
    splitting-pattern test (anisotropic with pattern (n, n-1, ..., 1)) are
    evaluated as well and must agree, else InconsistencyDetected.
    """
    field = q.field
    scaled = q.scale(q.coeffs[-1].invert())
    n = q.dim
    front = list(scaled.coeffs[:-1])

    span = span_saturate(field, front)
    products_independent = len(span) == 1 << (n - 1)

    differentials: Optional[bool] = None
    generic: Optional[bool] = None
    if field.depth == 0:
        differentials = _differentials_independent(field, front)
        generic = (is_anisotropic(scaled)
                   and splitting_pattern(scaled).dims
                   == tuple(range(n, 0, -1)))
        if (differentials != products_independent
                or generic != products_independent):
            raise InconsistencyDetected(
                "regularity conditions disagree: products "
                f"{products_independent}, differentials {differentials}, "
                f"splitting {generic}")
    return RegularityReport(
        regular=products_independent,
        coefficient_products_independent=products_independent,
        differentials_independent=differentials,
        generic_splitting=generic,
    )

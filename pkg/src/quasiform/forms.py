"""Quasilinear quadratic forms <a_1,...,a_n> and their intrinsic invariants.

A quasilinear form over a field K of characteristic 2 is a diagonal form
q(x) = a_1 x_1^2 + ... + a_n x_n^2.  Its isotropic vectors form a K-linear
subspace, and everything intrinsic reduces to the rank of the coefficient
list over the subfield of squares: anisotropy, total index, isometry, and
(through the norm-field algebra) similarity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import (
    BadCodimension,
    DimensionMismatch,
    IsotropicInput,
    ZeroCoefficient,
    ZeroElement,
)
from .fieldtower import FieldTower, TowerElem, fresh_names
from .sqlinalg import (
    greedy_independent,
    k2_membership,
    k2_rank,
    kernel_from_coefficients,
    span_saturate,
    square_nullspace_multi,
)


class QuasilinearForm:
    """A diagonal quadratic form with nonzero coefficients in a field tower."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldTower, coeffs: Sequence[TowerElem]):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ZeroCoefficient("a form needs at least one coefficient")
        for i, c in enumerate(coeffs):
            if c.tower != field:
                raise ValueError(f"coefficient {i} lives in a different tower")
            if c.is_zero:
                raise ZeroCoefficient(f"coefficient {i} is zero")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("QuasilinearForm is immutable")

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def evaluate(self, vector: Sequence[TowerElem]) -> TowerElem:
        if len(vector) != self.dim:
            raise DimensionMismatch(
                f"vector length {len(vector)} != form dimension {self.dim}")
        acc = self.field.zero()
        for a, x in zip(self.coeffs, vector):
            acc = acc + a * x.square()
        return acc

    def scale(self, c: TowerElem) -> "QuasilinearForm":
        if c.is_zero:
            raise ZeroElement("scaling a form by zero")
        return QuasilinearForm(self.field, [c * a for a in self.coeffs])

    def subform(self, indices: Sequence[int]) -> "QuasilinearForm":
        return QuasilinearForm(self.field, [self.coeffs[i] for i in indices])

    def over(self, K: FieldTower) -> "QuasilinearForm":
        """The same form with coefficients embedded into a larger tower."""
        if K == self.field:
            return self
        return QuasilinearForm(K, [self.field.embed(c, K) for c in self.coeffs])

    def __eq__(self, other) -> bool:
        return (isinstance(other, QuasilinearForm)
                and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __str__(self) -> str:
        return "<" + ", ".join(str(c) for c in self.coeffs) + ">"

    def __repr__(self) -> str:
        return f"QuasilinearForm({self})"


@dataclass(frozen=True)
class FormInvariants:
    dim: int
    total_index: int
    anisotropic_dim: int


def total_index(q: QuasilinearForm) -> int:
    """dim q minus the rank of the coefficients over squares."""
    rank, _ = k2_rank(q.coeffs)
    return q.dim - rank


def anisotropic_part(q: QuasilinearForm) -> QuasilinearForm:
    """The form on the earliest maximal independent coefficient sub-list."""
    indep, _ = greedy_independent(q.coeffs)
    return q.subform(indep)


def invariants(q: QuasilinearForm) -> FormInvariants:
    it = total_index(q)
    return FormInvariants(dim=q.dim, total_index=it, anisotropic_dim=q.dim - it)


def is_anisotropic(q: QuasilinearForm) -> bool:
    return total_index(q) == 0


def is_isometric(q: QuasilinearForm, q2: QuasilinearForm) -> bool:
    """Equal dimension, equal total index, equal coefficient spans over
    squares; the spans are compared by mutual membership."""
    if q.field != q2.field:
        raise ValueError("forms live over different towers")
    if q.dim != q2.dim:
        return False
    if total_index(q) != total_index(q2):
        return False
    indep1, _ = greedy_independent(q.coeffs)
    indep2, _ = greedy_independent(q2.coeffs)
    basis1 = [q.coeffs[i] for i in indep1]
    basis2 = [q2.coeffs[i] for i in indep2]
    if len(basis1) != len(basis2):
        return False
    for c in basis2:
        if k2_membership(c, basis1) is None:
            return False
    for c in basis1:
        if k2_membership(c, basis2) is None:
            return False
    return True


def decide_similar(q: QuasilinearForm,
                   q2: QuasilinearForm) -> Optional[TowerElem]:
    """A factor c with c*q isometric to q2, or None when no factor exists.

    Both forms are normalized to represent 1; a factor then lies in the
    algebra P generated over squares by both coefficient spans (c = c*1 must
    land in the span of q2's coefficients, which sits in P).  Solving
    c*span(q) inside span(q2) is finite linear algebra over squares in P,
    and any nonzero solution works: P is a field, so c is invertible, and
    the spans have equal dimension, forcing c*span(q) = span(q2).
    """
    if q.field != q2.field:
        raise ValueError("forms live over different towers")
    if q.dim != q2.dim:
        raise DimensionMismatch(
            f"similarity needs equal dimensions, got {q.dim} and {q2.dim}")
    if not is_anisotropic(q) or not is_anisotropic(q2):
        raise IsotropicInput("similarity decision expects anisotropic forms")
    field = q.field
    if is_isometric(q, q2):
        return field.one()
    a1, b1 = q.coeffs[0], q2.coeffs[0]
    v = [a1.invert() * c for c in q.coeffs]       # represents 1
    w = [b1.invert() * c for c in q2.coeffs]      # represents 1
    p_basis = span_saturate(field, list(v[1:]) + list(w[1:]))
    nb = len(p_basis)
    nw = len(w)
    # unknown roots: d_u (coords of c over p_basis), then e_{j,k} per
    # equation j; each equation j says  c*v_j + sum_k e_{j,k}^2 w_k = 0
    ncols = nb + q.dim * nw
    zero = field.zero()
    gen_rows: List[List[TowerElem]] = []
    for j in range(q.dim):
        row = [p * v[j] for p in p_basis]
        row += [zero] * (q.dim * nw)
        for k in range(nw):
            row[nb + j * nw + k] = w[k]
        gen_rows.append(row)
    for vec in square_nullspace_multi(gen_rows):
        d_part = vec[:nb]
        if all(d.is_zero for d in d_part):
            continue
        c = field.zero()
        for root, p in zip(d_part, p_basis):
            c = c + root.square() * p
        if c.is_zero:
            continue
        factor = c * b1 * a1.invert()
        scaled = q.scale(factor)
        if not is_isometric(scaled, q2):
            raise AssertionError("similarity factor failed isometry check")
        return factor
    return None


def generic_subform(q: QuasilinearForm, j: int) -> QuasilinearForm:
    """Restrict j times to a generic hyperplane x_d = c_1 x_1 + ... +
    c_{d-1} x_{d-1} with fresh transcendental c_i; the restriction stays
    diagonal in characteristic 2 with coefficients a_i + a_d c_i^2."""
    if not 0 <= j <= q.dim - 2:
        raise BadCodimension(
            f"codimension {j} out of range for dimension {q.dim}")
    if not is_anisotropic(q):
        raise IsotropicInput("generic subforms expect an anisotropic form")
    form = q
    for _ in range(j):
        d = form.dim
        names = fresh_names(form.field, "c", d - 1)
        K = form.field.extend_transcendental(names)
        old = [form.field.embed(c, K) for c in form.coeffs]
        cs = [K.var(n) for n in names]
        new_coeffs = [old[i] + old[d - 1] * cs[i].square()
                      for i in range(d - 1)]
        form = QuasilinearForm(K, new_coeffs)
    return form


def isotropic_vectors_basis(q: QuasilinearForm) -> List[List[TowerElem]]:
    """Basis of the subspace of isotropic vectors over the base tower."""
    return kernel_from_coefficients(q.coeffs)

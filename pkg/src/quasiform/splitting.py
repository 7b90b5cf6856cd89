"""Function fields of quasilinear quadrics and splitting invariants.

The function field of the quadric q = 0 is built in the affine chart with
first coordinate 1: adjoin transcendentals for the middle coordinates, then
one inseparable generator y solving for the last coordinate.  Iterating
anisotropic part / function field yields the splitting pattern; its first
step is the first Witt index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .errors import (
    DimensionTooSmall,
    InconsistencyDetected,
    IsotropicInput,
    IsSquare,
)
from .fieldtower import FieldTower, TowerElem, fresh_names
from .forms import QuasilinearForm, anisotropic_part, is_anisotropic
from .sqlinalg import k2_rank


@dataclass(frozen=True)
class FunctionFieldData:
    """The function field of a quadric with its generic point.

    `fresh_names` lists the transcendentals introduced for the middle
    coordinates followed by the name of the inseparable generator.
    """

    tower: FieldTower
    generic_point: Tuple[TowerElem, ...]
    fresh_names: Tuple[str, ...]


@dataclass(frozen=True)
class SplittingPattern:
    dims: Tuple[int, ...]

    def __post_init__(self):
        if not self.dims:
            raise ValueError("empty splitting pattern")
        for a, b in zip(self.dims, self.dims[1:]):
            if b >= a:
                raise ValueError("splitting pattern must strictly decrease")
        if self.dims[-1] > 1:
            raise ValueError("splitting pattern must end at dimension <= 1")

    def __str__(self) -> str:
        return "(" + ", ".join(str(d) for d in self.dims) + ")"


def function_field(q: QuasilinearForm) -> FunctionFieldData:
    """k(q) in the chart x_1 = 1, solving for the last coordinate.

    For q = <a_1,...,a_d>: adjoin transcendentals u for x_2..x_{d-1}, set
    theta = (a_1 + a_2 u_1^2 + ... + a_{d-1} u_{d-2}^2) / a_d and extend by
    y with y^2 = theta; the generic point is (1, u_1, ..., u_{d-2}, y).
    """
    d = q.dim
    if d < 2:
        raise DimensionTooSmall(
            f"function field needs dimension >= 2, got {d}")
    if not is_anisotropic(q):
        raise IsotropicInput(
            "function field construction expects an anisotropic form")
    base = q.field
    unames = fresh_names(base, "u", d - 2)
    yname = fresh_names(base, "y", 1)[0]
    K = base.extend_transcendental(unames)
    coeffs = [base.embed(c, K) for c in q.coeffs]
    us = [K.var(n) for n in unames]
    num = coeffs[0]
    for a, u in zip(coeffs[1:-1], us):
        num = num + a * u.square()
    theta = num * coeffs[-1].invert()
    try:
        tower = K.extend_inseparable(theta, yname)
    except IsSquare:
        raise InconsistencyDetected(
            "defining element of an anisotropic quadric cannot be a square"
        ) from None
    point = tuple([tower.one()]
                  + [K.embed(u, tower) for u in us]
                  + [tower.gen_by_name(yname)])
    value = q.over(tower).evaluate(point)
    if not value.is_zero:
        raise InconsistencyDetected("generic point fails the quadric equation")
    return FunctionFieldData(tower=tower, generic_point=point,
                             fresh_names=tuple(unames) + (yname,))


def total_index_over(q: QuasilinearForm, K_ext: FieldTower) -> int:
    """Total index of q after structural embedding into a larger tower."""
    ext = q.over(K_ext)
    rank, _ = k2_rank(ext.coeffs)
    return q.dim - rank


def splitting_pattern(q: QuasilinearForm) -> SplittingPattern:
    """Dimensions (dim q_0, ..., dim q_h) of the iterated anisotropic parts
    over the tower of function fields, down to dimension <= 1."""
    current = anisotropic_part(q)
    dims: List[int] = [current.dim]
    while current.dim >= 2:
        ff = function_field(current)
        current = anisotropic_part(current.over(ff.tower))
        dims.append(current.dim)
    return SplittingPattern(tuple(dims))


def first_witt_index(q: QuasilinearForm) -> int:
    """Total index of q over its own function field."""
    if q.dim < 2:
        raise DimensionTooSmall(
            f"first Witt index needs dimension >= 2, got {q.dim}")
    if not is_anisotropic(q):
        raise IsotropicInput("first Witt index expects an anisotropic form")
    ff = function_field(q)
    return total_index_over(q, ff.tower)


def essential_dimension(q: QuasilinearForm) -> int:
    """(dim q - 2) - (i_1(q) - 1) for anisotropic q of dimension >= 2."""
    return (q.dim - 2) - (first_witt_index(q) - 1)


def hl_bound(dim: int) -> int:
    """dim - 2^n with 2^n the largest power of two strictly below dim."""
    if dim < 2:
        raise DimensionTooSmall("bound needs dimension >= 2")
    return dim - (1 << (dim - 1).bit_length() - 1)


def check_hl_bound(q: QuasilinearForm) -> bool:
    """First Witt index never exceeds dim minus the largest power of two
    strictly below dim; used as an internal consistency oracle."""
    return first_witt_index(q) <= hl_bound(q.dim)

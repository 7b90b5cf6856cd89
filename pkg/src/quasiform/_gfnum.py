"""One-sided numeric certificates for polynomial linear systems.

Evaluating a polynomial matrix at a point of GF(2^15)^n can only lower
ranks: every minor that vanishes identically vanishes at the point.  Two
rank observations at a single point are therefore conclusive:

* rank A(p) = #rows forces rank A = #rows symbolically, and the rank of
  the augmented matrix [A|b] is squeezed to the same value, so A x = b is
  solvable over the rational function field.
* rank A(p) = #cols together with rank [A|b](p) = #cols + 1 forces
  rank [A|b] > rank A symbolically, so A x = b is unsolvable.

A point witnessing neither proves nothing, and the caller must fall back
to exact elimination.  Points come from a fixed seed, so outcomes are
reproducible.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Sequence

from .gf2poly import Poly

_DEG = 15
_MODMASK = (1 << _DEG) | 0b11  # x^15 + x + 1, irreducible over GF(2)
_ORDER = (1 << _DEG) - 1


def _mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> _DEG:
            a ^= _MODMASK
    return out


def _pow(a: int, e: int) -> int:
    e %= _ORDER
    out = 1
    while e:
        if e & 1:
            out = _mul(out, a)
        a = _mul(a, a)
        e >>= 1
    return out


def _selfcheck() -> None:
    # x generates no subfield relation early: x^(2^15) = x while x^(2^k)
    # differs from x for every k < 15, which pins the modulus irreducible
    x = 0b10
    frob = x
    for k in range(1, _DEG + 1):
        frob = _mul(frob, frob)
        if frob == x:
            if k != _DEG:
                raise AssertionError("field modulus is not irreducible")
            return
    raise AssertionError("field modulus fails the Frobenius orbit check")


_selfcheck()


def _eval_poly(p: Poly, assign: Dict[str, int]) -> int:
    acc = 0
    for mono in p.terms:
        v = 1
        for name, e in mono:
            v = _mul(v, _pow(assign[name], e))
        acc ^= v
    return acc


def _rank(rows: List[List[int]]) -> int:
    rank = 0
    ncols = len(rows[0]) if rows else 0
    rows = [list(r) for r in rows]
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = _pow(rows[rank][col], _ORDER - 1)
        prow = [_mul(inv, e) for e in rows[rank]]
        rows[rank] = prow
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [e ^ _mul(f, pe) for e, pe in zip(rows[i], prow)]
        rank += 1
    return rank


def numeric_verdict(matrix: Sequence[Sequence[Poly]],
                    rhs: Sequence[Poly],
                    trials: int = 4) -> Optional[bool]:
    """Solvability of matrix * x = rhs when a witness point settles it.

    True and False are proofs; None means no trial point was conclusive
    and exact elimination must decide.
    """
    nrows = len(matrix)
    if not nrows:
        return None
    ncols = len(matrix[0])
    names = sorted({v for row in matrix for e in row for m in e.terms
                    for v, _ in m}
                   | {v for e in rhs for m in e.terms for v, _ in m})
    rng = random.Random(0x51D2)
    for _ in range(trials):
        assign = {n: rng.randrange(1, _ORDER + 1) for n in names}
        plain = [[_eval_poly(e, assign) for e in row] for row in matrix]
        r = _rank(plain)
        if r == nrows:
            return True
        if r == ncols and ncols < nrows:
            augmented = [row + [_eval_poly(b, assign)]
                         for row, b in zip(plain, rhs)]
            if _rank(augmented) == ncols + 1:
                return False
    return None

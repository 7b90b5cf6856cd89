"""Towers of purely inseparable quadratic extensions over GF(2)(v1,...,vN).

A tower K = F(y1,...,ys) starts from a rational function field F and adjoins
generators y_i with y_i^2 = theta_i, where theta_i is a non-square element of
the subtower below it.  Elements are stored in normal form as expansions over
the square-free generator monomials y^m (m a bit mask over generators) with
RatFn coefficients; y^2 never appears because multiplication reduces it via
theta on the spot.

Key consequence used for inversion: squaring strips the top generator, so
x^(2^s) always lies in the rational base, giving 1/x = x^(2^s - 1) / x^(2^s).
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Tuple

from .errors import (
    EmbeddingFailure,
    IsSquare,
    NameCollision,
    TowerDepthExceeded,
    UnknownVariable,
    ZeroElement,
)
from .gf2poly import Monomial, Poly, RatFn

CoeffMap = Tuple[Tuple[int, RatFn], ...]

DEFAULT_DEPTH_LIMIT = 8


def _freeze(coeffs: Dict[int, RatFn]) -> CoeffMap:
    return tuple(sorted((m, c) for m, c in coeffs.items() if not c.is_zero))


class FieldTower:
    """Immutable description of F2(base_vars)(y1,...,ys), y_i^2 = theta_i.

    `gens` lists (name, theta) pairs in adjunction order; each theta is kept
    as a frozen coefficient map supported on masks of the generators below
    it.  Equality is structural, so independently built identical towers
    compare equal and their elements interoperate.
    """

    __slots__ = ("base_vars", "gens", "depth_limit", "_theta_masks", "_hash")

    def __init__(
        self,
        base_vars: Tuple[str, ...],
        gens: Tuple[Tuple[str, CoeffMap], ...] = (),
        depth_limit: int = DEFAULT_DEPTH_LIMIT,
    ):
        names: List[str] = list(base_vars) + [n for n, _ in gens]
        seen = set()
        for n in names:
            if n in seen:
                raise NameCollision(f"duplicate name in tower: {n!r}")
            seen.add(n)
        for i, (_, theta) in enumerate(gens):
            if any(m >> i for m, _ in theta):
                raise ValueError(
                    "defining element must live in the preceding subtower")
        object.__setattr__(self, "base_vars", tuple(base_vars))
        object.__setattr__(self, "gens", tuple(gens))
        object.__setattr__(self, "depth_limit", depth_limit)
        object.__setattr__(self, "_theta_masks", {})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("FieldTower is immutable")

    # -- identity ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldTower)
                and self.base_vars == other.base_vars
                and self.gens == other.gens)

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.base_vars, self.gens))
            object.__setattr__(self, "_hash", h)
        return h

    @property
    def depth(self) -> int:
        return len(self.gens)

    @property
    def gen_names(self) -> Tuple[str, ...]:
        return tuple(n for n, _ in self.gens)

    @property
    def all_names(self) -> Tuple[str, ...]:
        return self.base_vars + self.gen_names

    def __str__(self) -> str:
        s = f"F2({','.join(self.base_vars)})"
        for name, theta in self.gens:
            s += f"({name}:{name}^2={self._coeffs_str(dict(theta))})"
        return s

    def __repr__(self) -> str:
        return f"FieldTower({self})"

    # -- construction ------------------------------------------------------

    @staticmethod
    def rational(names: Iterable[str],
                 depth_limit: int = DEFAULT_DEPTH_LIMIT) -> "FieldTower":
        return FieldTower(tuple(names), (), depth_limit)

    def extend_transcendental(self, names: Iterable[str]) -> "FieldTower":
        new = tuple(names)
        taken = set(self.all_names)
        for n in new:
            if n in taken:
                raise NameCollision(f"name already used in tower: {n!r}")
            taken.add(n)
        return FieldTower(self.base_vars + new, self.gens, self.depth_limit)

    def extend_inseparable(self, theta: "TowerElem", name: str) -> "FieldTower":
        if theta.tower != self:
            raise ValueError("defining element belongs to a different tower")
        if theta.is_zero:
            raise ZeroElement("defining element of an extension must be nonzero")
        if name in self.all_names:
            raise NameCollision(f"name already used in tower: {name!r}")
        if self.depth + 1 > self.depth_limit:
            raise TowerDepthExceeded(
                f"tower depth limit {self.depth_limit} exceeded")
        if theta.sqrt_in_tower() is not None:
            raise IsSquare(
                "defining element is already a square; extension is trivial")
        return FieldTower(self.base_vars,
                          self.gens + ((name, _freeze(theta.coeffs)),),
                          self.depth_limit)

    # -- elements ----------------------------------------------------------

    def element(self, coeffs: Dict[int, RatFn]) -> "TowerElem":
        return TowerElem(self, coeffs)

    def zero(self) -> "TowerElem":
        return TowerElem(self, {})

    def one(self) -> "TowerElem":
        return TowerElem(self, {0: RatFn.one(self.base_vars)})

    def scalar(self, value) -> "TowerElem":
        """Lift a RatFn or Poly over the base variables into the tower."""
        if isinstance(value, Poly):
            value = RatFn.from_poly(value)
        return TowerElem(self, {0: value})

    def var(self, name: str) -> "TowerElem":
        return self.scalar(Poly.variable(name, self.base_vars))

    def gen(self, i: int) -> "TowerElem":
        if not 0 <= i < self.depth:
            raise IndexError("no such generator")
        return TowerElem(self, {1 << i: RatFn.one(self.base_vars)})

    def gen_by_name(self, name: str) -> "TowerElem":
        for i, (n, _) in enumerate(self.gens):
            if n == name:
                return self.gen(i)
        raise KeyError(f"no generator named {name!r}")

    def theta(self, i: int) -> Dict[int, RatFn]:
        return dict(self.gens[i][1])

    def theta_elem(self, i: int) -> "TowerElem":
        return TowerElem(self, self.theta(i))

    # -- embedding ---------------------------------------------------------

    def embeds_into(self, other: "FieldTower") -> bool:
        return (set(self.base_vars) <= set(other.base_vars)
                and self.gens == other.gens[: self.depth])

    def embed(self, x: "TowerElem", into: "FieldTower") -> "TowerElem":
        """Name-preserving structural embedding; no isomorphism search."""
        if x.tower != self:
            raise ValueError("element belongs to a different tower")
        if not self.embeds_into(into):
            raise EmbeddingFailure(
                f"no structural embedding of {self} into {into}")
        return TowerElem(into, dict(x.coeffs))

    # -- internal arithmetic on coefficient dicts ---------------------------

    def _theta_mask(self, mask: int) -> Dict[int, RatFn]:
        """The element (y^mask)^2 = prod of theta_i over bits of mask."""
        cached = self._theta_masks.get(mask)
        if cached is not None:
            return cached
        if mask == 0:
            out = {0: RatFn.one(self.base_vars)}
        else:
            top = mask.bit_length() - 1
            out = self._mul(self._theta_mask(mask ^ (1 << top)),
                            self.theta(top), top)
        self._theta_masks[mask] = out
        return out

    def _add(self, d1: Dict[int, RatFn], d2: Dict[int, RatFn]) -> Dict[int, RatFn]:
        out = dict(d1)
        for m, c in d2.items():
            prev = out.get(m)
            s = c if prev is None else prev + c
            if s.is_zero:
                out.pop(m, None)
            else:
                out[m] = s
        return out

    def _scale(self, d: Dict[int, RatFn], r: RatFn) -> Dict[int, RatFn]:
        if r.is_zero:
            return {}
        if r.is_one:
            return dict(d)
        return {m: c * r for m, c in d.items()}

    def _mul(self, d1: Dict[int, RatFn], d2: Dict[int, RatFn],
             level: Optional[int] = None) -> Dict[int, RatFn]:
        if not d1 or not d2:
            return {}
        if level is None:
            level = self.depth
        if set(d1) == {0}:
            return self._scale(d2, d1[0])
        if set(d2) == {0}:
            return self._scale(d1, d2[0])
        bit = 1 << (level - 1)
        lo1 = {m: c for m, c in d1.items() if not m & bit}
        hi1 = {m ^ bit: c for m, c in d1.items() if m & bit}
        lo2 = {m: c for m, c in d2.items() if not m & bit}
        hi2 = {m ^ bit: c for m, c in d2.items() if m & bit}
        out: Dict[int, RatFn] = {}
        if lo1 and lo2:
            out = self._mul(lo1, lo2, level - 1)
        if hi1 and hi2:
            cross = self._mul(self._mul(hi1, hi2, level - 1),
                              self.theta(level - 1), level - 1)
            out = self._add(out, cross)
        odd: Dict[int, RatFn] = {}
        if lo1 and hi2:
            odd = self._mul(lo1, hi2, level - 1)
        if hi1 and lo2:
            odd = self._add(odd, self._mul(hi1, lo2, level - 1))
        for m, c in odd.items():
            prev = out.get(m | bit)
            s = c if prev is None else prev + c
            if s.is_zero:
                out.pop(m | bit, None)
            else:
                out[m | bit] = s
        return out

    def _square(self, d: Dict[int, RatFn]) -> Dict[int, RatFn]:
        out: Dict[int, RatFn] = {}
        for m, c in d.items():
            out = self._add(out, self._scale(self._theta_mask(m), c.square()))
        return out

    def _coeffs_str(self, d: Dict[int, RatFn]) -> str:
        if not d:
            return "0"
        names = self.gen_names
        parts = []
        for m in sorted(d):
            c = d[m]
            mono = "*".join(names[i] for i in range(self.depth) if m >> i & 1)
            if not mono:
                parts.append(str(c))
            elif c.is_one:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return "+".join(parts)


class TowerElem:
    """An element of a FieldTower in reduced square-free-monomial form."""

    __slots__ = ("tower", "coeffs", "_hash")

    def __init__(self, tower: FieldTower, coeffs: Dict[int, RatFn]):
        clean = {m: c for m, c in coeffs.items() if not c.is_zero}
        for m in clean:
            if m >> tower.depth:
                raise ValueError("coefficient mask outside tower generators")
        object.__setattr__(self, "tower", tower)
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("TowerElem is immutable")

    # -- predicates ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_one(self) -> bool:
        return set(self.coeffs) == {0} and self.coeffs[0].is_one

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def is_rational(self) -> bool:
        """True when the expansion is supported on the trivial monomial."""
        return set(self.coeffs) <= {0}

    def rational_part(self) -> RatFn:
        if not self.is_rational:
            raise ValueError("element involves inseparable generators")
        return self.coeffs.get(0, RatFn.zero(self.tower.base_vars))

    def _check(self, other: "TowerElem") -> None:
        if self.tower != other.tower:
            raise ValueError("elements of different towers")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "TowerElem") -> "TowerElem":
        self._check(other)
        return TowerElem(self.tower, self.tower._add(self.coeffs, other.coeffs))

    __sub__ = __add__

    def __mul__(self, other: "TowerElem") -> "TowerElem":
        self._check(other)
        return TowerElem(self.tower, self.tower._mul(self.coeffs, other.coeffs))

    def scale(self, r: RatFn) -> "TowerElem":
        return TowerElem(self.tower, self.tower._scale(self.coeffs, r))

    def square(self) -> "TowerElem":
        return TowerElem(self.tower, self.tower._square(self.coeffs))

    def invert(self) -> "TowerElem":
        """1/x via x^(2^e) in the rational base for the least such e."""
        if self.is_zero:
            raise ZeroElement("cannot invert zero")
        t = self.tower
        if self.is_rational:
            return TowerElem(t, {0: self.coeffs[0].invert()})
        prod = {0: RatFn.one(t.base_vars)}
        z = self.coeffs
        while True:
            prod = t._mul(prod, z)
            z = t._square(z)
            if set(z) <= {0}:
                break
        return TowerElem(t, t._scale(prod, z[0].invert()))

    def __truediv__(self, other: "TowerElem") -> "TowerElem":
        return self * other.invert()

    def __pow__(self, n: int) -> "TowerElem":
        if n < 0:
            return self.invert() ** (-n)
        result = self.tower.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base.square()
            n >>= 1
        return result

    def sqrt_in_tower(self) -> Optional["TowerElem"]:
        """The square root inside the tower if one exists, else None.

        An element is a square exactly when it lies in the span, over squares
        of the rational base, of the squared generator monomials; that span
        membership is a semilinear solve.
        """
        from .sqlinalg import tower_square_root

        return tower_square_root(self)

    # -- identity ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, TowerElem)
                and self.tower == other.tower
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.tower, _freeze(self.coeffs)))
            object.__setattr__(self, "_hash", h)
        return h

    def __str__(self) -> str:
        return self.tower._coeffs_str(self.coeffs)

    def __repr__(self) -> str:
        return f"TowerElem({self})"


def fresh_names(tower: FieldTower, base: str, count: int) -> List[str]:
    """Deterministic unused names base1, base2, ... skipping taken ones."""
    taken = set(tower.all_names)
    out: List[str] = []
    i = 1
    while len(out) < count:
        name = f"{base}{i}"
        if name not in taken:
            out.append(name)
            taken.add(name)
        i += 1
    return out


class TowerHom:
    """A field map between towers, given by values for named base variables
    and generators.

    Unassigned base variables must exist in the target and map to
    themselves; unassigned generators must exist in the target by name.
    Construction validates every generator image against its defining
    relation (the image squared must equal the substituted theta, else
    EmbeddingFailure) and the map is then applied to elements with
    `apply`.  Power and product caches persist across applications, so
    build one hom per substitution task.  A denominator whose image
    collapses to zero raises DivisionByZero: the assignment then does not
    define a field map.
    """

    __slots__ = ("source", "target", "_var_assign", "_gen_values",
                 "_power_memo", "_mask_memo")

    def __init__(self, source: FieldTower, target: FieldTower,
                 assignments: Dict[str, TowerElem]):
        var_assign: Dict[str, TowerElem] = {}
        gen_assign: Dict[str, TowerElem] = {}
        gen_names = [name for name, _ in source.gens]
        for name, value in assignments.items():
            if value.tower != target:
                raise ValueError(
                    f"assigned value for {name!r} is not in the target tower")
            if name in source.base_vars:
                var_assign[name] = value
            elif name in gen_names:
                gen_assign[name] = value
            else:
                raise UnknownVariable(
                    f"{name!r} names nothing in the source tower")
        for v in source.base_vars:
            if v not in var_assign and v not in target.base_vars:
                raise UnknownVariable(
                    f"unassigned variable {v!r} is missing from the target tower")
        self.source = source
        self.target = target
        self._var_assign = var_assign
        self._power_memo: Dict[Tuple[str, int], TowerElem] = {}
        self._mask_memo: Dict[int, TowerElem] = {0: target.one()}
        self._gen_values: List[TowerElem] = []
        for name, theta in source.gens:
            if name in gen_assign:
                value = gen_assign[name]
            else:
                try:
                    value = target.gen_by_name(name)
                except KeyError:
                    raise EmbeddingFailure(
                        f"generator {name!r} has no assignment and no "
                        f"counterpart in the target tower") from None
            if value.square() != self._coeffs(theta):
                raise EmbeddingFailure(
                    f"image of generator {name!r} violates its defining relation")
            self._gen_values.append(value)

    def _var_power(self, name: str, exp: int) -> TowerElem:
        key = (name, exp)
        got = self._power_memo.get(key)
        if got is None:
            got = self._var_assign[name] ** exp
            self._power_memo[key] = got
        return got

    def _poly(self, p: Poly) -> TowerElem:
        var_assign = self._var_assign
        groups: Dict[Monomial, List[Monomial]] = {}
        for mono in p.terms:
            assigned = tuple((n, e) for n, e in mono if n in var_assign)
            rest = tuple((n, e) for n, e in mono if n not in var_assign)
            groups.setdefault(assigned, []).append(rest)
        total = self.target.zero()
        for assigned, rests in groups.items():
            part = self.target.scalar(Poly(rests, self.target.base_vars))
            for n, e in assigned:
                part = part * self._var_power(n, e)
            total = total + part
        return total

    def _ratfn(self, fn: RatFn) -> TowerElem:
        num = self._poly(fn.num)
        if fn.den.is_one:
            return num
        return num * self._poly(fn.den).invert()

    def _gen_product(self, mask: int) -> TowerElem:
        got = self._mask_memo.get(mask)
        if got is None:
            low = mask & -mask
            got = (self._gen_values[low.bit_length() - 1]
                   * self._gen_product(mask ^ low))
            self._mask_memo[mask] = got
        return got

    def _coeffs(self, coeffs) -> TowerElem:
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        total = self.target.zero()
        for mask, fn in items:
            total = total + self._ratfn(fn) * self._gen_product(mask)
        return total

    def apply(self, elem: TowerElem) -> TowerElem:
        if elem.tower != self.source:
            raise ValueError("element is not in the hom's source tower")
        return self._coeffs(elem.coeffs)


def tower_substitute(elem: TowerElem, target: FieldTower,
                     assignments: Dict[str, TowerElem]) -> TowerElem:
    """One-off image of `elem` under the field map given by `assignments`;
    see TowerHom for the contract and for the reusable form."""
    return TowerHom(elem.tower, target, assignments).apply(elem)


def extend_transcendental(K: FieldTower, names: Iterable[str]) -> FieldTower:
    return K.extend_transcendental(names)


def extend_inseparable(K: FieldTower, theta: TowerElem, name: str) -> FieldTower:
    return K.extend_inseparable(theta, name)


def invert(x: TowerElem) -> TowerElem:
    return x.invert()


def square(x: TowerElem) -> TowerElem:
    return x.square()


def sqrt_in_tower(x: TowerElem) -> Optional[TowerElem]:
    return x.sqrt_in_tower()

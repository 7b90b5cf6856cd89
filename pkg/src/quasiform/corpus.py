"""Built-in example corpus with stored expected outcomes.

Each case computes a small dictionary of invariants or verdicts with the
library and compares it against the hard-coded expectation.  The corpus is
the executable record of the worked examples the library was built around;
`run_corpus` reports every mismatch rather than stopping at the first.
"""

from typing import Callable, Dict, List, Tuple

from .birational import (
    construct_ruling,
    decide_birational,
    decide_stably_equivalent,
    is_regular_quadric,
    unique_self_map_check,
)
from .errors import NotRuled
from .fieldtower import FieldTower
from .forms import QuasilinearForm, decide_similar, is_anisotropic, total_index
from .pfister import (
    QuasiPfisterForm,
    albert_multiply,
    is_quasi_pfister_neighbor,
    norm_degree,
    special_neighbor_ruling,
)
from .splitting import (
    essential_dimension,
    first_witt_index,
    splitting_pattern,
)

Outcome = Dict[str, object]


def _abc() -> Tuple[FieldTower, tuple]:
    F = FieldTower.rational(("a", "b", "c"))
    return F, (F.var("a"), F.var("b"), F.var("c"))


def _case_two_fold_invariants() -> Outcome:
    F, (a, b, _) = _abc()
    q = QuasiPfisterForm(F, (a, b)).form()
    return {
        "anisotropic": is_anisotropic(q),
        "total_index": total_index(q),
        "splitting_pattern": list(splitting_pattern(q).dims),
        "first_witt_index": first_witt_index(q),
        "essential_dimension": essential_dimension(q),
        "norm_degree": norm_degree(q)[0],
    }


def _case_five_dim_pair() -> Outcome:
    F, (a, b, c) = _abc()
    one = F.one()
    q1 = QuasilinearForm(F, (one, a, b, a * b, c))
    q2 = QuasilinearForm(F, (one, a, c, a * c, b))
    return {
        "similar": decide_similar(q1, q2) is not None,
        "stably_equivalent": decide_stably_equivalent(q1, q2),
        "birational": decide_birational(q1, q2),
    }


def _case_five_dim_regularity() -> Outcome:
    F, (a, b, c) = _abc()
    one = F.one()
    q = QuasilinearForm(F, (one, a, b, a * b, c))
    report = is_regular_quadric(q)
    return {
        "anisotropic": is_anisotropic(q),
        "first_witt_index": first_witt_index(q),
        "regular": report.regular,
        "norm_degree": norm_degree(q)[0],
    }


def _case_generic_three_form() -> Outcome:
    G = FieldTower.rational(("t1", "t2", "t3"))
    q = QuasilinearForm(G, tuple(G.var(n) for n in ("t1", "t2", "t3")))
    report = is_regular_quadric(q)
    try:
        construct_ruling(q)
        ruled = True
    except NotRuled:
        ruled = False
    return {
        "anisotropic": is_anisotropic(q),
        "splitting_pattern": list(splitting_pattern(q).dims),
        "regular": report.regular,
        "unique_self_map": unique_self_map_check(q),
        "ruled": ruled,
    }


def _case_two_fold_ruling() -> Outcome:
    F, (a, b, _) = _abc()
    q = QuasiPfisterForm(F, (a, b)).form()
    dec = construct_ruling(q)
    return {
        "ruled": True,
        "witt_index": dec.r,
        "subquadric_dim": dec.Y.dim,
        "certificate_verified": dec.verify(),
    }


def _case_neighbor_detection() -> Outcome:
    F, (a, b, _) = _abc()
    one = F.one()
    neighbor = QuasilinearForm(F, (one, a, b))
    P = is_quasi_pfister_neighbor(neighbor)
    env = P.form() if P is not None else None
    return {
        "is_neighbor": P is not None,
        "envelope_dim": None if env is None else env.dim,
        "stably_equivalent_to_envelope":
            env is not None and decide_stably_equivalent(neighbor, env),
    }


def _case_albert_two_fold() -> Outcome:
    F, (a, b, _) = _abc()
    P = QuasiPfisterForm(F, (a, b))
    names = [f"p{i}" for i in range(4)] + [f"q{i}" for i in range(4)]
    tower = F.extend_transcendental(names)
    x = [tower.var(f"p{i}") for i in range(4)]
    y = [tower.var(f"q{i}") for i in range(4)]
    z = albert_multiply(P, x, y)
    lhs = P.evaluate(z)
    rhs = P.evaluate(x) * P.evaluate(y)
    return {"multiplicative": lhs == rhs}


def _case_special_ruling() -> Outcome:
    F, (a, b, c) = _abc()
    P = QuasiPfisterForm(F, (a, b))
    ruling = special_neighbor_ruling(P, (0, 1), (F.one(), c))
    return {
        "coordinates": len(ruling.coords),
        "target_dim": ruling.target.dim,
        "verified": ruling.verify(),
    }


CASES: List[Tuple[str, Callable[[], Outcome], Outcome]] = [
    ("two-fold-pfister-invariants", _case_two_fold_invariants, {
        "anisotropic": True,
        "total_index": 0,
        "splitting_pattern": [4, 2, 1],
        "first_witt_index": 2,
        "essential_dimension": 1,
        "norm_degree": 4,
    }),
    ("five-dim-pair-not-similar-but-birational", _case_five_dim_pair, {
        "similar": False,
        "stably_equivalent": True,
        "birational": True,
    }),
    ("five-dim-form-is-not-regular", _case_five_dim_regularity, {
        "anisotropic": True,
        "first_witt_index": 1,
        "regular": False,
        "norm_degree": 8,
    }),
    ("generic-three-form-is-regular-not-ruled", _case_generic_three_form, {
        "anisotropic": True,
        "splitting_pattern": [3, 2, 1],
        "regular": True,
        "unique_self_map": True,
        "ruled": False,
    }),
    ("two-fold-pfister-ruling", _case_two_fold_ruling, {
        "ruled": True,
        "witt_index": 2,
        "subquadric_dim": 3,
        "certificate_verified": True,
    }),
    ("three-dim-neighbor-detection", _case_neighbor_detection, {
        "is_neighbor": True,
        "envelope_dim": 4,
        "stably_equivalent_to_envelope": True,
    }),
    ("albert-product-two-fold", _case_albert_two_fold, {
        "multiplicative": True,
    }),
    ("special-neighbor-ruling-five-coords", _case_special_ruling, {
        "coordinates": 5,
        "target_dim": 5,
        "verified": True,
    }),
]


def run_corpus() -> List[Dict[str, object]]:
    """Run every case; each result lists the mismatched keys, if any."""
    results: List[Dict[str, object]] = []
    for name, compute, expected in CASES:
        actual = compute()
        mismatches = sorted(
            k for k in set(expected) | set(actual)
            if expected.get(k) != actual.get(k))
        entry: Dict[str, object] = {"name": name, "ok": not mismatches}
        if mismatches:
            entry["mismatches"] = [
                {"key": k, "expected": expected.get(k),
                 "actual": actual.get(k)} for k in mismatches]
        results.append(entry)
    return results

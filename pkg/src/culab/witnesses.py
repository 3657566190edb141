"""Bounded exhaustive searches for the constructive decomposition statements,
with verifiers that replay certificates by direct table lookups.

Search and verification are kept strictly apart: a verifier re-checks the
relational postcondition with its own lookups and never calls into the search
path.  Any tuple satisfying the postcondition is a valid certificate; the
searches fix deterministic representatives by scanning indices in ascending
order (tuples lexicographically).
"""

from __future__ import annotations

from .divisibility import is_weakly_divisible, lex_least_sums
from .errors import PreconditionFailed
from .model import FiniteOrderedMonoid, require_partial_order

__all__ = [
    "witness_div_o5",
    "witness_ref_o7",
    "witness_wkdiv_decomposition",
    "witness_wkdiv_pair",
    "witness_refinement_ef",
    "verify_div_o5",
    "verify_ref_o7",
    "verify_wkdiv_decomposition",
    "verify_wkdiv_pair",
    "verify_refinement_ef",
]


def witness_div_o5(model: FiniteOrderedMonoid, x: int, z: int, k: int):
    """Least y with (k-1)x + y <= z <= ky and x <= y.

    Needs k >= 1 and kx <= z.  A witness always exists when the model passes
    O5; None signals the search space is genuinely empty.
    """
    require_partial_order(model)
    m = model
    if k < 1:
        raise PreconditionFailed(f"k must be >= 1, got {k}")
    if not m.le(m.mul(k, x), z):
        raise PreconditionFailed(
            f"{k}*{m.label(x)} ≤ {m.label(z)} fails in {m.name!r}"
        )
    head = m.mul(k - 1, x)
    for y in m.elements():
        if m.le(m.plus(head, y), z) and m.le(z, m.mul(k, y)) and m.le(x, y):
            return y
    return None


def verify_div_o5(model: FiniteOrderedMonoid, x: int, z: int, k: int, y: int) -> bool:
    m = model
    acc = m.zero
    for _ in range(k - 1):
        acc = m.add[acc][x]
    lhs_ok = m.leq[m.add[acc][y]][z]
    ky = m.zero
    for _ in range(k):
        ky = m.add[ky][y]
    return lhs_ok and m.leq[z][ky] and m.leq[x][y]


def witness_ref_o7(model: FiniteOrderedMonoid, xs, w: int):
    """Least x above every member of xs, below w, and below their sum."""
    require_partial_order(model)
    m = model
    xs = list(xs)
    for xi in xs:
        if not m.le(xi, w):
            raise PreconditionFailed(
                f"{m.label(xi)} ≤ {m.label(w)} fails in {m.name!r}"
            )
    total = m.sum(xs)
    for x in m.elements():
        if m.le(x, w) and m.le(x, total) and all(m.le(xi, x) for xi in xs):
            return x
    return None


def verify_ref_o7(model: FiniteOrderedMonoid, xs, w: int, x: int) -> bool:
    m = model
    total = m.zero
    for xi in xs:
        total = m.add[total][xi]
    return (
        m.leq[x][w]
        and m.leq[x][total]
        and all(m.leq[xi][x] for xi in xs)
    )


def witness_wkdiv_decomposition(model: FiniteOrderedMonoid, x: int):
    """A base c with x inside its ideal plus summands d_1..d_n, each
    addable to c under x, jointly dominating x.  Returns (c, d-tuple).

    Precondition: x is weakly (2,omega)-divisible.  The d-tuple is the
    lexicographically least nonzero tuple over the admissible summands; a
    zero summand never helps, since deleting it preserves every clause.
    """
    require_partial_order(model)
    m = model
    if not is_weakly_divisible(m, x, 2).ok:
        raise PreconditionFailed(
            f"{m.label(x)} is not weakly (2,ω)-divisible in {m.name!r}"
        )
    for c in m.elements():
        if not m.le(x, m.inf(c)):
            continue
        gens = [d for d in m.elements() if d != m.zero and m.le(m.plus(c, d), x)]
        sums = lex_least_sums(m, gens)
        candidates = [tup for s, tup in sums.items() if m.le(x, s)]
        if candidates:
            return c, min(candidates)
    return None


def verify_wkdiv_decomposition(model: FiniteOrderedMonoid, x: int, c: int, ds) -> bool:
    m = model
    if len(ds) > m.n:
        return False
    total = m.zero
    for d in ds:
        if not m.leq[m.add[c][d]][x]:
            return False
        total = m.add[total][d]
    return m.leq[x][m.inf_table[c]] and m.leq[x][total]


def witness_wkdiv_pair(model: FiniteOrderedMonoid, x: int, mm: int):
    """First (c, d1, d2) with d1, d2 <= c, c+d1 <= x, c + mm*d2 <= x, and x in
    the ideals of c and of d1+d2.

    Precondition: mm >= 1 and x weakly (2,omega)-divisible.  Guaranteed to
    succeed on ideal-filtered models passing O5-O8.
    """
    require_partial_order(model)
    m = model
    if mm < 1:
        raise PreconditionFailed(f"m must be >= 1, got {mm}")
    if not is_weakly_divisible(m, x, 2).ok:
        raise PreconditionFailed(
            f"{m.label(x)} is not weakly (2,ω)-divisible in {m.name!r}"
        )
    for c in m.elements():
        if not m.le(x, m.inf(c)):
            continue
        for d1 in m.below(c):
            if not m.le(m.plus(c, d1), x):
                continue
            for d2 in m.below(c):
                if not m.le(m.plus(c, m.mul(mm, d2)), x):
                    continue
                if m.le(x, m.inf(m.plus(d1, d2))):
                    return c, d1, d2
    return None


def verify_wkdiv_pair(model: FiniteOrderedMonoid, x: int, mm: int, c: int, d1: int, d2: int) -> bool:
    m = model
    md2 = m.zero
    for _ in range(mm):
        md2 = m.add[md2][d2]
    return (
        m.leq[d1][c]
        and m.leq[d2][c]
        and m.leq[m.add[c][d1]][x]
        and m.leq[m.add[c][md2]][x]
        and m.leq[x][m.inf_table[c]]
        and m.leq[x][m.inf_table[m.add[d1][d2]]]
    )


def _alg_le(m: FiniteOrderedMonoid, x: int, y: int) -> bool:
    # the algebraic preorder: some summand carries x to y
    return any(m.plus(x, s) == y for s in m.elements())


def witness_refinement_ef(model: FiniteOrderedMonoid, a: int, b1: int, b2: int, c: int):
    """First (e, f) with e+f below c, b1 and b2 below e, and b1, b2 below 2f,
    everything in the algebraic preorder.

    Accepts preorder models; only the addition table matters.  Preconditions:
    b1, b2 below a and a+b1, a+b2 below c.  A witness exists whenever the
    model has refinement.
    """
    m = model
    for b in (b1, b2):
        if not _alg_le(m, b, a):
            raise PreconditionFailed(
                f"{m.label(b)} ≤ {m.label(a)} fails in the algebraic preorder"
            )
        if not _alg_le(m, m.plus(a, b), c):
            raise PreconditionFailed(
                f"{m.label(a)}+{m.label(b)} ≤ {m.label(c)} fails in the "
                "algebraic preorder"
            )
    for e in m.elements():
        if not (_alg_le(m, b1, e) and _alg_le(m, b2, e)):
            continue
        for f in m.elements():
            ff = m.mul(2, f)
            if (
                _alg_le(m, m.plus(e, f), c)
                and _alg_le(m, b1, ff)
                and _alg_le(m, b2, ff)
            ):
                return e, f
    return None


def verify_refinement_ef(model: FiniteOrderedMonoid, a: int, b1: int, b2: int,
                         c: int, e: int, f: int) -> bool:
    del a  # the conclusion does not mention it
    m = model

    def reaches(u, v):
        return any(m.add[u][s] == v for s in range(m.n))

    ff = m.add[f][f]
    return (
        reaches(m.add[e][f], c)
        and reaches(b1, e)
        and reaches(b2, e)
        and reaches(b1, ff)
        and reaches(b2, ff)
    )

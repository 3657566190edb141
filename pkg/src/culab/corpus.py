"""Named model families and exhaustive enumeration up to isomorphism.

Enumeration generates commutative monoid tables with the zero row and column
fixed, pruning two ways while cells are filled in a fixed order: partial
associativity (a triple is checked as soon as every product it needs is
defined) and canonical minimality (a branch dies when some relabeling of the
filled prefix compares lexicographically smaller, which cannot happen on the
path of the least table of an isomorphism class).  Afterwards the algebraic
order is attached, or every compatible partial order for the all_compatible
mode, and survivors are deduplicated by canonical form.  Full table search
without the symmetry pruning is kept in the test suite as the enumeration
oracle.
"""

from __future__ import annotations

import itertools
import re

from .errors import GuardrailExceeded, UnknownBuiltin
from .model import (
    FiniteOrderedMonoid,
    ModelDocument,
    canonical_form,
    product_model,
    validate,
)

__all__ = ["builtin_model", "builtin_from_spec", "BUILTIN_NAMES", "enumerate_corpus"]

BUILTIN_NAMES = ("T1", "O2", "E2", "N2", "NCAP", "F4", "GAP4", "SPH", "product")

MAX_ENUM_SIZE = 6
MAX_ALL_COMPATIBLE_SIZE = 4


# ---------------------------------------------------------------------------
# Built-in families
# ---------------------------------------------------------------------------

def _t1() -> FiniteOrderedMonoid:
    doc = ModelDocument("T1", ("0",), "0", (("0",),), "algebraic")
    return validate(doc)


def _o2() -> FiniteOrderedMonoid:
    doc = ModelDocument(
        "O2", ("0", "u"), "0", (("0", "u"), ("u", "u")), "algebraic"
    )
    return validate(doc)


def _ncap(k: int, name=None, labels=None) -> FiniteOrderedMonoid:
    """Naturals 0..k with an absorbing top: sums past k overflow to it."""
    if k < 1:
        raise UnknownBuiltin(f"NCAP needs a bound >= 1, got {k}")
    labels = labels or tuple(str(i) for i in range(k + 1)) + ("inf",)
    n = k + 2
    add = []
    for i in range(n):
        row = []
        for j in range(n):
            if i <= k and j <= k and i + j <= k:
                row.append(labels[i + j])
            else:
                row.append(labels[k + 1])
        add.append(tuple(row))
    doc = ModelDocument(name or f"NCAP({k})", labels, labels[0], tuple(add), "algebraic")
    return validate(doc)


def _e2() -> FiniteOrderedMonoid:
    return _ncap(1, name="E2", labels=("0", "a", "inf"))


def _gap4() -> FiniteOrderedMonoid:
    # every sum of two nonzero elements is the top; the order is the chain
    labels = ("0", "p", "q", "t")
    add = (
        ("0", "p", "q", "t"),
        ("p", "t", "t", "t"),
        ("q", "t", "t", "t"),
        ("t", "t", "t", "t"),
    )
    pairs = (("0", "p"), ("p", "q"), ("q", "t"))
    doc = ModelDocument("GAP4", labels, "0", add, pairs)
    return validate(doc)


def _sph(kk: int, mm: int) -> FiniteOrderedMonoid:
    """Windowed grid monoid: pairs (n, m) with 1 <= m <= M and |n| <= K*m,
    plus zero and an absorbing top taking any sum that leaves the window.

    Associativity holds because the cone |n| <= K*m is closed under addition
    (triangle inequality), so a subtotal can only overflow in the m-coordinate
    and then the total overflows too.  Elements are ordered by level m, then
    |n| with the nonnegative one first.
    """
    if kk < 1 or mm < 1:
        raise UnknownBuiltin(f"SPH needs parameters >= 1, got ({kk}, {mm})")
    window = [(0, 0)]
    for m in range(1, mm + 1):
        for absn in range(0, kk * m + 1):
            window.append((absn, m))
            if absn:
                window.append((-absn, m))
    labels = tuple(f"({n},{m})" for n, m in window) + ("top",)
    top = len(window)
    pos = {p: i for i, p in enumerate(window)}

    def plus(i, j):
        if i == top or j == top:
            return top
        n1, m1 = window[i]
        n2, m2 = window[j]
        return pos.get((n1 + n2, m1 + m2), top)

    n_total = top + 1
    add = tuple(
        tuple(labels[plus(i, j)] for j in range(n_total)) for i in range(n_total)
    )
    doc = ModelDocument(f"SPH({kk},{mm})", labels, "(0,0)", add, "algebraic")
    return validate(doc)


def builtin_model(name: str, params=()) -> FiniteOrderedMonoid:
    params = tuple(params)
    if name == "T1":
        built = _t1()
    elif name == "O2":
        built = _o2()
    elif name == "E2":
        built = _e2()
    elif name == "N2":
        built = _ncap(2, name="N2")
    elif name == "NCAP":
        if len(params) != 1:
            raise UnknownBuiltin("NCAP takes one parameter, the cap")
        built = _ncap(int(params[0]))
    elif name == "F4":
        built = product_model(_o2(), _o2(), name="F4")
    elif name == "GAP4":
        built = _gap4()
    elif name == "SPH":
        if len(params) != 2:
            raise UnknownBuiltin("SPH takes two parameters, the slope and the height")
        built = _sph(int(params[0]), int(params[1]))
    elif name == "product":
        if len(params) != 2:
            raise UnknownBuiltin("product takes two parameters, the factor specs")
        a = builtin_from_spec(str(params[0]))
        b = builtin_from_spec(str(params[1]))
        built = product_model(a, b)
    else:
        raise UnknownBuiltin(f"unknown builtin {name!r}; known: {BUILTIN_NAMES}")
    if name in ("T1", "O2", "E2", "N2", "F4", "GAP4"):
        if params:
            raise UnknownBuiltin(f"{name} takes no parameters")
    return built


_SPEC_RE = re.compile(r"^\s*([A-Za-z0-9]+)\s*(?:\((.*)\))?\s*$")


def builtin_from_spec(spec: str) -> FiniteOrderedMonoid:
    """Parse specs like "O2", "NCAP(3)", "SPH(1,2)", "product(O2,NCAP(1))"."""
    match = _SPEC_RE.match(spec)
    if not match:
        raise UnknownBuiltin(f"cannot parse builtin spec {spec!r}")
    name, raw = match.groups()
    if raw is None:
        return builtin_model(name)
    params, depth, cur = [], 0, ""
    for ch in raw:
        if ch == "," and depth == 0:
            params.append(cur.strip())
            cur = ""
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        cur += ch
    if cur.strip():
        params.append(cur.strip())
    return builtin_model(name, tuple(params))


# ---------------------------------------------------------------------------
# Exhaustive enumeration
# ---------------------------------------------------------------------------

def _monoid_tables(n: int):
    """Commutative monoid tables on {0..n-1} with neutral 0, one per
    isomorphism class (the lexicographically least table in cell order)."""
    if n == 1:
        yield ((0,),)
        return
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    perms = [p for p in itertools.permutations(range(1, n))]
    perms.remove(tuple(range(1, n)))
    full_perms = [(0,) + p for p in perms]
    inverses = []
    for p in full_perms:
        inv = [0] * n
        for old, new in enumerate(p):
            inv[new] = old
        inverses.append(tuple(inv))

    table = [[-1] * n for _ in range(n)]
    for j in range(n):
        table[0][j] = j
        table[j][0] = j

    def triple_ok(a, b, c):
        ab = table[a][b]
        if ab < 0:
            return True
        bc = table[b][c]
        if bc < 0:
            return True
        left = table[ab][c]
        right = table[a][bc]
        return left < 0 or right < 0 or left == right

    def affected_ok(a, b):
        # triples whose evaluation can involve the freshly set cell {a, b}
        for z in range(n):
            for (p, q, r) in ((a, b, z), (b, a, z), (z, a, b), (z, b, a),
                              (a, z, b), (b, z, a)):
                if not triple_ok(p, q, r):
                    return False
        for x in range(n):
            row = table[x]
            for y in range(n):
                v = row[y]
                if v < 0:
                    continue
                if v == a and not (triple_ok(x, y, b) and triple_ok(b, x, y)):
                    return False
                if v == b and not (triple_ok(x, y, a) and triple_ok(a, x, y)):
                    return False
        return True

    def canonical_prefix(count):
        for perm, inv in zip(full_perms, inverses):
            for idx in range(count):
                i, j = cells[idx]
                src = table[inv[i]][inv[j]]
                if src < 0:
                    break  # transform undefined here; inconclusive
                transformed = perm[src]
                current = table[i][j]
                if transformed < current:
                    return False
                if transformed > current:
                    break
        return True

    def fill(idx):
        if idx == len(cells):
            for a in range(n):
                for b in range(n):
                    ab = table[a][b]
                    for c in range(n):
                        if table[ab][c] != table[a][table[b][c]]:
                            return
            yield tuple(tuple(row) for row in table)
            return
        i, j = cells[idx]
        for v in range(n):
            table[i][j] = v
            table[j][i] = v
            if affected_ok(i, j) and canonical_prefix(idx + 1):
                yield from fill(idx + 1)
        table[i][j] = -1
        table[j][i] = -1

    yield from fill(0)


def _is_antisymmetric(leq, n):
    return not any(leq[x][y] and leq[y][x] for x in range(n) for y in range(x + 1, n))


def _algebraic_leq(add, n):
    leq = [[False] * n for _ in range(n)]
    for x in range(n):
        for c in range(n):
            leq[x][add[x][c]] = True
    return leq


def _compatible_orders(add, base, n):
    """All partial orders containing the algebraic one that keep addition
    monotone.  Candidates are the missing non-reflexive pairs; each subset is
    checked for transitivity, antisymmetry, and monotonicity."""
    candidates = [
        (i, j) for i in range(n) for j in range(n) if i != j and not base[i][j]
    ]
    for mask in range(1 << len(candidates)):
        leq = [row[:] for row in base]
        for bit, (i, j) in enumerate(candidates):
            if mask >> bit & 1:
                leq[i][j] = True
        ok = True
        for i in range(n):
            for j in range(n):
                if not leq[i][j]:
                    continue
                if any(leq[j][k] and not leq[i][k] for k in range(n)):
                    ok = False
                    break
                if i != j and leq[j][i]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        for x in range(n):
            for xp in range(n):
                if not leq[x][xp]:
                    continue
                for y in range(n):
                    for yp in range(n):
                        if leq[y][yp] and not leq[add[x][y]][add[xp][yp]]:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            yield tuple(tuple(row) for row in leq)


_LETTERS = "abcdefghijk"


def _labels_for(n):
    return ("0",) + tuple(_LETTERS[i] for i in range(n - 1))


def enumerate_corpus(max_size: int, order_mode: str = "algebraic"):
    """All positively ordered monoids up to isomorphism with at most max_size
    elements, as a deterministically ordered list.

    order_mode "algebraic" attaches the order derived from addition (tables
    whose derived preorder is not antisymmetric are dropped); "all_compatible"
    attaches every partial order compatible with the addition and is limited
    to size 4.
    """
    if order_mode not in ("algebraic", "all_compatible"):
        raise ValueError(f"unknown order mode {order_mode!r}")
    if max_size < 1:
        raise GuardrailExceeded("max_size must be at least 1")
    if max_size > MAX_ENUM_SIZE:
        raise GuardrailExceeded(
            f"enumeration is limited to size {MAX_ENUM_SIZE}, got {max_size}"
        )
    if order_mode == "all_compatible" and max_size > MAX_ALL_COMPATIBLE_SIZE:
        raise GuardrailExceeded(
            f"all_compatible enumeration is limited to size "
            f"{MAX_ALL_COMPATIBLE_SIZE}, got {max_size}"
        )
    prefix = "alg" if order_mode == "algebraic" else "all"
    out = []
    for n in range(1, max_size + 1):
        labels = _labels_for(n)
        found = []
        for add in _monoid_tables(n):
            base = _algebraic_leq(add, n)
            if not _is_antisymmetric(base, n):
                continue
            if order_mode == "algebraic":
                orders = [(tuple(tuple(row) for row in base), "algebraic")]
            else:
                orders = [(leq, "explicit") for leq in _compatible_orders(add, base, n)]
            seen = set()
            for leq, mode in orders:
                model = FiniteOrderedMonoid(
                    name="",
                    labels=labels,
                    zero=0,
                    add=add,
                    leq=leq,
                    order_mode=mode,
                )
                key = canonical_form(model)
                if key in seen:
                    continue
                seen.add(key)
                found.append((key, model))
        found.sort(key=lambda pair: pair[0])
        for i, (_key, model) in enumerate(found):
            out.append(model.rename(f"{prefix}{n}_{i:03d}"))
    return out

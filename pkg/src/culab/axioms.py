"""Decision procedures for the order axioms O5-O8, Riesz interpolation, and
dimension bounds.

Every check evaluates the finite collapse of its axiom: way-below is the
order itself, and primed variables default to their unprimed companions.
Taking x' = x is an equivalence, not an approximation: a witness for the
collapsed instance serves every primed weakening of it (smaller primed
elements only relax the conclusion), and the collapsed instance is itself one
of the primed instances.  Both forms are implemented; `primed=True` selects
the fully quantified variant, which exists to let the equivalence be asserted
over a corpus rather than trusted.

Counterexamples are lexicographically first in the variable order of the
axiom statement, so outputs are stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionFailed
from .model import FiniteOrderedMonoid, require_partial_order

__all__ = ["AxiomCounterexample", "AXIOMS", "check_axiom", "check_dim_leq", "replay"]

AXIOMS = ("O5", "O6", "O7", "O8", "Riesz")


@dataclass(frozen=True)
class AxiomCounterexample:
    """Bindings for which the existential body of an axiom has no witness."""

    axiom: str
    bindings: dict

    def pretty(self) -> str:
        inner = ", ".join(f"{k}={v}" for k, v in self.bindings.items())
        return f"{self.axiom} fails at ({inner})"


def check_axiom(model: FiniteOrderedMonoid, which: str, primed: bool = False):
    """Return None when the axiom holds, else the first counterexample."""
    require_partial_order(model)
    try:
        checker = _CHECKERS[which]
    except KeyError:
        raise ValueError(f"unknown axiom {which!r}; expected one of {AXIOMS}")
    return checker(model, primed)


def _o5_body(m: FiniteOrderedMonoid, x, xp, y, yp, z) -> bool:
    # exists c with y' <= c and x' + c <= z <= x + c
    for c in m.elements():
        if m.le(yp, c) and m.le(m.plus(xp, c), z) and m.le(z, m.plus(x, c)):
            return True
    return False


def _check_o5(m: FiniteOrderedMonoid, primed: bool):
    for x in m.elements():
        xps = m.below(x) if primed else (x,)
        for y in m.elements():
            yps = m.below(y) if primed else (y,)
            xy = m.plus(x, y)
            for z in m.elements():
                if not m.le(xy, z):
                    continue
                for xp in xps:
                    for yp in yps:
                        if not _o5_body(m, x, xp, y, yp, z):
                            b = {"x": m.label(x), "y": m.label(y), "z": m.label(z)}
                            if primed:
                                b["x'"] = m.label(xp)
                                b["y'"] = m.label(yp)
                            return AxiomCounterexample("O5", b)
    return None


def _o6_body(m: FiniteOrderedMonoid, x, xp, y, z) -> bool:
    # exists v <= x, y and w <= x, z with x' <= v + w
    for v in m.elements():
        if not (m.le(v, x) and m.le(v, y)):
            continue
        for w in m.elements():
            if m.le(w, x) and m.le(w, z) and m.le(xp, m.plus(v, w)):
                return True
    return False


def _check_o6(m: FiniteOrderedMonoid, primed: bool):
    for x in m.elements():
        xps = m.below(x) if primed else (x,)
        for y in m.elements():
            for z in m.elements():
                if not m.le(x, m.plus(y, z)):
                    continue
                for xp in xps:
                    if not _o6_body(m, x, xp, y, z):
                        b = {"x": m.label(x), "y": m.label(y), "z": m.label(z)}
                        if primed:
                            b["x'"] = m.label(xp)
                        return AxiomCounterexample("O6", b)
    return None


def _o7_body(m: FiniteOrderedMonoid, x1p, x2p, w, s) -> bool:
    # exists x with x1', x2' <= x <= w and x <= x1 + x2  (s is that sum)
    for x in m.elements():
        if m.le(x1p, x) and m.le(x2p, x) and m.le(x, w) and m.le(x, s):
            return True
    return False


def _check_o7(m: FiniteOrderedMonoid, primed: bool):
    for x1 in m.elements():
        x1ps = m.below(x1) if primed else (x1,)
        for x2 in m.elements():
            x2ps = m.below(x2) if primed else (x2,)
            s = m.plus(x1, x2)
            for w in m.elements():
                if not (m.le(x1, w) and m.le(x2, w)):
                    continue
                for x1p in x1ps:
                    for x2p in x2ps:
                        if not _o7_body(m, x1p, x2p, w, s):
                            b = {"x1": m.label(x1), "x2": m.label(x2), "w": m.label(w)}
                            if primed:
                                b["x1'"] = m.label(x1p)
                                b["x2'"] = m.label(x2p)
                            return AxiomCounterexample("O7", b)
    return None


def _o8_body(m: FiniteOrderedMonoid, x, xp, y, yp, z, w) -> bool:
    for z1 in m.elements():
        z1w = m.plus(z1, w)
        if not (m.le(xp, z1w) and m.le(z1, m.plus(x, w))):
            continue
        for z2 in m.elements():
            if (
                m.le(m.plus(z1, z2), z)
                and m.le(yp, m.plus(z2, w))
                and m.le(z2, m.plus(y, w))
            ):
                return True
    return False


def _check_o8(m: FiniteOrderedMonoid, primed: bool):
    doubling = [w for w in m.elements() if m.plus(w, w) == w]
    for x in m.elements():
        xps = m.below(x) if primed else (x,)
        for y in m.elements():
            yps = m.below(y) if primed else (y,)
            xy = m.plus(x, y)
            for z in m.elements():
                for w in doubling:
                    if not m.le(xy, m.plus(z, w)):
                        continue
                    for xp in xps:
                        for yp in yps:
                            if not _o8_body(m, x, xp, y, yp, z, w):
                                b = {
                                    "x": m.label(x),
                                    "y": m.label(y),
                                    "z": m.label(z),
                                    "w": m.label(w),
                                }
                                if primed:
                                    b["x'"] = m.label(xp)
                                    b["y'"] = m.label(yp)
                                return AxiomCounterexample("O8", b)
    return None


def _check_riesz(m: FiniteOrderedMonoid, primed: bool):
    # Interpolation has no primed variables; `primed` is accepted for
    # signature uniformity.
    del primed
    for x1 in m.elements():
        for x2 in m.elements():
            for y1 in m.elements():
                if not (m.le(x1, y1) and m.le(x2, y1)):
                    continue
                for y2 in m.elements():
                    if not (m.le(x1, y2) and m.le(x2, y2)):
                        continue
                    if not any(
                        m.le(x1, zz) and m.le(x2, zz) and m.le(zz, y1) and m.le(zz, y2)
                        for zz in m.elements()
                    ):
                        return AxiomCounterexample(
                            "Riesz",
                            {
                                "x1": m.label(x1),
                                "x2": m.label(x2),
                                "y1": m.label(y1),
                                "y2": m.label(y2),
                            },
                        )
    return None


_CHECKERS = {
    "O5": _check_o5,
    "O6": _check_o6,
    "O7": _check_o7,
    "O8": _check_o8,
    "Riesz": _check_riesz,
}


# ---------------------------------------------------------------------------
# Dimension
# ---------------------------------------------------------------------------

def _column_sums(m: FiniteOrderedMonoid, ys, x) -> set[int]:
    """Sums z_1 + ... + z_r with z_j <= ys[j] that stay below x.

    Intermediate sums not below x are pruned: later summands only increase the
    total, so such a prefix can never end below x.
    """
    states = {m.zero}
    for y in ys:
        nxt = set()
        for s in states:
            for zv in m.below(y):
                t = m.plus(s, zv)
                if m.le(t, x):
                    nxt.add(t)
        states = nxt
        if not states:
            break
    return states


def _dim_witnesses_exist(m: FiniteOrderedMonoid, x, ys, levels: int) -> bool:
    cols = _column_sums(m, ys, x)
    if not cols:
        return False
    totals = {m.zero}
    for _ in range(levels):
        totals = {m.plus(t, s) for t in totals for s in cols}
    return any(m.le(x, t) for t in totals)


def check_dim_leq(model: FiniteOrderedMonoid, n: int):
    """Decide dim(S) <= n; None on pass, else the failing (x, y-list).

    Sum lists y_1..y_r are searched as nondecreasing index tuples whose left
    partial sums strictly increase.  That loses nothing: reordering a list
    permutes the witness grid, a zero summand can carry zero witnesses, and
    when a partial sum stalls the stalling summand can be dropped without
    changing any total.  Strictly increasing partial sums form a chain, so
    r <= |S| automatically.
    """
    require_partial_order(model)
    if n < 0:
        raise PreconditionFailed("dimension bound must be nonnegative")
    m = model
    nonzero = [e for e in m.elements() if e != m.zero]
    levels = n + 1

    def search(x, ys, total, min_gen) -> AxiomCounterexample | None:
        if m.le(x, total):
            if _dim_witnesses_exist(m, x, ys, levels):
                return None  # extensions also hold: pad with zero witnesses
            return AxiomCounterexample(
                f"dim<={n}",
                {"x": m.label(x), "ys": [m.label(y) for y in ys]},
            )
        if len(ys) >= m.n:
            return None
        for y in nonzero:
            if y < min_gen:
                continue
            t = m.plus(total, y)
            if t == total:
                continue  # stalled partial sum; the shorter list covers this
            bad = search(x, ys + [y], t, y)
            if bad is not None:
                return bad
        return None

    for x in m.elements():
        bad = search(x, [], m.zero, 0)
        if bad is not None:
            return bad
    return None


# ---------------------------------------------------------------------------
# Replay
# ---------------------------------------------------------------------------

def replay(model: FiniteOrderedMonoid, cx: AxiomCounterexample) -> bool:
    """True iff the counterexample still fails when its bindings are pushed
    back through the axiom's existential body."""
    m = model
    b = cx.bindings
    ix = {k: m.index(v) for k, v in b.items() if isinstance(v, str)}
    if cx.axiom == "O5":
        return not _o5_body(m, ix["x"], ix.get("x'", ix["x"]), ix["y"],
                            ix.get("y'", ix["y"]), ix["z"])
    if cx.axiom == "O6":
        return not _o6_body(m, ix["x"], ix.get("x'", ix["x"]), ix["y"], ix["z"])
    if cx.axiom == "O7":
        s = m.plus(ix["x1"], ix["x2"])
        return not _o7_body(m, ix.get("x1'", ix["x1"]), ix.get("x2'", ix["x2"]),
                            ix["w"], s)
    if cx.axiom == "O8":
        return not _o8_body(m, ix["x"], ix.get("x'", ix["x"]), ix["y"],
                            ix.get("y'", ix["y"]), ix["z"], ix["w"])
    if cx.axiom == "Riesz":
        return not any(
            m.le(ix["x1"], zz) and m.le(ix["x2"], zz)
            and m.le(zz, ix["y1"]) and m.le(zz, ix["y2"])
            for zz in m.elements()
        )
    if cx.axiom.startswith("dim<="):
        levels = int(cx.axiom.split("<=")[1]) + 1
        ys = [m.index(lbl) for lbl in b["ys"]]
        return not _dim_witnesses_exist(m, ix["x"], ys, levels)
    raise ValueError(f"cannot replay {cx.axiom!r}")

"""(k,omega)-divisibility, weak divisibility, the ideal-generation relation,
and scales.

An element x is (k,omega)-divisible when every x' <= x admits z with
k*z <= x and x' below the stabilized multiple of z; weakly so when x' is
dominated by a finite sum of such z.  Weak divisibility is decided through
the submonoid generated by D = {z : k*z <= x} rather than a bounded tuple
search: a sum of D-elements dominating x' is exactly an element of that
submonoid above x', and the submonoid closure costs O(|S|^2) per step.

Witnesses are chosen deterministically.  Single witnesses take the least
index; witness lists take the lexicographically least nondecreasing tuple of
generator indices, enumerated with strictly increasing partial sums (a
stalled partial sum means the stalled summand may be deleted, so nothing is
lost and list lengths stay below |S|).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import NotAScale, PreconditionFailed
from .model import FiniteOrderedMonoid, require_partial_order

__all__ = [
    "DivisibilityResult",
    "WeakDivisibilityResult",
    "Scale",
    "is_divisible",
    "is_weakly_divisible",
    "model_divisible",
    "model_weakly_divisible",
    "rel_below_ideal",
    "check_scale_divisibility",
    "enumerate_scales",
    "lex_least_sums",
]


@dataclass(frozen=True)
class DivisibilityResult:
    ok: bool
    k: int
    witness: str | None = None  # least z for the slice x' = x
    counterexample: str | None = None  # least x' <= x with no witness

    def certificate(self) -> dict | None:
        if self.ok:
            return {"witness": {"z": self.witness}}
        return {"counterexample": {"x'": self.counterexample}}


@dataclass(frozen=True)
class WeakDivisibilityResult:
    ok: bool
    k: int
    witnesses: tuple[str, ...] | None = None
    counterexample: str | None = None

    def certificate(self) -> dict | None:
        if self.ok:
            return {"witness": {"zs": list(self.witnesses or ())}}
        return {"counterexample": {"x'": self.counterexample}}


def _require_k(k: int) -> None:
    if k < 1:
        raise PreconditionFailed(f"divisibility degree must be >= 1, got {k}")


def is_divisible(model: FiniteOrderedMonoid, x: int, k: int) -> DivisibilityResult:
    require_partial_order(model)
    _require_k(k)
    m = model
    kmul = [m.mul(k, z) for z in m.elements()]
    top_witness = None
    for xp in m.below(x):
        found = None
        for z in m.elements():
            if m.le(kmul[z], x) and m.le(xp, m.inf(z)):
                found = z
                break
        if found is None:
            return DivisibilityResult(False, k, counterexample=m.label(xp))
        if xp == x:
            top_witness = found
    assert top_witness is not None
    return DivisibilityResult(True, k, witness=m.label(top_witness))


def lex_least_sums(model: FiniteOrderedMonoid, gens) -> dict[int, tuple[int, ...]]:
    """For each sum of a multiset over `gens`, the lexicographically least
    nondecreasing tuple realizing it.

    Tuples are enumerated through a heap in global lexicographic order, so the
    first tuple reaching an element is its least one.  Extensions are pushed
    even for elements already reached: a later tuple may extend by smaller
    generators and reach elements its predecessors cannot.
    """
    m = model
    gens = sorted(set(gens) - {m.zero})
    best: dict[int, tuple[int, ...]] = {m.zero: ()}
    heap: list[tuple[tuple[int, ...], int]] = [((g,), m.plus(m.zero, g)) for g in gens]
    heapq.heapify(heap)
    while heap:
        tup, total = heapq.heappop(heap)
        if total not in best:
            best[total] = tup
        if len(tup) >= m.n:
            continue
        last = tup[-1]
        for g in gens:
            if g < last:
                continue
            t = m.plus(total, g)
            if t == total:
                continue  # stalled partial sum
            heapq.heappush(heap, (tup + (g,), t))
    return best


def is_weakly_divisible(model: FiniteOrderedMonoid, x: int, k: int) -> WeakDivisibilityResult:
    require_partial_order(model)
    _require_k(k)
    m = model
    gens = [z for z in m.elements() if m.le(m.mul(k, z), x)]
    sums = lex_least_sums(m, gens)
    for xp in m.below(x):
        if not any(m.le(xp, s) for s in sums):
            return WeakDivisibilityResult(False, k, counterexample=m.label(xp))
    candidates = [tup for s, tup in sums.items() if m.le(x, s)]
    witness = min(candidates)
    return WeakDivisibilityResult(True, k, witnesses=tuple(m.label(g) for g in witness))


def model_divisible(model: FiniteOrderedMonoid, k: int):
    """Every element divisible; first failing element otherwise."""
    for x in model.elements():
        res = is_divisible(model, x, k)
        if not res.ok:
            return False, {"x": model.label(x), "x'": res.counterexample}
    return True, None


def model_weakly_divisible(model: FiniteOrderedMonoid, k: int):
    for x in model.elements():
        res = is_weakly_divisible(model, x, k)
        if not res.ok:
            return False, {"x": model.label(x), "x'": res.counterexample}
    return True, None


def rel_below_ideal(model: FiniteOrderedMonoid, x: int, y: int) -> bool:
    """x lies in the ideal generated by y (x <= stabilized multiple of y)."""
    require_partial_order(model)
    return model.le(x, model.inf(y))


# ---------------------------------------------------------------------------
# Scales
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Scale:
    """A downward-hereditary subset that generates the model as an ideal.
    Closure under suprema is automatic in a finite model."""

    members: frozenset

    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))


def check_scale(model: FiniteOrderedMonoid, members) -> Scale:
    require_partial_order(model)
    m = model
    members = frozenset(members)
    for x in sorted(members):
        for y in m.below(x):
            if y not in members:
                raise NotAScale(
                    "not downward-hereditary",
                    f"{m.label(y)} ≤ {m.label(x)} but {m.label(y)} is missing",
                )
    total = m.sum(sorted(members))
    generated = m.inf(total)
    if not all(m.le(y, generated) for y in m.elements()):
        missing = next(y for y in m.elements() if not m.le(y, generated))
        raise NotAScale(
            "not generating",
            f"{m.label(missing)} is outside the ideal generated by the subset",
        )
    return Scale(members)


def check_scale_divisibility(model: FiniteOrderedMonoid, members, k: int):
    """True iff every element of the scale is (k,omega)-divisible.

    Raises NotAScale when the subset fails the scale laws.
    """
    scale = check_scale(model, members)
    _require_k(k)
    for x in scale.sorted_members():
        res = is_divisible(model, x, k)
        if not res.ok:
            return False, {"x": model.label(x), "x'": res.counterexample}
    return True, None


def enumerate_scales(model: FiniteOrderedMonoid):
    """All scales, as sorted index tuples, in subset-bitmask order."""
    require_partial_order(model)
    m = model
    out = []
    for mask in range(1 << m.n):
        members = [e for e in m.elements() if mask >> e & 1]
        if any(y not in members for x in members for y in m.below(x)):
            continue
        generated = m.inf(m.sum(members))
        if all(m.le(y, generated) for y in m.elements()):
            out.append(tuple(members))
    return out

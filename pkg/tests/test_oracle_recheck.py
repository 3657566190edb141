"""Second-opinion oracles: the main quantified checks re-derived from their
statements with plain product loops, then compared verdict-for-verdict with
the production implementations over the corpus and fixture models.

The production paths use pruning (hypothesis-ordered loops, submonoid
closure, memoized stabilized multiples); these oracles use none of it, so a
transcription slip in either side shows up as a disagreement.
"""

import itertools

from culab.axioms import check_axiom, check_dim_leq
from culab.divisibility import is_divisible, is_weakly_divisible
from culab.glimm import full_elements_filtered, has_property_V, is_ideal_filtered


def inf_of(m, x):
    seen = x
    while m.plus(seen, x) != seen:
        seen = m.plus(seen, x)
    return seen


def oracle_o5(m):
    E = range(m.n)
    for x, y, z in itertools.product(E, repeat=3):
        if m.le(m.plus(x, y), z):
            if not any(
                m.le(y, c) and m.plus(x, c) == z for c in E
            ):
                return False
    return True


def oracle_o6(m):
    E = range(m.n)
    for x, y, z in itertools.product(E, repeat=3):
        if m.le(x, m.plus(y, z)):
            if not any(
                m.le(v, x) and m.le(v, y) and m.le(w, x) and m.le(w, z)
                and m.le(x, m.plus(v, w))
                for v, w in itertools.product(E, repeat=2)
            ):
                return False
    return True


def oracle_o7(m):
    E = range(m.n)
    for x1, x2, w in itertools.product(E, repeat=3):
        if m.le(x1, w) and m.le(x2, w):
            if not any(
                m.le(x1, x) and m.le(x2, x) and m.le(x, w)
                and m.le(x, m.plus(x1, x2))
                for x in E
            ):
                return False
    return True


def oracle_o8(m):
    E = range(m.n)
    for x, y, z, w in itertools.product(E, repeat=4):
        if m.plus(w, w) != w:
            continue
        if not m.le(m.plus(x, y), m.plus(z, w)):
            continue
        if not any(
            m.le(m.plus(z1, z2), z)
            and m.le(x, m.plus(z1, w))
            and m.le(y, m.plus(z2, w))
            and m.le(z1, m.plus(x, w))
            and m.le(z2, m.plus(y, w))
            for z1, z2 in itertools.product(E, repeat=2)
        ):
            return False
    return True


def oracle_riesz(m):
    E = range(m.n)
    for x1, x2, y1, y2 in itertools.product(E, repeat=4):
        if all(m.le(a, b) for a in (x1, x2) for b in (y1, y2)):
            if not any(
                m.le(x1, z) and m.le(x2, z) and m.le(z, y1) and m.le(z, y2)
                for z in E
            ):
                return False
    return True


def oracle_ideal_filtered(m):
    E = range(m.n)
    for v, x, y in itertools.product(E, repeat=3):
        if m.le(v, inf_of(m, x)) and m.le(v, inf_of(m, y)):
            if not any(
                m.le(z, x) and m.le(z, y) and m.le(v, inf_of(m, z)) for z in E
            ):
                return False
    return True


def oracle_property_v(m):
    E = range(m.n)
    for c, d1, d2, x in itertools.product(E, repeat=4):
        if not (m.le(d1, c) and m.le(d2, c)):
            continue
        if not (m.le(m.plus(c, d1), x) and m.le(m.plus(c, d2), x)):
            continue
        d = m.plus(d1, d2)
        if not any(
            m.le(m.plus(y, z), x)
            and m.le(d, inf_of(m, y))
            and m.le(d, inf_of(m, z))
            for y, z in itertools.product(E, repeat=2)
        ):
            return False
    return True


def oracle_full_filtered(m):
    fulls = [
        e for e in range(m.n)
        if all(m.le(y, inf_of(m, e)) for y in range(m.n))
    ]
    return all(
        any(m.le(z, x) and m.le(z, y) for z in fulls)
        for x in fulls
        for y in fulls
    )


def oracle_divisible(m, x, k):
    E = range(m.n)
    for xp in E:
        if not m.le(xp, x):
            continue
        if not any(
            m.le(m.mul(k, z), x) and m.le(xp, inf_of(m, z)) for z in E
        ):
            return False
    return True


def oracle_weakly_divisible(m, x, k):
    # bounded tuple search, the formulation the production path replaced by
    # submonoid closure: sums of at most |S| admissible summands
    E = range(m.n)
    good = [z for z in E if m.le(m.mul(k, z), x)]
    sums = {m.zero}
    frontier = {m.zero}
    for _ in range(m.n):
        frontier = {m.plus(s, z) for s in frontier for z in good} - sums
        sums |= frontier
    for xp in E:
        if m.le(xp, x) and not any(m.le(xp, s) for s in sums):
            return False
    return True


def oracle_dim0(m):
    # single-level witnesses: x below a sum forces an exact column splitting
    E = range(m.n)
    for x in E:
        for r in range(1, m.n + 1):
            for ys in itertools.product(E, repeat=r):
                if not m.le(x, m.sum(ys)):
                    continue
                if not any(
                    m.sum(zs) == x and all(m.le(z, y) for z, y in zip(zs, ys))
                    for zs in itertools.product(E, repeat=r)
                ):
                    return False
    return True


def test_axiom_checks_match_oracles(acceptance_models, corpus4_all):
    oracles = {
        "O5": oracle_o5,
        "O6": oracle_o6,
        "O7": oracle_o7,
        "O8": oracle_o8,
        "Riesz": oracle_riesz,
    }
    for m in list(acceptance_models) + list(corpus4_all):
        for which, oracle in oracles.items():
            assert (check_axiom(m, which) is None) == oracle(m), (m.name, which)


def test_glimm_checks_match_oracles(acceptance_models, corpus4_all):
    for m in list(acceptance_models) + list(corpus4_all):
        assert is_ideal_filtered(m).ok == oracle_ideal_filtered(m), m.name
        assert has_property_V(m).ok == oracle_property_v(m), m.name
        assert full_elements_filtered(m).ok == oracle_full_filtered(m), m.name


def test_divisibility_checks_match_oracles(acceptance_models, corpus4_all):
    for m in list(acceptance_models) + list(corpus4_all):
        for x in m.elements():
            for k in (1, 2, 3):
                assert is_divisible(m, x, k).ok == oracle_divisible(m, x, k)
                assert (
                    is_weakly_divisible(m, x, k).ok
                    == oracle_weakly_divisible(m, x, k)
                ), (m.name, x, k)


def test_dim0_matches_oracle(corpus4, corpus4_all):
    # the oracle enumerates unreduced length-r tuples, so keep to tiny models
    for m in list(corpus4) + list(corpus4_all):
        if m.n > 4:
            continue
        assert (check_dim_leq(m, 0) is None) == oracle_dim0(m), m.name

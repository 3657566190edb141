import pytest

from culab.axioms import check_axiom
from culab.divisibility import is_weakly_divisible
from culab.errors import PreconditionFailed
from culab.glimm import is_ideal_filtered
from culab.ideals import is_refinement_monoid
from culab.model import load_model
from culab.witnesses import (
    verify_div_o5,
    verify_ref_o7,
    verify_refinement_ef,
    verify_wkdiv_decomposition,
    verify_wkdiv_pair,
    witness_div_o5,
    witness_ref_o7,
    witness_refinement_ef,
    witness_wkdiv_decomposition,
    witness_wkdiv_pair,
)


def alg_le(m, x, y):
    return any(m.plus(x, s) == y for s in m.elements())


class TestDivO5:
    def test_n2(self, builtins):
        n2 = builtins["N2"]
        y = witness_div_o5(n2, n2.index("1"), n2.index("2"), 2)
        assert n2.label(y) == "1"
        assert verify_div_o5(n2, n2.index("1"), n2.index("2"), 2, y)

    def test_o2_idempotent(self, builtins):
        o2 = builtins["O2"]
        u = o2.index("u")
        assert witness_div_o5(o2, u, u, 2) == u

    def test_gap4_k1(self, builtins):
        gap4 = builtins["GAP4"]
        y = witness_div_o5(gap4, gap4.index("p"), gap4.index("t"), 1)
        assert gap4.label(y) == "t"

    def test_precondition(self, builtins):
        gap4 = builtins["GAP4"]
        with pytest.raises(PreconditionFailed):
            witness_div_o5(gap4, gap4.index("p"), gap4.index("q"), 2)
        with pytest.raises(PreconditionFailed):
            witness_div_o5(gap4, 0, 0, 0)

    def test_not_found_only_on_o5_failure(self, fixture_path):
        # frozen enumeration find: an O5-failing model where the search space
        # is genuinely empty
        m = load_model(fixture_path / "o5fail4.json")
        assert check_axiom(m, "O5") is not None
        assert witness_div_o5(m, m.index("c"), m.index("b"), 2) is None


class TestRefO7:
    def test_n2(self, builtins):
        n2 = builtins["N2"]
        one = n2.index("1")
        x = witness_ref_o7(n2, [one, one], n2.index("2"))
        assert n2.label(x) == "1"

    def test_zeros(self, acceptance_models):
        for m in acceptance_models:
            for w in m.elements():
                assert witness_ref_o7(m, [m.zero, m.zero], w) == m.zero

    def test_f4_sum_is_top(self, builtins):
        f4 = builtins["F4"]
        x = witness_ref_o7(
            f4, [f4.index("(u,0)"), f4.index("(0,u)")], f4.index("(u,u)")
        )
        assert f4.label(x) == "(u,u)"

    def test_precondition(self, builtins):
        f4 = builtins["F4"]
        with pytest.raises(PreconditionFailed):
            witness_ref_o7(f4, [f4.index("(u,u)")], f4.index("(u,0)"))

    def test_not_found_on_o7_failing_model(self, builtins):
        sph = builtins["SPH(1,2)"]
        assert check_axiom(sph, "O7") is not None
        got = witness_ref_o7(
            sph, [sph.index("(0,1)"), sph.index("(1,1)")], sph.index("(0,2)")
        )
        assert got is None


class TestWkdivDecomposition:
    def test_o2(self, builtins):
        o2 = builtins["O2"]
        c, ds = witness_wkdiv_decomposition(o2, o2.index("u"))
        assert o2.label(c) == "u" and [o2.label(d) for d in ds] == ["u"]

    def test_e2_inf(self, builtins):
        e2 = builtins["E2"]
        c, ds = witness_wkdiv_decomposition(e2, e2.index("inf"))
        assert e2.label(c) == "a" and [e2.label(d) for d in ds] == ["a", "a"]

    def test_f4_top(self, builtins):
        # any valid certificate is accepted; the deterministic search returns
        # the least base with the lexicographically least summand list
        f4 = builtins["F4"]
        x = f4.index("(u,u)")
        c, ds = witness_wkdiv_decomposition(f4, x)
        assert f4.label(c) == "(u,u)"
        assert verify_wkdiv_decomposition(f4, x, c, ds)

    def test_precondition(self, builtins):
        e2 = builtins["E2"]
        with pytest.raises(PreconditionFailed):
            witness_wkdiv_decomposition(e2, e2.index("a"))


class TestWkdivPair:
    def test_e2_inf(self, builtins):
        e2 = builtins["E2"]
        x = e2.index("inf")
        got = witness_wkdiv_pair(e2, x, 2)
        assert tuple(e2.label(v) for v in got) == ("a", "0", "a")
        assert verify_wkdiv_pair(e2, x, 2, *got)

    def test_idempotent_models(self, builtins):
        o2, f4 = builtins["O2"], builtins["F4"]
        assert verify_wkdiv_pair(o2, 1, 3, *witness_wkdiv_pair(o2, 1, 3))
        top = f4.index("(u,u)")
        assert verify_wkdiv_pair(f4, top, 2, *witness_wkdiv_pair(f4, top, 2))

    def test_precondition(self, builtins):
        e2 = builtins["E2"]
        with pytest.raises(PreconditionFailed):
            witness_wkdiv_pair(e2, e2.index("inf"), 0)
        with pytest.raises(PreconditionFailed):
            witness_wkdiv_pair(e2, e2.index("a"), 2)


class TestRefinementEF:
    def test_ncap3(self, builtins):
        m = builtins["NCAP(3)"]
        got = witness_refinement_ef(
            m, m.index("2"), m.index("1"), m.index("1"), m.index("inf")
        )
        assert tuple(m.label(v) for v in got) == ("1", "1")

    def test_trivial_and_idempotent(self, builtins):
        t1, o2 = builtins["T1"], builtins["O2"]
        assert witness_refinement_ef(t1, 0, 0, 0, 0) == (0, 0)
        assert witness_refinement_ef(o2, 1, 1, 1, 1) == (1, 1)

    def test_precondition(self, builtins):
        m = builtins["NCAP(3)"]
        with pytest.raises(PreconditionFailed):
            witness_refinement_ef(m, m.index("1"), m.index("2"), 0, m.index("inf"))


def _legal_div_o5_instances(m, ks=(1, 2, 3, 4)):
    for k in ks:
        for x in m.elements():
            for z in m.elements():
                if m.le(m.mul(k, x), z):
                    yield x, z, k


class TestCompletenessAndSoundness:
    def test_div_o5_complete_under_o5(self, acceptance_models, corpus4_all):
        for m in list(acceptance_models) + list(corpus4_all):
            holds = check_axiom(m, "O5") is None
            for x, z, k in _legal_div_o5_instances(m):
                y = witness_div_o5(m, x, z, k)
                if holds:
                    assert y is not None, (m.name, x, z, k)
                if y is not None:
                    assert verify_div_o5(m, x, z, k, y)

    def test_ref_o7_complete_under_o7(self, acceptance_models, corpus4_all):
        import itertools

        for m in list(acceptance_models) + list(corpus4_all):
            holds = check_axiom(m, "O7") is None
            for r in (1, 2, 3):
                for xs in itertools.product(m.elements(), repeat=r):
                    for w in m.elements():
                        if not all(m.le(xi, w) for xi in xs):
                            continue
                        got = witness_ref_o7(m, xs, w)
                        if holds:
                            assert got is not None, (m.name, xs, w)
                        if got is not None:
                            assert verify_ref_o7(m, xs, w, got)

    def test_wkdiv_searches_complete_under_hypotheses(self, acceptance_models, corpus4_all):
        for m in list(acceptance_models) + list(corpus4_all):
            o5 = check_axiom(m, "O5") is None
            o5678 = o5 and all(
                check_axiom(m, ax) is None for ax in ("O6", "O7", "O8")
            )
            filtered = is_ideal_filtered(m).ok
            for x in m.elements():
                if not is_weakly_divisible(m, x, 2).ok:
                    continue
                got = witness_wkdiv_decomposition(m, x)
                if o5 and filtered:
                    assert got is not None, (m.name, x)
                if got is not None:
                    assert verify_wkdiv_decomposition(m, x, *got)
                for mm in (1, 2, 3):
                    pair = witness_wkdiv_pair(m, x, mm)
                    if o5678 and filtered:
                        assert pair is not None, (m.name, x, mm)
                    if pair is not None:
                        assert verify_wkdiv_pair(m, x, mm, *pair)

    def test_refinement_ef_complete_on_refinement_models(self, acceptance_models, corpus4_all):
        for m in list(acceptance_models) + list(corpus4_all):
            refines = is_refinement_monoid(m)[0]
            for a in m.elements():
                for b1 in m.elements():
                    if not alg_le(m, b1, a):
                        continue
                    for b2 in m.elements():
                        if not alg_le(m, b2, a):
                            continue
                        for c in m.elements():
                            if not (
                                alg_le(m, m.plus(a, b1), c)
                                and alg_le(m, m.plus(a, b2), c)
                            ):
                                continue
                            got = witness_refinement_ef(m, a, b1, b2, c)
                            if refines:
                                assert got is not None, (m.name, a, b1, b2, c)
                            if got is not None:
                                assert verify_refinement_ef(m, a, b1, b2, c, *got)

"""Rule engine: named implications evaluated over model corpora.

Each rule pairs a hypothesis list with a conclusion.  A model where some
hypothesis fails yields status "vacuous" (visibly, so degenerate rules cannot
masquerade as coverage); hypotheses and conclusion together give "pass";
hypotheses without the conclusion give "FAIL" with a replayable certificate.
FAILs are data, not errors, but the whole table is theorem-backed: a FAIL on
a validated model means a defect in the checks, never an expected outcome.

Reports are merged with a stable sort on (model hash, name, rule id), so runs
are byte-identical regardless of the worker count.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

from . import divisibility, glimm, ideals, witnesses
from .axioms import check_axiom, check_dim_leq
from .model import FiniteOrderedMonoid, model_hash

__all__ = [
    "Rule",
    "RuleReport",
    "RULES",
    "RULES_BY_ID",
    "run_rules",
    "report_lines",
    "exploration_summary",
]


class ModelContext:
    """Per-model memo for the predicate evaluations the rules share."""

    def __init__(self, model: FiniteOrderedMonoid):
        self.model = model
        self._memo: dict[str, bool] = {}

    def holds(self, predicate: str) -> bool:
        if predicate not in self._memo:
            self._memo[predicate] = _PREDICATES[predicate](self)
        return self._memo[predicate]


def _axiom_pred(name):
    return lambda ctx: check_axiom(ctx.model, name) is None


def _div_pred(k):
    return lambda ctx: divisibility.model_divisible(ctx.model, k)[0]


def _wdiv_pred(k):
    return lambda ctx: divisibility.model_weakly_divisible(ctx.model, k)[0]


def _some_scale_divisible(ctx) -> bool:
    model = ctx.model
    for members in divisibility.enumerate_scales(model):
        ok, _ = divisibility.check_scale_divisibility(model, members, 2)
        if ok:
            return True
    return False


_PREDICATES: dict[str, Callable[[ModelContext], bool]] = {
    "O5": _axiom_pred("O5"),
    "O6": _axiom_pred("O6"),
    "O7": _axiom_pred("O7"),
    "O8": _axiom_pred("O8"),
    "Riesz": _axiom_pred("Riesz"),
    "div2": _div_pred(2),
    "div3": _div_pred(3),
    "div4": _div_pred(4),
    "wdiv2": _wdiv_pred(2),
    "wdiv3": _wdiv_pred(3),
    "wdiv4": _wdiv_pred(4),
    "ideal-filtered": lambda ctx: glimm.is_ideal_filtered(ctx.model, "definition").ok,
    "property-V": lambda ctx: glimm.has_property_V(ctx.model).ok,
    "dim<=0": lambda ctx: check_dim_leq(ctx.model, 0) is None,
    "residually-stably-finite": lambda ctx: ideals.is_stably_finite(ctx.model, residual=True)[0],
    "almost-unperforated": lambda ctx: ideals.is_almost_unperforated(ctx.model)[0],
    "refinement": lambda ctx: ideals.is_refinement_monoid(ctx.model)[0],
    "some-scale-div2": _some_scale_divisible,
}


@dataclass(frozen=True)
class Rule:
    id: str
    statement: str
    hypotheses: tuple[str, ...]
    conclusion: Callable[[ModelContext], tuple[bool, dict | None]]


@dataclass(frozen=True)
class RuleReport:
    model: str
    name: str | None
    rule: str
    status: str  # "pass" | "vacuous" | "FAIL"
    certificate: dict | None

    def to_json(self) -> str:
        return json.dumps(
            {
                "certificate": self.certificate,
                "model": self.model,
                "name": self.name,
                "rule": self.rule,
                "status": self.status,
            },
            sort_keys=True,
            ensure_ascii=False,
        )


# ---------------------------------------------------------------------------
# Conclusions
# ---------------------------------------------------------------------------

def _div_upgrades(ctx):
    for k in (3, 4):
        ok, cert = divisibility.model_divisible(ctx.model, k)
        if not ok:
            return False, {"k": k, **cert}
    return True, None


def _wdiv_upgrades(ctx):
    for k in (3, 4):
        ok, cert = divisibility.model_weakly_divisible(ctx.model, k)
        if not ok:
            return False, {"k": k, **cert}
    return True, None


def _concl_wdiv2(ctx):
    ok, cert = divisibility.model_weakly_divisible(ctx.model, 2)
    return ok, cert


def _concl_div2(ctx):
    ok, cert = divisibility.model_divisible(ctx.model, 2)
    return ok, cert


def _concl_ideal_filtered(ctx):
    res = glimm.is_ideal_filtered(ctx.model, "definition")
    return res.ok, res.certificate()


def _concl_property_v(ctx):
    res = glimm.has_property_V(ctx.model)
    return res.ok, res.certificate()


def _concl_div_extension(ctx):
    model = ctx.model
    div_s = ctx.holds("div2")
    for ideal in ideals.enumerate_ideals(model):
        sub = ideals.restrict_to_ideal(model, ideal)
        div_i, _ = divisibility.model_divisible(sub, 2)
        quot, _ = ideals.quotient(model, ideal)
        div_q, _ = divisibility.model_divisible(quot, 2)
        if div_s != (div_i and div_q):
            return False, {
                "ideal": list(ideal.labels()),
                "div_S": div_s,
                "div_I": div_i,
                "div_quotient": div_q,
            }
    return True, None


def _concl_char_if(ctx):
    a = glimm.is_ideal_filtered(ctx.model, "definition").ok
    b = glimm.is_ideal_filtered(ctx.model, "two_conditions").ok
    if a == b:
        return True, None
    return False, {"definition": a, "two_conditions": b}


def _concl_char_if_67(ctx):
    a = glimm.is_ideal_filtered(ctx.model, "definition").ok
    b = glimm.is_ideal_filtered(ctx.model, "via_o6o7").ok
    if a == b:
        return True, None
    return False, {"definition": a, "via_o6o7": b}


def _concl_condition1(ctx):
    res = glimm.ideal_filtered_condition1(ctx.model)
    return res.ok, res.certificate()


def _concl_char_lat(ctx):
    lhs = glimm.latf_generation_condition(ctx.model)
    rhs = ideals.latf_is_algebraic(ctx.model)
    if lhs == rhs:
        return True, None
    return False, {"generation_condition": lhs, "latf_algebraic": rhs}


def _concl_refinement_witnesses(ctx):
    m = ctx.model

    def alg_le(x, y):
        return any(m.plus(x, s) == y for s in m.elements())

    for a in m.elements():
        for b1 in m.elements():
            for b2 in m.elements():
                for c in m.elements():
                    if not (
                        alg_le(b1, a)
                        and alg_le(b2, a)
                        and alg_le(m.plus(a, b1), c)
                        and alg_le(m.plus(a, b2), c)
                    ):
                        continue
                    got = witnesses.witness_refinement_ef(m, a, b1, b2, c)
                    binding = {
                        "a": m.label(a), "b1": m.label(b1),
                        "b2": m.label(b2), "c": m.label(c),
                    }
                    if got is None:
                        return False, {"instance": binding, "reason": "no witness"}
                    e, f = got
                    if not witnesses.verify_refinement_ef(m, a, b1, b2, c, e, f):
                        return False, {
                            "instance": binding,
                            "witness": {"e": m.label(e), "f": m.label(f)},
                            "reason": "certificate failed verification",
                        }
    return True, None


def _concl_wkdiv_decompositions(ctx):
    m = ctx.model
    for x in m.elements():
        if not divisibility.is_weakly_divisible(m, x, 2).ok:
            continue
        got = witnesses.witness_wkdiv_decomposition(m, x)
        if got is None:
            return False, {"x": m.label(x), "reason": "no witness"}
        c, ds = got
        if not witnesses.verify_wkdiv_decomposition(m, x, c, ds):
            return False, {
                "x": m.label(x),
                "witness": {"c": m.label(c), "ds": [m.label(d) for d in ds]},
                "reason": "certificate failed verification",
            }
    return True, None


def _concl_wkdiv_pairs(ctx):
    m = ctx.model
    for x in m.elements():
        if not divisibility.is_weakly_divisible(m, x, 2).ok:
            continue
        for mm in (1, 2, 3):
            got = witnesses.witness_wkdiv_pair(m, x, mm)
            if got is None:
                return False, {"x": m.label(x), "m": mm, "reason": "no witness"}
            c, d1, d2 = got
            if not witnesses.verify_wkdiv_pair(m, x, mm, c, d1, d2):
                return False, {
                    "x": m.label(x),
                    "m": mm,
                    "witness": {
                        "c": m.label(c), "d1": m.label(d1), "d2": m.label(d2),
                    },
                    "reason": "certificate failed verification",
                }
    return True, None


def _concl_main_theorem(ctx):
    lhs = ctx.holds("div2")
    rhs = ctx.holds("wdiv2") and ctx.holds("ideal-filtered") and ctx.holds("property-V")
    if lhs == rhs:
        return True, None
    return False, {
        "div2": ctx.holds("div2"),
        "wdiv2": ctx.holds("wdiv2"),
        "ideal_filtered": ctx.holds("ideal-filtered"),
        "property_V": ctx.holds("property-V"),
    }


def _concl_char_rsf(ctx):
    lhs = ctx.holds("div2")
    rhs = ctx.holds("wdiv2") and ctx.holds("ideal-filtered")
    if lhs == rhs:
        return True, None
    return False, {
        "div2": lhs,
        "wdiv2": ctx.holds("wdiv2"),
        "ideal_filtered": ctx.holds("ideal-filtered"),
    }


def _concl_full_filtered(ctx):
    res = glimm.full_elements_filtered(ctx.model)
    return res.ok, res.certificate()


def _concl_glimm_45(ctx):
    lhs = ctx.holds("div2") and ctx.holds("div3") and ctx.holds("div4")
    rhs = ctx.holds("div2")
    if lhs == rhs:
        return True, None
    return False, {"div_each_k": lhs, "div2": rhs}


RULES: tuple[Rule, ...] = (
    Rule("R-Div2k", "divisible for 2 implies divisible for each k <= 4",
         ("div2",), _div_upgrades),
    Rule("R-WDiv2k", "weakly divisible for 2 implies weakly divisible for each k <= 4",
         ("wdiv2",), _wdiv_upgrades),
    Rule("R-DivWeak", "divisibility implies weak divisibility",
         ("div2",), _concl_wdiv2),
    Rule("R-ScaleDiv", "under O5-O7, a divisible scale forces a divisible model",
         ("O5", "O6", "O7", "some-scale-div2"), _concl_div2),
    Rule("R-DivExt", "under O5-O8, the model is divisible iff each ideal and its quotient are",
         ("O5", "O6", "O7", "O8"), _concl_div_extension),
    Rule("R-CharIF", "the definition and two-condition forms of ideal-filteredness agree",
         (), _concl_char_if),
    Rule("R-CharIF67", "under O6-O7, the definition and single-condition forms agree",
         ("O6", "O7"), _concl_char_if_67),
    Rule("R-Cond1", "under O6-O7, the first filtering condition holds outright",
         ("O6", "O7"), _concl_condition1),
    Rule("R-DivIF", "under O6-O7, divisible models are ideal-filtered",
         ("O6", "O7", "div2"), _concl_ideal_filtered),
    Rule("R-RieszIF", "O6 with Riesz interpolation forces ideal-filteredness",
         ("O6", "Riesz"), _concl_ideal_filtered),
    Rule("R-Dim0IF", "O7 with dimension zero forces ideal-filteredness",
         ("O7", "dim<=0"), _concl_ideal_filtered),
    Rule("R-LatAlgIF", "under O5-O7 (ideal lattice always algebraic here), ideal-filteredness holds",
         ("O5", "O6", "O7"), _concl_ideal_filtered),
    Rule("R-CharLatAlg", "under O6-O7, the generation condition matches algebraicity of the ideal lattice",
         ("O6", "O7"), _concl_char_lat),
    Rule("R-DivV", "divisible models have property (V)",
         ("div2",), _concl_property_v),
    Rule("R-RSFV", "under O5, residual stable finiteness forces property (V)",
         ("O5", "residually-stably-finite"), _concl_property_v),
    Rule("R-AUV", "under O5-O8, almost unperforated models have property (V)",
         ("O5", "O6", "O7", "O8", "almost-unperforated"), _concl_property_v),
    Rule("R-RefEF", "refinement yields the (e, f) splitting on every legal instance",
         ("refinement",), _concl_refinement_witnesses),
    Rule("R-WkDiv1", "under O5 and ideal-filteredness, weakly divisible elements decompose",
         ("O5", "ideal-filtered"), _concl_wkdiv_decompositions),
    Rule("R-WkDiv2", "under O5-O8 and ideal-filteredness, decompositions reduce to two summands",
         ("O5", "O6", "O7", "O8", "ideal-filtered"), _concl_wkdiv_pairs),
    Rule("R-MainThm", "under O5-O8: divisible iff weakly divisible, ideal-filtered, and property (V)",
         ("O5", "O6", "O7", "O8"), _concl_main_theorem),
    Rule("R-CharRSF", "under O5-O8 with residual stable finiteness: divisible iff weakly divisible and ideal-filtered",
         ("O5", "O6", "O7", "O8", "residually-stably-finite"), _concl_char_rsf),
    Rule("R-FiltFull", "ideal-filtered models have a filtered set of full elements",
         ("ideal-filtered",), _concl_full_filtered),
    Rule("R-Glimm45", "divisibility for every k <= 4 is equivalent to divisibility for 2",
         (), _concl_glimm_45),
)

RULES_BY_ID = {rule.id: rule for rule in RULES}


def evaluate_rule(ctx: ModelContext, rule: Rule) -> tuple[str, dict | None]:
    for hyp in rule.hypotheses:
        if not ctx.holds(hyp):
            return "vacuous", None
    ok, certificate = rule.conclusion(ctx)
    if ok:
        return "pass", None
    return "FAIL", certificate


def run_rules(models, rule_ids=None, jobs: int = 1) -> list[RuleReport]:
    """Evaluate the selected rules over every model; deterministic output."""
    if rule_ids is None:
        selected = list(RULES)
    else:
        unknown = [r for r in rule_ids if r not in RULES_BY_ID]
        if unknown:
            raise ValueError(f"unknown rule ids: {unknown}")
        selected = [RULES_BY_ID[r] for r in rule_ids]
    models = list(models)

    def work(model):
        ctx = ModelContext(model)
        digest = model_hash(model)
        rows = []
        for rule in selected:
            status, certificate = evaluate_rule(ctx, rule)
            rows.append(
                RuleReport(digest, model.name or None, rule.id, status, certificate)
            )
        return rows

    if jobs <= 1:
        chunks = [work(model) for model in models]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(work, models))
    reports = [row for chunk in chunks for row in chunk]
    reports.sort(key=lambda r: (r.model, r.name or "", r.rule))
    return reports


def report_lines(reports) -> list[str]:
    return [report.to_json() for report in reports]


def exploration_summary(models) -> dict:
    """Tallies that are reported but never asserted.

    - candidates: models weakly divisible, ideal-filtered, with (V), yet not
      divisible (necessarily failing some of O5-O8), with the failing axioms;
    - no_property_v: models failing (V);
    - divisible_ideal_joins: counterexample count for 'the join of two
      divisible ideals is divisible' (corpus evidence only).
    """
    models = list(models)
    candidates = []
    no_v = []
    join_failures = 0
    for model in models:
        ctx = ModelContext(model)
        if not ctx.holds("property-V"):
            no_v.append(model.name)
        if (
            ctx.holds("wdiv2")
            and ctx.holds("ideal-filtered")
            and ctx.holds("property-V")
            and not ctx.holds("div2")
        ):
            failing = [ax for ax in ("O5", "O6", "O7", "O8") if not ctx.holds(ax)]
            candidates.append({"model": model.name, "failing_axioms": failing})
        div_ideals = []
        for ideal in ideals.enumerate_ideals(model):
            sub = ideals.restrict_to_ideal(model, ideal)
            if divisibility.model_divisible(sub, 2)[0]:
                div_ideals.append(ideal)
        for a in div_ideals:
            for b in div_ideals:
                join_gen = model.sum(sorted(a.members | b.members))
                join = ideals.ideal_generated(model, join_gen)
                sub = ideals.restrict_to_ideal(model, join)
                if not divisibility.model_divisible(sub, 2)[0]:
                    join_failures += 1
    return {
        "models": len(models),
        "wdiv_if_v_but_not_div": candidates,
        "no_property_v": no_v,
        "divisible_ideal_join_failures": join_failures,
    }

"""Command-line front end.

Exit codes: 0 success / property true / no FAIL in a harness run; 1 property
false or harness FAIL (the certificate is printed); 2 invalid input; 3
internal error.  Verdicts are printed as human-readable label bindings
followed by one machine-readable JSON line.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import divisibility, glimm, harness, ideals, witnesses
from .axioms import check_axiom, check_dim_leq
from .corpus import builtin_from_spec, enumerate_corpus
from .errors import ModelError
from .model import document_of, emit_model, load_model, model_hash

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_INVALID = 2
EXIT_INTERNAL = 3


def _machine(obj) -> None:
    print(json.dumps(obj, sort_keys=True, ensure_ascii=False))


def _print_bindings(prefix: str, bindings: dict) -> None:
    rendered = " ".join(f"{k}={v}" for k, v in bindings.items())
    print(f"  {prefix}: {rendered}")


def _cmd_validate(args) -> int:
    model = load_model(args.file)
    print(f"OK: {model.name} ({model.n} elements, order={model.order_mode})")
    return EXIT_TRUE


def _int_arg(prop: str, raw: str, default=None) -> int:
    if not raw and default is not None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ModelError(f"property {prop!r} needs an integer parameter")


def _check_property(model, prop: str):
    """Returns (verdict, certificate) for a property token."""
    name, _, arg = prop.partition(":")
    if name in ("O5", "O6", "O7", "O8", "riesz"):
        axiom = "Riesz" if name == "riesz" else name
        cx = check_axiom(model, axiom)
        if cx is None:
            return True, None
        return False, {"counterexample": cx.bindings}
    if name == "dim":
        cx = check_dim_leq(model, _int_arg(prop, arg))
        if cx is None:
            return True, None
        return False, {"counterexample": cx.bindings}
    if name == "div":
        ok, cert = divisibility.model_divisible(model, _int_arg(prop, arg, 2))
        return ok, None if ok else {"counterexample": cert}
    if name == "wdiv":
        ok, cert = divisibility.model_weakly_divisible(model, _int_arg(prop, arg, 2))
        return ok, None if ok else {"counterexample": cert}
    if name == "IF":
        res = glimm.is_ideal_filtered(model, arg or "definition")
        return res.ok, res.certificate()
    if name == "V":
        res = glimm.has_property_V(model)
        return res.ok, res.certificate()
    if name == "full-filtered":
        res = glimm.full_elements_filtered(model)
        return res.ok, res.certificate()
    if name == "stably-finite":
        residual = arg == "residual"
        if arg not in ("", "residual"):
            raise ModelError(f"unknown stably-finite variant {arg!r}")
        ok, cert = ideals.is_stably_finite(model, residual=residual)
        return ok, None if ok else {"counterexample": cert}
    if name == "almost-unperforated":
        ok, cert = ideals.is_almost_unperforated(model)
        return ok, None if ok else {"counterexample": cert}
    if name == "refinement":
        ok, cert = ideals.is_refinement_monoid(model)
        return ok, None if ok else {"counterexample": cert}
    raise ModelError(f"unknown property {prop!r}")


def _cmd_check(args) -> int:
    model = load_model(args.file)
    ok, certificate = _check_property(model, args.property)
    print(f"{model.name}: {args.property} = {'true' if ok else 'false'}")
    if certificate and "counterexample" in certificate:
        _print_bindings("counterexample", certificate["counterexample"])
    if certificate and "witness" in certificate:
        _print_bindings("witness", certificate["witness"])
    _machine(
        {
            "model": model_hash(model),
            "name": model.name,
            "property": args.property,
            "verdict": ok,
            "certificate": certificate,
        }
    )
    return EXIT_TRUE if ok else EXIT_FALSE


def _cmd_ideals(args) -> int:
    model = load_model(args.file)
    found = ideals.enumerate_ideals(model)
    for ideal in found:
        print("{" + ",".join(ideal.labels()) + "}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for k, ideal in enumerate(found):
            sub = ideals.restrict_to_ideal(
                model, ideal, name=f"{model.name}_ideal_{k:02d}"
            )
            (out / f"{sub.name}.json").write_bytes(emit_model(document_of(sub)))
    _machine(
        {
            "model": model_hash(model),
            "name": model.name,
            "ideals": [list(i.labels()) for i in found],
        }
    )
    return EXIT_TRUE


def _split_labels(raw: str) -> list[str]:
    """';'-separated, or ','-separated with commas inside parentheses kept."""
    if ";" in raw:
        return [part for part in raw.split(";") if part]
    parts, depth, cur = [], 0, ""
    for ch in raw:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(0, depth - 1)
        cur += ch
    parts.append(cur)
    return [part for part in parts if part]


def _emit_result(model, out) -> None:
    payload = emit_model(document_of(model))
    if out:
        Path(out).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))


def _cmd_quotient(args) -> int:
    model = load_model(args.file)
    ideal = ideals.ideal_from_labels(model, _split_labels(args.ideal))
    quot, _ = ideals.quotient(model, ideal)
    _emit_result(quot, args.out)
    return EXIT_TRUE


def _cmd_latf(args) -> int:
    model = load_model(args.file)
    lat, _ = ideals.latf(model)
    _emit_result(lat, args.out)
    return EXIT_TRUE


def _cmd_witness(args) -> int:
    model = load_model(args.file)
    lemma = args.lemma
    if lemma == "div-o5":
        for req in ("x", "z"):
            if getattr(args, req) is None:
                raise ModelError(f"div-o5 needs --{req}")
        x, z, k = model.index(args.x), model.index(args.z), args.k
        got = witnesses.witness_div_o5(model, x, z, k)
        binding = None if got is None else {"y": model.label(got)}
    elif lemma == "ref-o7":
        if args.xs is None or args.w is None:
            raise ModelError("ref-o7 needs --xs and --w")
        xs = [model.index(lab) for lab in _split_labels(args.xs)]
        w = model.index(args.w)
        got = witnesses.witness_ref_o7(model, xs, w)
        binding = None if got is None else {"x": model.label(got)}
    elif lemma == "wkdiv-decomposition":
        if args.x is None:
            raise ModelError("wkdiv-decomposition needs --x")
        got = witnesses.witness_wkdiv_decomposition(model, model.index(args.x))
        binding = None if got is None else {
            "c": model.label(got[0]),
            "ds": [model.label(d) for d in got[1]],
        }
    elif lemma == "wkdiv-pair":
        if args.x is None:
            raise ModelError("wkdiv-pair needs --x")
        got = witnesses.witness_wkdiv_pair(model, model.index(args.x), args.m)
        binding = None if got is None else {
            "c": model.label(got[0]),
            "d1": model.label(got[1]),
            "d2": model.label(got[2]),
        }
    elif lemma == "refinement-ef":
        for req in ("a", "b1", "b2", "c"):
            if getattr(args, req) is None:
                raise ModelError(f"refinement-ef needs --{req}")
        got = witnesses.witness_refinement_ef(
            model,
            model.index(args.a),
            model.index(args.b1),
            model.index(args.b2),
            model.index(args.c),
        )
        binding = None if got is None else {
            "e": model.label(got[0]),
            "f": model.label(got[1]),
        }
    else:
        raise ModelError(f"unknown lemma {lemma!r}")
    if binding is None:
        print(f"{model.name}: {lemma}: no witness")
        _machine(
            {
                "model": model_hash(model),
                "name": model.name,
                "lemma": lemma,
                "witness": None,
            }
        )
        return EXIT_FALSE
    print(f"{model.name}: {lemma}: witness found")
    _print_bindings("witness", binding)
    _machine(
        {
            "model": model_hash(model),
            "name": model.name,
            "lemma": lemma,
            "witness": binding,
        }
    )
    return EXIT_TRUE


def _cmd_corpus(args) -> int:
    mode = "algebraic" if args.order == "algebraic" else "all_compatible"
    models = enumerate_corpus(args.max_size, mode)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for model in models:
        (out / f"{model.name}.json").write_bytes(emit_model(document_of(model)))
    print(f"wrote {len(models)} models to {out}")
    return EXIT_TRUE


def _cmd_harness(args) -> int:
    corpus_dir = Path(args.corpus)
    if not corpus_dir.is_dir():
        raise ModelError(f"corpus directory {corpus_dir} does not exist")
    models = [load_model(path) for path in sorted(corpus_dir.glob("*.json"))]
    rule_ids = None
    if args.rules:
        rule_ids = [r for r in args.rules.split(",") if r]
        unknown = [r for r in rule_ids if r not in harness.RULES_BY_ID]
        if unknown:
            raise ModelError(f"unknown rule ids: {unknown}")
    reports = harness.run_rules(models, rule_ids, jobs=args.jobs)
    lines = harness.report_lines(reports)
    if args.report:
        Path(args.report).write_text("\n".join(lines) + "\n", encoding="utf-8")
    else:
        for line in lines:
            print(line)
    fails = sum(1 for r in reports if r.status == "FAIL")
    passes = sum(1 for r in reports if r.status == "pass")
    vacuous = sum(1 for r in reports if r.status == "vacuous")
    print(
        f"harness: {len(models)} models, {passes} pass, {vacuous} vacuous, {fails} FAIL",
        file=sys.stderr,
    )
    if args.summary:
        summary = harness.exploration_summary(models)
        print("exploration: " + json.dumps(summary, sort_keys=True), file=sys.stderr)
    return EXIT_FALSE if fails else EXIT_TRUE


def _cmd_builtin(args) -> int:
    spec = args.name
    if args.params:
        spec = f"{args.name}({','.join(args.params)})"
    model = builtin_from_spec(spec)
    _emit_result(model, args.out)
    return EXIT_TRUE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cu-lab",
        description="Decision procedures and a theorem-checking harness for "
        "finite positively ordered monoids.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a model file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("check", help="decide a property of a model")
    p.add_argument("file")
    p.add_argument(
        "--property",
        required=True,
        help="one of O5 O6 O7 O8 riesz dim:n div:k wdiv:k IF[:formulation] V "
        "full-filtered stably-finite[:residual] almost-unperforated refinement",
    )
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("ideals", help="list all ideals")
    p.add_argument("file")
    p.add_argument("--out", help="also write each ideal as a model document here")
    p.set_defaults(func=_cmd_ideals)

    p = sub.add_parser("quotient", help="quotient by an ideal")
    p.add_argument("file")
    p.add_argument(
        "--ideal",
        required=True,
        help="member labels, ';'- or ','-separated (commas inside parentheses kept)",
    )
    p.add_argument("--out")
    p.set_defaults(func=_cmd_quotient)

    p = sub.add_parser("latf", help="the model of singly generated ideals")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_latf)

    p = sub.add_parser("witness", help="run a constructive witness search")
    p.add_argument(
        "lemma",
        choices=["div-o5", "ref-o7", "wkdiv-decomposition", "wkdiv-pair", "refinement-ef"],
    )
    p.add_argument("file")
    p.add_argument("--x")
    p.add_argument("--z")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--xs", help="labels, ';'- or ','-separated")
    p.add_argument("--w")
    p.add_argument("--a")
    p.add_argument("--b1")
    p.add_argument("--b2")
    p.add_argument("--c")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("corpus", help="enumerate models up to isomorphism")
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--order", choices=["algebraic", "all"], default="algebraic")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_corpus)

    p = sub.add_parser("harness", help="run rules over a corpus directory")
    p.add_argument("--corpus", required=True)
    p.add_argument("--rules", help="comma-separated rule ids (default: all)")
    p.add_argument("--report", help="write the JSONL report here instead of stdout")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--summary", action="store_true", help="print exploration tallies")
    p.set_defaults(func=_cmd_harness)

    p = sub.add_parser("builtin", help="emit a named model")
    p.add_argument("name")
    p.add_argument("params", nargs="*")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_builtin)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ModelError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

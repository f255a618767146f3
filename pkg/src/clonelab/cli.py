"""Command line front end.

Every command prints one JSON report on stdout.  Exit status is 0 when all
checks pass, 1 when a check fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Callable, Sequence

from . import __version__, clone_core, endo_operad as endo, fincard, hopf_check as hopf, lemmas, set_model, zring
from .fincard import Selection
from .report import Report, default_seed

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _endo_sampler(q: int, max_terms: int, coeff: int):
    return lambda rng, k: endo.random_morphism(rng, k, q, max_terms, coeff)


def _set_sampler(s: int):
    return lambda rng, k: set_model.random_op(rng, s, k)


def cmd_clone_axioms(a) -> list[Report]:
    out = []
    for i, q in enumerate(a.q):
        r = clone_core.check_clone_axioms(
            endo.EndoClone(q), _endo_sampler(q, a.max_terms, a.coeff_bound), a.trials,
            seed=a.seed + i, max_arity=(a.m, a.n, a.l or a.n),
            suite=f"clone-axioms[q={q}]")
        out.append(r)
    return out


def cmd_closure(a) -> list[Report]:
    from .report import make_rng
    out = []
    for i, q in enumerate(a.q):
        rng = make_rng(a.seed + i)
        r = Report(f"closure[q={q}]", seed=a.seed + i)
        for trial in range(a.trials):
            m, n = rng.randint(1, a.m), rng.randint(1, a.n)
            phi = endo.random_morphism(rng, m, q, a.max_terms, a.coeff_bound)
            psis = [endo.random_morphism(rng, n, q, a.max_terms, a.coeff_bound)
                    for _ in range(m)]
            b = endo.bullet(phi, psis)
            try:
                ok = endo.is_ring_morphism(b)
                endo.to_canonical(b)
            except endo.NotClassifiable:
                ok = False
            if not ok:
                r.fail(trial=trial, phi=phi.to_json(), psis=[p.to_json() for p in psis],
                       result=b.to_json())
                break
            r.checked += 1
        out.append(r)
    return out


def _support(n: int, max_degree: int | None):
    if max_degree is None:
        return None
    return [k for k in zring.basis(n)
            if k[0].bit_count() + k[1].bit_count() <= max_degree]


def cmd_classification(a) -> list[Report]:
    hopf_mode = zring.is_square(a.q)
    zring.check_q(a.q, hopf=hopf_mode)
    support = _support(a.n, a.max_degree)
    found = endo.enumerate_morphisms(a.n, a.q, a.coeff_bound, support, hopf=hopf_mode)
    family = endo.canonical_family(a.n, a.q, a.coeff_bound, support, hopf=hopf_mode)
    keys = support
    fset = {endo.morphism_key(m, keys): m for m in found}
    cset = {endo.morphism_key(m, keys): m for m in family}
    k = len(zring.basis(a.n) if support is None else support)
    r = Report(f"classification[q={a.q},n={a.n}]")
    r.checked = (2 * a.coeff_bound + 1) ** (2 * k)
    r.details = {"morphisms": len(fset), "canonical_family": len(cset),
                 "outside_family": len(set(fset) - set(cset)),
                 "family_not_morphism": len(set(cset) - set(fset))}
    extra = sorted(set(fset) - set(cset))
    missing = sorted(set(cset) - set(fset))
    if extra:
        r.fail(kind="morphism-outside-family", morphism=fset[extra[0]].to_json())
    elif missing:
        r.fail(kind="family-member-not-found", morphism=cset[missing[0]].to_json())
    for m in found:
        try:
            endo.to_canonical(m)
        except endo.NotClassifiable as exc:
            r.details["first_unclassifiable"] = {"morphism": m.to_json(), "reason": str(exc)}
            break
    return [r]


def cmd_lemmas(a) -> list[Report]:
    out = []
    for q in a.q:
        for n in range(1, a.n + 1):
            r = lemmas.check_square_root_lemma(n, q, a.coeff_bound)
            r.suite = f"square-root-lemma[q={q},n={n}]"
            out.append(r)
        r = lemmas.check_anticommutant_lemma(a.n, q, a.coeff_bound, a.trials, seed=a.seed)
        r.suite = f"anticommutant-lemma[q={q},n={a.n}]"
        out.append(r)
        r = lemmas.check_tau_lemma(max(a.n, 3), q, a.trials, seed=a.seed)
        r.suite = f"tau-lemma[q={q}]"
        out.append(r)
    return out


def cmd_fincard(a) -> list[Report]:
    out = [fincard.check_laws(a.trials, seed=a.seed)]
    for s in (2, 3, 4):
        r = set_model.check_pi_properties(a.trials, 4, s, seed=a.seed + s)
        r.suite = f"pi-properties[s={s}]"
        out.append(r)
    return out


def cmd_set_clone(a) -> list[Report]:
    elements = {k: list(set_model.all_ops(a.size, k)) for k in range(a.max_arity + 1)}
    r = clone_core.check_clone_axioms_exhaustive(set_model.SetClone(a.size), elements)
    r.suite = f"set-clone-axioms[s={a.size},k<={a.max_arity}]"
    return [r]


def cmd_roundtrip(a) -> list[Report]:
    out = []
    samp = _endo_sampler(a.q, 3, 3)
    s = 3
    pairs = [
        ("endo", endo.EndoClone(a.q), endo.EndoOperad(a.q), samp),
        ("set", set_model.SetClone(s), set_model.SetOperad(s), _set_sampler(s)),
    ]
    for name, clone, operad, sampler in pairs:
        r = clone_core.check_clone_roundtrip(clone, sampler, a.trials, seed=a.seed,
                                             max_arity=2, suite=f"roundtrip-clone[{name}]")
        out.append(r)
        r = clone_core.check_operad_roundtrip(operad, sampler, a.trials, seed=a.seed,
                                              max_arity=2, suite=f"roundtrip-operad[{name}]")
        out.append(r)
        out.append(clone_core.check_projections_agree(clone, operad, 3,
                                                      suite=f"projections[{name}]"))
    return out


def cmd_cartesian(a) -> list[Report]:
    s = 3
    out = [clone_core.check_cartesian_axioms(set_model.SetOperad(s), _set_sampler(s),
                                             a.trials, seed=a.seed, suite="cartesian[set]")]
    out.append(clone_core.check_cartesian_axioms(
        endo.EndoOperad(a.q), _endo_sampler(a.q, 3, 3), a.trials, seed=a.seed,
        suite=f"cartesian[endo,q={a.q}]"))
    return out


def cmd_hopf(a) -> list[Report]:
    data = hopf.demo()
    r = Report("hopf-demo", details=data)
    r.checked = 1
    expected = (data["delta_is_ring_morphism"]
                and not data["contraction_is_ring_morphism"]
                and data["witness"]["difference"] == "2*t{1}x{1}"
                and not data["commutative"]
                and all(not v["is_morphism"] for v in data["mul_is_morphism"].values()))
    if not expected:
        r.fail(reason="hopf instance does not behave as expected")
    return [r]


# eval -------------------------------------------------------------------

def _morphism(data: Any, q: int, hopf_mode: bool) -> endo.GenImages:
    if "projection" in data:
        i, n = data["projection"]
        return endo.projection(int(i), int(n), q, hopf=hopf_mode)
    if "canonical" in data:
        c = endo.CanonicalForm.from_json(data["canonical"], int(data["n"]), q, hopf=hopf_mode)
        return endo.from_canonical(c)
    return endo.GenImages.from_json({"q": q, **data}, hopf=hopf_mode)


def _elem(task, key, q, hopf_mode):
    return zring.parse(task[key], int(task["n"]), q, hopf=hopf_mode)


def _eval_task(task: dict, q: int, hopf_mode: bool) -> dict:
    q = int(task.get("q", q))
    op = task["op"]
    if op in ("mul", "add", "anticommutes"):
        a, b = _elem(task, "a", q, hopf_mode), _elem(task, "b", q, hopf_mode)
        if op == "anticommutes":
            return {"result": zring.anticommutes(a, b)}
        return {"result": str(a * b if op == "mul" else a + b)}
    if op == "tau":
        return {"result": str(zring.tau(int(task["d"]), _elem(task, "a", q, hopf_mode)))}
    if op == "squares_to_q":
        return {"result": zring.squares_to_q(_elem(task, "a", q, hopf_mode))}
    if op == "bullet":
        phi = _morphism(task["phi"], q, hopf_mode)
        psis = [_morphism(p, q, hopf_mode) for p in task["psis"]]
        return {"result": endo.bullet(phi, psis).to_json()}
    if op == "compose":
        phi = _morphism(task["phi"], q, hopf_mode)
        psis = [_morphism(p, q, hopf_mode) for p in task["psis"]]
        return {"result": endo.tensor_compose(phi, psis).to_json()}
    if op == "dot":
        phi = _morphism(task["phi"], q, hopf_mode)
        return {"result": endo.dot_selection(phi, Selection.from_json(task["f"])).to_json()}
    if op == "is_morphism":
        m = _morphism(task["morphism"], q, hopf_mode)
        return {"result": endo.is_ring_morphism(m),
                "defects": {k: str(v) for k, v in endo.relation_defects(m).items()}}
    if op == "canonical":
        m = _morphism(task["morphism"], q, hopf_mode)
        try:
            return {"result": endo.to_canonical(m).to_json()}
        except endo.NotClassifiable as exc:
            return {"result": None, "error": f"NotClassifiable: {exc}"}
    if op == "substitute":
        f = Selection.from_json(task["f"])
        return {"result": fincard.substitute(
            f, [Selection.from_json(g) for g in task["gs"]]).to_json()}
    if op == "compose_selections":
        return {"result": fincard.compose(Selection.from_json(task["g"]),
                                          Selection.from_json(task["f"])).to_json()}
    raise UsageError(f"unknown op {op!r}")


def cmd_eval(a) -> list[Report]:
    try:
        with open(a.file) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {a.file}: {exc}")
    if isinstance(doc, list):
        doc = {"tasks": doc}
    q = int(doc.get("q", 2))
    hopf_mode = bool(doc.get("hopf", False))
    results = []
    try:
        for task in doc["tasks"]:
            results.append({"op": task["op"], **_eval_task(task, q, hopf_mode)})
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad task: {exc}")
    r = Report("eval", details={"results": results})
    r.checked = len(results)
    return [r]


COMMANDS: dict[str, Callable] = {
    "verify clone-axioms": cmd_clone_axioms,
    "verify closure": cmd_closure,
    "verify classification": cmd_classification,
    "verify lemmas": cmd_lemmas,
    "verify fincard": cmd_fincard,
    "verify set-clone": cmd_set_clone,
    "verify roundtrip": cmd_roundtrip,
    "verify cartesian": cmd_cartesian,
    "hopf demo": cmd_hopf,
    "eval": cmd_eval,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clonelab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    verify = sub.add_parser("verify", help="run a verification suite")
    vsub = verify.add_subparsers(dest="suite", required=True)

    def seeded(sp, trials):
        sp.add_argument("--trials", type=int, default=trials)
        sp.add_argument("--seed", type=int, default=None)

    sp = vsub.add_parser("clone-axioms", help="clone axioms on random ring morphisms")
    sp.add_argument("--q", type=int, nargs="+", default=[2, 3, 5])
    sp.add_argument("--n", type=int, default=3, help="max arity of the psi's")
    sp.add_argument("--m", type=int, default=3, help="max arity of phi")
    sp.add_argument("--l", type=int, default=None, help="max arity of the rho's (default n)")
    sp.add_argument("--coeff-bound", type=int, default=3)
    sp.add_argument("--max-terms", type=int, default=3)
    seeded(sp, 1000)

    sp = vsub.add_parser("closure", help="bullets of morphisms are canonical morphisms")
    sp.add_argument("--q", type=int, nargs="+", default=[2, 3, 5])
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--coeff-bound", type=int, default=3)
    sp.add_argument("--max-terms", type=int, default=3)
    seeded(sp, 500)

    sp = vsub.add_parser("classification", help="enumerated morphisms vs canonical family")
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--coeff-bound", type=int, default=2)
    sp.add_argument("--max-degree", type=int, default=None,
                    help="only monomials with |S|+|T| <= D may appear")

    sp = vsub.add_parser("lemmas", help="square-root, anticommutant and twist lemmas")
    sp.add_argument("--q", type=int, nargs="+", default=[2, 3])
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--coeff-bound", type=int, default=1)
    seeded(sp, 200)

    sp = vsub.add_parser("fincard", help="selection calculus laws")
    seeded(sp, 500)

    sp = vsub.add_parser("set-clone", help="exhaustive clone axioms on a finite set")
    sp.add_argument("--size", type=int, default=2)
    sp.add_argument("--max-arity", type=int, default=2)

    sp = vsub.add_parser("roundtrip", help="clone <-> cartesian operad translations")
    sp.add_argument("--q", type=int, default=2)
    seeded(sp, 200)

    sp = vsub.add_parser("cartesian", help="cartesian operad laws")
    sp.add_argument("--q", type=int, default=2)
    seeded(sp, 200)

    h = sub.add_parser("hopf", help="q = 1 Sweedler ring witnesses")
    hsub = h.add_subparsers(dest="action", required=True)
    hsub.add_parser("demo")

    sp = sub.add_parser("eval", help="evaluate tasks from a JSON file")
    sp.add_argument("--file", required=True)
    return p


def _command_name(a) -> str:
    if a.cmd == "verify":
        return f"verify {a.suite}"
    if a.cmd == "hopf":
        return f"hopf {a.action}"
    return a.cmd


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(a, "seed", None) is None and hasattr(a, "seed"):
        a.seed = default_seed()
    command = _command_name(a)
    params = {k: v for k, v in sorted(vars(a).items()) if k not in ("cmd", "suite", "action")}
    start = time.perf_counter()
    try:
        reports = COMMANDS[command](a)
    except (UsageError, zring.ParseError, zring.SquareParameterError) as exc:
        parser.print_usage(sys.stderr)
        print(f"clonelab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = round((time.perf_counter() - start) * 1000)
    failed = next((r for r in reports if not r.ok), None)
    doc = {
        "command": command,
        "version": __version__,
        "params": params,
        "status": "fail" if failed else "pass",
        "checked": sum(r.checked for r in reports),
        "counterexample": ({"suite": failed.suite, **failed.counterexample}
                           if failed else None),
        "suites": [r.to_json() for r in reports],
        "elapsed_ms": elapsed,
    }
    json.dump(doc, out, indent=2)
    out.write("\n")
    return EXIT_FAIL if failed else EXIT_OK


def main():
    sys.exit(run())

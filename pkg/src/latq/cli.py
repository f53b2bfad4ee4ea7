"""latq command line: construct, analyze, verify, simulate.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 the
mathematics refuses (non-integral generator, open chain, bad decoder stack,
enumeration over budget).
"""

import argparse
import hashlib
import json
import os
import sys
from math import inf

from . import analysis as an
from . import constructions as cons
from .codec import DecoderStack, simulation_csv
from .ensemble import ensemble
from .errors import (BudgetExceeded, ChainSpecError, NonIntegral, NotClosed, StackError,
                     UndefinedDistance)
from .zq_codes import CodeChain, chain_closed_zero_one

CONSTRUCTIONS = ("A", "D", "Dbar", "Dprime", "Dperp")
PROPERTIES = ("t42", "dprime-routes", "dbar-closure", "volume-bounds",
              "distance-formulas", "transference-upper")
REFUSALS = (NonIntegral, NotClosed, StackError, UndefinedDistance, BudgetExceeded)


class InputError(Exception):
    pass


# set when --budget was given, so that it wins over a "budget" field in the spec
_BUDGET_FROM_FLAG = [False]


def _dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def load_spec(path):
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise InputError("spec must be a JSON object")
    try:
        chain = CodeChain.from_dict(raw)
    except ChainSpecError as exc:
        raise InputError(str(exc)) from None
    if "budget" in raw and not _BUDGET_FROM_FLAG[0]:
        if not isinstance(raw["budget"], int) or raw["budget"] < 1:
            raise InputError("budget must be a positive integer")
        os.environ["LATQ_BUDGET"] = str(raw["budget"])
    return chain, raw


def spec_hash(chain):
    text = json.dumps(chain.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def parse_ps(text):
    ps = []
    for tok in text.split(","):
        tok = tok.strip().lower()
        if tok in ("inf", "infinity"):
            ps.append(inf)
        else:
            try:
                p = int(tok)
            except ValueError:
                raise InputError(f"bad P value {tok!r}") from None
            if p < 1:
                raise InputError("P must be at least 1")
            ps.append(p)
    return ps


def parse_floats(text):
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise InputError(f"bad number list {text!r}") from None


def report(command, chain, results, status="ok"):
    return {"command": command, "input_hash": spec_hash(chain) if chain else None,
            "spec": chain.to_dict() if chain else None, "results": results, "status": status}


# -- construct ---------------------------------------------------------------

def cmd_construct(args):
    chain, _ = load_spec(args.spec)
    name = args.construction
    result = {"construction": name}
    if name == "A":
        result["lattice"] = cons.construct_A(chain.code(1)).to_json()
    elif name == "D":
        result["lattice"] = cons.construct_D(chain).to_json()
    elif name == "Dbar":
        closed, witness = chain_closed_zero_one(chain)
        result["is_lattice"] = closed
        if closed:
            result["lattice"] = cons.construct_D(chain).to_json()
        else:
            result["witness"] = [list(witness[0]), list(witness[1])]
            result["level"] = witness[2]
    elif name == "Dprime":
        if chain.kind != "dual":
            raise InputError("Dprime needs a dual chain")
        basis = cons.qahinv_generator(chain) if args.qahinv else cons.construct_Dprime(chain)
        result["lattice"] = basis.to_json()
        if args.qahinv:
            result["generator"] = "q^a H^-1"
    elif name == "Dperp":
        if chain.kind != "dual":
            raise InputError("Dperp needs a dual chain")
        result["lattice"] = cons.construct_Dperp(chain).to_json()
    _emit(_dump(report("construct", chain, result)), args.out)
    return 0


# -- analyze -------------------------------------------------------------------

def _try(entries, quantity, fn):
    try:
        out = fn()
    except REFUSALS + (ChainSpecError,) as exc:
        entries.append(an.refusal(quantity, exc).to_json())
        return
    for r in out if isinstance(out, list) else [out]:
        entries.append(r.to_json())


def analyze_chain(chain, ps):
    entries = []
    _try(entries, "volume_bound", lambda: an.volume_bound(chain))
    for p in ps:
        if chain.kind == "primal":
            _try(entries, "dbar_distance", lambda p=p: an.dbar_distance(chain, p))
        else:
            _try(entries, "dprime_distance", lambda p=p: an.dprime_distance(chain, p))
            _try(entries, "dprime_dual_distance", lambda p=p: an.dprime_dual_distance(chain, p))
            if chain.q == 2:
                _try(entries, "binary_dprime_bounds", lambda p=p: an.binary_dprime_bounds(chain, p))
    lattice = cons.construct_D(chain) if chain.kind == "primal" else cons.construct_Dprime(chain)
    _try(entries, "transference", lambda: an.transference(lattice, ps))
    _try(entries, "coding_gain", lambda: an.coding_gain_bound(chain))
    stats = an.gain_stats_json(lattice)
    entries.append(stats)
    return entries


def cmd_analyze(args):
    chain, _ = load_spec(args.spec)
    ps = parse_ps(args.p)
    _emit(_dump(report("analyze", chain, analyze_chain(chain, ps))), args.out)
    return 0


# -- verify --------------------------------------------------------------------

def _check_t42(chain):
    return cons.t42_check(chain)


def _check_routes(chain):
    r1, r2 = cons.dprime_routes(chain)
    return r1 == r2


def _check_dbar(chain):
    closed, _ = chain_closed_zero_one(chain)
    N = chain.q**chain.a
    same = cons.dbar_box(chain) == cons.lattice_box(cons.construct_D(chain), N)
    return closed == same


def _check_volume(chain):
    an.volume_bound(chain)
    return True


def _check_distances(chain):
    for p in (1, 2, inf):
        if chain.kind == "dual":
            an.dprime_distance(chain, p)
            if chain_closed_zero_one(chain)[0]:
                an.dprime_dual_distance(chain, p)
        elif chain_closed_zero_one(chain)[0]:
            an.dbar_distance(chain, p)
    return True


def _check_transference(chain):
    lattice = cons.construct_D(chain) if chain.kind == "primal" else cons.construct_Dprime(chain)
    an.transference(lattice, (1, 2, inf))
    return True


CHECKS = {
    "t42": (_check_t42, ("dual",)),
    "dprime-routes": (_check_routes, ("dual",)),
    "dbar-closure": (_check_dbar, ("primal",)),
    "volume-bounds": (_check_volume, ("primal", "dual")),
    "distance-formulas": (_check_distances, ("primal", "dual")),
    "transference-upper": (_check_transference, ("primal", "dual")),
}


def run_checks(prop, chains):
    fn, _ = CHECKS[prop]
    passed, skipped, failures = 0, 0, []
    for chain in chains:
        try:
            ok = fn(chain)
        except AssertionError as exc:
            failures.append({"spec": chain.to_dict(), "error": str(exc)})
            continue
        except (UndefinedDistance, BudgetExceeded, ChainSpecError):
            skipped += 1
            continue
        if ok:
            passed += 1
        else:
            failures.append({"spec": chain.to_dict(), "error": "check returned false"})
    return {"property": prop, "checked": passed + len(failures), "passed": passed,
            "skipped": skipped, "failures": failures}


def cmd_verify(args):
    prop = args.property
    if args.spec:
        chain, _ = load_spec(args.spec)
        kinds = CHECKS[prop][1]
        if chain.kind not in kinds:
            raise InputError(f"{prop} needs a {' or '.join(kinds)} chain")
        chains = [chain]
    else:
        chain = None
        chains = []
        for k, kind in enumerate(CHECKS[prop][1]):
            chains += ensemble(kind, args.count, args.seed + k)
    result = run_checks(prop, chains)
    result["seed"] = None if args.spec else args.seed
    status = "PASS" if not result["failures"] else "FAIL"
    _emit(_dump(report("verify", chain, result, status)), args.out)
    return 0 if status == "PASS" else 1


# -- simulate ------------------------------------------------------------------

def cmd_simulate(args):
    chain, raw = load_spec(args.spec)
    seed = args.seed if args.seed is not None else int(raw.get("seed", 0))
    sigmas = parse_floats(args.sigma)
    if any(s < 0 for s in sigmas):
        raise InputError("sigma must be nonnegative")
    if args.trials < 1:
        raise InputError("trials must be at least 1")
    stack = DecoderStack(chain)
    _emit(simulation_csv(stack, sigmas, args.trials, seed), args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="latq", description="Lattices from nested codes over Z_q.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec_required=True):
        p.add_argument("--spec", required=spec_required, help="chain spec JSON")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--budget", type=int, help="enumeration cap (overrides LATQ_BUDGET)")
        p.add_argument("--seed", type=int)

    p = sub.add_parser("construct", help="build a lattice and print its HNF basis and volume")
    common(p)
    p.add_argument("--construction", choices=CONSTRUCTIONS, default="D")
    p.add_argument("--qahinv", action="store_true", help="for Dprime, use the q^a H^-1 generator")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="bound ledger for a chain")
    common(p)
    p.add_argument("--p", default="1,2,inf", help="comma-separated P values")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="check a property on a spec or a seeded random ensemble")
    common(p, spec_required=False)
    p.add_argument("--property", choices=PROPERTIES, required=True)
    p.add_argument("--count", type=int, default=200, help="random chains per kind")
    p.set_defaults(func=cmd_verify, seed=0)

    p = sub.add_parser("simulate", help="word error rate of the multistage decoder")
    common(p)
    p.add_argument("--sigma", default="0", help="comma-separated noise levels")
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = os.environ.get("LATQ_BUDGET")
    try:
        return _run(args)
    finally:
        # budget overrides apply to this invocation only
        if saved is None:
            os.environ.pop("LATQ_BUDGET", None)
        else:
            os.environ["LATQ_BUDGET"] = saved


def _run(args):
    _BUDGET_FROM_FLAG[0] = args.budget is not None
    if args.budget is not None:
        if args.budget < 1:
            print("latq: error: --budget must be positive", file=sys.stderr)
            return 2
        os.environ["LATQ_BUDGET"] = str(args.budget)
    try:
        return args.func(args)
    except (InputError, ChainSpecError) as exc:
        print(f"latq: error: {exc}", file=sys.stderr)
        return 2
    except REFUSALS as exc:
        print(f"latq: refused: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

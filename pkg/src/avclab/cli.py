"""``avclab`` command line: one subcommand per oracle, JSON on stdout.

Exit status is 0 on success, 1 when the inputs violate a precondition of the
underlying operation (the error document names it) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import re
import secrets
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import io as jio
from .aerm import AERM_CAP, aerm_halfspace
from .corruption import corrupted_evaluate, lattice_relation
from .errors import AvclabError
from .exact import SignedRoot, fmt, rational
from .experiments import DistributionSpec, run_monotonicity, run_sample_complexity, summary_csv, to_jsonl
from .geometry import ConstraintSet, dual_seminorm, seminorm
from .hypotheses import BOT, HalfspaceClass, LabeledDataset, PointIndicatorClass
from .risk import (
    LossVectorSet,
    generalization_bound,
    massart_bound,
    rademacher_complexity,
    sample_complexity_bound,
)
from .shattering import (
    avc_theorem_value,
    halfspace_pattern_feasible,
    loss_pattern_set,
    point_indicator_construction,
    random_rational_dataset,
    shattered_witness,
    unachievable_pattern,
)

CONSTRUCTIONS = {"4": "witness", "5": "point-indicator", "witness": "witness", "point-indicator": "point-indicator"}


class UsageError(Exception):
    pass


# argument types (failures here are usage errors, exit 2)


def _rat(s: str) -> Fraction:
    try:
        return rational(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from None


def _vec(s: str) -> tuple[Fraction, ...]:
    return tuple(_rat(v) for v in s.split(",") if v.strip())


def _vecs(s: str) -> list[tuple[Fraction, ...]]:
    return [_vec(part) for part in s.split(";") if part.strip()]


def _labels(s: str) -> tuple[int, ...]:
    try:
        out = tuple(int(v) for v in s.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"labels must be comma-separated -1/+1: {s!r}") from None
    if any(c not in (-1, 1) for c in out):
        raise argparse.ArgumentTypeError("labels must be -1 or +1")
    return out


# shared option groups


def _add_body(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("perturbation body")
    g.add_argument("--d", type=int, help="dimension")
    g.add_argument("--linf", type=_rat, metavar="EPS", help="l_inf ball of radius EPS")
    g.add_argument("--l1", type=_rat, metavar="EPS", help="l_1 ball of radius EPS")
    g.add_argument("--l2", type=_rat, metavar="EPS", help="l_2 ball of radius EPS")
    g.add_argument("--vertices", type=_vecs, help="symmetric polytope, 'x1,y1;x2,y2;...'")
    g.add_argument("--lineality", type=_vecs, default=[], help="lineality basis, 'u1;u2;...'")
    g.add_argument("--body", type=Path, help="constraint-set JSON file")


def _body(args, need: bool = True) -> ConstraintSet | None:
    if args.body is not None:
        return jio.body_from_json(jio.load(args.body))
    chosen = [(k, getattr(args, k)) for k in ("linf", "l1", "l2") if getattr(args, k) is not None]
    if args.vertices:
        return ConstraintSet.polytope(args.vertices, args.lineality)
    if len(chosen) > 1:
        raise UsageError("give at most one of --linf, --l1, --l2")
    if not chosen:
        if need:
            raise UsageError("a body is required (--linf/--l1/--l2/--vertices/--body)")
        return None
    if args.d is None:
        raise UsageError("--d is required with --linf/--l1/--l2")
    k, eps = chosen[0]
    return ConstraintSet.lp_ball(args.d, {"linf": "inf", "l1": 1, "l2": 2}[k], eps, args.lineality)


def _data(args) -> LabeledDataset | None:
    if getattr(args, "data", None) is not None:
        return jio.dataset_from_json(jio.load(args.data))
    if getattr(args, "points", None):
        labels = args.labels if args.labels else (1,) * len(args.points)
        return LabeledDataset(tuple(args.points), labels)
    return None


def _value(v):
    if isinstance(v, SignedRoot):
        return {"sqrt_of": fmt(v.square), "sign": v.sign, "approx": float(v)}
    if isinstance(v, float):
        return "inf" if v == float("inf") else v
    return fmt(v)


def _label(v: int):
    return "bot" if v == BOT else v


def _seed(args) -> int:
    return args.seed if args.seed is not None else secrets.randbits(63)


# subcommands


def cmd_dualnorm(args) -> dict:
    B = _body(args)
    out = {"body": jio.body_to_json(B)}
    if args.w is not None:
        out["dual_seminorm"] = _value(dual_seminorm(B, args.w))
    if args.x is not None:
        out["seminorm"] = _value(seminorm(B, args.x))
    if len(out) == 1:
        raise UsageError("give --w and/or --x")
    return out


def cmd_corrupt_eval(args) -> dict:
    B = _body(args)
    h = jio.halfspace_from_json(jio.load(args.h)) if args.h else None
    if h is None:
        if args.a is None:
            raise UsageError("give --h FILE or --a/--b")
        h = jio.halfspace_from_json({"a": list(args.a), "b": args.b})
    pts = [args.x] if args.x is not None else (list(_data(args).points) if _data(args) else None)
    if pts is None:
        raise UsageError("give --x or --data")
    return {"hypothesis": jio.halfspace_to_json(h), "labels": [_label(corrupted_evaluate(h, B, x)) for x in pts]}


def cmd_shatter(args) -> dict:
    if args.cls == "pointind":
        if args.d is None:
            raise UsageError("--d is required")
        if args.linf is not None and args.linf != 1:
            raise UsageError("the point-indicator relation is the l_inf lattice ball of radius 1")
        con = point_indicator_construction(args.d)
        data = _data(args) or con.data
        if args.labels:
            data = data.relabel(args.labels)
        R = con.relation if data.points == con.data.points else lattice_relation(data.points, 1)
        pats = loss_pattern_set(PointIndicatorClass(args.d), R, data)
    else:
        B = _body(args)
        data = _data(args)
        if data is None:
            data = shattered_witness(B, args.labels)
        elif args.labels:
            data = data.relabel(args.labels)
        pats = loss_pattern_set(HalfspaceClass(B.dimension), B, data)
    return {
        "shattered": len(pats) == 2**data.n,
        "patterns": len(pats),
        "n": data.n,
        "pattern_list": [list(p) for p in sorted(pats)],
        "data": jio.dataset_to_json(data),
    }


def cmd_avc(args) -> dict:
    B = _body(args)
    d = B.dimension
    value = avc_theorem_value(d, B)
    witness = shattered_witness(B)
    verified = all(
        halfspace_pattern_feasible(witness, p, B).feasible for p in itertools.product((0, 1), repeat=witness.n)
    )
    seed = _seed(args)
    rng = np.random.default_rng(seed)
    found = []
    for k in range(args.trials):
        data = random_rational_dataset(rng, value + 1, d)
        eta, _ = unachievable_pattern(data, B)
        if halfspace_pattern_feasible(data, eta, B).feasible:
            found.append({"trial": k, "data": jio.dataset_to_json(data), "eta": list(eta)})
    return {
        "theorem_value": value,
        "witness_verified": verified,
        "witness": jio.dataset_to_json(witness),
        "counterexample_search_result": {
            "trials": args.trials,
            "points_per_trial": value + 1,
            "counterexamples": found,
            "all_certified": not found,
        },
        "seed": seed,
    }


def cmd_certify(args) -> dict:
    B = _body(args)
    data = _data(args)
    if data is None:
        raise UsageError("give --data or --points")
    eta, cert = unachievable_pattern(data, B)
    oracle = halfspace_pattern_feasible(data, eta, B)
    out = jio.certificate_to_json(cert)
    out["oracle"] = jio.certificate_to_json(oracle)
    out["verified"] = cert.appendix.check() and not oracle.feasible
    return out


def cmd_aerm(args) -> dict:
    B = _body(args)
    data = _data(args)
    if data is None:
        raise UsageError("give --data or --points")
    return jio.erm_to_json(aerm_halfspace(data, B, cap=args.cap))


def cmd_rademacher(args) -> dict:
    if args.vectors is not None:
        T = LossVectorSet.of(json.loads(Path(args.vectors).read_text()))
    else:
        B = _body(args)
        data = _data(args)
        if data is None:
            raise UsageError("give --vectors FILE or a dataset and body")
        T = LossVectorSet.of(loss_pattern_set(HalfspaceClass(B.dimension), B, data))
    out = {"n": T.n, "size": len(T)}
    if args.samples is not None:
        seed = _seed(args)
        val = rademacher_complexity(T, cap=0, samples=args.samples, seed=seed)
        out.update(value=val.value, exact=False, samples=val.samples, seed=seed)
    else:
        val = rademacher_complexity(T)
        out.update(value=fmt(val), approx=float(val), exact=True)
    out["massart"] = massart_bound(len(T), T.n) if len(T) > 1 else 0.0
    return out


def cmd_bound(args) -> dict:
    if args.rad is not None:
        if args.n is None or args.delta is None:
            raise UsageError("generalization mode needs --rad, --n and --delta")
        return {"generalization_bound": generalization_bound(args.rad, args.n, args.delta)}
    if None in (args.d, args.eps, args.delta):
        raise UsageError("sample-complexity mode needs --d, --eps and --delta")
    return {"sample_complexity": sample_complexity_bound(args.d, args.eps, args.delta, args.C)}


def cmd_construct(args) -> dict:
    which = CONSTRUCTIONS.get(str(args.paper_sec or args.construction or ""))
    if which is None:
        raise UsageError("choose --construction witness|point-indicator")
    if which == "point-indicator":
        if args.d is None:
            raise UsageError("--d is required")
        con = point_indicator_construction(args.d)
        return {
            "construction": which,
            "data": jio.dataset_to_json(con.data),
            "centers": [[fmt(v) for v in c] for c in con.centers],
            "relation": jio.relation_to_json(con.relation),
        }
    B = _body(args)
    data = shattered_witness(B, args.labels)
    return {"construction": which, "data": jio.dataset_to_json(data), "body": jio.body_to_json(B)}


def cmd_experiment(args) -> dict:
    cfg = jio.load(args.config)
    seed = cfg.get("seed", args.seed)
    seed = _seed(argparse.Namespace(seed=seed))
    spec = DistributionSpec.from_dict(cfg["distribution"])
    kind = cfg.get("experiment", "sample_complexity")
    common = dict(trials=int(cfg.get("trials", 1)), seed=seed, threads=args.threads,
                  holdout_size=int(cfg.get("holdout_size", 10_000)), cap=cfg.get("cap", AERM_CAP))
    if kind == "sample_complexity":
        B = jio.body_from_json(cfg["body"])
        recs = run_sample_complexity(spec, B, [int(n) for n in cfg["n_grid"]], **common)
    elif kind == "monotonicity":
        p = cfg.get("p", "inf")
        recs = run_monotonicity(spec, [rational(e) for e in cfg["eps_grid"]], int(cfg["n"]), p=p, **common)
    else:
        raise UsageError(f"unknown experiment {kind!r}")
    stream = to_jsonl(recs, timing=args.timing)
    if args.out is not None:
        Path(args.out).write_text(stream)
    if args.summary is not None:
        Path(args.summary).write_text(summary_csv(recs))
    return {
        "experiment": kind,
        "seed": seed,
        "records": len(recs),
        "note": "empirical evidence on one synthetic distribution, not a proof of learnability",
        "results": [json.loads(line) for line in stream.splitlines()] if args.out is None else str(args.out),
    }


# parser


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="avclab", description="Exact oracles for adversarially robust learning of halfspaces.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable table instead of JSON")
    common.add_argument("--seed", type=int, help="seed for randomized subcommands")
    common.add_argument("--threads", type=int, help="worker cap (default: $AVCLAB_THREADS or 1)")
    common.add_argument("--output", type=Path, help="also write the result document here")
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(fn=fn)
        return p

    p = add("dualnorm", cmd_dualnorm, "dual seminorm / seminorm of a vector")
    _add_body(p)
    p.add_argument("--w", type=_vec, help="vector for the dual seminorm")
    p.add_argument("--x", type=_vec, help="vector for the seminorm")

    p = add("corrupt-eval", cmd_corrupt_eval, "corrupted labels of a halfspace")
    _add_body(p)
    p.add_argument("--h", type=Path, help="halfspace JSON file")
    p.add_argument("--a", type=_vec)
    p.add_argument("--b", type=_rat, default=Fraction(0))
    p.add_argument("--x", type=_vec)
    p.add_argument("--data", type=Path)

    p = add("shatter", cmd_shatter, "count corrupted loss patterns")
    _add_body(p)
    p.add_argument("--class", dest="cls", choices=["halfspace", "pointind"], default="halfspace")
    p.add_argument("--data", type=Path)
    p.add_argument("--points", type=_vecs)
    p.add_argument("--labels", type=_labels)

    p = add("avc", cmd_avc, "theorem value, witness check and certificate search")
    _add_body(p)
    p.add_argument("--trials", type=int, default=20)

    p = add("certify", cmd_certify, "unachievable loss pattern with certificate")
    _add_body(p)
    p.add_argument("--data", type=Path)
    p.add_argument("--points", type=_vecs)
    p.add_argument("--labels", type=_labels)

    p = add("aerm", cmd_aerm, "exact adversarial ERM over halfspaces")
    _add_body(p)
    p.add_argument("--data", type=Path)
    p.add_argument("--points", type=_vecs)
    p.add_argument("--labels", type=_labels)
    p.add_argument("--cap", type=int, default=AERM_CAP)

    p = add("rademacher", cmd_rademacher, "empirical Rademacher complexity of a loss-vector set")
    _add_body(p)
    p.add_argument("--vectors", type=Path, help="JSON list of 0/1 loss vectors")
    p.add_argument("--data", type=Path)
    p.add_argument("--points", type=_vecs)
    p.add_argument("--labels", type=_labels)
    p.add_argument("--samples", type=int, help="Monte-Carlo estimate with this many sign vectors")

    p = add("bound", cmd_bound, "sample-complexity or generalization bound")
    p.add_argument("--d", type=int)
    p.add_argument("--eps", type=_rat)
    p.add_argument("--delta", type=_rat)
    p.add_argument("--C", type=_rat, default=Fraction(1))
    p.add_argument("--rad", type=_rat, help="Rademacher complexity (generalization mode)")
    p.add_argument("--n", type=int)

    p = add("construct", cmd_construct, "emit a shattered construction as a dataset")
    _add_body(p)
    p.add_argument("--construction", choices=["witness", "point-indicator"])
    p.add_argument("--paper-sec", choices=["4", "5"], help="alias: 4 = witness, 5 = point-indicator")
    p.add_argument("--labels", type=_labels)

    p = add("experiment", cmd_experiment, "run a configured experiment")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--out", type=Path, help="JSONL record stream")
    p.add_argument("--summary", type=Path, help="CSV summary (n, eps, median excess, IQR)")
    p.add_argument("--timing", action="store_true", help="include wall times (breaks byte-reproducibility)")
    return top


def _table(doc: dict) -> str:
    width = max(len(k) for k in doc) if doc else 0
    lines = []
    for k, v in doc.items():
        text = v if isinstance(v, str) else json.dumps(v)
        lines.append(f"{k.ljust(width)}  {text}")
    return "\n".join(lines)


_NEGATIVE = re.compile(r"^-[0-9./]")


def _join_negative_values(argv: list[str]) -> list[str]:
    """``--labels -1,-1`` -> ``--labels=-1,-1`` (argparse would read an option)."""
    out: list[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEGATIVE.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_values(argv))
    try:
        doc = args.fn(args)
        code = 0
    except UsageError as e:
        doc, code = {"error": "usage", "message": str(e)}, 2
    except (AvclabError, ValueError, ZeroDivisionError) as e:
        doc, code = {"error": type(e).__name__, "message": str(e)}, 1
    except OSError as e:
        doc, code = {"error": type(e).__name__, "message": str(e)}, 1
    text = _table(doc) if args.pretty else json.dumps(doc, sort_keys=True)
    print(text)
    if args.output is not None and code == 0:
        jio.dump(doc, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())

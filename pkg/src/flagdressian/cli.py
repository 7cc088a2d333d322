"""Command line interface.  Exit status: 0 true/success, 1 false, 2 input error."""
import argparse
import json
import os
import sys
from fractions import Fraction
from importlib import resources
from itertools import combinations

from . import flag as flagmod
from . import io
from .prevariety import Infeasible, fan_cell_hrep, generate_relations, prevariety_fan, restrict_to_stratum
from .subdivision import certify_flag_matroidal, flag_configuration, subdivide
from .trop import ProjPoint
from .valuated import ValuationError, in_projective_tls, tls_all_methods, validate_valuated

TRUE, FALSE, BAD = 0, 1, 2


def _emit(args, doc):
    text = io.dumps(doc)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _threads(args):
    if getattr(args, "threads", None):
        return args.threads
    env = os.environ.get("FLAGDRESSIAN_THREADS")
    return int(env) if env and env.isdigit() else 1


def _valuated(path, where):
    p = io.pluecker_from_json(io.load_json(path), where)
    return p


def cmd_validate(args):
    p = _valuated(args.input, "input")
    try:
        validate_valuated(p)
    except ValuationError as e:
        B, B2, i = e.witness
        _emit(args, {"valid": False, "witness": {"B": [x + 1 for x in B], "B'": [x + 1 for x in B2], "i": i + 1}})
        return FALSE
    _emit(args, {"valid": True})
    return TRUE


def _require_valid(ps, where):
    out = []
    for k, p in enumerate(ps):
        try:
            out.append(validate_valuated(p))
        except ValuationError as e:
            raise io.InputError("%s %d is not a valuated matroid (exchange fails at %s)" % (where, k, e.witness))
    return out


def cmd_quotient(args):
    mq, m = _require_valid([_valuated(args.quotient, "quotient"), _valuated(args.matroid, "matroid")], "argument")
    try:
        if args.method == "all":
            answers = flagmod.quotient_all_methods(mq, m)
            if len(set(answers.values())) != 1:
                raise AssertionError("quotient methods disagree: %r" % answers)
            ans = answers["def"]
        else:
            answers = None
            ans = flagmod.is_valuated_quotient(mq, m, args.method)
    except ValueError as e:
        raise io.InputError(str(e))
    doc = {"quotient": ans, "method": args.method}
    if answers:
        doc["methods"] = answers
    _emit(args, doc)
    return TRUE if ans else FALSE


def cmd_flag_check(args):
    flag = io.flag_from_json(io.load_json(args.input))
    try:
        w = flagmod.flag_dressian_witness(flag, args.method)
    except ValueError as e:
        raise io.InputError(str(e))
    if w is None:
        _emit(args, {"member": True})
        return TRUE
    if w[0] == "gp":
        B, B2, i = w[2]
        wit = {"constituent": w[1] + 1, "B": [x + 1 for x in B], "B'": [x + 1 for x in B2], "i": i + 1}
        _emit(args, {"member": False, "reason": "not a valuated matroid", "witness": wit})
    else:
        _emit(args, {"member": False, "reason": "not a valuated quotient", "pair": [w[1] + 1, w[2] + 1]})
    return FALSE


def _face_doc(labels):
    def lab(l):
        if isinstance(l, tuple) and l and all(isinstance(x, tuple) for x in l):
            return [[i + 1 for i in B] for B in l]
        return l

    return sorted((lab(l) for l in labels), key=lambda v: json.dumps(io.jsonable(v)))


def cmd_subdivide(args):
    doc = io.load_json(args.input)
    flag = None
    if isinstance(doc, dict) and "points" in doc:
        if args.certify_flag:
            raise io.InputError("--certify-flag needs a valuated matroid or flag input")
        cfg = io.config_from_json(doc)
    else:
        if isinstance(doc, dict) and "values" in doc:
            flag = [io.pluecker_from_json(doc)]
        else:
            flag = io.flag_from_json(doc)
        cfg = flag_configuration(flag)
    sub = subdivide(cfg)
    out = {
        "tight": sub.tight,
        "faces": [{"labels": _face_doc(f.labels), "witness": list(f.witness)} for f in sub.faces],
    }
    if not args.certify_flag:
        _emit(args, out)
        return TRUE
    ok, verdicts = certify_flag_matroidal(sub.faces, [mu.r for mu in flag], flag[0].n)
    for face, v in zip(out["faces"], verdicts):
        face["verdict"] = {k: v[k] for k in ("ok", "mixed", "matroids", "flag", "reason")}
    out["flag_matroidal"] = ok
    _emit(args, out)
    return TRUE if ok else FALSE


def cmd_tls_member(args):
    mu = _require_valid([_valuated(args.input, "input")], "input")[0]
    raw = args.point
    if raw.lstrip().startswith(("[", "{")) or os.path.exists(raw):
        raw = io.load_json(raw)
    pt = io.point_from_json(raw, mu.n)
    u = ProjPoint(pt)
    if args.method == "all":
        answers = tls_all_methods(mu, u)
        if len(set(answers.values())) != 1:
            raise AssertionError("membership methods disagree: %r" % answers)
        ans = answers["i"]
    else:
        answers = None
        try:
            ans = in_projective_tls(mu, u, args.method)
        except ValueError as e:
            raise io.InputError(str(e))
    doc = {"member": ans, "method": args.method}
    if answers:
        doc["methods"] = answers
    _emit(args, doc)
    return TRUE if ans else FALSE


def _parse_ranks(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise io.InputError("--ranks: expected comma separated integers, got %r" % text)


def _stratum(path, where):
    doc = io.load_json(path)
    if isinstance(doc, dict) and "values" in doc:
        return io.pluecker_from_json(doc, where)
    n, r, bases = io.matroid_from_json(doc, where)
    return type("S", (), {"n": n, "r": r, "values": dict.fromkeys(bases, 0)})


def cmd_fan(args):
    ranks = _parse_ranks(args.ranks)
    try:
        sys_ = generate_relations(ranks, args.n)
    except ValueError as e:
        raise io.InputError(str(e))
    if args.strata:
        files = [s for s in args.strata.split(",") if s]
        if len(files) != len(ranks):
            raise io.InputError("--strata: %d files for %d ranks" % (len(files), len(ranks)))
        supports = []
        for k, (f, r) in enumerate(zip(files, ranks)):
            s = _stratum(f, "strata[%d]" % k)
            if s.n != args.n or s.r != r:
                raise io.InputError("strata[%d]: expected rank %d on %d elements" % (k, r, args.n))
            supports.append(list(s.values))
        sys_ = restrict_to_stratum(sys_, supports)
        if isinstance(sys_, Infeasible):
            _emit(args, {"feasible": False, "relation": str(sys_.relation)})
            return FALSE
    fan = prevariety_fan(sys_, threads=_threads(args))
    doc = fan.to_json(with_cells=args.cells)
    doc["projective_dim"] = fan.projective_dim
    doc["projective_lineality_dim"] = fan.projective_lineality_dim
    doc["census"] = {str(k): v for k, v in fan.census().items()}
    doc["coordinates"] = [[b + 1, [i + 1 for i in S]] for b, S in sys_.variables]
    if args.cells:
        for k, cell in enumerate(doc["cells"]):
            eqs, ineqs = fan_cell_hrep(fan, k)
            cell["equalities"] = [list(r) for r in eqs]
            cell["inequalities"] = [list(r) for r in ineqs]
    _emit(args, doc)
    return TRUE


def cmd_fibration(args):
    if args.action == "project":
        if len(args.inputs) != 1:
            raise io.InputError("fibration project takes one valuated matroid")
        nu = _require_valid([_valuated(args.inputs[0], "input")], "input")[0]
        try:
            mq, m = flagmod.fibration_project(nu)
        except ValueError as e:
            raise io.InputError(str(e))
        _emit(args, io.flag_to_json([mq, m]))
        return TRUE
    if len(args.inputs) != 2:
        raise io.InputError("fibration lift takes two valuated matroids")
    mq, m = _require_valid([_valuated(p, "input") for p in args.inputs], "input")
    try:
        nu = flagmod.fibration_lift(mq, m, Fraction(args.a), Fraction(args.b))
    except ValuationError:
        _emit(args, {"valid": False, "reason": "the pair is not a valuated quotient"})
        return FALSE
    except ValueError as e:
        raise io.InputError(str(e))
    _emit(args, io.pluecker_to_json(nu))
    return TRUE


def load_manifest(path=None):
    if path:
        return io.load_json(path)
    return json.loads(resources.files("flagdressian").joinpath("data/regression.json").read_text())


def run_regression(manifest, threads=1):
    """[(name, passed, observed)] for every pinned fan in the manifest."""
    results = []
    for case in manifest["fans"]:
        sys_ = generate_relations(case["ranks"], case["n"])
        if case.get("strata"):
            supports = [
                None if s is None else [tuple(i - 1 for i in B) for B in _strata_bases(s, case["n"])]
                for s in case["strata"]
            ]
            sys_ = restrict_to_stratum(sys_, supports)
        fan = prevariety_fan(sys_, threads=threads)
        obs = {
            "dim": fan.dim,
            "lineality_dim": fan.lineality_dim,
            "projective_dim": fan.projective_dim,
            "projective_lineality_dim": fan.projective_lineality_dim,
            "f_vector": fan.f_vector,
        }
        ok = all(obs[k] == v for k, v in case["expected"].items())
        results.append((case["name"], ok, obs))
    return results


def _strata_bases(spec, n):
    if isinstance(spec, dict) and "bases" in spec:
        return spec["bases"]
    if isinstance(spec, dict) and "all_but" in spec:
        bad = {tuple(B) for B in spec["all_but"]}
        return [B for B in combinations(range(1, n + 1), spec["r"]) if B not in bad]
    raise io.InputError("manifest: unknown stratum description %r" % (spec,))


def cmd_paper_regress(args):
    results = run_regression(load_manifest(args.manifest), threads=_threads(args))
    doc = {"cases": [{"name": n, "passed": ok, "observed": obs} for n, ok, obs in results]}
    doc["passed"] = all(ok for _, ok, _ in results)
    _emit(args, doc)
    return TRUE if doc["passed"] else FALSE


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help="worker threads (output does not depend on it)")
    common.add_argument("--format", choices=["json"], default="json")
    common.add_argument("--output", "-o", help="write the JSON report here")
    p = argparse.ArgumentParser(prog="flagdressian", description="Valuated (flag) matroids and flag Dressians.")
    sub = p.add_subparsers(dest="verb", required=True)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **kw: _add(*a, parents=[common], **kw)

    s = sub.add_parser("validate", help="is the Pluecker vector a valuated matroid")
    s.add_argument("input")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("quotient", help="is QUOTIENT a valuated quotient of MATROID")
    s.add_argument("quotient")
    s.add_argument("matroid")
    s.add_argument("--method", choices=["def", "ip", "tls", "all"], default="all")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("flag-check", help="flag Dressian membership")
    s.add_argument("input")
    s.add_argument("--method", choices=["def", "ip", "tls", "all"], default="all")
    s.set_defaults(func=cmd_flag_check)

    s = sub.add_parser("subdivide", help="coherent subdivision of a configuration or a flag")
    s.add_argument("input")
    s.add_argument("--certify-flag", action="store_true")
    s.set_defaults(func=cmd_subdivide)

    s = sub.add_parser("tls-member", help="membership in the projective tropical linear space")
    s.add_argument("input")
    s.add_argument("--point", required=True, help="JSON list, file, or comma separated coordinates")
    s.add_argument("--method", choices=["i", "ii", "iii", "iv", "v", "all"], default="all")
    s.set_defaults(func=cmd_tls_member)

    s = sub.add_parser("fan", help="prevariety fan of a (stratum of a) flag Dressian")
    s.add_argument("--ranks", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--strata", help="comma separated matroid files, one per rank")
    s.add_argument("--cells", action="store_true", help="emit every cell with its inequality system")
    s.set_defaults(func=cmd_fan)

    s = sub.add_parser("fibration", help="Dr(r+1;n+1) <-> FlDr(r,r+1;n); element 1 is the extra element")
    s.add_argument("action", choices=["project", "lift"])
    s.add_argument("inputs", nargs="+")
    s.add_argument("--a", default="0")
    s.add_argument("--b", default="0")
    s.set_defaults(func=cmd_fibration)

    s = sub.add_parser("paper-regress", help="recompute the pinned reference fans")
    s.add_argument("--manifest")
    s.set_defaults(func=cmd_paper_regress)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return BAD if e.code else TRUE
    try:
        return args.func(args)
    except io.InputError as e:
        print("error: %s" % e, file=sys.stderr)
        return BAD
    except (ValueError, TypeError) as e:
        print("error: %s" % e, file=sys.stderr)
        return BAD


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``qtd <command> ...``.

Exit status: 0 when every check passes (or the search completes), 1 when a
necessary condition or verification fails, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import __version__
from .action import census, group_order
from .conditions import check_all
from .design import QDesignParams, lambda_int, trivial_design, verify_design
from .errors import LambdaNotInteger, NotAnAutomorphismGroup, NotTactical, ProblemTooLarge, QtdError
from .field import _is_prime
from .io import format_design, format_group, load_design, load_group, load_problem, problem_to_dict
from .lambdas import (
    check_prime_bound,
    fixed_point_slices_ok,
    lambda_from_omega,
    lambda_tensor_bruteforce,
    lambda_tensor_via_lines,
    lines_decomposition,
    omega_partition,
    structure_report,
)
from .search import SearchProblem, admissible_lambda, enumerate_candidates
from .subspace import gaussian_binomial
from .tactical import induced_decomposition, td_matrices

log = logging.getLogger("qtd")


class Failed(Exception):
    """A check failed; the report is still printed and the exit code is 1."""


def _sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _rows(S) -> list[list[int]]:
    return [list(r) for r in S.basis]


def _matrix_text(rows) -> str:
    width = max((len(str(x)) for r in rows for x in r), default=1)
    return "\n".join("  " + " ".join(str(x).rjust(width) for x in r) for r in rows)


# -- commands -------------------------------------------------------------------
# Each returns (outputs dict, text lines, ok flag).


def cmd_gaussian(args):
    val = gaussian_binomial(args.v, args.r, args.q)
    return {"v": args.v, "r": args.r, "q": args.q, "value": val}, [str(val)], True


def cmd_orbits(args):
    G = load_group(args.group)
    part = census(G, args.k)
    hist = part.histogram()
    out = {
        "v": G.v, "q": G.q, "k": args.k,
        "elements": len(part.elements),
        "orbit_count": part.count,
        "histogram": {str(s): c for s, c in hist.items()},
        "orbits": [{"size": s, "representative": _rows(r)}
                   for s, r in zip(part.orbit_sizes, part.representatives)],
    }
    text = [f"{len(part.elements)} subspaces of dimension {args.k} in F_{G.q}^{G.v}",
            f"{part.count} orbits"]
    text += [f"  size {s:>6}: {c} orbit(s)" for s, c in hist.items()]
    return out, text, True


def _tensor_both_ways(G, args):
    from .action import orbits
    from .subspace import enumerate_subspaces

    pts = orbits(G, enumerate_subspaces(G.v, 1, G.q))
    brute = lambda_tensor_bruteforce(pts, args.verify_p_independence, args.threads)
    lines = lambda_tensor_via_lines(lines_decomposition(G))
    return pts, brute, lines


def cmd_lambda(args):
    G = load_group(args.group)
    if args.design:
        d = load_design(args.design)
        from .action import is_automorphism_group

        if not is_automorphism_group(d.blocks, G):
            raise Failed("the group is not an automorphism group of the design")
    pts, brute, lines = _tensor_both_ways(G, args)
    agree = brute.values == lines.values
    struct = structure_report(brute)
    out = {"tensor": brute.to_dict(), "methods_agree": agree, "structure": struct.to_dict()}
    text = [f"{brute.m} point classes, sizes {brute.sizes}",
            f"brute force and lines method agree: {agree}",
            f"structure identities hold: {struct.ok}"]
    for l, r, s, x in brute.to_dict()["entries"]:
        text.append(f"  L[{l},{r},{s}] = {x}")
    return out, text, agree and struct.ok


def cmd_check(args):
    d = load_design(args.design)
    G = load_group(args.group)
    p = d.params
    out: dict = {"params": str(p)}
    text = [f"design {p} with {len(d.blocks)} blocks"]
    ok = True

    rep = verify_design(d)
    out["verify_design"] = rep.to_dict()
    text.append(f"verify_design: {'pass' if rep.ok else 'FAIL'} ({rep.message})")
    if not rep.ok:
        return out, text, False

    try:
        dec = induced_decomposition(d, G)
        td = td_matrices(d, dec)
    except (NotAnAutomorphismGroup, NotTactical) as exc:
        out["decomposition_error"] = str(exc)
        text.append(f"decomposition: FAIL ({exc})")
        return out, text, False
    out["decomposition"] = {"m": dec.m, "n": dec.n, **td.to_dict()}
    text.append(f"decomposition: m={dec.m} point classes, n={dec.n} block classes")
    text.append("rho:\n" + _matrix_text(td.rho))

    tensor = None
    if p.t == 3:
        _, tensor, lines = _tensor_both_ways(G, args)
        agree = tensor.values == lines.values
        struct = structure_report(tensor)
        out["lambda"] = {"tensor": tensor.to_dict(), "methods_agree": agree,
                         "structure": struct.to_dict()}
        text.append(f"lambda tensor: methods agree {agree}, structure identities {struct.ok}")
        ok &= agree and struct.ok

    try:
        reports = check_all(p, td, tensor, args.cap)
    except LambdaNotInteger as exc:
        out["conditions_error"] = str(exc)
        text.append(f"conditions: FAIL ({exc})")
        return out, text, False
    out["conditions"] = [r.to_dict() for r in reports]
    for r in reports:
        text.append(f"{r.system:>9} system: {'pass' if r.passed else 'FAIL'}"
                    + ("" if r.passed else f" ({r.total} violations)"))
        ok &= r.passed

    order = group_order(G)
    out["group_order"] = order
    if tensor is not None and _is_prime(order):
        bound = check_prime_bound(tensor, order)
        fixed_bad = fixed_point_slices_ok(tensor, order)
        omega_match = True
        for l, size in enumerate(tensor.sizes):
            if size == 1:
                om = omega_partition(dec, l, G)
                omega_match &= lambda_from_omega(om, dec) == tensor.values[l]
        out["prime_order"] = {"bound": bound.to_dict(), "fixed_point_violations": fixed_bad,
                              "omega_slices_match": omega_match}
        text.append(f"prime order {order}: bound {bound.ok}, fixed-point slices "
                    f"{not fixed_bad}, omega slices match {omega_match}")
        ok &= bound.ok and not fixed_bad and omega_match
    return out, text, ok


def cmd_search(args):
    prob = load_problem(args.problem)
    cands = list(enumerate_candidates(prob, node_budget=args.node_budget))
    out = {"candidate_count": len(cands), "candidates": [c.to_dict() for c in cands]}
    text = [f"{len(cands)} candidate matrix(es) up to symmetry"]
    for c in cands:
        text.append("rho:\n" + _matrix_text(c.rho))
    return out, text, True


def cmd_admissible(args):
    G = load_group(args.group)
    pts = census(G, 1)
    if pts.count != 1:
        raise Failed(f"group is not point-transitive ({pts.count} point orbits)")
    part = census(G, args.k)
    rep = admissible_lambda(part.orbit_sizes, args.t, G.v, args.k, G.q, args.lambda_max)
    out = {"orbit_histogram": {str(s): c for s, c in part.histogram().items()}, **rep.to_dict()}
    text = [f"{part.count} block orbits; rho values {sorted(set(rep.rho), reverse=True)}",
            f"congruence filter (mod {rep.modulus}): {rep.congruence}",
            f"subset-sum feasible: {rep.feasible}"]
    if rep.excluded:
        text.append(f"orbits with non-integral rho: {[e['orbit'] for e in rep.excluded]}")
    return out, text, True


def cmd_problem(args):
    """Assemble a search problem from a group and prescribed block-class sizes."""
    from .action import orbits
    from .subspace import enumerate_subspaces

    G = load_group(args.group)
    params = QDesignParams(args.t, G.v, args.k, G.q, args.lam)
    pts = orbits(G, enumerate_subspaces(G.v, 1, G.q))
    tensor = lambda_tensor_bruteforce(pts, threads=args.threads)
    prob = SearchProblem(params, list(pts.orbit_sizes), list(args.block_sizes), tensor)
    data = problem_to_dict(prob)
    return data, [json.dumps(data)], True


def cmd_trivial(args):
    d = trivial_design(args.v, args.k, args.q, args.t)
    text = format_design(d)
    return {"design": text}, [text.rstrip("\n")], True


def cmd_corpus(args):
    from .corpus import cyclic_corpus

    groups = cyclic_corpus(args.v, args.q, args.count, args.seed, args.max_order)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    files = []
    for i, (G, order) in enumerate(groups):
        path = outdir / f"cyclic_v{args.v}_q{args.q}_{i:03d}.grp"
        path.write_text(f"# cyclic group of order {order}\n" + format_group(G))
        files.append({"file": str(path), "order": order})
    return {"groups": files}, [f"{f['file']}  order {f['order']}" for f in files], True


# -- plumbing ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON report")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--node-budget", type=int, default=10**8)
    common.add_argument("--verify-p-independence", action="store_true",
                        help="recompute Lambda at every point of each class")
    common.add_argument("--seed", type=int, default=0, help="seed for the random group corpus")
    common.add_argument("--cap", type=int, default=100, help="violations listed per system")
    common.add_argument("-v", "--verbose", action="store_true")

    # common options go on each subcommand only: argparse lets subparser
    # defaults overwrite values parsed at the top level
    ap = argparse.ArgumentParser(prog="qtd", allow_abbrev=False,
                                 description="Tactical decompositions of q-designs")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gaussian", parents=[common], allow_abbrev=False, help="Gaussian binomial [v r]_q")
    p.add_argument("v", type=int)
    p.add_argument("r", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_gaussian, inputs=[])

    p = sub.add_parser("orbits", parents=[common], allow_abbrev=False, help="orbit census on k-subspaces")
    p.add_argument("group")
    p.add_argument("-k", type=int, default=1)
    p.set_defaults(func=cmd_orbits, inputs=["group"])

    p = sub.add_parser("lambda", parents=[common], allow_abbrev=False, help="Lambda tensor by two methods")
    p.add_argument("group")
    p.add_argument("design", nargs="?")
    p.set_defaults(func=cmd_lambda, inputs=["group", "design"])

    p = sub.add_parser("check", parents=[common], allow_abbrev=False, help="full necessary-condition pipeline")
    p.add_argument("design")
    p.add_argument("group")
    p.set_defaults(func=cmd_check, inputs=["design", "group"])

    p = sub.add_parser("search", parents=[common], allow_abbrev=False, help="enumerate candidate matrices")
    p.add_argument("problem")
    p.set_defaults(func=cmd_search, inputs=["problem"])

    p = sub.add_parser("admissible", parents=[common], allow_abbrev=False, help="admissible lambda for a transitive group")
    p.add_argument("group")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-t", type=int, default=3)
    p.add_argument("--lambda-max", type=int, required=True)
    p.set_defaults(func=cmd_admissible, inputs=["group"])

    p = sub.add_parser("problem", parents=[common], allow_abbrev=False, help="build a search problem file")
    p.add_argument("group")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-t", type=int, default=3)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--block-sizes", type=int, nargs="+", required=True)
    p.set_defaults(func=cmd_problem, inputs=["group"])

    p = sub.add_parser("trivial", parents=[common], allow_abbrev=False, help="write the design of all k-subspaces")
    p.add_argument("v", type=int)
    p.add_argument("k", type=int)
    p.add_argument("q", type=int)
    p.add_argument("t", type=int)
    p.set_defaults(func=cmd_trivial, inputs=[])

    p = sub.add_parser("corpus", parents=[common], allow_abbrev=False, help="write random cyclic group files")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--max-order", type=int, default=21)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_corpus, inputs=[])
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    t0 = time.perf_counter()
    status = 0
    try:
        outputs, text, ok = args.func(args)
        status = 0 if ok else 1
    except Failed as exc:
        outputs, text, status = {"error": str(exc)}, [f"FAIL: {exc}"], 1
    except (LambdaNotInteger, NotAnAutomorphismGroup) as exc:
        outputs, text, status = {"error": str(exc)}, [f"FAIL: {exc}"], 1
    except ProblemTooLarge as exc:
        print(f"qtd: {exc}", file=sys.stderr)
        return 2
    except QtdError as exc:
        print(f"qtd: {exc}", file=sys.stderr)
        return 2
    elapsed = time.perf_counter() - t0
    if args.json:
        inputs = {}
        for name in args.inputs:
            path = getattr(args, name, None)
            if path:
                inputs[path] = _sha256(path)
        report = {
            "command": args.command,
            "version": __version__,
            "inputs": inputs,
            "outputs": outputs,
            "status": status,
            "timing": {"seconds": round(elapsed, 6)},
        }
        if args.command == "search":
            # one JSON line per candidate, then the summary report
            for c in outputs["candidates"]:
                print(json.dumps(c))
        print(json.dumps(report))
    else:
        print("\n".join(text))
    return status


if __name__ == "__main__":
    sys.exit(main())

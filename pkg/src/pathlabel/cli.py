"""Command-line front end.

Exit codes: 0 success, 1 violated precondition or counterexample, 2 usage or
parse error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time

from .errors import (
    ConditionError,
    ContractError,
    GraphParseError,
    PathLabelError,
    ResourceError,
    ShapeError,
)
from .graph import (
    Graph,
    complement,
    format_edge_list,
    parse_graph,
    spider,
    to_dot,
)
from .islands import (
    certify_F_membership,
    duis,
    generate_F,
    script_to_json,
    sequence_set,
)
from .labeling import (
    Labeling,
    block_tree,
    cover_of,
    islands_of,
    lambda_rho_of_complement,
    validate_l21,
)
from .oracles import OracleBudget, oracle_path_cover, prufer_decode, random_tree
from .pathcover import (
    expand_tree,
    theorem7_path_cover,
    theorem12_cover,
    theorem13_path_cover,
    tree_path_cover,
)
from .verify import SUITES, random_2_sparse_tree, run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_input(path: str) -> tuple[Graph, str]:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    digest = hashlib.sha256(text.encode()).hexdigest()
    return parse_graph(text), digest


def _parse_ints(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


# -- commands ---------------------------------------------------------------------
# each returns (results dict, verdicts dict, human-readable lines, dot text or None)

def cmd_pcover(g: Graph, args):
    method = args.method
    verdicts = {}
    if method == "auto":
        if g.is_tree():
            p, cov = tree_path_cover(g)
            used = "pt-reduction"
            try:
                f, _ = theorem7_path_cover(g)
            except (ConditionError, ShapeError):
                pass
            else:
                verdicts["theorem7_agrees"] = f == p
                if f != p:
                    raise ContractError(f"theorem7 formula {f} disagrees with reduction {p}")
        else:
            cov, how = cover_of(g, OracleBudget())
            used = how[0] if len(set(how)) == 1 else "+".join(how)
            p = len(cov.paths)
    elif method == "pt-reduction":
        p, cov = tree_path_cover(g)
        used = method
    elif method == "theorem7":
        p, data = theorem7_path_cover(g)
        _, cov = tree_path_cover(g)
        used = method
        verdicts["formula_data"] = {"s": data.s, "t": data.t, "leaves": data.l, "heavy_edges": data.h}
    elif method == "theorem12":
        cov = theorem12_cover(g)
        p = len(cov.paths)
        used = method
    elif method == "theorem13":
        orders = _parse_ints(args.orders)
        if orders is not None:
            tree = g
            p, cov = theorem13_path_cover(tree, orders)
            g = expand_tree(tree, orders)
        else:
            found = block_tree(g)
            if found is None:
                raise ConditionError("input is not a clique expansion of a tree")
            cov, how = cover_of(g)
            if how != ["theorem13"] and not (g.is_tree() and how == ["tree"]):
                raise ConditionError("block tree is not 2-sparse")
            p = len(cov.paths)
        used = method
    else:  # oracle
        res = oracle_path_cover(g, OracleBudget())
        p, cov, used = res.P, res.coverings[0], "oracle"
        verdicts["sequences"] = [list(s) for s in res.sequences]
    cov.validate(g)
    results = {
        "P": p,
        "method": used,
        "paths": [list(x) for x in cov.canonical().paths],
        "sequence": list(cov.sequence),
    }
    lines = [f"P = {p}  ({used})", f"sequence: {tuple(cov.sequence)}"]
    lines += ["path: " + " ".join(map(str, x)) for x in cov.canonical().paths]
    return results, verdicts, lines, to_dot(g, paths=cov.paths)


def cmd_lambda(g: Graph, args):
    # without the flag the input graph itself is labeled, through its complement
    base = g if args.complement_of_input else complement(g)
    inv = lambda_rho_of_complement(base)
    results = inv.to_json()
    labeled = complement(base)
    verdicts = {}
    if inv.certificate is not None:
        ok, bad = validate_l21(labeled, inv.certificate)
        verdicts["certificate_valid"] = ok
        results["island_sequence"] = list(islands_of(inv.certificate))
    lam = inv.lam if inv.lam is not None else f"<= {inv.lam_upper}"
    lines = [f"lambda = {lam}", f"rho = {inv.rho}", f"P = {inv.P}  ({', '.join(inv.methods)})"]
    if inv.certificate is not None:
        lines.append("labels: " + " ".join(map(str, inv.certificate.labels)))
    if inv.note:
        lines.append(inv.note)
    labels = inv.certificate.labels if inv.certificate is not None else None
    return results, verdicts, lines, to_dot(labeled, labels=labels)


def cmd_duis(g: Graph, args):
    verdict = duis(g)
    results = verdict.to_json()
    lines = [verdict.answer]
    if args.certify and g.n >= 3:
        script = certify_F_membership(g)
        results["construction"] = script
        if script is not None:
            lines.append("construction: " + script_to_json(script))
    if args.trace:
        for s in verdict.trace:
            lines.append(f"step {s.step}: v={s.v} u={s.u} {s.shape} k={s.k} {s.action}")
    return results, {"unique": verdict.unique}, lines, None


def cmd_islands(g: Graph, args):
    seqs = sequence_set(g, args.cutoff)
    results = {"sequences": [list(s) for s in seqs], "unique": len(seqs) == 1}
    lines = [f"island sequences of the complement: {', '.join(str(s) for s in seqs)}"]
    if args.labeling:
        with open(args.labeling, encoding="utf-8") as fh:
            lab = Labeling.from_json(fh.read())
        ok, bad = validate_l21(complement(g), lab)
        results["labeling"] = {"valid": ok, "islands": list(islands_of(lab))}
        lines.append(f"given labeling: valid={ok}, islands={islands_of(lab)}")
    return results, {"unique": len(seqs) == 1}, lines, None


def cmd_gen(args):
    rng = random.Random(args.seed)
    comment = []
    if args.kind == "prufer":
        seq = _parse_ints(args.seq)
        t = prufer_decode(seq) if seq is not None else random_tree(args.n, rng)
    elif args.kind == "family-f":
        lt = generate_F(rng, args.ops, args.max_n)
        t = lt.tree
        comment.append("# construction: " + script_to_json(lt.script))
        comment.append("# marks: " + "".join(lt.marks))
    elif args.kind == "expansion":
        tree = random_2_sparse_tree(rng, args.n)
        orders = _parse_ints(args.orders) or [rng.randint(2, 4) for _ in tree.edges]
        t = expand_tree(tree, orders)
        comment.append("# tree edges: " + json.dumps([list(e) for e in tree.edges]))
        comment.append("# block orders: " + json.dumps(orders))
    else:
        arms = _parse_ints(args.arms)
        if not arms:
            raise UsageError("--arms is required for --kind spider")
        t = spider(arms)
    text = "\n".join(comment + [format_edge_list(t).rstrip("\n")]) + "\n"
    return t, text


# -- driver ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pathlabel", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("input", help="edge-list or graph6 file, '-' for stdin")
        p.add_argument("--json", action="store_true", help="print a JSON run report")
        p.add_argument("--dot", metavar="FILE", help="write a DOT rendering")
        return p

    p = with_input(sub.add_parser("pcover", help="minimum path covering"))
    p.add_argument("--method", default="auto",
                   choices=["auto", "pt-reduction", "theorem7", "theorem12", "theorem13", "oracle"])
    p.add_argument("--orders", help="block orders per tree edge (theorem13 on a tree input)")

    p = with_input(sub.add_parser("lambda", help="lambda and rho via path coverings"))
    p.add_argument("--complement-of-input", action="store_true",
                   help="label the complement of the input instead of the input")

    p = with_input(sub.add_parser("duis", help="island-sequence uniqueness of a tree complement"))
    p.add_argument("--certify", action="store_true", help="emit a family construction script")
    p.add_argument("--trace", action="store_true")

    p = with_input(sub.add_parser("islands", help="all island sequences of the complement"))
    p.add_argument("--cutoff", type=int, default=16)
    p.add_argument("--labeling", help="JSON labeling of the complement to analyse")

    p = sub.add_parser("gen", help="generate a graph in edge-list form")
    p.add_argument("--kind", required=True, choices=["prufer", "family-f", "expansion", "spider"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--seq", help="Pruefer sequence (prufer)")
    p.add_argument("--ops", type=int, default=3, help="attachment budget (family-f)")
    p.add_argument("--max-n", type=int, default=None, help="vertex cap (family-f)")
    p.add_argument("--orders", help="block orders (expansion)")
    p.add_argument("--arms", help="vine vertex counts (spider)")
    p.add_argument("--out", help="write here instead of stdout")

    p = sub.add_parser("verify", help="run a verification suite against the oracles")
    p.add_argument("--suite", required=True, choices=list(SUITES))
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    return ap


def _report(argv, digest, results, verdicts, elapsed) -> dict:
    return {
        "command": list(argv),
        "input_digest": digest,
        "results": results,
        "timing": {"seconds": round(elapsed, 6)},
        "verdicts": verdicts,
    }


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    t0 = time.perf_counter()
    try:
        if args.command == "gen":
            t, text = cmd_gen(args)
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return EXIT_OK
        if args.command == "verify":
            res = run_suite(args.suite, args.max_n, args.samples, args.seed)
            body = res.to_json()
            if args.json:
                print(json.dumps(_report(argv, None, body, {"ok": res.ok},
                                         time.perf_counter() - t0), indent=2))
            else:
                print(f"{res.suite}: {res.checked} checked, {res.skipped} outside hypothesis, "
                      f"{len(res.failures)} failures")
            if not res.ok:
                g, msg = res.minimal_failure()
                print(f"# minimal counterexample: {msg}", file=sys.stderr)
                sys.stderr.write(format_edge_list(g))
                return EXIT_VIOLATION
            return EXIT_OK
        g, digest = _read_input(args.input)
        handler = {"pcover": cmd_pcover, "lambda": cmd_lambda,
                   "duis": cmd_duis, "islands": cmd_islands}[args.command]
        results, verdicts, lines, dot = handler(g, args)
        if args.dot and dot is not None:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(dot)
        if args.json:
            print(json.dumps(_report(argv, digest, results, verdicts,
                                     time.perf_counter() - t0), indent=2))
        else:
            print("\n".join(lines))
        return EXIT_OK
    except (GraphParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConditionError, ShapeError, ResourceError, ContractError) as exc:
        witness = getattr(exc, "witness", None)
        extra = f" (witness: {witness})" if witness is not None else ""
        print(f"error: {exc}{extra}", file=sys.stderr)
        return EXIT_VIOLATION
    except PathLabelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())

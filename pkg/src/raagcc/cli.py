"""Rank, decomposition and coset-complex checks for relative outer automorphism groups of RAAGs.

Exit codes: 0 all verdicts pass, 2 usage or input error, 3 size limit,
4 a verdict failed (a check that should never fail).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import buildings, cosets, groups
from .corpus import graph_example
from .decomposition import decompose, predicted_sphere_dimension, verify_tree
from .errors import RaagError, SizeLimitError
from .graphs import DEFAULT_MAX_VERTICES, check_size
from .parabolic import maximal_parabolics, properness_witness, rank
from .posets import SimplicialComplex, certify, reduced_homology
from .relgroup import (
    RelOutSpec,
    conical,
    enumerate_generators,
    equiv_classes,
    g_leq,
    generator_to_json,
)
from .subgraphs import Multigraph, multigraph_example, verify_core_posets

EXIT_OK, EXIT_USAGE, EXIT_SIZE, EXIT_VIOLATION = 0, 2, 3, 4


class UsageError(RaagError):
    pass


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _digest(inputs: dict) -> str:
    blob = json.dumps(inputs, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _verdict(check: str, lemma: str, ok: bool, details=None) -> dict:
    return {"check": check, "lemma": lemma, "pass": bool(ok), "details": details or []}


def _spec(args) -> RelOutSpec:
    if args.graph:
        spec = RelOutSpec.from_json(_load_json(args.graph))
    elif args.example:
        spec = RelOutSpec(graph_example(args.example))
    else:
        raise UsageError("give --graph FILE or --example NAME")
    check_size(spec.graph, args.max_vertices)
    return spec


# --- subcommands --------------------------------------------------------------


def cmd_analyze(args):
    spec = _spec(args)
    g = spec.graph
    classes = []
    for c in equiv_classes(spec):
        geq, gt = conical(spec, c.rep)
        classes.append({
            "members": g.names(c.members),
            "kind": c.kind,
            "cone": g.names(geq),
            "above": g.names(gt),
        })
    order = [[g.labels[v], g.labels[w]] for v in g.vertices for w in g.vertices
             if v != w and g_leq(spec, v, w)]
    gens = [generator_to_json(g, x) for x in enumerate_generators(spec)]
    artifacts = {"classes": classes, "order": order, "generators": gens, "rank": rank(spec)}
    return [], artifacts


def cmd_rank(args):
    spec = _spec(args)
    return [], {"rank": rank(spec), "sphere_dimension": predicted_sphere_dimension(spec)}


def cmd_parabolics(args):
    spec = _spec(args)
    out = []
    verdicts = []
    for p in maximal_parabolics(spec):
        out.append(p.to_json())
        verdicts.append(_verdict(
            f"proper:{'/'.join(p.spec.graph.names(p.delta))}",
            "maximal parabolics are proper",
            properness_witness(spec, p),
        ))
    return verdicts, {"rank": rank(spec), "parabolics": out}


def cmd_decompose(args):
    spec = _spec(args)
    tree = decompose(spec, args.max_vertices)
    report = verify_tree(spec, tree)
    verdicts = [
        _verdict("rank-sum", "join of base cases", report.rank_sum),
        _verdict("one-leaf-per-class", "coset complex of abelian/free equivalence class",
                 report.one_leaf_per_class),
        _verdict("dichotomy", "induction step", report.dichotomy, report.problems),
    ]
    return verdicts, {"tree": tree.to_json(), "render": tree.render()}


def cmd_homology(args):
    if args.complex:
        data = _load_json(args.complex)
        try:
            k = SimplicialComplex.from_labelled_facets([tuple(f) for f in data["facets"]])
        except (KeyError, TypeError) as exc:
            raise UsageError(f"complex JSON needs a 'facets' list: {exc}") from None
        h = reduced_homology(k, max_dimension=args.max_dimension)
        artifacts = {"f_vector": k.f_vector() if not k.is_empty() else [], "homology": h.to_json()}
        verdicts = []
        if args.certify:
            cert = certify(k, args.certify, args.degree, max_dimension=args.max_dimension)
            verdicts.append(_verdict(f"certify:{cert.mode}", "homological certificate", cert.ok,
                                     cert.details))
        return verdicts, artifacts
    if args.graph:
        g = Multigraph.from_json(_load_json(args.graph))
    elif args.example:
        g = multigraph_example(args.example)
    else:
        raise UsageError("give --complex FILE, --graph FILE or --example NAME")
    report = verify_core_posets(g)
    verdicts = [
        _verdict("spherical", "homotopy type poset of core subgraphs", report.spherical),
        _verdict("x-equals-c", "subgraphs retract to core subgraphs", report.retraction),
        _verdict("collapse-invariance", "valence-1 homotopies",
                 all(ok for _, ok in report.collapses)),
    ]
    return verdicts, report.to_json()


def cmd_verify_paper(args):
    from .suite import run_suite

    results = run_suite(args.seed, parallel=not args.serial)
    return [v.to_json() for v in results], {"criteria": len(results)}


def _group(args) -> groups.FiniteGroup:
    if args.group:
        return groups.FiniteGroup.from_json(_load_json(args.group))
    if args.example:
        return groups.group_example(args.example)
    raise UsageError("give --group FILE or --example NAME")


def cmd_coset(args):
    g = _group(args)
    if not args.family:
        raise UsageError("coset needs --family FILE")
    fam = cosets.SubgroupFamily.from_json(g, _load_json(args.family))
    cx, poset = cosets.coset_structures(g, fam)
    hcc = reduced_homology(cx, cosets.MAX_DIMENSION)
    gen = cosets.generation_check(g, fam)
    holz = cosets.holz_check(g, fam)
    artifacts = {
        "group_order": g.order,
        "family": fam.to_json(),
        "cosets": len(cx.vertices),
        "cc_homology": hcc.to_json(),
        "cp_homology": cosets.cp_homology(g, fam).to_json(),
        "generation": gen,
    }
    verdicts = [
        _verdict("generation", "higher generating subgroups by generation", gen["ok"]),
        _verdict("holz", "homotopy equivalence cc closed under intersections", holz["ok"]),
    ]
    if args.normal:
        n = cosets.SubgroupFamily.from_json(g, [_load_json(args.normal)]).members[0]
        preds = cosets.divided_predicates(g, fam, n)
        artifacts["divided"] = preds
        if preds["strongly_divided"]:
            ses = cosets.verify_ses_join(g, fam, n)
            artifacts["ses"] = ses.to_json()
            verdicts.append(_verdict("ses-join", "coset complexes and SES", ses.left == ses.right))
            verdicts.append(_verdict("kernel-iso", "intersection with kernel", ses.kernel_iso,
                                     ses.details))
            closure = cosets.closure_split_check(g, fam, n)
            verdicts.append(_verdict("closure-split", "finite intersections divided by N",
                                     closure["ok"], [closure]))
    return verdicts, artifacts


def cmd_building(args):
    b = buildings.building(args.n, args.q)
    h = reduced_homology(b)
    cert = certify(b, "cm")
    top = args.q ** (args.n * (args.n - 1) // 2)
    verdicts = [
        _verdict("spherical", "Solomon-Tits", h.nonzero() == {args.n - 2: (top, ())},
                 [f"expected {top} spheres of dimension {args.n - 2}"]),
        _verdict("cohen-macaulay", "CM of coset complex", cert.ok, cert.details[:10]),
    ]
    return verdicts, {"subspaces": len(b.vertices), "f_vector": b.f_vector(), "homology": h.to_json()}


COMMANDS = {
    "analyze": cmd_analyze,
    "rank": cmd_rank,
    "parabolics": cmd_parabolics,
    "decompose": cmd_decompose,
    "homology": cmd_homology,
    "verify-paper": cmd_verify_paper,
    "coset": cmd_coset,
    "building": cmd_building,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", metavar="FILE", help="graph, relative spec or multigraph JSON")
    common.add_argument("--group", metavar="FILE", help="group JSON (table or permutations)")
    common.add_argument("--family", metavar="FILE", help="subgroup family JSON")
    common.add_argument("--example", metavar="NAME", help="built-in example, e.g. diamonds:3, rose:4, s:4")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="raagcc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("analyze", "rank", "parabolics", "decompose", "verify-paper"):
        p = sub.add_parser(name, parents=[common])
        if name == "verify-paper":
            p.add_argument("--serial", action="store_true", help="run criteria one after another")
    p = sub.add_parser("homology", parents=[common])
    p.add_argument("--complex", metavar="FILE", help='simplicial complex JSON {"facets": [...]}')
    p.add_argument("--certify", choices=("spherical", "cm"))
    p.add_argument("--degree", type=int)
    p.add_argument("--max-dimension", type=int, default=8)
    p = sub.add_parser("coset", parents=[common])
    p.add_argument("--normal", metavar="FILE", help="normal subgroup as an element list")
    p = sub.add_parser("building", parents=[common])
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--q", type=int, default=2)
    return parser


def _inputs(args) -> dict:
    out = {k: v for k, v in sorted(vars(args).items()) if v is not None and k not in ("out", "format")}
    for key in ("graph", "group", "family", "complex", "normal"):
        path = out.get(key)
        if path:
            out[key] = _load_json(path)
    return out


def render_text(report: dict) -> str:
    lines = [f"command: {report['command']}", f"inputs:  {report['inputs']}"]
    arts = report.get("artifacts", {})
    if "render" in arts:
        lines.append(arts["render"])
    for key, value in arts.items():
        if key in ("render", "tree"):
            continue
        if isinstance(value, list):
            lines.append(f"{key}:")
            lines += [f"  {json.dumps(x, sort_keys=True)}" for x in value]
        else:
            lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
    for v in report["verdicts"]:
        lines.append(f"[{'PASS' if v['pass'] else 'FAIL'}] {v['check']}  ({v['lemma']})")
        if not v["pass"]:
            lines += [f"    {d}" for d in v["details"][:10]]
    return "\n".join(lines) + "\n"


def execute(args) -> tuple[dict, int]:
    report = {"command": args.command, "inputs": "", "verdicts": [], "artifacts": {}}
    try:
        report["inputs"] = _digest(_inputs(args))
        verdicts, artifacts = COMMANDS[args.command](args)
        report["verdicts"] = verdicts
        report["artifacts"] = artifacts
        code = EXIT_OK if all(v["pass"] for v in verdicts) else EXIT_VIOLATION
    except SizeLimitError as exc:
        report["error"] = str(exc)
        code = EXIT_SIZE
    except RaagError as exc:
        report["error"] = str(exc)
        code = EXIT_USAGE
    return report, code


def run(argv=None) -> tuple[dict, int]:
    return execute(build_parser().parse_args(argv))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report, code = execute(args)
    if args.format == "text" and "error" not in report:
        text = render_text(report)
    else:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if "error" in report:
        print(f"error: {report['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

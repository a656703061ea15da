"""Command-line surface.

Exit codes: 0 success, 1 property-suite failure, 2 parse or resolution
error, 3 metadata conflict, 4 resource refusal.  ``--json`` switches
every command to line-delimited JSON on stdout.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .analysis import RingMeta, analyze, evaluate
from .bench import DEFAULT_NODE_BUDGET, read_edge_list, run_bench
from .dsl import Fin, Sum, normalize, parse_expr, print_expr
from .errors import ConflictError, CycleError, ParseError, SizeError, SpectopError
from .gallery import OMEGA, catalog, get_entry
from .oracle import SuiteConfig, run_property_suite
from .poset import export as export_poset

_GALLERY_NAMES = ("fan", "idempotent", "valuation_rank1", "neeman_ring", "integers_like")


def _parse_n(raw: str | None):
    if raw is None:
        return None
    if raw == OMEGA:
        return OMEGA
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"--n expects a natural number or 'omega', got {raw!r}") from None


def _load_space(text: str):
    """An expression, or '@file' naming a poset JSON file to replay."""
    if text.startswith("@"):
        with open(text[1:]) as handle:
            from .poset import FinitePoset

            return Fin(FinitePoset.from_json(handle.read()))
    return parse_expr(text)


def _resolve_target(args):
    """A target is a gallery name, an expression, or '@file'; returns
    (space, meta, known_fields, entry_or_none)."""
    target = args.target
    if target in _GALLERY_NAMES:
        entry = get_entry(target, _parse_n(args.n))
        space, meta = entry.space, entry.meta
        known = entry.known_truth.fields if entry.known_truth else None
    else:
        space = _load_space(target)
        meta = RingMeta()
        known = None
        entry = None
    if args.absolutely_flat:
        meta = dataclasses.replace(meta, absolutely_flat=True)
    if args.gabriel:
        meta = dataclasses.replace(meta, has_gabriel_dimension=True)
    return space, meta, known, entry


def _emit(args, payload: dict, human: str):
    if args.json:
        print(json.dumps(payload))
    else:
        print(human)


def _cmd_eval(args) -> int:
    expr = _load_space(args.expr)
    nf = normalize(expr)
    record = analyze(nf)
    payload = {"input": args.expr, "normalized": print_expr(nf),
               "analysis": record.to_dict()}
    lines = [f"normalized: {print_expr(nf)}"]
    for key, value in record.to_dict().items():
        lines.append(f"{key}: {value}")
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_verdict(args) -> int:
    space, meta, known, entry = _resolve_target(args)
    verdict = evaluate(space, meta, known_fields=known)
    payload = {
        "target": args.target,
        "space": print_expr(normalize(space)),
        "meta": meta.to_dict(),
        "verdict": verdict.to_dict(),
    }
    if entry is not None and entry.known_truth is not None:
        payload["known_truth"] = entry.known_truth.to_dict()
    lines = [
        f"target: {args.target}",
        f"space: {payload['space']}",
        f"ltg: {verdict.ltg.value}",
        f"fields_generate: {verdict.fields_generate.value}",
        "citations:",
    ]
    lines.extend(f"  - {c}" for c in verdict.citations)
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_ring(args) -> int:
    if args.name is None:
        entries = catalog()
        if args.json:
            for entry in entries:
                print(json.dumps(entry.to_dict()))
        else:
            for entry in entries:
                print(f"{entry.name}: {entry.description}")
        return 0
    try:
        entry = get_entry(args.name, _parse_n(args.n))
    except KeyError as exc:
        raise ParseError(exc.args[0]) from None
    verdict = entry.verdict()
    payload = entry.to_dict()
    payload["verdict"] = verdict.to_dict()
    lines = [
        f"name: {entry.name}",
        f"description: {entry.description}",
        f"space: {print_expr(entry.space)}",
        f"meta: {entry.meta.to_dict()}",
        f"known_truth: {entry.known_truth.to_dict() if entry.known_truth else None}",
        f"verdict: ltg={verdict.ltg.value}, fields={verdict.fields_generate.value}",
    ]
    _emit(args, payload, "\n".join(lines))
    return 0


def _report_exit(args, report) -> int:
    if args.json:
        print(json.dumps(report.to_dict()))
    else:
        print(report.format_table())
    return 0 if report.passed else 1


def _cmd_oracle(args) -> int:
    config = SuiteConfig(
        seed=args.seed,
        exhaustive_max=args.exhaustive_max,
        oracle_random_count=args.count,
        oracle_random_size=args.max_size,
        law_random_count=0,
        corpus_count=0,
        check_gallery=False,
        mutate=args.mutate,
    )
    return _report_exit(args, run_property_suite(config))


def _cmd_fuzz(args) -> int:
    config = SuiteConfig(
        seed=args.seed,
        exhaustive_max=-1,
        oracle_random_count=0,
        law_random_count=args.count,
        law_random_size=args.max_size,
        corpus_count=args.count,
        corpus_depth=args.depth,
        check_gallery=True,
        mutate=args.mutate,
    )
    return _report_exit(args, run_property_suite(config))


def _collect_finite(nf):
    if isinstance(nf, Fin):
        return [nf.poset]
    if isinstance(nf, Sum):
        return _collect_finite(nf.left) + _collect_finite(nf.right)
    raise ParseError(f"'{print_expr(nf)}' does not denote a finite space; cannot export")


def _cmd_export(args) -> int:
    space, _, _, _ = _resolve_target(args)
    parts = _collect_finite(normalize(space))
    combined = parts[0]
    for k, part in enumerate(parts[1:], start=1):
        if set(part.elements) & set(combined.elements):
            from .poset import construct_poset

            part = construct_poset(
                [f"s{k}_{x}" for x in part.elements],
                [(f"s{k}_{a}", f"s{k}_{b}") for a, b in part.covers],
            )
        combined = combined.disjoint_union(part)
    print(export_poset(combined, args.format))
    return 0


def _cmd_bench(args) -> int:
    if args.edges is not None:
        with open(args.edges) as handle:
            nodes, tails, heads = read_edge_list(handle.read())
        result = run_bench(nodes, threads=args.threads, verify=not args.skip_check,
                           node_budget=args.max_size, edges=(tails, heads))
    else:
        result = run_bench(args.nodes, density=args.density, seed=args.seed,
                           threads=args.threads, verify=not args.skip_check,
                           node_budget=args.max_size)
    payload = result.to_dict()
    lines = [
        f"nodes: {result.nodes}  edges: {result.edges}  threads: {result.threads}",
        f"rank: {result.rank}"
        + ("" if result.longest_path_rank is None
           else f"  longest-path check: {result.longest_path_rank} ({'ok' if result.agree else 'MISMATCH'})"),
        f"layering seconds: {result.seconds_layering:.3f}  total: {result.seconds_total:.3f}",
        f"layer sizes: {list(result.layer_sizes[:20])}{'...' if result.rank > 20 else ''}",
    ]
    _emit(args, payload, "\n".join(lines))
    if result.agree is False:
        return 1
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectop",
        description="Topological analysis of spectral spaces: ranks, duals, patch topologies and derived-category verdicts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="line-delimited JSON output")

    p = sub.add_parser("eval", help="normalize an expression and print its attributes")
    p.add_argument("expr", help="space expression, or @file naming a poset JSON file")
    add_json(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("verdict", help="theorem-backed verdicts for a ring or expression")
    p.add_argument("target", help="gallery name, space expression, or @file with poset JSON")
    p.add_argument("--n", default=None, help="parameter for gallery families (natural or 'omega')")
    p.add_argument("--absolutely-flat", action="store_true", dest="absolutely_flat")
    p.add_argument("--gabriel", action="store_true")
    add_json(p)
    p.set_defaults(func=_cmd_verdict)

    p = sub.add_parser("ring", help="browse the ring gallery")
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("--n", default=None)
    add_json(p)
    p.set_defaults(func=_cmd_ring)

    p = sub.add_parser("oracle", help="oracle-equivalence suite over small posets")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1000, help="random posets to check")
    p.add_argument("--max-size", type=int, default=10, dest="max_size")
    p.add_argument("--exhaustive-max", type=int, default=5, dest="exhaustive_max")
    p.add_argument("--mutate", default=None, help=argparse.SUPPRESS)
    add_json(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("fuzz", help="law suite over random posets and expressions")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--max-size", type=int, default=40, dest="max_size")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--mutate", default=None, help=argparse.SUPPRESS)
    add_json(p)
    p.set_defaults(func=_cmd_fuzz)

    p = sub.add_parser("export", help="export a finite space as DOT or JSON")
    p.add_argument("target", help="gallery name or space expression")
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.add_argument("--n", default=None)
    p.add_argument("--absolutely-flat", action="store_true", dest="absolutely_flat")
    p.add_argument("--gabriel", action="store_true")
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("bench", help="large-scale layering benchmark")
    p.add_argument("--nodes", type=int, default=1_000_000)
    p.add_argument("--density", type=float, default=2.0, help="expected edges per node")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--edges", default=None, help="edge-list file, one 'u v' pair per line")
    p.add_argument("--max-size", type=int, default=DEFAULT_NODE_BUDGET, dest="max_size")
    p.add_argument("--skip-check", action="store_true",
                   help="skip the longest-path cross-check")
    add_json(p)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CycleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConflictError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (SpectopError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def app() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    app()

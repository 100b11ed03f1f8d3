"""Command-line front end.

Exit status: 0 success, 1 a verification or feasibility check failed, 2 usage
or input error. Flags override values from ``--config`` (key=value lines, keys
named like the long flags). Relative output paths are resolved against
$ZZCOMPILE_OUTDIR when it is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bench import default_manifest, format_manifest, parse_manifest, records_to_csv, run_suite
from .bounds import spectral_lower_bound
from .circuits import emit_pulse_program, format_circuit, gate_counts, phase_equivalence_check, PHASE_CHECK_MAX_N
from .constructions import compile_auto, detect_small_gc, union_of_double_stars, union_of_stars
from .constructions.auto import CompileResult, family_candidates
from .decomposition import format_decomposition, parse_decomposition, simplify, verify
from .errors import InfeasibleSolution, ZZCompileError
from .graph import format_adjacency, format_graph, generate_family, read_graph
from .milp import build_cmipgc, emit_model, emit_warmstart, evaluate, ingest_solution, parse_lp, parse_solution, sound_big_m
from .oracle import brute_force_gc

OUTDIR_ENV = "ZZCOMPILE_OUTDIR"


class VerificationFailed(Exception):
    pass


def _out_path(name: str) -> Path:
    p = Path(name)
    base = os.environ.get(OUTDIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _write(name: str | None, text: str) -> None:
    if name is None or name == "-":
        sys.stdout.write(text)
    else:
        _out_path(name).write_text(text)


def _read(name: str) -> str:
    if name == "-":
        return sys.stdin.read()
    return Path(name).read_text()


def _graph(args):
    return read_graph(_read(args.input))


# ---------------------------------------------------------------- subcommands


def cmd_gen(args) -> int:
    kind = args.family
    if kind == "erdos_renyi":
        g = generate_family(kind, args.n, args.p, args.seed)
    elif kind in ("complete",):
        g = generate_family(kind, args.q if args.q is not None else args.n, args.n)
    elif kind in ("edgeless", "path", "cycle"):
        g = generate_family(kind, args.n)
    elif kind == "perfect_matching":
        g = generate_family(kind, args.q)
    elif kind == "biclique":
        g = generate_family(kind, args.a, args.b)
    elif kind == "disjoint_cliques":
        g = generate_family(kind, [int(x) for x in args.sizes.split(",")])
    else:
        g = generate_family(kind)
    _write(args.out, format_adjacency(g) if args.format == "matrix" else format_graph(g))
    return 0


def _compile(g, method: str, bound: str) -> CompileResult:
    if method == "auto":
        return compile_auto(g, bound)
    lb = spectral_lower_bound(g, bound).lower_bound if not g.is_edgeless() else 0
    if method == "stars":
        d = union_of_stars(g)
    elif method == "double-stars":
        d = union_of_double_stars(g)
    elif method == "detector":
        d = detect_small_gc(g)
        if d is None:
            raise ZZCompileError("graph has coupling number above 2; the detector does not apply")
    else:
        found = dict(family_candidates(g))
        if method not in found:
            raise ZZCompileError(f"graph is not recognised as a {method} instance")
        d = simplify(found[method])
    ok = bool(verify(g, d))
    if not ok:
        raise VerificationFailed(f"{method} output failed verification")
    return CompileResult(d, method, len(d), lb, ok)


def cmd_compile(args) -> int:
    g = _graph(args)
    res = _compile(g, args.method, args.bound)
    _write(args.out, format_decomposition(res.decomposition))
    opt = " optimal" if res.optimal else ""
    print(f"method={res.method} rows={res.rows} lb={res.lower_bound}{opt}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    g = _graph(args)
    d = parse_decomposition(_read(args.dec))
    rep = verify(g, d)
    if rep:
        print(f"ok rows={len(d)}")
        return 0
    i, j = rep.offending_pair
    print(f"FAIL worst={rep.worst_violation} pair=({i + 1},{j + 1})")
    return 1


def cmd_bound(args) -> int:
    g = _graph(args)
    print(spectral_lower_bound(g, args.mode).render())
    return 0


def cmd_brute(args) -> int:
    g = _graph(args)
    gc, d = brute_force_gc(
        g, args.k_start, args.k_max, paper_faithful=args.paper_faithful,
        timeout=args.timeout, workers=args.workers, allow_large=args.allow_large,
    )
    print(f"gc={gc}")
    if args.out:
        _write(args.out, format_decomposition(d))
    return 0


def _model_args(args, g, rows: int | None):
    R = args.R if args.R is not None else rows
    if R is None:
        raise ZZCompileError("--R is required without a warm start")
    M = sound_big_m(g.n) if args.sound_m else Fraction(args.M)
    return build_cmipgc(
        g, max(R, 1), M, padberg=not args.no_padberg, drop_tautologies=args.drop_tautologies,
        lb_cut=not args.no_lb_cut, ordering=args.ordering, all_ones=args.all_ones,
        padberg_budget=args.padberg_budget,
    )


def cmd_mip_export(args) -> int:
    g = _graph(args)
    warm = None
    if args.warm != "none":
        warm = union_of_stars(g) if args.warm == "stars" else union_of_double_stars(g)
    if warm is not None and args.R is not None and args.R < len(warm):
        warm = None  # bound-probing run below the construction's row count
    model = _model_args(args, g, len(warm) if warm is not None else None)
    text, side = emit_model(model)
    _write(args.out, text)
    if side:
        _write(args.out + ".exact", side)
    if warm is not None:
        _, wtext = emit_warmstart(warm, model)
        _write(args.out + ".mst", wtext)
    print(f"variables={len(model.variables)} constraints={len(model.constraints)} R={model.R}", file=sys.stderr)
    return 0


def _load_model(args):
    side = _read(args.sidecar) if args.sidecar else ""
    if not side and Path(args.model + ".exact").exists():
        side = _read(args.model + ".exact")
    return parse_lp(_read(args.model), side)


def cmd_mip_check(args) -> int:
    model = _load_model(args)
    parse_solution(_read(args.assign))  # shape check
    values = {}
    for line in _read(args.assign).splitlines():
        parts = line.split()
        if len(parts) == 2 and not parts[0].startswith("#"):
            values[parts[0]] = Fraction(parts[1])
    rep = evaluate(model, values)
    print(f"objective={rep.objective} max_violation={rep.max_violation} violated={','.join(rep.violated_tags) or '-'}")
    return 0 if rep else 1


def cmd_mip_import(args) -> int:
    g = _graph(args)
    model = _load_model(args)
    try:
        res = ingest_solution(_read(args.solution), g, model)
    except InfeasibleSolution as exc:
        print(f"FAIL {exc}")
        return 1
    _write(args.out, format_decomposition(res.decomposition))
    print(f"method={res.method} rows={res.rows} verified={res.verified}", file=sys.stderr)
    return 0


def cmd_emit_circuit(args) -> int:
    g = _graph(args)
    d = parse_decomposition(_read(args.dec))
    prog = emit_pulse_program(d, g, reorder=args.reorder, scale=args.scale)
    if g.n <= PHASE_CHECK_MAX_N and not phase_equivalence_check(prog, g):
        print("FAIL phase check")
        return 1
    text = json.dumps(prog.to_dict(), indent=2) + "\n" if args.json else format_circuit(prog)
    _write(args.out, text)
    c = gate_counts(d, g, reorder=args.reorder)
    print(f"ms_layers={c.ms_layers} bit_flips={c.bit_flips} baseline_cnots={c.baseline_cnots} baseline_rzs={c.baseline_rzs}", file=sys.stderr)
    return 0


def cmd_bench(args) -> int:
    instances = default_manifest() if args.suite == "default" else parse_manifest(_read(args.suite))
    if args.write_manifest:
        _write(args.write_manifest, format_manifest(instances))
    workers = args.workers if args.workers is not None else (os.cpu_count() or 1)
    recs = run_suite(instances, workers=workers, oracle_max_n=args.oracle_max_n, oracle_timeout=args.oracle_timeout)
    _write(args.out, records_to_csv(recs, timings=args.timings))
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zzcompile", description="Compile graph couplings into global MS layers.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--config", help="key=value defaults for the subcommand's long flags")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("--in", dest="input", required=True, help="graph file (edge list or adjacency matrix), - for stdin")
        return p

    p = sub.add_parser("gen", help="write a graph from a named family")
    p.add_argument("--family", required=True, choices=[
        "complete", "edgeless", "perfect_matching", "path", "cycle", "biclique", "disjoint_cliques", "erdos_renyi", "prototype"])
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sizes", help="comma-separated clique sizes")
    p.add_argument("--format", choices=["edges", "matrix"], default="edges")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = with_input(sub.add_parser("compile", help="build a verified decomposition"))
    p.add_argument("--method", default="auto", choices=[
        "auto", "stars", "double-stars", "detector", "clique", "disjoint-cliques", "pm-hadamard", "cycle", "path"])
    p.add_argument("--bound", default="auto", choices=["auto", "exact", "numeric"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_compile)

    p = with_input(sub.add_parser("verify", help="check a decomposition exactly"))
    p.add_argument("--dec", required=True)
    p.set_defaults(func=cmd_verify)

    p = with_input(sub.add_parser("bound", help="spectral lower bound"))
    p.add_argument("--mode", default="auto", choices=["auto", "exact", "numeric"])
    p.set_defaults(func=cmd_bound)

    p = with_input(sub.add_parser("brute", help="exact coupling number by exhaustive search"))
    p.add_argument("--k-start", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--paper-faithful", action="store_true", help="start the search at one row instead of the lower bound")
    p.add_argument("--timeout", type=float)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_brute)

    def model_flags(p):
        p.add_argument("--R", type=int, help="row budget (default: warm-start row count)")
        p.add_argument("--M", default="10", help="big-M weight bound (rational)")
        p.add_argument("--sound-m", action="store_true", help="use the provably sufficient (huge) big-M")
        p.add_argument("--no-padberg", action="store_true")
        p.add_argument("--drop-tautologies", action="store_true")
        p.add_argument("--no-lb-cut", action="store_true")
        p.add_argument("--ordering", default="auto", choices=["auto", "rownumber", "firstdiff"])
        p.add_argument("--all-ones", action="store_true", help="pin the last row to all +1")
        p.add_argument("--padberg-budget", type=int)

    p = with_input(sub.add_parser("mip-export", help="write the MIP model, sidecar and warm start"))
    model_flags(p)
    p.add_argument("--warm", default="stars", choices=["stars", "double-stars", "none"])
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_mip_export)

    p = sub.add_parser("mip-check", help="evaluate an assignment against a model file")
    p.add_argument("--model", required=True)
    p.add_argument("--sidecar")
    p.add_argument("--assign", required=True)
    p.set_defaults(func=cmd_mip_check)

    p = with_input(sub.add_parser("mip-import", help="turn a solver's solution listing into a verified decomposition"))
    p.add_argument("--model", required=True)
    p.add_argument("--sidecar")
    p.add_argument("--solution", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_mip_import)

    p = with_input(sub.add_parser("emit-circuit", help="pulse program of MS layers and bit flips"))
    p.add_argument("--dec", required=True)
    p.add_argument("--reorder", action="store_true", help="greedily reorder layers to save flips")
    p.add_argument("--scale", default="gamma")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_emit_circuit)

    p = sub.add_parser("bench", help="run the seeded benchmark suite")
    p.add_argument("--suite", default="default", help="'default' or a manifest file")
    p.add_argument("--out")
    p.add_argument("--workers", type=int)
    p.add_argument("--oracle-max-n", type=int, default=6)
    p.add_argument("--oracle-timeout", type=float, default=300.0)
    p.add_argument("--timings", action="store_true", help="fill the timing columns (output then varies run to run)")
    p.add_argument("--write-manifest")
    p.set_defaults(func=cmd_bench)
    return ap


def _config_defaults(path: str, parser: argparse.ArgumentParser, command: str) -> None:
    sub = parser._subparsers._group_actions[0].choices[command]  # noqa: SLF001
    dests = {a.dest: a for a in sub._actions}  # noqa: SLF001
    values = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        s = line.split("#", 1)[0].strip()
        if not s:
            continue
        if "=" not in s:
            parser.error(f"--config line {lineno}: expected key=value")
        key, val = (x.strip() for x in s.split("=", 1))
        dest = key.lstrip("-").replace("-", "_")
        if dest == "in":
            dest = "input"
        if dest not in dests:
            parser.error(f"--config line {lineno}: unknown key {key!r} for {command}")
        act = dests[dest]
        if isinstance(act, (argparse._StoreTrueAction,)):  # noqa: SLF001
            values[dest] = val.lower() in ("1", "true", "yes", "on")
        else:
            values[dest] = act.type(val) if act.type else val
        act.required = False
    sub.set_defaults(**values)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    config = None
    if "--config" in argv:
        k = argv.index("--config")
        if k + 1 >= len(argv):
            parser.error("--config needs a file")
        config = argv[k + 1]
        command = next((a for a in argv[k + 2:] if not a.startswith("-")), None)
        if command is not None and command in parser._subparsers._group_actions[0].choices:  # noqa: SLF001
            _config_defaults(config, parser, command)
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except VerificationFailed as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return 1
    except (ZZCompileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

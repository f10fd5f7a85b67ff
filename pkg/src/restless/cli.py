"""The ``rtp`` command-line driver."""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import generators
from .core import (GuardError, ParseError, Query, RestlessPath, TemporalGraph, direct_edge_witness,
                   format_witness, low_degree_reduce, pad_delta, parse, serialize,
                   underlying_graph, validate_witness)
from .expansion import build_expansion, special_case_solve, walk_reachable
from .fes_solver import fes_decompose, fes_solve
from .oracle import GUARD_N, brute_force, brute_force_walk
from .short_path import solve_short
from .tfvs import compute_tfvs
from .tfvs_solver import tfvs_solve

FES_LIMIT = 14
REPSET_LIMIT = 12
TFVS_LIMIT = 8
ALGORITHMS = ("auto", "brute", "walk", "repset", "fes", "tfvs")

EXIT_OK, EXIT_NEGATIVE, EXIT_PARSE, EXIT_GUARD = 0, 1, 2, 3


class Blocked(GuardError):
    """No algorithm is within its parameter limit for this instance."""


@dataclass
class SolveReport:
    answer: bool
    algorithm: str
    witness: Optional[RestlessPath] = None
    params: dict = field(default_factory=dict)
    time_ms: float = 0.0

    def lines(self, timing: bool = False) -> list[str]:
        out = [f"answer: {'yes' if self.answer else 'no'}", f"algorithm: {self.algorithm}"]
        out += [f"{key}: {val}" for key, val in sorted(self.params.items())]
        if timing:
            out.append(f"time_ms: {self.time_ms:.3f}")
        if self.witness is not None:
            out.append(f"length: {len(self.witness)}")
            out.append("witness:")
            out += format_witness(self.witness).splitlines()
        return out

    def document(self, timing: bool = False) -> dict:
        doc = {"answer": self.answer, "algorithm": self.algorithm, "params": self.params,
               "witness": [list(tr) for tr in self.witness.transitions] if self.witness else None}
        if timing:
            doc["time_ms"] = self.time_ms
        return doc


# input helpers

def read_graph(path: str) -> tuple[TemporalGraph, Optional[tuple[int, int, int]]]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text), query_hint(text)


def query_hint(text: str) -> Optional[tuple[int, int, int]]:
    """``# query: <source> <target> <delta>`` comments written by ``rtp generate``."""
    for line in text.splitlines():
        line = line.strip()
        if line.startswith("# query:"):
            try:
                s, z, d = (int(x) for x in line.split(":", 1)[1].split())
            except ValueError:
                raise ParseError(f"malformed query comment: {line!r}") from None
            return s, z, d
    return None


def build_query(args, g: TemporalGraph, hint) -> Query:
    s, z, d = hint if hint else (None, None, None)
    s = args.source if args.source is not None else s
    z = args.target if args.target is not None else z
    d = args.delta if args.delta is not None else d
    if s is None or z is None or d is None:
        raise ParseError("need --source, --target and --delta (or a '# query:' comment)")
    q = Query(s, z, d, getattr(args, "max_length", None))
    try:
        q.check(g)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return q


def read_appearances(path: str) -> set[tuple[int, int]]:
    out = set()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            v, t = (int(x) for x in line.replace("(", " ").replace(")", " ").replace(",", " ").split())
        except ValueError:
            raise ParseError("expected '<v> <t>'", lineno) from None
        out.add((v, t))
    return out


# solving

def run_algorithm(name: str, g: TemporalGraph, q: Query, tfvs_set=None) -> SolveReport:
    """Run one named algorithm; ``walk`` answers the walk relaxation."""
    if name == "brute":
        r = brute_force(g, q)
        return SolveReport(r.exists, name, r.shortest)
    if name == "walk":
        if direct_edge_witness(g, q) is not None:
            ok = True
        else:
            ok = brute_force_walk(g, q) if g.n <= GUARD_N else walk_reachable(build_expansion(g, q))
        return SolveReport(ok, name, params={"relaxation": "walk"})
    if name == "repset":
        r = solve_short(g, q)
        return SolveReport(r.answer, name, r.witness, {"k": q.normalized(g).k, "max_family": r.max_family})
    if name == "fes":
        r = fes_solve(g, q)
        return SolveReport(r.answer, name, r.witness,
                           {"feedback_edges": r.num_feedback, "connecting_paths": r.num_paths})
    if name == "tfvs":
        xs = compute_tfvs(g) if tfvs_set is None else tfvs_set
        r = tfvs_solve(g, q, xs)
        witness = r.witness
        if witness is not None and len(witness) > q.normalized(g).k:
            raise GuardError("tfvs found a path longer than --max-length; use repset")
        return SolveReport(r.answer, name, witness, {"tfvs_size": len(xs)})
    raise ValueError(f"unknown algorithm {name}")


def auto_solve(g: TemporalGraph, q: Query, tfvs_set=None) -> SolveReport:
    qn = q.normalized(g)
    direct = direct_edge_witness(g, qn)
    if direct is not None and qn.k >= 1:
        return SolveReport(True, "direct", direct)
    special = special_case_solve(g, q)
    if special is not None:
        ok, witness = special
        if not ok or len(witness) <= qn.k:
            return SolveReport(ok, "special", witness, {"delta": qn.delta})
    reduced = low_degree_reduce(g, qn)
    dec = fes_decompose(underlying_graph(reduced), qn.source, qn.target)
    num_f = len(dec.feedback_edges)
    if num_f == 0 or num_f <= FES_LIMIT:
        rep = run_algorithm("fes", g, q)
        if num_f == 0:
            rep.algorithm = "forest"
        return rep
    if qn.k <= REPSET_LIMIT:
        return run_algorithm("repset", g, q)
    for k in range(1, REPSET_LIMIT + 1):
        r = solve_short(g, Query(q.source, q.target, q.delta, k))
        if r.answer:
            return SolveReport(True, "repset", r.witness, {"k": k, "max_family": r.max_family})
    if qn.k == g.n - 1:
        xs = tfvs_set
        if xs is None:
            try:
                xs = compute_tfvs(g, TFVS_LIMIT)
            except GuardError:
                xs = None
        if xs is not None and len(xs) <= TFVS_LIMIT:
            return run_algorithm("tfvs", g, q, xs)
    raise Blocked(f"no algorithm applies: |F|={num_f} > {FES_LIMIT}, no path with k <= {REPSET_LIMIT}, "
                  f"timed feedback vertex number > {TFVS_LIMIT} or length bound set")


def cmd_solve(args) -> int:
    g, hint = read_graph(args.input)
    q = build_query(args, g, hint)
    if args.dump_expansion:
        if direct_edge_witness(g, q) is not None:
            raise ParseError("no expansion: a time edge joins source and target")
        sys.stdout.write(build_expansion(g, q).dump(g))
        return EXIT_OK
    tfvs_set = read_appearances(args.tfvs_file) if args.tfvs_file else None
    start = time.perf_counter()
    if args.algo == "auto":
        rep = auto_solve(g, q, tfvs_set)
    else:
        rep = run_algorithm(args.algo, g, q, tfvs_set)
    rep.time_ms = (time.perf_counter() - start) * 1000
    if args.report_decomposition:
        dec = fes_decompose(underlying_graph(low_degree_reduce(g, q.normalized(g))), q.source, q.target)
        rep.params["F"] = len(dec.feedback_edges)
        rep.params["P"] = len(dec.connecting_paths)
    if rep.witness is not None:
        ok, why = validate_witness(g, q, rep.witness)
        if not ok:
            raise AssertionError(f"internal error: invalid witness ({why})")
    if args.json:
        print(json.dumps(rep.document(args.timing), sort_keys=True))
    else:
        print("\n".join(rep.lines(args.timing)))
    return EXIT_OK


# generation and transforms

def _emit(g: TemporalGraph, q: Optional[Query], out: Optional[str]) -> None:
    text = serialize(g)
    if q is not None:
        head, rest = text.split("\n", 1)
        text = f"{head}\n# query: {q.source} {q.target} {q.delta}\n{rest}"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _parse_clauses(spec: str) -> tuple[tuple[int, ...], ...]:
    try:
        return tuple(tuple(int(x) for x in part.split()) for part in spec.split(";") if part.strip())
    except ValueError:
        raise ParseError("clauses look like '1 -2 3; -1 2 3; ...'") from None


def cmd_generate(args) -> int:
    kind = args.kind
    if kind == "sat":
        if args.clauses:
            clauses = _parse_clauses(args.clauses)
            num_vars = args.vars or max(abs(x) for c in clauses for x in c)
            try:
                f = generators.Exact34Formula(num_vars, clauses)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        else:
            corpus = generators.exact34_corpus()
            f = corpus[args.index % len(corpus)]
        g, q = generators.sat_to_rtp(f)
        if args.clique_completion:
            g, q = generators.clique_completion(g, q)
    elif kind == "mcc":
        h = generators.random_mcc(args.k, args.part_size, args.edge_prob, args.seed)
        g, q = generators.mcc_to_rtp(h)
    elif kind == "or":
        if not args.inputs:
            raise ParseError("or needs --inputs")
        instances = []
        for path in args.inputs:
            gi, hint = read_graph(path)
            instances.append((gi, build_query(args, gi, hint)))
        try:
            g, q = generators.or_compose(instances)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    else:
        g = generators.random_instance(args.n, args.lifetime, args.density, args.seed)
        q = None
    _emit(g, q, args.output)
    return EXIT_OK


def cmd_transform(args) -> int:
    g, hint = read_graph(args.input)
    q = None
    if args.kind == "pad-delta":
        if args.delta is None or args.delta < 1:
            raise ParseError("pad-delta needs --delta >= 1")
        g = pad_delta(g, args.delta)
        if hint:
            q = Query(hint[0], hint[1], args.delta + 1)
    else:
        q = build_query(args, g, hint)
        if args.kind == "low-degree":
            g = low_degree_reduce(g, q)
        else:
            g, q = generators.clique_completion(g, q)
    _emit(g, q, args.output)
    return EXIT_OK


def cmd_tfvs(args) -> int:
    g, _ = read_graph(args.input)
    budget = args.budget if args.budget is not None else 12
    try:
        xs = compute_tfvs(g, budget)
    except GuardError as exc:
        raise GuardError(f"unavailable: {exc}") from None
    for v, t in sorted(xs):
        print(f"({v},{t})")
    return EXIT_OK


def cmd_bench(args) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise ParseError(f"corpus directory {corpus} does not exist")
    algos = args.algos.split(",") if args.algos else ["repset", "fes", "tfvs"]
    for a in algos:
        if a not in ALGORITHMS or a == "auto":
            raise ParseError(f"unknown algorithm {a}")
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["instance", "n", "lifetime", "size", "algorithm", "answer", "ms", "agreement"])
    for path in sorted(corpus.glob("*.tg")):
        g, hint = read_graph(str(path))
        q = build_query(args, g, hint) if (hint or args.source is not None) else Query(0, g.n - 1, 1)
        truth = None
        if g.n <= GUARD_N:
            truth = brute_force(g, q).exists
        for a in algos:
            start = time.perf_counter()
            try:
                ans = "yes" if run_algorithm(a, g, q).answer else "no"
            except GuardError:
                ans = "guard"
            ms = (time.perf_counter() - start) * 1000
            if truth is None or ans == "guard":
                agree = "skipped"
            else:
                agree = str((ans == "yes") == truth).lower()
            writer.writerow([path.name, g.n, g.lifetime, g.size(), a, ans, f"{ms:.2f}", agree])
    if args.output:
        out.close()
    return EXIT_OK


# argument parsing

def _query_flags(p: argparse.ArgumentParser, max_length: bool = True) -> None:
    p.add_argument("--source", type=int, help="source vertex id s")
    p.add_argument("--target", type=int, help="target vertex id z")
    p.add_argument("--delta", type=int, help="maximum waiting time Δ")
    if max_length:
        p.add_argument("--max-length", type=int, help="bound k on the number of transitions (default n-1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rtp", description="Δ-restless temporal paths.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide whether a restless (s, z)-path exists")
    p.add_argument("--input", required=True, help="temporal graph file ('tg <n> <lifetime>' then '<u> <v> <t>' lines)")
    _query_flags(p)
    p.add_argument("--algo", choices=ALGORITHMS, default="auto", help="solver; auto picks by parameter size")
    p.add_argument("--tfvs-file", help="timed feedback vertex set for --algo tfvs, one '<v> <t>' per line")
    p.add_argument("--dump-expansion", action="store_true", help="print the expansion digraph and exit")
    p.add_argument("--report-decomposition", action="store_true", help="report |F| and the number of connecting paths")
    p.add_argument("--json", action="store_true", help="print one JSON document instead of lines")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("generate", help="emit a generated instance")
    p.add_argument("kind", choices=("sat", "mcc", "or", "random"))
    p.add_argument("--output", help="write here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--clauses", help="sat: Exact(3,4) clauses, e.g. '1 2 3; -1 2 3; ...'")
    p.add_argument("--vars", type=int, help="sat: number of variables")
    p.add_argument("--index", type=int, default=0, help="sat: formula of the built-in three-variable corpus")
    p.add_argument("--clique-completion", action="store_true",
                   help="sat: add complete layers so only {s, z} is missing")
    p.add_argument("--k", type=int, default=3, help="mcc: number of parts")
    p.add_argument("--part-size", type=int, default=2, help="mcc: vertices per part")
    p.add_argument("--edge-prob", type=float, default=0.5, help="mcc: edge probability between parts")
    p.add_argument("--inputs", nargs="*", help="or: instance files sharing n and Δ")
    _query_flags(p, max_length=False)
    p.add_argument("--n", type=int, default=8, help="random: vertex count")
    p.add_argument("--lifetime", type=int, default=6, help="random: lifetime")
    p.add_argument("--density", type=float, default=0.3, help="random: probability per (pair, timestep)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("transform", help="apply a preprocessing transform")
    p.add_argument("kind", choices=("pad-delta", "low-degree", "clique-completion"))
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    _query_flags(p, max_length=False)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("tfvs", help="print a minimum timed feedback vertex set")
    p.add_argument("--input", required=True)
    p.add_argument("--budget", type=int, help="largest size to search (default 12)")
    p.set_defaults(func=cmd_tfvs)

    p = sub.add_parser("bench", help="time algorithms over a directory of .tg files")
    p.add_argument("--corpus", required=True)
    p.add_argument("--algos", help="comma-separated subset of brute,walk,repset,fes,tfvs")
    p.add_argument("--output", help="CSV file (default stdout)")
    _query_flags(p, max_length=False)
    p.set_defaults(func=cmd_bench)
    return parser


def _fail(code: int, kind: str, exc: Exception) -> int:
    """One ``error code=<n> kind=<k> message=<json string>`` line on stderr."""
    print(f"error code={code} kind={kind} message={json.dumps(str(exc))}", file=sys.stderr)
    return code


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_PARSE
    try:
        return args.func(args)
    except ParseError as exc:
        return _fail(EXIT_PARSE, "parse", exc)
    except GuardError as exc:
        return _fail(EXIT_GUARD, "blocked" if isinstance(exc, Blocked) else "guard", exc)


if __name__ == "__main__":
    sys.exit(main())

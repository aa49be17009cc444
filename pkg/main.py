# main.py
"""Command-line harness: scan graph6 corpora, enumerate, sample, construct and check fixtures."""

import argparse
import asyncio
import sys
import time
from contextlib import contextmanager
from typing import Callable, Dict, IO, Iterator, List, Optional, Sequence

from config import DEFAULT_CHECKS, DEFAULT_JOBS, DEFAULT_SEED, ENUMERATE_CAP, EXACT_LIMIT, MAX_ORDER, RNG_ALGORITHM
from conjectures import CHECKS, parse_checks, run_all_checks, run_spectrum_checks
from constructions import (
    FAMILIES, add_twin, disjoint_union, family, fixture_graphs, fixture_spectra,
    fixture_tight, join, kotlov_lovasz_double, line_graph, load_fixture_table, tensor_product
)
from graph import Graph, complement, write_graph6
from reduction import reduce
from scanner import GraphScanner
from tracker import ReportTracker
from utils import setup_logging

logger = setup_logging(__name__)


class PipelineError(ValueError):
    """Malformed construct pipeline."""


# ---------------------------------------------------------------------------
# construct pipelines

def _ints(tokens: Sequence[str]) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as e:
        raise PipelineError(f"Expected integer parameters, got {list(tokens)}") from e


def _operand(tokens: Sequence[str]) -> Graph:
    if not tokens:
        raise PipelineError("Binary transform needs a family operand, e.g. 'join complete 2'")
    return family(tokens[0], *_ints(tokens[1:]))


def _add_twin(g: Graph, tokens: Sequence[str]) -> Graph:
    if not tokens or len(tokens) > 2 or (len(tokens) == 2 and tokens[1] not in ("open", "closed")):
        raise PipelineError("add_twin takes a vertex and optionally 'open' or 'closed'")
    return add_twin(g, _ints(tokens[:1])[0], closed=len(tokens) == 2 and tokens[1] == "closed")


def _unary(op: Callable[[Graph], Graph]) -> Callable[[Graph, Sequence[str]], Graph]:
    def apply(g: Graph, tokens: Sequence[str]) -> Graph:
        if tokens:
            raise PipelineError(f"Transform takes no arguments, got {list(tokens)}")
        return op(g)
    return apply


TRANSFORMS: Dict[str, Callable[[Graph, Sequence[str]], Graph]] = {
    'complement': _unary(complement),
    'line_graph': _unary(line_graph),
    'kl_double': _unary(kotlov_lovasz_double),
    'reduce': _unary(reduce),
    'join': lambda g, tokens: join(g, _operand(tokens)),
    'tensor': lambda g, tokens: tensor_product(g, _operand(tokens)),
    'union': lambda g, tokens: disjoint_union(g, _operand(tokens)),
    'add_twin': _add_twin,
}


def build_pipeline(text: str) -> Graph:
    """Evaluate ``"family params | transform args | ..."`` left to right."""
    stages = [stage.split() for stage in text.split("|")]
    if not stages or not stages[0]:
        raise PipelineError("Empty pipeline")
    name, *params = stages[0]
    if name not in FAMILIES:
        raise PipelineError(f"Unknown family {name!r}; choose from {sorted(FAMILIES)}")
    g = family(name, *_ints(params))
    for stage in stages[1:]:
        if not stage:
            raise PipelineError("Empty pipeline stage")
        op, *args = stage
        if op not in TRANSFORMS:
            raise PipelineError(f"Unknown transform {op!r}; choose from {sorted(TRANSFORMS)}")
        g = TRANSFORMS[op](g, args)
    return g


# ---------------------------------------------------------------------------
# commands

@contextmanager
def open_output(path: Optional[str]) -> Iterator[IO[str]]:
    if path is None or path == "-":
        yield sys.stdout
        return
    with open(path, 'w', encoding='utf-8', newline='') as f:
        yield f


def _tracker(args, out: IO[str], checks: Sequence[str]) -> ReportTracker:
    return ReportTracker(out, checks, emit=args.emit, diagnostics=sys.stderr, timings=args.timings)


def _scanner(args, checks: Sequence[str]) -> GraphScanner:
    return GraphScanner(checks, jobs=args.jobs, allow_approximate=args.approximate,
                        exact_limit=args.exact_limit, max_order=args.max_order,
                        fail_fast=args.fail_fast, timings=args.timings)


def cmd_scan(args) -> int:
    checks = parse_checks(args.checks)
    start_time = time.time()
    with open_output(args.output) as out:
        tracker = _tracker(args, out, checks)
        scanner = _scanner(args, checks)
        for path in args.inputs:
            asyncio.run(scanner.scan_file(path, tracker))
            if scanner.stopped:
                break
        extra = {'inputs': list(args.inputs)}
        if args.timings:
            extra['elapsed'] = round(time.time() - start_time, 6)
        tracker.write_summary(extra)
    return tracker.exit_status


def cmd_enumerate(args) -> int:
    checks = parse_checks(args.checks)
    if args.max_order > ENUMERATE_CAP:
        raise ValueError(f"enumerate is capped at order {ENUMERATE_CAP}, got {args.max_order}")
    start_time = time.time()
    with open_output(args.output) as out:
        tracker = _tracker(args, out, checks)
        scanner = _scanner(args, checks)
        scanner.max_order = MAX_ORDER
        asyncio.run(scanner.enumerate(args.max_order, tracker))
        extra = {'max_order': args.max_order}
        if args.timings:
            extra['elapsed'] = round(time.time() - start_time, 6)
        tracker.write_summary(extra)
    return tracker.exit_status


def cmd_sample(args) -> int:
    checks = parse_checks(args.checks)
    start_time = time.time()
    with open_output(args.output) as out:
        tracker = _tracker(args, out, checks)
        scanner = _scanner(args, checks)
        asyncio.run(scanner.sample(args.order, args.count, args.seed, tracker))
        extra = {'rng': RNG_ALGORITHM, 'seed': args.seed, 'order': args.order, 'count': args.count}
        if args.timings:
            extra['elapsed'] = round(time.time() - start_time, 6)
        tracker.write_summary(extra)
    return tracker.exit_status


def cmd_construct(args) -> int:
    g = build_pipeline(" ".join(args.pipeline))
    with open_output(args.output) as out:
        out.write(write_graph6(g) + "\n")
    logger.info(f"Constructed graph of order {g.order} and size {g.size}")
    return 0


def cmd_fixtures(args) -> int:
    """Run the fixture table and confirm every recorded inertia and tight case."""
    graph_checks = parse_checks(args.checks)
    spectrum_checks = tuple(name for name in graph_checks if not CHECKS[name].needs_graph)
    data = load_fixture_table()
    mismatches = 0
    with open_output(args.output) as out:
        tracker = _tracker(args, out, graph_checks)
        spectra_tight = fixture_tight(data)
        for name, spectrum in fixture_spectra(data).items():
            report = run_spectrum_checks(spectrum, spectrum_checks)
            tracker.add_report(report)
            mismatches += _confirm_tight(name, report, spectra_tight.get(name, ()), spectrum_checks)
        for fixture in fixture_graphs(data):
            report = run_all_checks(fixture.graph, graph_checks, graph_id=fixture.name,
                                    allow_approximate=args.approximate)
            tracker.add_report(report)
            if report.inertia.as_tuple() != fixture.inertia:
                logger.error(f"Fixture {fixture.name}: inertia {report.inertia.as_tuple()}, "
                             f"recorded {fixture.inertia}")
                mismatches += 1
            mismatches += _confirm_tight(fixture.name, report, fixture.tight, graph_checks)
        tracker.write_summary({'fixture_version': data.get('version'), 'mismatches': mismatches})
    if mismatches:
        return 1
    return tracker.exit_status


def _confirm_tight(name: str, report, claimed: Sequence[str], enabled: Sequence[str]) -> int:
    enabled_ids = {rid for check in enabled for rid in CHECKS[check].result_ids}
    misses = 0
    for check_id in claimed:
        if check_id not in enabled_ids:
            continue
        verdict = report.result(check_id).verdict
        if verdict != 'tight':
            logger.error(f"Fixture {name}: {check_id} is {verdict}, recorded as tight")
            misses += 1
    return misses


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--checks", default=",".join(DEFAULT_CHECKS),
                        help=f"comma-separated check ids or 'all' ({', '.join(CHECKS)})")
    common.add_argument("--emit", choices=("jsonl", "csv"), default="jsonl")
    common.add_argument("--fail-fast", action="store_true", help="stop at the first violation or parse error")
    common.add_argument("--jobs", type=int, default=DEFAULT_JOBS, help="worker processes (env INERTIA_JOBS)")
    common.add_argument("--exact-limit", type=int, default=EXACT_LIMIT,
                        help="largest order handled by exact arithmetic")
    common.add_argument("--approximate", action="store_true",
                        help="allow the float path above the exact limit (results flagged approximate)")
    common.add_argument("--timings", action="store_true", help="add wall-clock fields to the output")
    common.add_argument("--output", help="write the report stream here instead of standard output")

    parser = argparse.ArgumentParser(description="Exact adjacency inertia and conjecture checks for graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    scan = sub.add_parser("scan", parents=[common], help="check graph6/sparse6 lines from files or stdin")
    scan.add_argument("inputs", nargs="*", default=["-"], help="input files, '-' for standard input")
    scan.add_argument("--max-order", type=int, default=MAX_ORDER, help="reject graphs above this order")
    scan.set_defaults(handler=cmd_scan)

    enum = sub.add_parser("enumerate", parents=[common], help="check every labeled graph up to an order")
    enum.add_argument("--max-order", type=int, default=5, help=f"largest order, at most {ENUMERATE_CAP}")
    enum.set_defaults(handler=cmd_enumerate)

    sample = sub.add_parser("sample", parents=[common], help="check seeded G(n, 1/2) samples")
    sample.add_argument("--order", type=int, required=True)
    sample.add_argument("--count", type=int, default=1)
    sample.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sample.add_argument("--max-order", type=int, default=MAX_ORDER)
    sample.set_defaults(handler=cmd_sample)

    construct = sub.add_parser("construct", help="build a graph, e.g. 'complete 2 | kl_double'")
    construct.add_argument("pipeline", nargs="+", help="family and transforms separated by '|'")
    construct.add_argument("--output")
    construct.set_defaults(handler=cmd_construct)

    fixtures = sub.add_parser("fixtures", parents=[common], help="check the shipped fixture table")
    fixtures.set_defaults(handler=cmd_fixtures, checks="all")

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv`` and run the command; returns the exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except KeyboardInterrupt:
        logger.warning("Interrupted by user")
        return 130
    except (ValueError, OSError, RuntimeError) as e:
        logger.error(f"{args.command} failed: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(run())

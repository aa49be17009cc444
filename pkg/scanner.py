# scanner.py
"""Async, order-preserving scanning of graph streams through the checker registry."""

import asyncio
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from typing import AsyncIterator, Iterator, List, Optional, Sequence, Tuple, Union

import aiofiles
import numpy as np

from config import BATCH_FACTOR, ENUMERATE_CAP, EXACT_LIMIT, MAX_ORDER, RNG_ALGORITHM
from conjectures import run_all_checks
from graph import GRAPH6_HEADER, SPARSE6_HEADER, Graph, Graph6Error, GraphOrderError, parse_graph6
from tracker import ReportTracker
from utils import setup_logging

# (line number or None, graph6 text or built graph)
WorkItem = Tuple[Optional[int], Union[str, Graph]]


class EnumerationLimitError(ValueError):
    """Labeled enumeration requested above the order cap."""


def evaluate(item: WorkItem, checks: Sequence[str], allow_approximate: bool, exact_limit: int,
             max_order: int, timings: bool) -> Tuple[str, object]:
    """Parse (if needed) and check one graph.

    Runs in a worker process when parallel, so it only takes and returns
    picklable values: ``("ok", report)``, ``("parse_error", message)`` or
    ``("error", message)``.
    """
    line, source = item
    started = time.perf_counter()
    if isinstance(source, str):
        try:
            g = parse_graph6(source, max_order)
        except (Graph6Error, GraphOrderError, ValueError) as e:
            return "parse_error", str(e)
        graph_id = source.strip().removeprefix(GRAPH6_HEADER).removeprefix(SPARSE6_HEADER)
    else:
        g = source
        graph_id = None
    try:
        report = run_all_checks(g, checks, graph_id, allow_approximate, exact_limit)
    except (ValueError, ArithmeticError, RuntimeError) as e:
        return "error", str(e)
    report.line = line
    if timings:
        report.elapsed = time.perf_counter() - started
    return "ok", report


def labeled_graphs(order: int) -> Iterator[Graph]:
    """Every labeled graph on ``order`` vertices; bit k of the counter is the k-th pair in lexicographic order."""
    pairs = list(combinations(range(order), 2))
    for mask in range(1 << len(pairs)):
        rows = [0] * order
        for k, (u, v) in enumerate(pairs):
            if mask >> k & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        yield Graph(order, tuple(rows))


def random_graphs(order: int, count: int, seed: int) -> Iterator[Graph]:
    """G(n, 1/2) from PCG64 seeded with ``seed``.

    Per graph one ``integers(0, 2)`` value is drawn for every pair, pairs
    in lexicographic order ``(0,1), (0,2), ..., (n-2,n-1)``.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    first, second = np.triu_indices(order, 1)
    for _ in range(count):
        bits = rng.integers(0, 2, size=len(first)).astype(bool)
        m = np.zeros((order, order), dtype=bool)
        m[first, second] = bits
        m[second, first] = bits
        yield Graph.from_matrix(m)


class GraphScanner:
    """Runs the enabled checks over a stream of graphs.

    Work is dispatched in batches and gathered in input order, so the
    report stream is the same at any parallelism.
    """

    def __init__(self, checks: Sequence[str], jobs: int = 1, allow_approximate: bool = False,
                 exact_limit: int = EXACT_LIMIT, max_order: int = MAX_ORDER, fail_fast: bool = False,
                 timings: bool = False):
        if jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {jobs}")
        if exact_limit > MAX_ORDER:
            raise ValueError(f"exact limit {exact_limit} above maximum order {MAX_ORDER}")
        self.checks = tuple(checks)
        self.jobs = jobs
        self.allow_approximate = allow_approximate
        self.exact_limit = exact_limit
        self.max_order = max_order
        self.fail_fast = fail_fast
        self.timings = timings
        self.logger = setup_logging(__name__)
        self.semaphore: Optional[asyncio.Semaphore] = None
        self.executor: Optional[ProcessPoolExecutor] = None
        self.stopped = False

    async def _evaluate(self, item: WorkItem) -> Tuple[str, object]:
        async with self.semaphore:
            args = (item, self.checks, self.allow_approximate, self.exact_limit, self.max_order, self.timings)
            if self.executor is None:
                return evaluate(*args)
            loop = asyncio.get_running_loop()
            return await loop.run_in_executor(self.executor, evaluate, *args)

    async def _drain(self, batch: List[WorkItem], tracker: ReportTracker) -> None:
        results = await asyncio.gather(*(self._evaluate(item) for item in batch))
        for (line, source), (status, payload) in zip(batch, results):
            label = f"line {line}" if line is not None else "graph"
            if status == "ok":
                tracker.add_report(payload)
                self.logger.debug(f"Checked {label}: {payload.inertia.as_tuple()}")
                if self.fail_fast and (payload.conjecture_violations() or payload.theorem_violations()):
                    self.logger.warning(f"Stopping at first violation ({label})")
                    self.stopped = True
                    return
            elif status == "parse_error":
                tracker.add_parse_error(line if line is not None else 0, payload)
                if self.fail_fast:
                    tracker.stats['errors'] += 1
                    self.stopped = True
                    return
            else:
                tracker.add_error(label, payload)
                if self.fail_fast:
                    self.stopped = True
                    return

    async def run(self, items: AsyncIterator[WorkItem], tracker: ReportTracker) -> dict:
        """Check every item, emitting reports through ``tracker`` in input order."""
        batch_size = self.jobs * BATCH_FACTOR
        self.stopped = False
        self.semaphore = asyncio.Semaphore(batch_size)
        if self.jobs > 1:
            self.executor = ProcessPoolExecutor(max_workers=self.jobs)
        try:
            batch: List[WorkItem] = []
            async for item in items:
                batch.append(item)
                if len(batch) >= batch_size:
                    await self._drain(batch, tracker)
                    batch = []
                    if self.stopped:
                        break
            if batch and not self.stopped:
                await self._drain(batch, tracker)
        finally:
            if self.executor is not None:
                self.executor.shutdown(wait=True)
                self.executor = None
        return tracker.stats

    async def scan_file(self, path: str, tracker: ReportTracker) -> dict:
        """Scan graph6/sparse6 lines from ``path``; ``-`` reads standard input."""
        self.logger.info(f"Scanning {path}")
        return await self.run(read_lines(path), tracker)

    async def enumerate(self, max_order: int, tracker: ReportTracker) -> dict:
        if max_order > ENUMERATE_CAP:
            raise EnumerationLimitError(f"Labeled enumeration is capped at order {ENUMERATE_CAP}, got {max_order}")
        self.logger.info(f"Enumerating labeled graphs up to order {max_order}")
        return await self.run(_from_graphs(g for n in range(1, max_order + 1) for g in labeled_graphs(n)),
                              tracker)

    async def sample(self, order: int, count: int, seed: int, tracker: ReportTracker) -> dict:
        if order > self.max_order:
            raise GraphOrderError(f"Order {order} exceeds maximum {self.max_order}")
        if count < 1:
            raise ValueError(f"count must be >= 1, got {count}")
        self.logger.info(f"Sampling {count} graphs G({order}, 1/2) with {RNG_ALGORITHM} seed {seed}")
        return await self.run(_from_graphs(random_graphs(order, count, seed)), tracker)


async def _from_graphs(graphs: Iterator[Graph]) -> AsyncIterator[WorkItem]:
    for g in graphs:
        yield None, g


async def read_lines(path: str) -> AsyncIterator[WorkItem]:
    """Yield ``(line number, text)`` for every nonblank line; LF or CRLF."""
    if path == "-":
        for number, line in enumerate(sys.stdin, start=1):
            text = line.rstrip("\r\n")
            if text.strip():
                yield number, text
        return
    async with aiofiles.open(path, 'r', encoding='utf-8') as f:
        number = 0
        async for line in f:
            number += 1
            text = line.rstrip("\r\n")
            if text.strip():
                yield number, text

# tracker.py
"""Report stream emission and run statistics."""

import csv
import json
from typing import Dict, IO, List, Optional, Sequence

from conjectures import CHECKS, CONJECTURE_IDS, HOLDS, NOT_APPLICABLE, TIGHT, VIOLATED, ConjectureReport
from utils import setup_logging

EMIT_FORMATS = ('jsonl', 'csv')
BASE_COLUMNS = ['graph', 'line', 'order', 'size', 'n_plus', 'n_zero', 'n_minus', 'signature', 'rank', 'reduced']


class ReportTracker:
    """Writes one record per report and keeps the counters for the summary.

    JSONL output ends with a summary object carrying ``"summary": true``;
    with CSV the summary goes to the diagnostic stream instead.
    """

    def __init__(self, out: IO[str], checks: Sequence[str], emit: str = 'jsonl',
                 diagnostics: Optional[IO[str]] = None, timings: bool = False):
        if emit not in EMIT_FORMATS:
            raise ValueError(f"Unknown emit format {emit!r}; choose from {EMIT_FORMATS}")
        self.out = out
        self.emit = emit
        self.diagnostics = diagnostics
        self.timings = timings
        self.result_ids: List[str] = [rid for name in checks for rid in CHECKS[name].result_ids]
        self.logger = setup_logging(__name__)

        # Statistics
        self.stats = {
            'records': 0,
            'parse_errors': 0,
            'errors': 0,
            'conjecture_violations': 0,
            'theorem_violations': 0,
            'singular': 0,
        }
        self.verdicts: Dict[str, Dict[str, int]] = {
            rid: {HOLDS: 0, TIGHT: 0, VIOLATED: 0, NOT_APPLICABLE: 0} for rid in self.result_ids
        }
        self.tight_graphs: List[str] = []
        self.violations: List[Dict] = []
        self._plus_ratio = 0.0
        self._minus_ratio = 0.0
        self._ratio_count = 0

        self._csv = None
        if emit == 'csv':
            self._csv = csv.writer(out, lineterminator="\n")
            header = BASE_COLUMNS + [col for rid in self.result_ids for col in (rid, f"{rid}.margin")]
            if timings:
                header.append('elapsed')
            self._csv.writerow(header)

    def add_report(self, report: ConjectureReport) -> None:
        """Count and emit one report."""
        self.stats['records'] += 1
        i = report.inertia
        if report.order:
            self._plus_ratio += i.n_plus / report.order
            self._minus_ratio += i.n_minus / report.order
            self._ratio_count += 1
        if i.n_zero:
            self.stats['singular'] += 1
        for result in report.results:
            self.verdicts.setdefault(result.check_id, {HOLDS: 0, TIGHT: 0, VIOLATED: 0, NOT_APPLICABLE: 0})
            self.verdicts[result.check_id][result.verdict] += 1
        conjectures = report.conjecture_violations()
        theorems = report.theorem_violations()
        self.stats['conjecture_violations'] += len(conjectures)
        self.stats['theorem_violations'] += len(theorems)
        for result in conjectures + theorems:
            self.violations.append({'graph': report.graph_id, 'check': result.check_id})
        for result in theorems:
            self.logger.error(f"Proven bound {result.check_id} violated on {report.graph_id}: "
                              f"{result.lhs} > {result.rhs}")
        for result in conjectures:
            self.logger.warning(f"Conjecture {result.check_id} violated on {report.graph_id}: "
                                f"{result.lhs} > {result.rhs}")
        if any(r.verdict == TIGHT and r.check_id in CONJECTURE_IDS for r in report.results):
            self.tight_graphs.append(report.graph_id)
        self._write(report)

    def add_parse_error(self, line: int, message: str) -> None:
        self.stats['parse_errors'] += 1
        self.logger.warning(f"Line {line}: {message}")

    def add_error(self, label: str, message: str) -> None:
        self.stats['errors'] += 1
        self.logger.error(f"{label}: {message}")

    def _write(self, report: ConjectureReport) -> None:
        if self._csv is None:
            data = report.to_dict()
            if not self.timings:
                data.pop('elapsed', None)
            self.out.write(json.dumps(data, ensure_ascii=False) + "\n")
            return
        i = report.inertia
        row = [report.graph_id, report.line if report.line is not None else "", report.order,
               report.size if report.size is not None else "", i.n_plus, i.n_zero, i.n_minus,
               i.signature, i.rank, "" if report.reduced is None else int(report.reduced)]
        by_id = {r.check_id: r for r in report.results}
        for rid in self.result_ids:
            result = by_id.get(rid)
            row.append(result.verdict if result else "")
            row.append(result.margin if result is not None and result.margin is not None else "")
        if self.timings:
            row.append(f"{report.elapsed:.6f}" if report.elapsed is not None else "")
        self._csv.writerow(row)

    def get_stats(self) -> Dict:
        """Summary object; means are over nonempty graphs."""
        summary = {'summary': True}
        summary.update(self.stats)
        summary['verdicts'] = self.verdicts
        summary['tight_graphs'] = self.tight_graphs
        summary['violations'] = self.violations
        if self._ratio_count:
            summary['mean_n_plus_ratio'] = round(self._plus_ratio / self._ratio_count, 12)
            summary['mean_n_minus_ratio'] = round(self._minus_ratio / self._ratio_count, 12)
        return summary

    def write_summary(self, extra: Optional[Dict] = None) -> Dict:
        """Emit the summary at the end of the stream and return it."""
        summary = self.get_stats()
        if extra:
            summary.update(extra)
        text = json.dumps(summary, ensure_ascii=False)
        if self._csv is None:
            self.out.write(text + "\n")
        elif self.diagnostics is not None:
            self.diagnostics.write(text + "\n")
        self.out.flush()
        self.logger.info(f"Run completed - records: {summary['records']}, "
                         f"parse errors: {summary['parse_errors']}, "
                         f"violations: {summary['conjecture_violations']}")
        return summary

    @property
    def exit_status(self) -> int:
        """0 clean, 2 when a conjecture is violated, 1 on errors or a violated proven bound."""
        if self.stats['theorem_violations'] or self.stats['errors']:
            return 1
        if self.stats['conjecture_violations']:
            return 2
        return 0

"""Aggregation of raw game records into per-(grid, strategy) summaries."""
from __future__ import annotations

import csv
import json
import logging
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from bench.views import CSV_COLUMNS, BenchReport, CellReport, ReportIOError, parse_grid_spec

logger = logging.getLogger(__name__)


def naive_expected_steps(n: int, m: int, snake_len: int) -> float:
    """Mean steps per apple when following one fixed cycle."""
    return (n * m - snake_len + 1) / 2


def _mean(values: Sequence[float]) -> float:
    return float(np.mean(values)) if len(values) else 0.0


def aggregate(games: Iterable[dict[str, Any]]) -> BenchReport:
    groups: dict[tuple[str, str], list[dict[str, Any]]] = {}
    for game in games:
        groups.setdefault((game["grid"], game["strategy"]), []).append(game)

    cells = []
    for (grid, strategy), rows in groups.items():
        n, m = parse_grid_spec(grid)
        wins = sum(1 for r in rows if r["won"])
        records = [r.get("records", []) for r in rows]
        iterations = sum(len(rs) for rs in records)
        timeouts = sum(1 for rs in records for rec in rs if rec["timeout"])

        depth = max((len(rs) for rs in records), default=0)
        step_curve, timeout_curve = [], []
        for k in range(depth):
            at_k = [rs[k] for rs in records if len(rs) > k]
            step_curve.append(_mean([rec["steps"] for rec in at_k]))
            timeout_curve.append(_mean([1.0 if rec["timeout"] else 0.0 for rec in at_k]))

        cells.append(CellReport(
            grid=grid,
            strategy=strategy,
            games=len(rows),
            wins=wins,
            win_rate=wins / len(rows),
            mean_total_steps=_mean([r["total_steps"] for r in rows]),
            mean_total_time_ms=_mean([r.get("total_ms", 0.0) for r in rows]),
            mean_solve_ms=_mean([r.get("solve_ms", 0.0) for r in rows]),
            timeout_rate=timeouts / iterations if iterations else 0.0,
            step_curve=step_curve,
            timeout_curve=timeout_curve,
            naive_curve=[naive_expected_steps(n, m, k + 1) for k in range(n * m - 1)],
        ))
    return BenchReport(cells=cells)


def load_records(path: Path) -> list[dict[str, Any]]:
    """Reads one game per line as written by run_bench."""
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ReportIOError(f"cannot read {path}: {exc}") from exc
    return [json.loads(line) for line in lines if line.strip()]


def emit_report(report: BenchReport, out_dir: Path, formats: Sequence[str] = ("csv", "jsonl")) -> list[Path]:
    out_dir = Path(out_dir)
    written = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        if "csv" in formats:
            path = out_dir / "report.csv"
            with path.open("w", newline="", encoding="utf-8") as fh:
                writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
                writer.writeheader()
                for cell in report.cells:
                    writer.writerow(cell.to_row())
            written.append(path)
        if "jsonl" in formats:
            path = out_dir / "report.jsonl"
            with path.open("w", encoding="utf-8") as fh:
                for cell in report.cells:
                    fh.write(json.dumps(cell.to_dict()) + "\n")
            written.append(path)
    except OSError as exc:
        raise ReportIOError(f"cannot write report to {out_dir}: {exc}") from exc
    logger.info("report written: %s", ", ".join(str(p) for p in written))
    return written


def load_report_csv(path: Path) -> list[dict[str, Any]]:
    casts = {"games": int, "win_rate": float, "mean_total_steps": float, "mean_total_time_ms": float, "timeout_rate": float}
    try:
        with Path(path).open(newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
    except OSError as exc:
        raise ReportIOError(f"cannot read {path}: {exc}") from exc
    return [{k: casts.get(k, str)(v) for k, v in row.items()} for row in rows]

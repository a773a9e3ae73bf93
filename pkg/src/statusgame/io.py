"""Output files.

Time series and aggregates are comma-separated with a header row; undefined
values are empty cells and floats are written with ``repr`` so they read
back exactly. Paths ending in ``.gz`` are gzip-compressed.

Snapshots are node-link JSON documents (the layout networkx's
``node_link_graph`` reads): nodes carry wealth, strategy, degree and local
clustering, links carry the connection strength min(U_ij, U_ji) plus both
ledger entries. ``clustering_pairs`` lists the local clustering of both
ends of every link.
"""

from __future__ import annotations

import contextlib
import csv
import gzip
import io as _io
import json
import os
from pathlib import Path

import numpy as np

from .core import World
from .harness import AggregateRecord, MetricSummary
from .metrics import METRIC_NAMES, OPTIONAL_METRICS, MetricsRecord, clustering_coefficients

_INT_COLUMNS = {"cycle", "n_clusters", "max_cluster"}


class OutputError(OSError):
    """Reading or writing an output file failed."""


@contextlib.contextmanager
def _open(path: Path, mode: str):
    if path.suffix != ".gz":
        with open(path, mode, newline="") as fh:
            yield fh
        return
    # empty name and zero mtime keep the compressed bytes a function of the content
    with open(path, mode[0] + "b") as raw, gzip.GzipFile("", mode[0] + "b", fileobj=raw, mtime=0) as gz:
        with _io.TextIOWrapper(gz, newline="") as fh:
            yield fh


def _prepare(path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputError(f"cannot create directory {path.parent}: {exc}") from exc
    return path


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_rows(path, header, rows) -> None:
    path = _prepare(path)
    try:
        with _open(path, "w") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows([_cell(v) for v in row] for row in rows)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc


def _read_rows(path) -> tuple[list[str], list[list[str]]]:
    path = Path(path)
    try:
        with _open(path, "r") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise OutputError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise OutputError(f"{path}: missing header")
    return rows[0], rows[1:]


def export_timeseries(series, path) -> None:
    cols = MetricsRecord.columns()
    _write_rows(path, cols, ([getattr(r, c) for c in cols] for r in series))


def read_timeseries(path) -> list[MetricsRecord]:
    header, rows = _read_rows(path)
    if header != MetricsRecord.columns():
        raise OutputError(f"{path}: unexpected header")
    out = []
    for row in rows:
        values = {}
        for name, text in zip(header, row):
            if text == "":
                values[name] = None
            elif name in _INT_COLUMNS:
                values[name] = int(text)
            else:
                values[name] = float(text)
        out.append(MetricsRecord(**values))
    return out


def export_aggregates(records, path) -> None:
    rows = []
    for rec in records:
        row = [rec.grid_index, rec.cost, rec.memory, rec.n_agents, rec.realizations]
        for m in METRIC_NAMES:
            s = rec.stats[m]
            row += [s.mean, s.std, s.count]
        rows.append(row)
    _write_rows(path, AggregateRecord.columns(), rows)


def read_aggregates(path) -> list[AggregateRecord]:
    header, rows = _read_rows(path)
    if header != AggregateRecord.columns():
        raise OutputError(f"{path}: unexpected header")

    def num(text):
        return None if text == "" else float(text)

    out = []
    for row in rows:
        stats = {}
        for i, m in enumerate(METRIC_NAMES):
            mean, std, count = row[5 + 3 * i:8 + 3 * i]
            stats[m] = MetricSummary(num(mean), num(std), int(count))
        out.append(
            AggregateRecord(int(row[0]), float(row[1]), float(row[2]), int(row[3]), int(row[4]), stats)
        )
    return out


def snapshot_document(world: World) -> dict:
    adj = world.adjacency
    u = world.utility
    ag = world.agents
    local_c = clustering_coefficients(adj)
    degree = adj.sum(axis=1)
    nodes = [
        {
            "id": i,
            "wealth": float(ag.wealth[i]),
            "strategy": float(ag.strategy[i]),
            "degree": int(degree[i]),
            "clustering": float(local_c[i]),
        }
        for i in range(ag.n)
    ]
    src, dst = np.nonzero(np.triu(adj, k=1))
    links = [
        {
            "source": int(i),
            "target": int(j),
            "strength": float(min(u[i, j], u[j, i])),
            "u_source_target": float(u[i, j]),
            "u_target_source": float(u[j, i]),
        }
        for i, j in zip(src, dst)
    ]
    return {
        "directed": False,
        "multigraph": False,
        "graph": {"cycle": world.cycle, "params": world.params.as_dict()},
        "nodes": nodes,
        "links": links,
        "clustering_pairs": [[float(local_c[i]), float(local_c[j])] for i, j in zip(src, dst)],
    }


def export_snapshot(world: World, path) -> None:
    path = _prepare(path)
    try:
        with open(path, "w") as fh:
            json.dump(snapshot_document(world), fh, indent=1)
            fh.write("\n")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc


def read_snapshot(path: str | os.PathLike) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise OutputError(f"cannot read {path}: {exc}") from exc

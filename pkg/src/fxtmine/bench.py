"""Desk-scale benchmark: insert latency, tree size, FXT mining vs Apriori."""

from __future__ import annotations

import csv
import gc
import io
import statistics
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction

from .fxt import Fxt
from .ingest import generate_synthetic
from .mining import MiningParams, as_fraction, association_rules, frequent_itemsets
from .oracle import apriori_frequent
from .xmlio import dump_fxt, is_element_name


@dataclass
class BenchReport:
    n_transactions: int
    build_wall_time: float = 0.0
    # (tree size, median seconds, p95 seconds)
    per_insert_latency: list[tuple[int, float, float]] = field(default_factory=list)
    node_count: int = 0
    serialized_bytes: int = 0
    mine_times: list[tuple[Fraction, float]] = field(default_factory=list)
    baseline_times: list[tuple[Fraction, float]] = field(default_factory=list)

    @property
    def fxt_total(self) -> float:
        return self.build_wall_time + sum(t for _, t in self.mine_times)

    @property
    def baseline_total(self) -> float:
        return sum(t for _, t in self.baseline_times)

    def latency_at(self, size: int) -> float:
        for s, median, _ in self.per_insert_latency:
            if s == size:
                return median
        raise KeyError(size)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["metric", "parameter", "value"])
        w.writerow(["n_transactions", "", self.n_transactions])
        w.writerow(["build_wall_time_s", "", f"{self.build_wall_time:.6f}"])
        for size, median, p95 in self.per_insert_latency:
            w.writerow(["insert_latency_median_s", size, f"{median:.9f}"])
            w.writerow(["insert_latency_p95_s", size, f"{p95:.9f}"])
        # proxies for memory and storage: item nodes and document size
        w.writerow(["node_count", "", self.node_count])
        w.writerow(["serialized_bytes", "", self.serialized_bytes])
        for s, t in self.mine_times:
            w.writerow(["fxt_mine_time_s", float(s), f"{t:.6f}"])
        for s, t in self.baseline_times:
            w.writerow(["apriori_time_s", float(s), f"{t:.6f}"])
        return buf.getvalue()

    def to_plot_data(self) -> str:
        """Two whitespace-separated blocks (gnuplot ``index 0`` and ``index 1``)."""
        lines = ["# tree_size median_s p95_s"]
        lines += [f"{s} {m:.9f} {p:.9f}" for s, m, p in self.per_insert_latency]
        lines += ["", "", "# min_support fxt_mine_s apriori_s"]
        baseline = dict(self.baseline_times)
        for s, t in self.mine_times:
            b = baseline.get(s)
            lines.append(f"{float(s)} {t:.6f} {'nan' if b is None else f'{b:.6f}'}")
        return "\n".join(lines) + "\n"


def checkpoints(n: int) -> list[int]:
    """Powers of ten up to ``n``, plus ``n`` itself."""
    sizes = []
    s = 10
    while s <= n:
        sizes.append(s)
        s *= 10
    if n > 0 and (not sizes or sizes[-1] != n):
        sizes.append(n)
    return sizes


@contextmanager
def _gc_paused():
    enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if enabled:
            gc.enable()


def _window(size: int) -> int:
    return min(50, max(1, size // 2))


def run_bench(
    n: int = 10_000,
    alphabet: int = 100,
    avg_len: int = 15,
    seed: int = 0,
    supports=("0.2", "0.4", "0.6"),
    baseline: bool = True,
    min_confidence="0.5",
) -> BenchReport:
    """Build once over a synthetic log, then mine at each support.

    Latency at tree size ``s`` is taken over the inserts that bring the tree
    from ``s - w`` to ``s`` transactions (``w`` up to 50).
    """
    supports = [as_fraction(s, "support") for s in supports]
    log = generate_synthetic(seed, n, alphabet, avg_len)
    report = BenchReport(n_transactions=n)
    wanted = {size: _window(size) for size in checkpoints(n)}
    samples: dict[int, list[float]] = {size: [] for size in wanted}

    tree = Fxt()
    clock = time.perf_counter
    with _gc_paused():
        start = clock()
        for i, t in enumerate(log, 1):
            t0 = clock()
            tree.insert(t.items)
            dt = clock() - t0
            for size, w in wanted.items():
                if size - w < i <= size:
                    samples[size].append(dt)
        report.build_wall_time = clock() - start

    for size in sorted(samples):
        xs = sorted(samples[size])
        p95 = xs[min(len(xs) - 1, int(0.95 * len(xs)))]
        report.per_insert_latency.append((size, statistics.median(xs), p95))

    report.node_count = tree.node_count
    fmt = "paper" if all(is_element_name(item) for item in tree.breadth) else "canonical"
    report.serialized_bytes = len(dump_fxt(tree, fmt))

    if n == 0:
        return report
    with _gc_paused():
        for s in supports:
            t0 = clock()
            frequent_itemsets(tree, s)
            association_rules(tree, MiningParams(s, min_confidence))
            report.mine_times.append((s, clock() - t0))
            if baseline:
                t0 = clock()
                apriori_frequent(log, s)
                report.baseline_times.append((s, clock() - t0))
    return report

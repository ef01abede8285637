"""Exact reference counts.

Everything here works from the retained transaction log rather than the
tree: a linear-scan counter, an exhaustive subset enumerator for small
alphabets, a level-wise Apriori baseline, and a soundness check comparing
each materialized tree path with its true count.  Deliberately plain; the
log is held in memory.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .fxt import Fxt
from .mining import as_fraction


class SoundnessError(AssertionError):
    """A tree counter exceeds the true count of its itemset."""


def _itemsets(log: Iterable) -> list[frozenset]:
    return [frozenset(getattr(t, "items", t)) for t in log]


def exact_count(log: Iterable, itemset: Sequence[str]) -> int:
    """Number of transactions containing every item of ``itemset``."""
    wanted = frozenset(itemset)
    return sum(1 for t in log if wanted.issubset(getattr(t, "items", t)))


def exhaustive_frequent(log: Iterable, min_support=0) -> list[tuple[tuple[str, ...], int]]:
    """Every itemset with count >= 1 and support >= ``min_support``, by subset enumeration.

    Exponential in transaction length; meant for alphabets of a dozen items or so.
    """
    min_support = as_fraction(min_support, "min_support")
    transactions = [tuple(sorted(set(getattr(t, "items", t)))) for t in log]
    if not transactions:
        raise ValueError("support is undefined on an empty log")
    counts: Counter = Counter()
    for t in transactions:
        for k in range(1, len(t) + 1):
            counts.update(combinations(t, k))
    total = len(transactions)
    return sorted(
        ((s, c) for s, c in counts.items() if Fraction(c, total) >= min_support),
        key=lambda sc: (len(sc[0]), sc[0]),
    )


def apriori_frequent(log: Iterable, min_support) -> list[tuple[tuple[str, ...], int]]:
    """Classical level-wise Apriori.

    Level 1 counts items in one scan.  Each further level joins frequent
    (k-1)-itemsets sharing their first k-2 items, prunes candidates with an
    infrequent (k-1)-subset, then scans the log once testing every candidate
    against every transaction.  Result is sorted by (size, items).
    """
    min_support = as_fraction(min_support, "min_support")
    transactions = _itemsets(log)
    total = len(transactions)
    if total == 0:
        raise ValueError("support is undefined on an empty log")
    p, q = min_support.numerator, min_support.denominator

    def frequent(count: int) -> bool:
        return count > 0 and count * q >= p * total

    item_counts: Counter = Counter()
    for t in transactions:
        item_counts.update(t)
    level = {(item,): c for item, c in item_counts.items() if frequent(c)}
    result = dict(level)
    k = 2
    while level:
        candidates = _candidates(sorted(level), k)
        if not candidates:
            break
        counts = dict.fromkeys(candidates, 0)
        keyed = [(c, frozenset(c)) for c in candidates]
        for t in transactions:
            if len(t) < k:
                continue
            for cand, cset in keyed:
                if cset <= t:
                    counts[cand] += 1
        level = {c: n for c, n in counts.items() if frequent(n)}
        result.update(level)
        k += 1
    return sorted(result.items(), key=lambda sc: (len(sc[0]), sc[0]))


def _candidates(prev: list[tuple[str, ...]], k: int) -> list[tuple[str, ...]]:
    """Join step plus subset prune; ``prev`` is sorted."""
    known = set(prev)
    out = []
    for i, a in enumerate(prev):
        for b in prev[i + 1 :]:
            if a[:-1] != b[:-1]:
                break
            cand = a + (b[-1],)
            if all(cand[:j] + cand[j + 1 :] in known for j in range(k)):
                out.append(cand)
    return out


@dataclass
class SoundnessReport:
    total_paths: int = 0
    exact_paths: int = 0
    discrepancies: list[tuple[tuple[str, ...], int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def summary(self) -> str:
        return (
            f"paths: {self.total_paths}, exact: {self.exact_paths}/{self.total_paths}, "
            f"undercounts: {len(self.discrepancies)}"
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["path", "fxt_counter", "exact_count"])
        for path, got, want in self.discrepancies:
            writer.writerow(["/" + "/".join(path), got, want])
        return buf.getvalue()


def verify_soundness(tree: Fxt, log: Iterable) -> SoundnessReport:
    """Compare every materialized path's counter with its exact count.

    Undercounts are reported; an overcount raises :class:`SoundnessError`
    because the construction can never legitimately produce one.
    """
    transactions = _itemsets(log)
    if tree.root_counter != len(transactions):
        raise SoundnessError(f"root counter {tree.root_counter} but the log holds {len(transactions)} transactions")
    report = SoundnessReport()
    for path, counter in tree.paths():
        truth = exact_count(transactions, path)
        report.total_paths += 1
        if counter > truth:
            raise SoundnessError(f"path /{'/'.join(path)} counts {counter} but only {truth} transactions contain it")
        if counter == truth:
            report.exact_paths += 1
        else:
            report.discrepancies.append((path, counter, truth))
    return report

"""Frequent itemsets and association rules read straight off an FXT.

Only materialized paths can be reported; an itemset whose path was never
built is invisible here even if it is frequent (the oracle module gives
the complete answer).  All thresholds are compared as exact fractions.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import Sequence
from xml.sax.saxutils import quoteattr

from .fxt import Fxt, FxtNode


class UndefinedSupportError(ValueError):
    """Support was requested from a tree that has seen no transactions."""


def as_fraction(value, name: str = "threshold") -> Fraction:
    """Exact value of a threshold given as Fraction, int, Decimal, str or float.

    Floats go through their shortest repr, so ``0.1`` means one tenth.
    """
    if isinstance(value, bool):
        raise TypeError(f"{name} must be a number, got bool")
    if isinstance(value, Fraction):
        frac = value
    elif isinstance(value, (Rational, Decimal)):
        frac = Fraction(value)
    elif isinstance(value, float):
        frac = Fraction(repr(value))
    elif isinstance(value, str):
        try:
            frac = Fraction(value.strip())
        except ValueError:
            raise ValueError(f"{name} must be a decimal number, got {value!r}") from None
    else:
        raise TypeError(f"{name} must be a number, got {type(value).__name__}")
    if not 0 <= frac <= 1:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")
    return frac


@dataclass(frozen=True)
class FrequentItemset:
    path: tuple[str, ...]
    count: int
    support: Fraction


@dataclass(frozen=True)
class Rule:
    body: tuple[str, ...]
    head: str
    support: Fraction
    confidence: Fraction


@dataclass(frozen=True)
class MiningParams:
    min_support: Fraction = Fraction(1, 4)
    min_confidence: Fraction = Fraction(1, 2)

    def __post_init__(self):
        object.__setattr__(self, "min_support", as_fraction(self.min_support, "min_support"))
        object.__setattr__(self, "min_confidence", as_fraction(self.min_confidence, "min_confidence"))


def support_of(tree: Fxt, itemset: Sequence[str]) -> Fraction | None:
    if tree.root_counter == 0:
        raise UndefinedSupportError("support is undefined on an empty tree")
    node = tree.node_at(itemset)
    if node is None:
        return None
    return Fraction(node.counter, tree.root_counter)


def frequent_itemsets(tree: Fxt, min_support=Fraction(1, 4)) -> list[FrequentItemset]:
    """Pre-order walk emitting every node whose support reaches ``min_support``.

    A failing node's subtree is skipped: its children can only count less.
    """
    min_support = as_fraction(min_support, "min_support")
    total = tree.root_counter
    if total == 0:
        return []
    # counter / total >= p / q  <=>  counter * q >= p * total
    p, q = min_support.numerator, min_support.denominator
    need = p * total
    out: list[FrequentItemset] = []

    def walk(node: FxtNode, path: tuple[str, ...]) -> None:
        if node.counter * q < need:
            return
        path = path + (node.item,)
        out.append(FrequentItemset(path, node.counter, Fraction(node.counter, total)))
        for child in node.children.values():
            walk(child, path)

    for node in tree.breadth.values():
        walk(node, ())
    return out


def association_rules(tree: Fxt, params: MiningParams | None = None, **kwargs) -> list[Rule]:
    """One candidate rule per parent->child edge below the root.

    ``body`` is the parent's path and ``head`` the child's item, so
    support = child / root and confidence = child / parent.  The walk goes
    below a child only while the child still meets the support threshold.
    """
    if params is None:
        params = MiningParams(**kwargs)
    elif kwargs:
        raise TypeError("pass either params or keyword thresholds, not both")
    total = tree.root_counter
    if total == 0:
        return []
    sp, sq = params.min_support.numerator, params.min_support.denominator
    cp, cq = params.min_confidence.numerator, params.min_confidence.denominator
    out: list[Rule] = []

    def walk(parent: FxtNode, body: tuple[str, ...]) -> None:
        for child in parent.children.values():
            if child.counter * sq < sp * total:
                continue
            if child.counter * cq >= cp * parent.counter:
                out.append(
                    Rule(body, child.item, Fraction(child.counter, total), Fraction(child.counter, parent.counter))
                )
            walk(child, body + (child.item,))

    for node in tree.breadth.values():
        walk(node, (node.item,))
    return out


def reverse_rule(tree: Fxt, rule: Rule) -> Rule | None:
    """``head => body`` with the same support and confidence count(X u Y) / count(Y).

    Only single-item bodies can be reversed into a single-item head; other
    rules, and rules whose paths are not materialized, give ``None``.
    """
    if len(rule.body) != 1 or tree.root_counter == 0:
        return None
    joint = tree.node_at(tuple(sorted(rule.body + (rule.head,))))
    head = tree.node_at((rule.head,))
    if joint is None or head is None or head.counter == 0:
        return None
    return Rule(
        (rule.head,), rule.body[0], Fraction(joint.counter, tree.root_counter), Fraction(joint.counter, head.counter)
    )


# ------------------------------------------------------------------ output


def _decimal(value: Fraction) -> str:
    return format(float(value), ".6g")


def _slashed(path: Sequence[str]) -> str:
    return "/" + "/".join(path)


def format_itemsets(itemsets: Sequence[FrequentItemset], format: str = "xml") -> str:
    if format == "xml":
        return "".join(
            f"<frequent path={quoteattr(_slashed(f.path))} count=\"{f.count}\" support=\"{_decimal(f.support)}\"/>\n"
            for f in itemsets
        )
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["path", "count", "support", "support_exact"])
        for f in itemsets:
            writer.writerow([_slashed(f.path), f.count, _decimal(f.support), str(f.support)])
        return buf.getvalue()
    raise ValueError(f"unknown output format {format!r}")


def format_rules(rules: Sequence[Rule], format: str = "xml") -> str:
    if format == "xml":
        return "".join(
            f"<rule body={quoteattr(_slashed(r.body))} head={quoteattr(r.head)} "
            f"support=\"{_decimal(r.support)}\" confidence=\"{_decimal(r.confidence)}\"/>\n"
            for r in rules
        )
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["body", "head", "support", "confidence", "support_exact", "confidence_exact"])
        for r in rules:
            writer.writerow(
                [_slashed(r.body), r.head, _decimal(r.support), _decimal(r.confidence), str(r.support), str(r.confidence)]
            )
        return buf.getvalue()
    raise ValueError(f"unknown output format {format!r}")


__all__ = [
    "FrequentItemset",
    "MiningParams",
    "Rule",
    "UndefinedSupportError",
    "as_fraction",
    "association_rules",
    "format_itemsets",
    "format_rules",
    "frequent_itemsets",
    "reverse_rule",
    "support_of",
]

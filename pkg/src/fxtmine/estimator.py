"""scikit-learn style front end for the frequency tree."""

from __future__ import annotations

from collections.abc import Iterable

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .fxt import Fxt
from .ingest import NormalizedTransaction, RawTransaction, normalize
from .mining import MiningParams, association_rules, frequent_itemsets, reverse_rule


def check_transactions(X) -> list[tuple[str, ...]]:
    """Validate and normalize an iterable of transactions.

    Each transaction may be a :class:`NormalizedTransaction`, a
    :class:`RawTransaction` or any iterable of non-empty ``str`` labels
    (a bare string is rejected, it is almost always a mistake).
    """
    if isinstance(X, (str, bytes)) or not isinstance(X, Iterable):
        raise TypeError(f"expected an iterable of transactions, got {type(X).__name__}")
    out = []
    for i, t in enumerate(X):
        if isinstance(t, NormalizedTransaction):
            out.append(t.items)
            continue
        if isinstance(t, RawTransaction):
            out.append(normalize(t).items)
            continue
        if isinstance(t, (str, bytes)) or not isinstance(t, Iterable):
            raise TypeError(f"transaction {i} must be an iterable of item labels, got {type(t).__name__}")
        out.append(normalize(RawTransaction(str(i), None, list(t))).items)
    return out


class FXTMiner(BaseEstimator):
    """Incremental frequent-itemset and rule miner.

    Parameters
    ----------
    min_support : float, str or Fraction, default=0.25
        Inclusive support threshold used by :meth:`frequent_itemsets` and
        :meth:`association_rules` when none is passed explicitly.
    min_confidence : float, str or Fraction, default=0.5
        Inclusive confidence threshold for rules.

    Attributes
    ----------
    tree_ : Fxt
        The frequency tree built so far.
    n_transactions_ : int
        Transactions inserted since the last :meth:`fit`.
    """

    def __init__(self, min_support=0.25, min_confidence=0.5):
        self.min_support = min_support
        self.min_confidence = min_confidence

    def fit(self, X, y=None):
        """Build a fresh tree from ``X``."""
        self._params()
        self.tree_ = Fxt()
        return self.partial_fit(X)

    def partial_fit(self, X, y=None):
        """Insert more transactions into the existing tree (creating it if needed)."""
        self._params()
        transactions = check_transactions(X)
        if not hasattr(self, "tree_"):
            self.tree_ = Fxt()
        for items in transactions:
            self.tree_.insert(items)
        self.n_transactions_ = self.tree_.root_counter
        return self

    def _params(self, min_support=None, min_confidence=None) -> MiningParams:
        return MiningParams(
            self.min_support if min_support is None else min_support,
            self.min_confidence if min_confidence is None else min_confidence,
        )

    def frequent_itemsets(self, min_support=None):
        check_is_fitted(self, "tree_")
        return frequent_itemsets(self.tree_, self._params(min_support).min_support)

    def association_rules(self, min_support=None, min_confidence=None):
        check_is_fitted(self, "tree_")
        return association_rules(self.tree_, self._params(min_support, min_confidence))

    def reverse_rule(self, rule):
        check_is_fitted(self, "tree_")
        return reverse_rule(self.tree_, rule)

    def transform(self, X):
        """Frequent itemsets contained in each transaction of ``X``.

        Returns one list of paths per transaction, drawn from the itemsets
        the fitted tree reports at ``min_support``.
        """
        check_is_fitted(self, "tree_")
        patterns = [f.path for f in self.frequent_itemsets()]
        return [[p for p in patterns if set(p) <= set(items)] for items in check_transactions(X)]

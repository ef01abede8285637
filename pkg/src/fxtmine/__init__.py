"""Incremental frequent-itemset and association-rule mining over event logs."""

from .estimator import FXTMiner, check_transactions
from .fxt import Fxt, FxtNode, build_fxt, insert_transaction
from .ingest import (
    NormalizedTransaction,
    RawTransaction,
    TransactionLog,
    generate_synthetic,
    normalize,
    parse_transactions,
)
from .mining import (
    FrequentItemset,
    MiningParams,
    Rule,
    association_rules,
    frequent_itemsets,
    reverse_rule,
    support_of,
)
from .oracle import SoundnessReport, apriori_frequent, exact_count, verify_soundness
from .xmlio import dump_fxt, load_fxt

__version__ = "0.1.0"

__all__ = [
    "FXTMiner",
    "FrequentItemset",
    "Fxt",
    "FxtNode",
    "MiningParams",
    "NormalizedTransaction",
    "RawTransaction",
    "Rule",
    "SoundnessReport",
    "TransactionLog",
    "apriori_frequent",
    "association_rules",
    "build_fxt",
    "check_transactions",
    "dump_fxt",
    "exact_count",
    "frequent_itemsets",
    "generate_synthetic",
    "insert_transaction",
    "load_fxt",
    "normalize",
    "parse_transactions",
    "reverse_rule",
    "support_of",
    "verify_soundness",
]

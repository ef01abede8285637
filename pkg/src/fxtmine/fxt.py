"""Frequency tree construction.

The tree keeps one counter at the root (transactions seen), one node per
distinct item directly below the root (exact item counts) and depth paths
spelled by sorted transactions.  Every transaction is inserted in a single
pass with four steps: bump the root, bump or create the breadth nodes, walk
or create the transaction's own path, then bump every other existing path
the transaction contains.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


class FxtNode:
    """One item node: label, counter, insertion-ordered children."""

    __slots__ = ("item", "counter", "children", "parent", "mask", "depth")

    def __init__(self, item: str, counter: int, parent: FxtNode | None = None, mask: int = 0):
        self.item = item
        self.counter = counter
        self.children: dict[str, FxtNode] = {}
        self.parent = parent
        # bitset of every label on the root-to-node path
        self.mask = mask
        self.depth = 1 if parent is None else parent.depth + 1

    def path(self) -> tuple[str, ...]:
        labels = []
        node: FxtNode | None = self
        while node is not None:
            labels.append(node.item)
            node = node.parent
        return tuple(reversed(labels))

    def __repr__(self) -> str:
        return f"FxtNode({'/'.join(self.path())!r}, counter={self.counter})"


def check_path(path: Sequence[str]) -> tuple[str, ...]:
    """Return ``path`` as a tuple, raising ValueError unless it is strictly increasing."""
    path = tuple(path)
    for item in path:
        if not isinstance(item, str) or not item:
            raise ValueError(f"item labels must be non-empty strings, got {item!r}")
    for a, b in zip(path, path[1:]):
        if not a < b:
            raise ValueError(f"path must be strictly increasing, got {a!r} before {b!r}")
    return path


class Fxt:
    """The whole mined state: root counter plus the breadth nodes and their subtrees.

    Insertion is single-writer.  Queries only read, so a tree may be shared
    between readers as long as nobody inserts at the same time.
    """

    def __init__(self) -> None:
        self.root_counter = 0
        self.breadth: dict[str, FxtNode] = {}
        self._bits: dict[str, int] = {}
        # (ancestor label, label) -> depth nodes labeled `label` below an `ancestor label` node
        self._below: dict[tuple[str, str], list[FxtNode]] = {}
        self._n_nodes = 0

    # ------------------------------------------------------------------ basics

    @property
    def node_count(self) -> int:
        """Number of item nodes (the root is not counted)."""
        return self._n_nodes

    def __len__(self) -> int:
        return self._n_nodes

    def __iter__(self) -> Iterator[FxtNode]:
        """Pre-order over all item nodes, children in insertion order."""
        stack = list(reversed(self.breadth.values()))
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children.values()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Fxt):
            return NotImplemented
        return self.root_counter == other.root_counter and _same_children(self.breadth, other.breadth)

    def __repr__(self) -> str:
        return f"Fxt(root_counter={self.root_counter}, nodes={self._n_nodes})"

    def node_at(self, path: Sequence[str]) -> FxtNode | None:
        path = check_path(path)
        if not path:
            raise ValueError("path must be non-empty")
        node = self.breadth.get(path[0])
        for item in path[1:]:
            if node is None:
                return None
            node = node.children.get(item)
        return node

    def paths(self) -> Iterator[tuple[tuple[str, ...], int]]:
        """Yield ``(path, counter)`` for every materialized node, pre-order."""
        for node in self:
            yield node.path(), node.counter

    def to_dict(self) -> dict:
        """Nested plain-data view, handy for debugging and tests."""

        def walk(children: dict[str, FxtNode]) -> dict:
            return {k: (n.counter, walk(n.children)) for k, n in children.items()}

        return {"counter": self.root_counter, "children": walk(self.breadth)}

    # --------------------------------------------------------------- mutation

    def _bit(self, item: str) -> int:
        bit = self._bits.get(item)
        if bit is None:
            bit = self._bits[item] = 1 << len(self._bits)
        return bit

    def add_node(self, parent: FxtNode | None, item: str, counter: int) -> FxtNode:
        """Attach a new child (``parent=None`` means a breadth node) and index it.

        Used by insertion and by document loading; callers guarantee the
        label is absent under ``parent``.
        """
        bit = self._bit(item)
        if parent is None:
            node = FxtNode(item, counter, None, bit)
            self.breadth[item] = node
        else:
            node = FxtNode(item, counter, parent, parent.mask | bit)
            parent.children[item] = node
            below = self._below
            anc: FxtNode | None = parent
            while anc is not None:
                key = (anc.item, item)
                bucket = below.get(key)
                if bucket is None:
                    below[key] = [node]
                else:
                    bucket.append(node)
                anc = anc.parent
        self._n_nodes += 1
        return node

    def insert(self, items: Sequence[str]) -> None:
        """Insert one transaction; ``items`` must already be sorted and unique."""
        self.root_counter += 1
        self._increment_or_create_breadth(items)
        if len(items) >= 2:
            own_path = self._increment_or_create_depth(items)
            self._update_other_paths(items, own_path)

    def _increment_or_create_breadth(self, items: Sequence[str]) -> None:
        breadth = self.breadth
        for item in items:
            node = breadth.get(item)
            if node is None:
                self.add_node(None, item, 1)
            else:
                node.counter += 1

    def _increment_or_create_depth(self, items: Sequence[str]) -> set[int]:
        """Walk (creating as needed) the transaction's own path; returns the ids
        of its depth nodes."""
        node = self.breadth[items[0]]
        own_path = set()
        prefix_mask = node.mask
        # a pre-existing match at depth k+1 sits below one at depth k, so once
        # a lookup comes back empty every deeper lookup is empty too
        matches_left = True
        for k in range(1, len(items)):
            nxt = items[k]
            child = node.children.get(nxt)
            if child is not None:
                child.counter += 1
            else:
                seed = -1
                if matches_left:
                    seed = self._seed_counter(items, k, prefix_mask)
                    matches_left = seed >= 0
                child = self.add_node(node, nxt, max(seed, 0) + 1)
            own_path.add(id(child))
            prefix_mask = child.mask
            node = child
        return own_path

    def _seed_counter(self, items: Sequence[str], k: int, prefix_mask: int) -> int:
        """Largest counter among existing ``items[k]`` nodes below all of ``items[:k]``.

        Those are the nodes matching ``root//i0//i1//...//i(k-1)//x``; returns
        -1 when nothing matches.
        """
        label = items[k]
        below = self._below
        best: list[FxtNode] | None = None
        for anc in items[:k]:
            bucket = below.get((anc, label))
            if bucket is None:
                return -1
            if best is None or len(bucket) < len(best):
                best = bucket
        top = -1
        for cand in best:
            if cand.counter > top and cand.mask & prefix_mask == prefix_mask:
                top = cand.counter
        return top

    def _update_other_paths(self, items: Sequence[str], own_path: set[int]) -> None:
        """Bump every existing depth node whose label path is a subsequence of
        ``items``, except the transaction's own path (already bumped)."""
        wanted = set(items)
        breadth = self.breadth
        # labels only grow along a path, so the last item has nothing below it
        stack = [breadth[item] for item in items[:-1]]
        while stack:
            node = stack.pop()
            children = node.children
            if not children:
                continue
            for label in children.keys() & wanted:
                child = children[label]
                if id(child) not in own_path:
                    child.counter += 1
                if child.children:
                    stack.append(child)

    def insert_many(self, transactions: Iterable[Sequence[str]]) -> Fxt:
        for items in transactions:
            self.insert(items)
        return self


def _same_children(a: dict[str, FxtNode], b: dict[str, FxtNode]) -> bool:
    if list(a) != list(b):
        return False
    for key, x in a.items():
        y = b[key]
        if x.counter != y.counter or not _same_children(x.children, y.children):
            return False
    return True


def insert_transaction(tree: Fxt, transaction) -> Fxt:
    """Insert a normalized transaction (or a sorted item sequence) into ``tree``."""
    items = getattr(transaction, "items", transaction)
    tree.insert(items)
    return tree


def build_fxt(transactions: Iterable) -> Fxt:
    tree = Fxt()
    for t in transactions:
        insert_transaction(tree, t)
    return tree

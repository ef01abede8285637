"""FXT documents.

Two layouts share the ``<root counter="N">`` element:

* ``paper``: one element per node, named after the item, e.g. ``<A counter="2">``.
* ``canonical``: ``<node item="A" counter="2">``; the root carries
  ``format="canonical"``.  Any item label is allowed.
"""

from __future__ import annotations

import re
from xml.parsers import expat
from xml.sax.saxutils import quoteattr

from .fxt import Fxt, FxtNode

FORMATS = ("paper", "canonical")

_NAME_START = (
    "A-Z_a-z\u00c0-\u00d6\u00d8-\u00f6\u00f8-\u02ff\u0370-\u037d\u037f-\u1fff"
    "\u200c-\u200d\u2070-\u218f\u2c00-\u2fef\u3001-\ud7ff\uf900-\ufdcf\ufdf0-\ufffd"
    "\U00010000-\U000effff"
)
_NAME_CHAR = _NAME_START + "\\-.0-9\u00b7\u0300-\u036f\u203f-\u2040"
# XML 1.0 Name without ':' (colons would be read as namespace prefixes)
_XML_NAME = re.compile(f"[{_NAME_START}][{_NAME_CHAR}]*")
# also accepts the loose hand-written form ``<? xml version="1.0" >``
_PROLOG = re.compile(rb"\A\s*<\?\s*xml\b[^>]*>")


class FxtSerializationError(ValueError):
    pass


class FxtParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


def is_element_name(label: str) -> bool:
    return _XML_NAME.fullmatch(label) is not None


def dump_fxt(tree: Fxt, format: str = "paper") -> bytes:
    """Serialize ``tree`` to UTF-8 bytes, children in insertion order."""
    if format not in FORMATS:
        raise ValueError(f"unknown FXT format {format!r}, expected one of {FORMATS}")
    out = ['<?xml version="1.0" encoding="UTF-8"?>\n']
    root_attrs = f'counter="{tree.root_counter}"'
    if format == "canonical":
        root_attrs += ' format="canonical"'
    if not tree.breadth:
        out.append(f"<root {root_attrs}/>\n")
        return "".join(out).encode("utf-8")
    out.append(f"<root {root_attrs}>\n")
    canonical = format == "canonical"

    def emit(node: FxtNode, depth: int) -> None:
        pad = "  " * depth
        if canonical:
            tag = "node"
            head = f"{pad}<node item={quoteattr(node.item)} counter=\"{node.counter}\""
        else:
            if not is_element_name(node.item):
                raise FxtSerializationError(
                    f"item {node.item!r} is not a valid XML element name; use the canonical format"
                )
            tag = node.item
            head = f'{pad}<{tag} counter="{node.counter}"'
        if not node.children:
            out.append(head + "/>\n")
            return
        out.append(head + ">\n")
        for child in node.children.values():
            emit(child, depth + 1)
        out.append(f"{pad}</{tag}>\n")

    for node in tree.breadth.values():
        emit(node, 1)
    out.append("</root>\n")
    return "".join(out).encode("utf-8")


def document_format(data: bytes) -> str:
    """Which layout a document uses, judged from its root element."""
    return "canonical" if _load(data)[1] else "paper"


def load_fxt(data: bytes | str) -> Fxt:
    """Parse either layout back into an :class:`Fxt`."""
    return _load(data)[0]


def _counter(attrs: dict, parser, what: str) -> int:
    raw = attrs.get("counter")
    if raw is None:
        raise FxtParseError(f"{what} has no counter attribute", parser.CurrentLineNumber, parser.CurrentColumnNumber)
    try:
        value = int(raw.strip())
    except ValueError:
        raise FxtParseError(
            f"{what} has non-integer counter {raw!r}", parser.CurrentLineNumber, parser.CurrentColumnNumber
        ) from None
    if value < 0:
        raise FxtParseError(f"{what} has negative counter {value}", parser.CurrentLineNumber, parser.CurrentColumnNumber)
    return value


def _load(data: bytes | str) -> tuple[Fxt, bool]:
    if isinstance(data, str):
        data = data.encode("utf-8")
    prolog = _PROLOG.match(data)
    if prolog:
        # blank it out in place so reported line/column numbers stay true
        blank = re.sub(rb"[^\n]", b" ", prolog.group())
        data = blank + data[prolog.end():]
    tree = Fxt()
    parser = expat.ParserCreate("UTF-8")
    # stack of FxtNode | None (None = the root element)
    stack: list[FxtNode | None] = []
    state = {"canonical": False, "seen_root": False}

    def start(name, attrs):
        if not stack:
            if state["seen_root"] or name != "root":
                raise FxtParseError(
                    f"expected a single <root> element, found <{name}>",
                    parser.CurrentLineNumber,
                    parser.CurrentColumnNumber,
                )
            state["seen_root"] = True
            state["canonical"] = attrs.get("format") == "canonical"
            tree.root_counter = _counter(attrs, parser, "<root>")
            stack.append(None)
            return
        if state["canonical"]:
            if name != "node":
                raise FxtParseError(f"unexpected element <{name}>", parser.CurrentLineNumber, parser.CurrentColumnNumber)
            item = attrs.get("item")
            if not item:
                raise FxtParseError("<node> has no item attribute", parser.CurrentLineNumber, parser.CurrentColumnNumber)
        else:
            item = name
        parent = stack[-1]
        siblings = tree.breadth if parent is None else parent.children
        if item in siblings:
            raise FxtParseError(f"duplicate child {item!r}", parser.CurrentLineNumber, parser.CurrentColumnNumber)
        if parent is not None and not parent.item < item:
            raise FxtParseError(
                f"child {item!r} does not sort after its parent {parent.item!r}",
                parser.CurrentLineNumber,
                parser.CurrentColumnNumber,
            )
        counter = _counter(attrs, parser, f"item {item!r}")
        stack.append(tree.add_node(parent, item, counter))

    def end(name):
        stack.pop()

    parser.StartElementHandler = start
    parser.EndElementHandler = end
    try:
        parser.Parse(data, True)
    except expat.ExpatError as exc:
        raise FxtParseError(f"malformed FXT document: {expat.ErrorString(exc.code)}", exc.lineno, exc.offset) from None
    if not state["seen_root"]:
        raise FxtParseError("document has no <root> element")
    return tree, state["canonical"]

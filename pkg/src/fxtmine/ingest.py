"""Reading, normalizing and generating transaction logs.

Two input layouts are understood.  The XML one is a sequence of

    <transaction id="1" time="2011-04-10 09:16:00">
     <item>A</item> <item>B</item>
    </transaction>

elements, either as a bare fragment or wrapped in any root element.  The
plain-text one has one transaction per line, whitespace separated items, and
an optional ``id,timestamp,`` prefix.
"""

from __future__ import annotations

import io
import random
import re
from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import IO, Iterable, Iterator, NamedTuple, Sequence
from xml.parsers import expat
from xml.sax.saxutils import escape, quoteattr

TIME_FORMAT = "%Y-%m-%d %H:%M:%S"
_CHUNK = 1 << 16
_DECL = re.compile(rb"\A(\xef\xbb\xbf)?\s*<\?xml\b[^>]*\?>")


class LogParseError(ValueError):
    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message if offset is None else f"{message} (byte offset {offset})")
        self.offset = offset


class RawTransaction(NamedTuple):
    id: str
    time: str | None
    items: Sequence[str]


@dataclass(frozen=True)
class NormalizedTransaction:
    items: tuple[str, ...]
    id: str = ""
    time: str | None = None

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


class TransactionLog(list):
    """Arrival-ordered list of :class:`NormalizedTransaction`."""

    def itemsets(self) -> list[tuple[str, ...]]:
        return [t.items for t in self]

    def universe(self) -> list[str]:
        return sorted({item for t in self for item in t.items})


def normalize(raw: RawTransaction) -> NormalizedTransaction:
    """Sort items by code point and drop duplicates; id and time pass through."""
    items = []
    for item in raw.items:
        if not isinstance(item, str):
            raise TypeError(f"transaction {raw.id!r}: item labels must be str, got {type(item).__name__}")
        if not item:
            raise ValueError(f"transaction {raw.id!r} has an empty item label")
        items.append(item)
    return NormalizedTransaction(tuple(sorted(set(items))), raw.id, raw.time)


def _check_time(value: str | None, tid: str, offset: int | None = None) -> None:
    if value is None:
        return
    try:
        datetime.strptime(value, TIME_FORMAT)
    except ValueError:
        raise LogParseError(f"transaction {tid!r} has malformed time {value!r}, expected YYYY-MM-DD HH:MM:SS", offset) from None


# ---------------------------------------------------------------------- XML


def iter_transactions(source: bytes | str | IO[bytes]) -> Iterator[NormalizedTransaction]:
    """Stream transactions out of an XML log without holding the whole document.

    ``source`` is a bytes/str document or a binary file object read in chunks.
    """
    if isinstance(source, str):
        source = source.encode("utf-8")
    if isinstance(source, (bytes, bytearray)):
        source = io.BytesIO(source)

    parser = expat.ParserCreate("UTF-8")
    parser.buffer_text = True
    done: list[NormalizedTransaction] = []
    # current transaction: [id, time, items, offset]; current item text pieces
    cur: list | None = None
    text: list[str] | None = None
    # our synthetic wrapper element shifts every byte offset
    shift = [0]

    def where() -> int:
        return max(parser.CurrentByteIndex - shift[0], 0)

    def start(name, attrs):
        nonlocal cur, text
        if name == "transaction":
            if cur is not None:
                raise LogParseError("nested <transaction> element", where())
            tid = attrs.get("id")
            if tid is None:
                raise LogParseError("<transaction> element without an id attribute", where())
            time = attrs.get("time")
            _check_time(time, tid, where())
            cur = [tid, time, [], where()]
        elif name == "item" and cur is not None:
            text = []

    def chars(data):
        if text is not None:
            text.append(data)

    def end(name):
        nonlocal cur, text
        if name == "item" and cur is not None and text is not None:
            label = "".join(text).strip()
            if not label:
                raise LogParseError(f"transaction {cur[0]!r} has an empty item label", where())
            cur[2].append(label)
            text = None
        elif name == "transaction" and cur is not None:
            done.append(normalize(RawTransaction(cur[0], cur[1], cur[2])))
            cur = None

    parser.StartElementHandler = start
    parser.EndElementHandler = end
    parser.CharacterDataHandler = chars

    def feed(data: bytes, final: bool = False) -> None:
        try:
            parser.Parse(data, final)
        except expat.ExpatError as exc:
            raise LogParseError(f"malformed XML: {expat.ErrorString(exc.code)}", where()) from None

    head = source.read(_CHUNK)
    decl = _DECL.match(head)
    if decl:
        # a declaration may only open a document, so it goes before the wrapper
        feed(head[: decl.end()])
        head = head[decl.end():]
    opener = b"<fxtmine-log>"
    shift[0] = len(opener)
    feed(opener)
    chunk = head
    while chunk:
        feed(chunk)
        if done:
            yield from done
            done.clear()
        chunk = source.read(_CHUNK)
    feed(b"</fxtmine-log>", True)
    yield from done


def parse_transactions(document: bytes | str | IO[bytes]) -> TransactionLog:
    return TransactionLog(iter_transactions(document))


def dump_transactions(log: Iterable[NormalizedTransaction]) -> bytes:
    """Write transactions back in the XML log layout (``id`` before ``time``)."""
    out = []
    for t in log:
        attrs = f"id={quoteattr(t.id)}"
        if t.time is not None:
            attrs += f" time={quoteattr(t.time)}"
        out.append(f"<transaction {attrs}>\n")
        if t.items:
            out.append(" " + " ".join(f"<item>{escape(i)}</item>" for i in t.items) + "\n")
        out.append("</transaction>\n")
    return "".join(out).encode("utf-8")


# --------------------------------------------------------------- plain text


def iter_text_transactions(lines: Iterable[str]) -> Iterator[NormalizedTransaction]:
    """One transaction per line; blank lines and ``#`` comments are skipped."""
    for lineno, line in enumerate(lines, 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split(",", 2)
        if len(parts) == 3:
            tid, time, body = parts[0].strip(), parts[1].strip() or None, parts[2]
            _check_time(time, tid)
        else:
            tid, time, body = str(lineno), None, stripped
        yield normalize(RawTransaction(tid, time, body.split()))


def parse_text_transactions(text: str) -> TransactionLog:
    return TransactionLog(iter_text_transactions(text.splitlines()))


def dump_text_transactions(log: Iterable[NormalizedTransaction]) -> str:
    return "".join(f"{t.id},{t.time or ''},{' '.join(t.items)}\n" for t in log)


def read_log(path) -> TransactionLog:
    """Load a log file, picking the XML or plain-text reader by its first byte."""
    with open(path, "rb") as fh:
        head = fh.read(_CHUNK)
        fh.seek(0)
        if head.lstrip(b"\xef\xbb\xbf \t\r\n")[:1] == b"<":
            return TransactionLog(iter_transactions(fh))
    with open(path, encoding="utf-8") as fh:
        return TransactionLog(iter_text_transactions(fh))


# ---------------------------------------------------------------- synthetic


def generate_synthetic(seed: int, n_transactions: int, alphabet_size: int, avg_len: int) -> TransactionLog:
    """Uniform random baskets.

    Lengths are uniform on ``[1, 2*avg_len - 1]`` (clamped to the alphabet),
    items are drawn uniformly without replacement.  Labels are ``I000``,
    ``I001``... zero padded so code-point order equals numeric order.
    """
    if n_transactions < 0:
        raise ValueError("n_transactions must be >= 0")
    if alphabet_size < 1 or avg_len < 1:
        raise ValueError("alphabet_size and avg_len must be >= 1")
    if avg_len > alphabet_size:
        raise ValueError(f"avg_len ({avg_len}) cannot exceed alphabet_size ({alphabet_size})")
    rng = random.Random(seed)
    width = len(str(alphabet_size - 1))
    alphabet = [f"I{i:0{width}d}" for i in range(alphabet_size)]
    start = datetime(2011, 4, 10, 9, 16, 0)
    log = TransactionLog()
    for i in range(n_transactions):
        k = min(rng.randint(1, 2 * avg_len - 1), alphabet_size)
        items = tuple(sorted(rng.sample(alphabet, k)))
        stamp = (start + timedelta(seconds=20 * i)).strftime(TIME_FORMAT)
        log.append(NormalizedTransaction(items, str(i + 1), stamp))
    return log

"""Plain-text file formats.

Scheme v1::

    ASCH v1
    n=<int> d=<int>
    <n lines of n space-separated relation indices>

Partition v1::

    PART v1
    n=<int> f=<int>
    <n block labels, one per line>
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Union

import numpy as np

from .errors import FormatError, MalformedPartition
from .scheme_core import RelationPartition

_SIZES = re.compile(r"n=(\d+) (d|f)=(\d+)")


def _header(lines, magic: str, key: str):
    if not lines or lines[0].rstrip("\r") != magic:
        raise FormatError(f"expected header {magic!r}", 1, 1)
    if len(lines) < 2:
        raise FormatError("missing size line", 2, 1)
    match = _SIZES.fullmatch(lines[1].strip())
    if not match or match.group(2) != key:
        raise FormatError(f"expected 'n=<int> {key}=<int>'", 2, 1)
    return int(match.group(1)), int(match.group(3))


def _bad_token(tokens, lo: int, hi: int):
    for col, tok in enumerate(tokens, start=1):
        try:
            v = int(tok)
        except ValueError:
            return col, f"not an integer: {tok!r}"
        if not lo <= v <= hi:
            return col, f"value {v} outside [{lo},{hi}]"
    return None


def _body(lines):
    body = lines[2:]
    while body and not body[-1].strip():
        body.pop()
    return body


def parse_scheme(text: str) -> RelationPartition:
    lines = text.split("\n")
    n, d = _header(lines, "ASCH v1", "d")
    body = _body(lines)
    if len(body) != n:
        raise FormatError(f"expected {n} rows, found {len(body)}", 3 + min(len(body), n))
    rel = np.empty((n, n), dtype=np.int64)
    for r, line in enumerate(body):
        lineno = r + 3
        tokens = line.split()
        if len(tokens) != n:
            raise FormatError(f"expected {n} entries, found {len(tokens)}", lineno)
        try:
            row = np.array(tokens, dtype=np.int64)
        except ValueError:
            row = None
        if row is None or row.min() < 0 or row.max() > d:
            col, msg = _bad_token(tokens, 0, d)
            raise FormatError(msg, lineno, col)
        rel[r] = row
    try:
        return RelationPartition(rel, d)
    except MalformedPartition as exc:
        raise FormatError(str(exc)) from None


def format_scheme(rp: RelationPartition) -> str:
    words = [str(i) for i in range(rp.d + 1)]
    rows = (" ".join(words[v] for v in row) for row in rp.rel.tolist())
    return f"ASCH v1\nn={rp.n} d={rp.d}\n" + "\n".join(rows) + "\n"


def parse_partition(text: str, n: int = None) -> np.ndarray:
    lines = text.split("\n")
    count, f = _header(lines, "PART v1", "f")
    if n is not None and count != n:
        raise FormatError(f"partition has n={count}, scheme has {n} points", 2, 1)
    labels = []
    for r, line in enumerate(_body(lines)):
        tokens = line.split()
        bad = _bad_token(tokens, 0, f - 1)
        if bad:
            raise FormatError(bad[1], r + 3, bad[0])
        labels.extend(int(t) for t in tokens)
    if len(labels) != count:
        raise FormatError(f"expected {count} labels, found {len(labels)}")
    return np.array(labels, dtype=np.int64)


def format_partition(blocks) -> str:
    blocks = np.asarray(blocks)
    f = int(blocks.max()) + 1
    return f"PART v1\nn={blocks.size} f={f}\n" + "".join(f"{int(b)}\n" for b in blocks)


def format_weighing(W: np.ndarray, a: int, b: int, w: int) -> str:
    rows = (" ".join(str(int(v)) for v in row) for row in W)
    return f"W a={a} b={b} w={w}\n" + "\n".join(rows) + "\n"


def parse_weighing(text: str):
    lines = text.split("\n")
    match = re.fullmatch(r"W a=(\d+) b=(\d+) w=(\d+)", lines[0].strip()) if lines else None
    if not match:
        raise FormatError("expected header 'W a=<int> b=<int> w=<int>'", 1, 1)
    body = [ln for ln in lines[1:] if ln.strip()]
    rows = []
    for r, line in enumerate(body):
        tokens = line.split()
        bad = _bad_token(tokens, -1, 1)
        if bad:
            raise FormatError(bad[1], r + 2, bad[0])
        rows.append([int(t) for t in tokens])
    a, b, w = (int(g) for g in match.groups())
    return a, b, w, np.array(rows, dtype=np.int64)


def read_text(path: Union[str, Path]) -> str:
    return Path(path).read_text()


def write_text(path: Union[str, Path], text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)
    return path

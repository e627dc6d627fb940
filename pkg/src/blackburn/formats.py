"""File formats for groups and source resolution.

cayley v1:
    cayley 1
    order n
    names t1 ... tn        (optional; whitespace-free tokens)
    n rows of n whitespace-separated 0-based indices

permgen v1:
    permgen 1
    degree d
    gen i0 i1 ... i_{d-1}  (one line per generator, 0-based image list)

'#' starts a comment in both formats.  Permutation products compose left to
right: (a*b)(x) = b(a(x)).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .catalog import builtin
from .core import Group, validate_group
from .errors import BadParams, NotPermutation, OrderCap, ParseError

PERMGEN_CLOSURE_CAP = 65536


def _content_lines(text: str) -> list:
    """(line_number, stripped content) for non-blank, non-comment lines."""
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i, line))
    return out


def parse_cayley(text: str) -> Group:
    lines = _content_lines(text)
    if not lines or lines[0][1] != "cayley 1":
        raise ParseError("expected header 'cayley 1'", lines[0][0] if lines else 1)
    if len(lines) < 2 or not lines[1][1].startswith("order "):
        raise ParseError("expected 'order n'", lines[1][0] if len(lines) > 1 else 1)
    try:
        n = int(lines[1][1].split()[1])
    except (IndexError, ValueError):
        raise ParseError("malformed order line", lines[1][0])
    if n < 1:
        raise ParseError("order must be positive", lines[1][0])
    body = lines[2:]
    names = None
    if body and body[0][1].startswith("names"):
        lineno, content = body[0]
        names = content.split()[1:]
        if len(names) != n:
            raise ParseError(f"expected {n} names, got {len(names)}", lineno)
        body = body[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} table rows, got {len(body)}",
                         body[-1][0] if body else lines[1][0])
    table = []
    for lineno, content in body:
        try:
            row = [int(x) for x in content.split()]
        except ValueError:
            raise ParseError("table row has a non-integer entry", lineno)
        if len(row) != n:
            raise ParseError(f"expected {n} entries, got {len(row)}", lineno)
        if any(x < 0 or x >= n for x in row):
            raise ParseError("table entry out of range", lineno)
        table.append(row)
    return validate_group(table, names)


def dump_cayley(g: Group) -> str:
    out = ["cayley 1", f"order {g.order}"]
    if g.names is not None:
        if any((" " in nm or "\t" in nm or not nm) for nm in g.names):
            raise BadParams("names must be non-empty and whitespace-free")
        out.append("names " + " ".join(g.names))
    for row in g.rows:
        out.append(" ".join(str(x) for x in row))
    return "\n".join(out) + "\n"


def parse_permgen(text: str, cap: int = PERMGEN_CLOSURE_CAP) -> Group:
    lines = _content_lines(text)
    if not lines or lines[0][1] != "permgen 1":
        raise ParseError("expected header 'permgen 1'", lines[0][0] if lines else 1)
    if len(lines) < 2 or not lines[1][1].startswith("degree "):
        raise ParseError("expected 'degree d'", lines[1][0] if len(lines) > 1 else 1)
    try:
        degree = int(lines[1][1].split()[1])
    except (IndexError, ValueError):
        raise ParseError("malformed degree line", lines[1][0])
    if degree < 1:
        raise ParseError("degree must be positive", lines[1][0])
    gens = []
    for lineno, content in lines[2:]:
        if not content.startswith("gen"):
            raise ParseError("expected a 'gen ...' line", lineno)
        try:
            imgs = tuple(int(x) for x in content.split()[1:])
        except ValueError:
            raise ParseError("gen line has a non-integer entry", lineno)
        if len(imgs) != degree:
            raise ParseError(f"expected {degree} images, got {len(imgs)}", lineno)
        if sorted(imgs) != list(range(degree)):
            raise NotPermutation(f"line {lineno}: image list is not a permutation")
        gens.append(imgs)
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for gen in gens:
                prod = tuple(gen[e[x]] for x in range(degree))  # e then gen
                if prod not in index:
                    if len(elements) >= cap:
                        raise OrderCap(f"permutation closure exceeds cap {cap}")
                    index[prod] = len(elements)
                    elements.append(prod)
                    nxt.append(prod)
        frontier = nxt
    n = len(elements)
    table = np.zeros((n, n), dtype=np.int32)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[tuple(b[a[x]] for x in range(degree))]
    sep = "" if degree <= 10 else ","
    names = [sep.join(str(x) for x in e) for e in elements]
    return Group(table, names)


@dataclass(frozen=True)
class GroupSource:
    """Where a group came from: a builtin spec or a file in either format."""

    kind: str  # "builtin" | "cayley" | "permgen"
    locator: str

    def load(self) -> Group:
        if self.kind == "builtin":
            return builtin(self.locator)
        with open(self.locator, "r", encoding="utf-8") as fh:
            text = fh.read()
        if self.kind == "cayley":
            return parse_cayley(text)
        return parse_permgen(text)


def resolve_source(spec: str) -> GroupSource:
    """Interpret a CLI source argument: existing file (sniffed by header) or
    builtin spec."""
    import os

    if os.path.exists(spec):
        with open(spec, "r", encoding="utf-8") as fh:
            text = fh.read()
        lines = _content_lines(text)
        head = lines[0][1] if lines else ""
        if head.startswith("cayley"):
            return GroupSource("cayley", spec)
        if head.startswith("permgen"):
            return GroupSource("permgen", spec)
        raise ParseError("file is neither cayley nor permgen format", 1)
    return GroupSource("builtin", spec)

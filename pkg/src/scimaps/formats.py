"""Pajek ``.net`` and UCINET ``.dl`` writers (plus a ``.net`` reader).

Both dialects are pinned in ``docs/formats.md``; output is UTF-8 with LF
line endings and is byte-for-byte deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from numbers import Integral, Real

import numpy as np

from .errors import NetFormatError
from .network import AffiliationMatrix, CountryGraph

_VERTEX = re.compile(r'^(\d+) "([^"\n]*)"$')
_EDGE = re.compile(r"^(\d+) (\d+) (\S+)$")
_INT = re.compile(r"^-?\d+$")


@dataclass(frozen=True)
class NetFile:
    vertices: tuple[tuple[int, str], ...]
    edges: tuple[tuple[int, int, int | float], ...]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for _, label in self.vertices)


def format_weight(w) -> str:
    """Shortest decimal that reads back to the same value; integers bare."""
    if isinstance(w, (Integral, np.integer)):
        return str(int(w))
    w = float(w)
    if w.is_integer():
        return str(int(w))
    return np.format_float_positional(w, unique=True, trim="-")


def _check_label(label: str) -> str:
    if '"' in label or "\n" in label or "\r" in label:
        raise NetFormatError(f"label {label!r} contains a double quote or line break")
    return label


def to_netfile(graph: CountryGraph | NetFile) -> NetFile:
    """Vertices in lexicographic label order, edges ``i < j`` in row order."""
    if isinstance(graph, NetFile):
        labels = list(graph.labels)
        order = sorted(range(len(labels)), key=lambda i: labels[i])
        new_id = {order[k] + 1: k + 1 for k in range(len(order))}
        edges = []
        for i, j, w in graph.edges:
            a, b = sorted((new_id[i], new_id[j]))
            edges.append((a, b, w))
        return NetFile(
            tuple((k + 1, labels[i]) for k, i in enumerate(order)),
            tuple(sorted(edges, key=lambda e: (e[0], e[1]))),
        )
    order = sorted(range(len(graph.countries)), key=lambda i: graph.countries[i])
    w = graph.weights
    n = len(order)
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            value = w[order[a], order[b]]
            if value > 0:
                edges.append((a + 1, b + 1, value.item() if hasattr(value, "item") else value))
    return NetFile(tuple((k + 1, graph.countries[i]) for k, i in enumerate(order)), tuple(edges))


def write_net(graph: CountryGraph | NetFile) -> str:
    net = to_netfile(graph)
    if not net.vertices:
        raise NetFormatError("graph has no vertices")
    lines = [f"*Vertices {len(net.vertices)}"]
    lines += [f'{i} "{_check_label(label)}"' for i, label in net.vertices]
    lines.append("*Edges")
    lines += [f"{i} {j} {format_weight(w)}" for i, j, w in net.edges]
    return "\n".join(lines) + "\n"


def read_net(text: str) -> NetFile:
    """Parse the dialect produced by :func:`write_net`."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or not lines[0].startswith("*Vertices"):
        raise NetFormatError("missing *Vertices", 1)
    head = lines[0].split()
    if len(head) != 2 or head[0] != "*Vertices" or not head[1].isdigit():
        raise NetFormatError("malformed *Vertices header", 1)
    n = int(head[1])
    vertices = []
    for k in range(n):
        lineno = k + 2
        if k + 1 >= len(lines):
            raise NetFormatError(f"expected {n} vertices, found {k}", lineno)
        m = _VERTEX.match(lines[k + 1])
        if not m:
            raise NetFormatError("malformed vertex line", lineno)
        if int(m.group(1)) != k + 1:
            raise NetFormatError(f"vertex id {m.group(1)} out of sequence", lineno)
        vertices.append((k + 1, m.group(2)))
    pos = n + 1
    if pos >= len(lines) or lines[pos] != "*Edges":
        raise NetFormatError("missing *Edges", pos + 1)
    edges = []
    for offset, line in enumerate(lines[pos + 1:], start=pos + 2):
        m = _EDGE.match(line)
        if not m:
            raise NetFormatError("malformed edge line", offset)
        i, j = int(m.group(1)), int(m.group(2))
        if not (1 <= i <= n and 1 <= j <= n):
            raise NetFormatError(f"edge references vertex outside 1..{n}", offset)
        raw = m.group(3)
        try:
            w = int(raw) if _INT.match(raw) else float(raw)
        except ValueError:
            raise NetFormatError(f"bad weight {raw!r}", offset) from None
        edges.append((i, j, w))
    return NetFile(tuple(vertices), tuple(edges))


def _dl_label(label: str) -> str:
    _check_label(label)
    return f'"{label}"' if re.search(r"[\s,]", label) else label


def write_dl(aff: AffiliationMatrix) -> str:
    """Two-mode full-matrix DL: countries as rows, articles as columns."""
    r, c = aff.incidence.shape
    lines = [f"dl nr={r}, nc={c}, format=fullmatrix", "row labels:"]
    lines += [_dl_label(x) for x in aff.countries]
    lines.append("column labels:")
    lines += [_dl_label(x) for x in aff.articles]
    lines.append("data:")
    lines += [" ".join(str(int(v)) for v in row) for row in aff.incidence]
    return "\n".join(lines) + "\n"

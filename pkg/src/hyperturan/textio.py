"""Line-based text formats.

Hypergraph::

    p hyp <n> <k> <m>
    e v1 ... vk        (m lines, 1-based labels, increasing)

Digraph::

    p dig <n> <a>
    a u v              (a lines, arc u -> v, 1-based)

Lines starting with ``#`` are comments; blank lines are ignored.
"""

from __future__ import annotations

from pathlib import Path

from .constructions import Digraph
from .hypercore import Hypergraph, mask_of


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield i, line.split()


def _ints(lineno: int, tokens: list[str]) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def _header(lines, kind: str, nfields: int) -> tuple[int, list[int]]:
    try:
        lineno, tok = next(lines)
    except StopIteration:
        raise ParseError(0, "empty input, expected a 'p' header") from None
    if tok[:2] != ["p", kind] or len(tok) != 2 + nfields:
        raise ParseError(lineno, f"malformed header, expected 'p {kind}' with {nfields} integers")
    vals = _ints(lineno, tok[2:])
    if any(v < 0 for v in vals):
        raise ParseError(lineno, "header values must be non-negative")
    return lineno, vals


def parse_hypergraph(text: str) -> Hypergraph:
    lines = _lines(text)
    head, (n, k, m) = _header(lines, "hyp", 3)
    if n > 64 or k < 1:
        raise ParseError(head, f"unsupported n={n}, k={k}")
    edges: dict[int, int] = {}
    count = 0
    for lineno, tok in lines:
        if tok[0] != "e":
            raise ParseError(lineno, f"expected an 'e' line, got {tok[0]!r}")
        verts = _ints(lineno, tok[1:])
        if len(verts) != k:
            raise ParseError(lineno, f"edge has {len(verts)} vertices, expected {k}")
        if any(not 1 <= v <= n for v in verts):
            raise ParseError(lineno, f"vertex label out of range 1..{n}")
        if any(a >= b for a, b in zip(verts, verts[1:])):
            raise ParseError(lineno, "edge labels must be strictly increasing")
        mask = mask_of(v - 1 for v in verts)
        if mask in edges:
            raise ParseError(lineno, f"duplicate edge (first seen on line {edges[mask]})")
        edges[mask] = lineno
        count += 1
    if count != m:
        raise ParseError(0, f"header declares {m} edges, found {count}")
    return Hypergraph(n, k, frozenset(edges))


def format_hypergraph(H: Hypergraph, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"p hyp {H.n} {H.k} {H.num_edges}")
    out.extend("e " + " ".join(map(str, e)) for e in H.edge_tuples())
    return "\n".join(out) + "\n"


def parse_digraph(text: str) -> Digraph:
    lines = _lines(text)
    _, (n, a) = _header(lines, "dig", 2)
    arcs: dict[tuple[int, int], int] = {}
    for lineno, tok in lines:
        if tok[0] != "a" or len(tok) != 3:
            raise ParseError(lineno, "expected 'a u v'")
        u, v = _ints(lineno, tok[1:])
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(lineno, f"vertex label out of range 1..{n}")
        if u == v:
            raise ParseError(lineno, f"loop at vertex {u}")
        if (u, v) in arcs:
            raise ParseError(lineno, f"duplicate arc (first seen on line {arcs[(u, v)]})")
        arcs[(u, v)] = lineno
    if len(arcs) != a:
        raise ParseError(0, f"header declares {a} arcs, found {len(arcs)}")
    return Digraph(n, frozenset((u - 1, v - 1) for u, v in arcs))


def format_digraph(D: Digraph, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(f"p dig {D.n} {len(D.arcs)}")
    out.extend(f"a {u} {v}" for u, v in D.arc_list())
    return "\n".join(out) + "\n"


def read_hypergraph(path) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text(encoding="utf-8"))


def read_digraph(path) -> Digraph:
    return parse_digraph(Path(path).read_text(encoding="utf-8"))


def io_roundtrip(path):
    """Parse ``path`` (hypergraph or digraph, by header), serialize, and parse again."""
    text = Path(path).read_text(encoding="utf-8")
    is_dig = any(tok[:2] == ["p", "dig"] for _, tok in _lines(text))
    if is_dig:
        obj = parse_digraph(text)
        again = parse_digraph(format_digraph(obj))
    else:
        obj = parse_hypergraph(text)
        again = parse_hypergraph(format_hypergraph(obj))
    if again != obj:
        raise RuntimeError(f"{path}: serialization does not round-trip")
    return again

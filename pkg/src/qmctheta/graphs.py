"""Simple undirected graphs: container, parsers, families, complement."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels_numpy import GOLDEN, mix64_int

_MASK64 = 0xFFFFFFFFFFFFFFFF
_ER_TAG = 0x8B72E1D9C5A6F347


class GraphParseError(ValueError):
    """Raised when an edge-list or DIMACS document is malformed."""


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n-1.

    Edges are stored canonically as a sorted tuple of (u, v) pairs with
    u < v, deduplicated.  Isolated vertices are fine; self-loops are not.
    """

    n: int
    edges: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"vertex count must be a positive integer, got {self.n!r}")
        canon = set()
        for pair in self.edges:
            u, v = pair
            if not (isinstance(u, int) and isinstance(v, int)):
                raise ValueError(f"edge endpoints must be integers, got {pair!r}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {pair!r} out of range for n={self.n}")
            canon.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Edge endpoints as two int64 arrays in canonical order."""
        if not self.edges:
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
        arr = np.asarray(self.edges, dtype=np.int64)
        return np.ascontiguousarray(arr[:, 0]), np.ascontiguousarray(arr[:, 1])

    def degree_sequence(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        value = int(token, 10)
    except ValueError:
        raise GraphParseError(f"line {lineno}: {what} {token!r} is not an integer") from None
    return value


def parse_edge_list(text: str) -> Graph:
    """Parse the plain edge-list format.

    One edge per line as two whitespace-separated 0-based vertex ids.
    '#' starts a comment, blank lines are skipped.  An optional first
    content line ``n <count>`` pins the vertex count (required to
    represent trailing isolated vertices); otherwise n is one past the
    largest endpoint mentioned.
    """
    declared_n = None
    edges: list[tuple[int, int]] = []
    max_seen = -1
    first_content = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if first_content and tokens[0] == "n":
            if len(tokens) != 2:
                raise GraphParseError(f"line {lineno}: header must be 'n <count>'")
            declared_n = _parse_int(tokens[1], lineno, "vertex count")
            if declared_n < 1:
                raise GraphParseError(f"line {lineno}: vertex count must be positive")
            first_content = False
            continue
        first_content = False
        if len(tokens) != 2:
            raise GraphParseError(
                f"line {lineno}: expected two vertex ids, got {len(tokens)} tokens"
            )
        u = _parse_int(tokens[0], lineno, "vertex id")
        v = _parse_int(tokens[1], lineno, "vertex id")
        if u < 0 or v < 0:
            raise GraphParseError(f"line {lineno}: vertex ids must be >= 0")
        if u == v:
            raise GraphParseError(f"line {lineno}: self-loop at vertex {u}")
        if declared_n is not None and (u >= declared_n or v >= declared_n):
            raise GraphParseError(
                f"line {lineno}: vertex {max(u, v)} out of range for declared n={declared_n}"
            )
        edges.append((u, v))
        max_seen = max(max_seen, u, v)
    if declared_n is None:
        if max_seen < 0:
            raise GraphParseError("empty edge list and no 'n <count>' header")
        declared_n = max_seen + 1
    return Graph(declared_n, tuple(edges))


def parse_dimacs(text: str) -> Graph:
    """Parse DIMACS graph format: 'c' comments, 'p edge n m', 'e u v' 1-based."""
    n = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if n is not None:
                raise GraphParseError(f"line {lineno}: duplicate problem line")
            if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                raise GraphParseError(f"line {lineno}: malformed problem line")
            n = _parse_int(tokens[2], lineno, "vertex count")
            if n < 1:
                raise GraphParseError(f"line {lineno}: vertex count must be positive")
        elif tokens[0] == "e":
            if n is None:
                raise GraphParseError(f"line {lineno}: edge before problem line")
            if len(tokens) != 3:
                raise GraphParseError(f"line {lineno}: malformed edge line")
            u = _parse_int(tokens[1], lineno, "vertex id")
            v = _parse_int(tokens[2], lineno, "vertex id")
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphParseError(f"line {lineno}: vertex out of range 1..{n}")
            if u == v:
                raise GraphParseError(f"line {lineno}: self-loop at vertex {u}")
            edges.append((u - 1, v - 1))
        else:
            raise GraphParseError(f"line {lineno}: unknown record {tokens[0]!r}")
    if n is None:
        raise GraphParseError("missing problem line")
    return Graph(n, tuple(edges))


def to_edge_list(g: Graph) -> str:
    """Canonical edge-list serialization; parse_edge_list(to_edge_list(g)) == g."""
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def complement(g: Graph) -> Graph:
    present = set(g.edges)
    edges = tuple(
        (u, v) for u in range(g.n) for v in range(u + 1, g.n) if (u, v) not in present
    )
    return Graph(g.n, edges)


def _uniform01(seed: int, index: int) -> float:
    x = ((seed & _MASK64) ^ _ER_TAG) & _MASK64
    x = (x + ((index + 1) * GOLDEN)) & _MASK64
    return (mix64_int(x) >> 11) * 2.0 ** -53


def named_graph(family: str, params: tuple[int, ...] = (), seed: int = 0) -> Graph:
    """Construct a graph from a named family.

    Families: complete(n), cycle(n >= 3), path(n >= 2), complete_bipartite(a, b),
    petersen(), erdos_renyi(n, p_permille) where edges appear independently with
    probability p_permille / 1000 under the given seed.
    """
    family = family.strip().lower()
    params = tuple(int(p) for p in params)

    def need(k: int) -> None:
        if len(params) != k:
            raise ValueError(f"family {family!r} takes {k} parameter(s), got {len(params)}")

    if family == "complete":
        need(1)
        (n,) = params
        return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))
    if family == "cycle":
        need(1)
        (n,) = params
        if n < 3:
            raise ValueError("cycle needs at least 3 vertices")
        return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))
    if family == "path":
        need(1)
        (n,) = params
        if n < 2:
            raise ValueError("path needs at least 2 vertices")
        return Graph(n, tuple((i, i + 1) for i in range(n - 1)))
    if family == "complete_bipartite":
        need(2)
        a, b = params
        if a < 1 or b < 1:
            raise ValueError("complete_bipartite sides must be positive")
        return Graph(a + b, tuple((u, a + v) for u in range(a) for v in range(b)))
    if family == "petersen":
        need(0)
        # Kneser graph on the 2-subsets of a 5-set: vertices are pairs,
        # adjacent when disjoint.
        pairs = [(i, j) for i in range(5) for j in range(i + 1, 5)]
        edges = []
        for x in range(10):
            for y in range(x + 1, 10):
                if not set(pairs[x]) & set(pairs[y]):
                    edges.append((x, y))
        return Graph(10, tuple(edges))
    if family == "erdos_renyi":
        need(2)
        n, permille = params
        if n < 1:
            raise ValueError("erdos_renyi needs at least 1 vertex")
        if not 0 <= permille <= 1000:
            raise ValueError("edge probability must be 0..1000 permille")
        p = permille / 1000.0
        edges = []
        k = 0
        for u in range(n):
            for v in range(u + 1, n):
                if _uniform01(seed, k) < p:
                    edges.append((u, v))
                k += 1
        return Graph(n, tuple(edges))
    raise ValueError(f"unknown graph family {family!r}")

"""Qubit-connectivity graphs and the structural queries behind schedule dispatch:
exact maximum clique, degeneracy ordering, and budgeted proper 4-coloring."""

from __future__ import annotations

from dataclasses import dataclass, field


class GraphFormatError(ValueError):
    """Raised when an edge-list file cannot be parsed."""


@dataclass(frozen=True)
class TopologyGraph:
    """Simple undirected graph on vertices 0..n-1, immutable after construction."""

    n: int
    edges: frozenset[tuple[int, int]]
    _adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("graph needs at least one vertex")
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has endpoint outside 0..{self.n - 1}")
            if u > v:
                raise ValueError("edges must be stored as (min, max) pairs")
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(s) for s in adj))

    @classmethod
    def from_edges(cls, n: int, edges) -> TopologyGraph:
        return cls(n, frozenset((min(u, v), max(u, v)) for u, v in edges))

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    @property
    def edge_list(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def parse_graph(text: str) -> TopologyGraph:
    """Parse the edge-list format: first line ``n <N>``, then ``<u> <v>`` lines.

    Blank lines are skipped and ``#`` starts a comment line.  Duplicate edges
    collapse; malformed lines, self-loops, and out-of-range endpoints raise
    :class:`GraphFormatError` with the offending line number.
    """
    n: int | None = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise GraphFormatError(f"line {lineno}: expected header 'n <N>', got {line!r}")
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: vertex count {parts[1]!r} is not an integer") from None
            if n < 1:
                raise GraphFormatError(f"line {lineno}: vertex count must be >= 1")
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected '<u> <v>', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer endpoint in {line!r}") from None
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop on vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {lineno}: endpoint out of range 0..{n - 1}")
        edges.add((min(u, v), max(u, v)))
    if n is None:
        raise GraphFormatError("missing 'n <N>' header line")
    return TopologyGraph(n, frozenset(edges))


def graph_to_text(g: TopologyGraph) -> str:
    lines = [f"n {g.n}"] + [f"{u} {v}" for u, v in g.edge_list]
    return "\n".join(lines) + "\n"


def complete_graph(n: int) -> TopologyGraph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return TopologyGraph(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))


@dataclass(frozen=True)
class CliqueResult:
    size: int
    members: tuple[int, ...]
    exact: bool


def max_clique(g: TopologyGraph, node_budget: int = 1_000_000) -> CliqueResult:
    """Exact maximum clique via Bron-Kerbosch with pivoting and a node budget.

    Within budget the result is exact; if the budget runs out the best clique
    found so far is returned with ``exact=False`` (a valid lower bound).
    """
    best: list[int] = []
    nodes = 0
    budget_hit = False

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        nonlocal best, nodes, budget_hit
        nodes += 1
        if nodes > node_budget:
            budget_hit = True
            return
        if not p and not x:
            if len(r) > len(best):
                best = r.copy()
            return
        if len(r) + len(p) <= len(best):
            return
        pivot = max(p | x, key=lambda u: len(p & g.neighbors(u)))
        for v in sorted(p - g.neighbors(pivot)):
            expand(r + [v], p & g.neighbors(v), x & g.neighbors(v))
            if budget_hit:
                return
            p.remove(v)
            x.add(v)

    expand([], set(range(g.n)), set())
    if not best:
        # Every graph has a clique of size 1.
        best = [0]
    return CliqueResult(len(best), tuple(sorted(best)), not budget_hit)


def degeneracy_ordering(g: TopologyGraph) -> tuple[tuple[int, ...], int]:
    """Vertex ordering from repeated minimum-degree removal, reversed.

    Returns ``(ordering, degeneracy)``.  In the returned ordering every vertex
    is preceded by at most ``degeneracy`` of its neighbors.
    """
    degree = [g.degree(v) for v in range(g.n)]
    max_deg = max(degree, default=0)
    buckets: list[set[int]] = [set() for _ in range(max_deg + 1)]
    for v in range(g.n):
        buckets[degree[v]].add(v)
    removed = [False] * g.n
    removal: list[int] = []
    degeneracy = 0
    for _ in range(g.n):
        d = next(i for i, b in enumerate(buckets) if b)
        v = min(buckets[d])
        buckets[d].remove(v)
        removed[v] = True
        removal.append(v)
        degeneracy = max(degeneracy, d)
        for u in g.neighbors(v):
            if not removed[u]:
                buckets[degree[u]].remove(u)
                degree[u] -= 1
                buckets[degree[u]].add(u)
    return tuple(reversed(removal)), degeneracy


@dataclass(frozen=True)
class Coloring:
    """Proper vertex coloring with 0-based color indices."""

    colors: tuple[int, ...]
    color_count: int

    def __post_init__(self) -> None:
        if self.colors and max(self.colors) >= self.color_count:
            raise ValueError("used color index exceeds declared color count")
        if any(c < 0 for c in self.colors):
            raise ValueError("color indices must be non-negative")

    def color_of(self, v: int) -> int:
        return self.colors[v]


def identity_coloring(n: int) -> Coloring:
    return Coloring(tuple(range(n)), n)


def is_proper(g: TopologyGraph, c: Coloring) -> bool:
    if len(c.colors) != g.n:
        return False
    return all(c.colors[u] != c.colors[v] for u, v in g.edges)


def greedy_coloring(g: TopologyGraph, order: tuple[int, ...] | None = None) -> Coloring:
    """First-fit coloring along ``order`` (default: degeneracy ordering)."""
    if order is None:
        order, _ = degeneracy_ordering(g)
    colors = [-1] * g.n
    for v in order:
        taken = {colors[u] for u in g.neighbors(v) if colors[u] >= 0}
        c = 0
        while c in taken:
            c += 1
        colors[v] = c
    return Coloring(tuple(colors), max(colors) + 1)


@dataclass(frozen=True)
class FourColorResult:
    coloring: Coloring
    within_four: bool


def four_coloring(g: TopologyGraph, step_budget: int = 200_000) -> FourColorResult:
    """Search for a proper coloring with at most 4 colors.

    Greedy over the degeneracy ordering first (sufficient for any graph of
    degeneracy <= 3), then bounded backtracking.  On failure or budget
    exhaustion the greedy coloring is returned with ``within_four=False``.
    """
    order, _ = degeneracy_ordering(g)
    greedy = greedy_coloring(g, order)
    if greedy.color_count <= 4:
        return FourColorResult(greedy, True)

    colors = [-1] * g.n
    steps = 0

    def assign(idx: int, used: int) -> bool:
        nonlocal steps
        if idx == g.n:
            return True
        v = order[idx]
        taken = {colors[u] for u in g.neighbors(v) if colors[u] >= 0}
        # Trying at most one fresh color breaks color-permutation symmetry.
        for c in range(min(used + 1, 4)):
            if c in taken:
                continue
            steps += 1
            if steps > step_budget:
                return False
            colors[v] = c
            if assign(idx + 1, max(used, c + 1)):
                return True
            colors[v] = -1
        return False

    if assign(0, 0):
        found = Coloring(tuple(colors), max(colors) + 1)
        return FourColorResult(found, True)
    return FourColorResult(greedy, False)

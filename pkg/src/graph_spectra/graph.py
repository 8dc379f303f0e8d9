"""Finite weighted graphs, tail attachments and the JSON input format.

Vertices are numbered 1..n.  Every builder fixes its numbering because
the explicit canonical bases used elsewhere refer to vertex labels.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real

import numpy as np

__all__ = [
    "WeightedGraph", "TailSpec", "InfiniteGraphSpec", "build_path", "build_cycle",
    "build_star", "build_complete", "build_flower", "build_from_edges", "couple",
    "delete_vertices", "adjacency_matrix", "simple_cycles_through", "parse_weight",
    "spec_from_dict", "spec_to_dict", "load_spec", "MAX_CYCLES",
]

MAX_CYCLES = 10_000


def parse_weight(w):
    """Weights may be numbers or decimal/fraction strings; strings stay exact."""
    if isinstance(w, str):
        try:
            return Fraction(w.strip())
        except ValueError:
            raise ValueError(f"cannot parse weight {w!r}") from None
    if isinstance(w, (bool,)) or not isinstance(w, (Real, np.floating, np.integer)):
        raise ValueError(f"weight must be a real number, got {w!r}")
    if isinstance(w, (int, np.integer)):
        return Fraction(int(w))
    if isinstance(w, Fraction):
        return w
    return float(w)


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph on 1..n with positive edge weights.

    ``labels[k-1]`` is the id vertex k had in the graph it was cut from
    (identity unless produced by :func:`delete_vertices`).
    """
    n: int
    edges: frozenset
    labels: tuple = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        seen = set()
        clean = []
        for e in self.edges:
            i, j, w = e if len(e) == 3 else (*e, 1)
            i, j = int(i), int(j)
            w = parse_weight(w)
            if i == j:
                raise ValueError(f"loop at vertex {i} rejected: graphs must be simple")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge ({i},{j}) has a vertex outside 1..{self.n}")
            if not w > 0:
                raise ValueError(f"edge ({i},{j}) needs a positive weight, got {w}")
            i, j = min(i, j), max(i, j)
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i},{j}) rejected: graphs must be simple")
            seen.add((i, j))
            clean.append((i, j, w))
        object.__setattr__(self, "edges", frozenset(clean))
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(range(1, self.n + 1)))

    @property
    def vertices(self):
        return range(1, self.n + 1)

    @property
    def edge_count(self):
        return len(self.edges)

    @property
    def is_unweighted(self):
        return all(w == 1 for _, _, w in self.edges)

    def weight(self, i, j):
        i, j = min(i, j), max(i, j)
        for a, b, w in self.edges:
            if a == i and b == j:
                return w
        return 0

    def neighbors(self, v):
        out = []
        for i, j, _ in self.edges:
            if i == v:
                out.append(j)
            elif j == v:
                out.append(i)
        return sorted(out)

    def adjacency_lists(self):
        adj = {v: [] for v in self.vertices}
        for i, j, _ in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return {v: sorted(a) for v, a in adj.items()}

    def old_to_new(self):
        return {old: new for new, old in enumerate(self.labels, start=1)}

    def is_connected(self):
        if self.n == 0:
            return True
        adj = self.adjacency_lists()
        seen, stack = {1}, [1]
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n

    def _check_vertex(self, v):
        if not (isinstance(v, (int, np.integer)) and 1 <= v <= self.n):
            raise ValueError(f"vertex {v} is not in 1..{self.n}")


def build_from_edges(n, edges):
    return WeightedGraph(int(n), frozenset(tuple(e) for e in edges))


def build_path(k):
    """P_k on 1..k with edges {i, i+1}."""
    if k < 1:
        raise ValueError("path needs k >= 1")
    return build_from_edges(k, [(i, i + 1, 1) for i in range(1, k)])


def build_cycle(k):
    """C_k on 1..k in cyclic order."""
    if k < 3:
        raise ValueError("cycle needs k >= 3")
    return build_from_edges(k, [(i, i + 1, 1) for i in range(1, k)] + [(1, k, 1)])


def build_star(weights):
    """Star with leaves 1..n and root n+1; leaf i has edge weight weights[i-1]."""
    weights = list(weights)
    if not weights:
        raise ValueError("star needs a nonempty weight list")
    n = len(weights)
    return build_from_edges(n + 1, [(i, n + 1, w) for i, w in enumerate(weights, start=1)])


def build_complete(n):
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return build_from_edges(n, [(i, j, 1) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def build_flower(petal_orders):
    """Cycles of the given orders glued at a common root.

    Petal j occupies consecutive vertices (its cycle minus the root) and
    the root is the last vertex; for triangles petal j is {2j-1, 2j, root}.
    """
    orders = list(petal_orders)
    if not orders:
        raise ValueError("flower needs at least one petal")
    if any(m < 3 for m in orders):
        raise ValueError("each petal order must be >= 3")
    n = sum(m - 1 for m in orders) + 1
    root = n
    edges = []
    start = 1
    for m in orders:
        k = m - 1
        vs = list(range(start, start + k))
        edges.append((root, vs[0], 1))
        edges.extend((vs[t], vs[t + 1], 1) for t in range(k - 1))
        edges.append((vs[-1], root, 1))
        start += k
    return build_from_edges(n, edges)


def couple(g1, v1, g2, v2, d=1):
    """Disjoint union of g1 and g2 (shifted by g1.n) plus the bridge {v1, v2} of weight d."""
    g1._check_vertex(v1)
    g2._check_vertex(v2)
    shift = g1.n
    edges = list(g1.edges) + [(i + shift, j + shift, w) for i, j, w in g2.edges]
    edges.append((v1, v2 + shift, d))
    return build_from_edges(g1.n + g2.n, edges)


def delete_vertices(g, vs):
    """Induced subgraph on the remaining vertices, renumbered in order.

    ``result.labels`` records the original id of each new vertex."""
    vs = set(vs)
    for v in vs:
        g._check_vertex(v)
    keep = [v for v in g.vertices if v not in vs]
    new_id = {old: k for k, old in enumerate(keep, start=1)}
    edges = [(new_id[i], new_id[j], w) for i, j, w in g.edges if i in new_id and j in new_id]
    labels = tuple(g.labels[v - 1] for v in keep)
    return WeightedGraph(len(keep), frozenset(edges), labels)


def adjacency_matrix(g):
    A = np.zeros((g.n, g.n))
    for i, j, w in g.edges:
        A[i - 1, j - 1] = A[j - 1, i - 1] = float(w)
    return A


def simple_cycles_through(g, v, *, as_paths=False, cap=MAX_CYCLES):
    """Every simple cycle of length >= 3 through v, each listed once.

    Distinct cycles on the same vertex set (e.g. the three 4-cycles of
    K_4) are distinct entries.  Returned as frozensets, or as vertex
    sequences starting at v when ``as_paths`` is set.
    """
    g._check_vertex(v)
    adj = g.adjacency_lists()
    out = []

    def dfs(path, on_path):
        u = path[-1]
        for w in adj[u]:
            if w == v and len(path) >= 3 and path[1] < path[-1]:
                out.append(tuple(path))
                if len(out) > cap:
                    raise RuntimeError(f"more than {cap} cycles; enumeration capped")
            elif w not in on_path and w != v:
                on_path.add(w)
                path.append(w)
                dfs(path, on_path)
                path.pop()
                on_path.discard(w)

    dfs([v], {v})
    if as_paths:
        return out
    return [frozenset(c) for c in out]


# ---------------------------------------------------------------------
# Infinite graph descriptions
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class TailSpec:
    """A one-sided path attached to ``attach`` through a bridge of weight
    ``bridge``; ``tail_weights`` are a_1..a_q of the path, then 1s."""
    attach: int
    bridge: object = 1
    tail_weights: tuple = ()

    def __post_init__(self):
        b = parse_weight(self.bridge)
        if not b > 0:
            raise ValueError(f"bridge weight must be positive, got {b}")
        tw = tuple(parse_weight(w) for w in self.tail_weights)
        if any(not w > 0 for w in tw):
            raise ValueError("tail weights must be positive")
        object.__setattr__(self, "bridge", b)
        object.__setattr__(self, "tail_weights", tw)

    @property
    def is_unit(self):
        return self.bridge == 1 and all(w == 1 for w in self.tail_weights)


@dataclass(frozen=True)
class InfiniteGraphSpec:
    """Either a finite graph with tails or a named family with parameters."""
    finite: WeightedGraph | None = None
    tails: tuple = ()
    family: str | None = None
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "tails", tuple(self.tails))
        if self.family is None:
            if self.finite is None:
                raise ValueError("spec needs either a finite graph with tails or a family id")
            if not self.tails:
                raise ValueError("a tailed spec needs at least one tail")
            for t in self.tails:
                self.finite._check_vertex(t.attach)

    @property
    def kind(self):
        return "family" if self.family is not None else "tailed"


def spec_from_dict(d):
    if not isinstance(d, dict):
        raise ValueError("graph description must be a JSON object")
    fam = d.get("family")
    if fam is not None:
        if not isinstance(fam, dict) or "id" not in fam:
            raise ValueError("family must be an object with an 'id'")
        return InfiniteGraphSpec(family=str(fam["id"]), params=dict(fam.get("params", {})))
    if "n" not in d:
        raise ValueError("missing vertex count 'n'")
    edges = d.get("edges", [])
    for e in edges:
        if not isinstance(e, (list, tuple)) or len(e) not in (2, 3):
            raise ValueError(f"edge entries must be [i, j] or [i, j, w], got {e!r}")
    g = build_from_edges(int(d["n"]), [tuple(e) for e in edges])
    tails = []
    for t in d.get("tails", []):
        if "attach" not in t:
            raise ValueError("every tail needs an 'attach' vertex")
        tails.append(TailSpec(int(t["attach"]), t.get("bridge", 1), tuple(t.get("tail_weights", ()))))
    return InfiniteGraphSpec(finite=g, tails=tuple(tails))


def _weight_out(w):
    if isinstance(w, Fraction):
        return str(w) if w.denominator != 1 else int(w)
    return float(w)


def spec_to_dict(spec):
    if spec.family is not None:
        return {"family": {"id": spec.family, "params": dict(spec.params)}}
    g = spec.finite
    return {
        "n": g.n,
        "edges": [[i, j, _weight_out(w)] for i, j, w in sorted(g.edges, key=lambda e: e[:2])],
        "tails": [{"attach": t.attach, "bridge": _weight_out(t.bridge),
                   "tail_weights": [_weight_out(w) for w in t.tail_weights]} for t in spec.tails],
    }


def load_spec(source):
    """Parse a spec from a path, a JSON string or an already-decoded dict."""
    if isinstance(source, dict):
        return spec_from_dict(source)
    text = str(source)
    if text.lstrip().startswith("{"):
        return spec_from_dict(json.loads(text))
    with open(text) as fh:
        return spec_from_dict(json.load(fh))

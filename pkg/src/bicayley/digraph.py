"""Digraphs on ``0..n-1`` and the Bi-Cayley construction.

Adjacency is kept as Python-int bitmasks in both directions, which keeps the
small-graph routines here (and the flow code) cheap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .groups import ElementSet, FiniteGroup

__all__ = [
    "VertexLabel",
    "Digraph",
    "BiCayleySpec",
    "build_bicayley",
    "out_degree",
    "in_degree",
    "min_degrees",
    "reverse",
    "induced",
    "strongly_connected_components",
    "is_strongly_connected",
    "is_weakly_connected",
    "is_directed_cycle",
    "is_symmetric_cycle",
    "is_complete_symmetric",
    "right_translation",
    "is_arc_automorphism",
    "fiber_swap",
    "to_dot",
    "to_json",
    "directed_cycle",
    "complete_symmetric",
]


class VertexLabel(NamedTuple):
    element_id: int
    fiber: int


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Digraph:
    vertex_count: int
    arcs: frozenset[tuple[int, int]]
    vertex_labels: tuple[VertexLabel, ...] | None = None
    out_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)
    in_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise ValueError("vertex_count must be non-negative")
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        out = [0] * n
        inn = [0] * n
        for u, v in arcs:
            if u == v:
                raise ValueError(f"loop at vertex {u}: digraphs are irreflexive")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) has an endpoint outside 0..{n - 1}")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        if self.vertex_labels is not None:
            labels = tuple(VertexLabel(*lab) for lab in self.vertex_labels)
            if len(labels) != n:
                raise ValueError("need exactly one label per vertex")
            if any(lab.fiber not in (0, 1) for lab in labels):
                raise ValueError("fiber must be 0 or 1")
            object.__setattr__(self, "vertex_labels", labels)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "out_masks", tuple(out))
        object.__setattr__(self, "in_masks", tuple(inn))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]], labels=None) -> Digraph:
        return cls(n, frozenset(arcs), labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.vertex_count) - 1

    def out_neighbors(self, v: int) -> list[int]:
        return list(_bits(self.out_masks[v]))

    def in_neighbors(self, v: int) -> list[int]:
        return list(_bits(self.in_masks[v]))

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)


@dataclass(frozen=True)
class BiCayleySpec:
    group: FiniteGroup
    T0: ElementSet
    T1: ElementSet

    def __post_init__(self):
        for name in ("T0", "T1"):
            s = getattr(self, name)
            if not isinstance(s, ElementSet):
                object.__setattr__(self, name, ElementSet.of(self.group, s))
            elif s.group != self.group:
                raise ValueError(f"{name} is not a subset of {self.group.label}")

    @classmethod
    def of(cls, group: FiniteGroup, T0: Iterable[int], T1: Iterable[int]) -> BiCayleySpec:
        return cls(group, ElementSet.of(group, T0), ElementSet.of(group, T1))

    def vertex(self, g: int, fiber: int) -> int:
        return g + fiber * self.group.order

    def label(self, v: int) -> VertexLabel:
        n = self.group.order
        return VertexLabel(v % n, v // n)

    def __str__(self):
        t0 = ",".join(map(str, self.T0))
        t1 = ",".join(map(str, self.T1))
        return f"BD({self.group.label}, {{{t0}}}, {{{t1}}})"


def build_bicayley(spec: BiCayleySpec) -> Digraph:
    """Arcs ``(g,0) -> (t0*g,1)`` for t0 in T0 and ``(t1*g,1) -> (g,0)`` for t1 in T1.

    Vertex ``(g,0)`` is ``g`` and ``(g,1)`` is ``|G| + g``.
    """
    G = spec.group
    n = G.order
    t = G.product_table
    arcs = set()
    for g in G.elements:
        for t0 in spec.T0:
            arcs.add((g, n + t[t0][g]))
        for t1 in spec.T1:
            arcs.add((n + t[t1][g], g))
    labels = tuple(VertexLabel(g, i) for i in (0, 1) for g in range(n))
    return Digraph(2 * n, frozenset(arcs), labels)


def directed_cycle(n: int) -> Digraph:
    return Digraph.from_arcs(n, ((i, (i + 1) % n) for i in range(n)))


def complete_symmetric(n: int) -> Digraph:
    return Digraph.from_arcs(n, ((u, v) for u in range(n) for v in range(n) if u != v))


def out_degree(X: Digraph, v: int) -> int:
    return X.out_masks[v].bit_count()


def in_degree(X: Digraph, v: int) -> int:
    return X.in_masks[v].bit_count()


def min_degrees(X: Digraph) -> tuple[int, int, int]:
    """``(delta+, delta-, delta)``."""
    if X.vertex_count == 0:
        return 0, 0, 0
    dp = min(m.bit_count() for m in X.out_masks)
    dm = min(m.bit_count() for m in X.in_masks)
    return dp, dm, min(dp, dm)


def reverse(X: Digraph) -> Digraph:
    return Digraph(X.vertex_count, frozenset((v, u) for u, v in X.arcs), X.vertex_labels)


def induced(X: Digraph, A: Iterable[int]) -> Digraph:
    """``X[A]`` with its vertices renumbered ``0..|A|-1`` in increasing order."""
    keep = sorted(set(A))
    pos = {v: i for i, v in enumerate(keep)}
    arcs = frozenset((pos[u], pos[v]) for u, v in X.arcs if u in pos and v in pos)
    labels = None
    if X.vertex_labels is not None:
        labels = tuple(X.vertex_labels[v] for v in keep)
    return Digraph(len(keep), arcs, labels)


def strongly_connected_components(X: Digraph) -> list[list[int]]:
    """Tarjan's algorithm, iterative. Components come out in reverse topological order."""
    n = X.vertex_count
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps = []
    counter = 0
    succ = [list(_bits(m)) for m in X.out_masks]
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def is_strongly_connected(X: Digraph) -> bool:
    return len(strongly_connected_components(X)) <= 1


def is_weakly_connected(X: Digraph) -> bool:
    n = X.vertex_count
    if n <= 1:
        return True
    nbr = [o | i for o, i in zip(X.out_masks, X.in_masks)]
    seen = frontier = 1
    while frontier:
        reach = 0
        for v in _bits(frontier):
            reach |= nbr[v]
        frontier = reach & ~seen
        seen |= reach
    return seen == X.full_mask


def is_directed_cycle(X: Digraph) -> bool:
    if X.vertex_count < 2:
        return False
    if any(m.bit_count() != 1 for m in X.out_masks + X.in_masks):
        return False
    return is_strongly_connected(X)


def is_symmetric(X: Digraph) -> bool:
    return X.out_masks == X.in_masks


def is_symmetric_cycle(X: Digraph) -> bool:
    # two-vertex symmetric digraph counts as K2*, not a cycle
    if X.vertex_count < 3 or not is_symmetric(X):
        return False
    if any(m.bit_count() != 2 for m in X.out_masks):
        return False
    return is_weakly_connected(X)


def is_complete_symmetric(X: Digraph) -> bool:
    n = X.vertex_count
    return len(X.arcs) == n * (n - 1)


def right_translation(spec: BiCayleySpec, a: int) -> tuple[int, ...]:
    """The vertex permutation ``(g,i) -> (g*a, i)``."""
    G = spec.group
    n = G.order
    if not 0 <= a < n:
        raise ValueError(f"element id {a} out of range")
    t = G.product_table
    right = tuple(t[g][a] for g in range(n))
    return right + tuple(n + x for x in right)


def is_arc_automorphism(X: Digraph, perm: Sequence[int]) -> bool:
    n = X.vertex_count
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise ValueError("permutation is not a bijection on the vertex set")
    return frozenset((perm[u], perm[v]) for u, v in X.arcs) == X.arcs


def fiber_swap(n: int) -> tuple[int, ...]:
    """Vertex map ``(g,i) -> (g,1-i)`` for a group of order ``n``."""
    return tuple(range(n, 2 * n)) + tuple(range(n))


def _vertex_name(X: Digraph, v: int) -> str:
    if X.vertex_labels is None:
        return f"v{v}"
    g, i = X.vertex_labels[v]
    return f"g{i}_{g}"


def to_dot(X: Digraph, name: str = "X") -> str:
    """Graphviz text: fiber 0 drawn as circles, fiber 1 as boxes."""
    lines = [f'digraph "{name}" {{']
    for v in range(X.vertex_count):
        shape = "circle"
        if X.vertex_labels is not None and X.vertex_labels[v].fiber == 1:
            shape = "box"
        lines.append(f"  {_vertex_name(X, v)} [shape={shape}];")
    for u, v in X.sorted_arcs():
        lines.append(f"  {_vertex_name(X, u)} -> {_vertex_name(X, v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_dict(X: Digraph) -> dict:
    labels = None if X.vertex_labels is None else [list(lab) for lab in X.vertex_labels]
    return {
        "vertex_count": X.vertex_count,
        "labels": labels,
        "arcs": [list(a) for a in X.sorted_arcs()],
    }


def to_json(X: Digraph) -> str:
    return json.dumps(to_dict(X), separators=(",", ":")) + "\n"


def from_dict(doc: dict) -> Digraph:
    labels = doc.get("labels")
    if labels is not None:
        labels = tuple(VertexLabel(*lab) for lab in labels)
    return Digraph(doc["vertex_count"], frozenset(map(tuple, doc["arcs"])), labels)

"""Unit-capacity maximum flow by shortest augmenting paths.

Networks are lists of successor bitmasks (bit ``v`` of ``succ[u]`` set means an
arc ``u -> v`` of capacity one). Flow values here never exceed a few dozen, so
a BFS per augmentation is plenty.
"""

from __future__ import annotations

from typing import Sequence


def _bfs_parents(res: list[int], s: int, t: int) -> dict[int, int] | None:
    visited = 1 << s
    tbit = 1 << t
    parent: dict[int, int] = {}
    frontier = [s]
    while frontier:
        nxt = []
        for u in frontier:
            new = res[u] & ~visited
            if not new:
                continue
            visited |= new
            while new:
                low = new & -new
                v = low.bit_length() - 1
                parent[v] = u
                nxt.append(v)
                new ^= low
            if visited & tbit:
                return parent
        frontier = nxt
    return None


def max_flow(succ: Sequence[int], s: int, t: int, limit: int | None = None) -> int:
    """Value of a maximum ``s``-``t`` flow, or ``limit`` if that is reached first."""
    if s == t:
        raise ValueError("source and sink must differ")
    res = list(succ)
    cap: dict[tuple[int, int], int] = {}
    flow = 0
    while limit is None or flow < limit:
        parent = _bfs_parents(res, s, t)
        if parent is None:
            break
        v = t
        while v != s:
            u = parent[v]
            c = cap.get((u, v), (succ[u] >> v) & 1) - 1
            cap[(u, v)] = c
            if c == 0:
                res[u] &= ~(1 << v)
            cap[(v, u)] = cap.get((v, u), (succ[v] >> u) & 1) + 1
            res[v] |= 1 << u
            v = u
        flow += 1
    return flow


def split_network(out_masks: Sequence[int]) -> list[int]:
    """Vertex-split network: ``w`` is the in-copy, ``w + n`` the out-copy.

    Each in-copy feeds its out-copy with capacity one and every arc ``x -> y``
    becomes ``x_out -> y_in``. Maximum ``s_out``-``t_in`` flow then counts
    internally vertex-disjoint ``s``-``t`` paths.
    """
    n = len(out_masks)
    return [1 << (w + n) for w in range(n)] + list(out_masks)


def local_arc_connectivity(out_masks: Sequence[int], s: int, t: int, limit=None) -> int:
    return max_flow(out_masks, s, t, limit)


def local_vertex_connectivity(split: Sequence[int], n: int, s: int, t: int, limit=None) -> int:
    return max_flow(split, s + n, t, limit)

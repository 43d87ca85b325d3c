"""Shared hypothesis strategies and small independent oracles for the tests."""

from collections import deque

from hypothesis import strategies as st

from bicayley.digraph import BiCayleySpec, Digraph
from bicayley.groups import parse_group

SMALL_GROUPS = [
    "cyclic:1", "cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5", "cyclic:6",
    "product:cyclic:2,cyclic:2", "symmetric:3",
]
# groups whose Bi-Cayley digraphs stay under the default oracle threshold
ORACLE_GROUPS = SMALL_GROUPS + ["cyclic:8", "dihedral:4", "product:cyclic:2,cyclic:2,cyclic:2"]

_GROUPS = {d: parse_group(d) for d in ORACLE_GROUPS}


def group(desc):
    return _GROUPS[desc]


@st.composite
def specs(draw, groups=SMALL_GROUPS, allow_empty=False):
    G = group(draw(st.sampled_from(groups)))
    lo = 0 if allow_empty else 1
    ids = st.integers(0, G.order - 1)
    T0 = draw(st.sets(ids, min_size=lo, max_size=G.order))
    T1 = draw(st.sets(ids, min_size=lo, max_size=G.order))
    return BiCayleySpec.of(G, T0, T1)


@st.composite
def digraphs(draw, min_n=1, max_n=7, density=None):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    if density is None:
        arcs = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    else:
        arcs = {p for p in pairs if draw(st.floats(0, 1)) < density}
    return Digraph.from_arcs(n, arcs)


def reachable(X, s):
    """Plain BFS over arc lists, independent of the bitmask machinery."""
    adj = {v: [] for v in range(X.vertex_count)}
    for u, v in X.arcs:
        adj[u].append(v)
    seen = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def bfs_strongly_connected(X):
    n = X.vertex_count
    return all(len(reachable(X, v)) == n for v in range(n))


def naive_boundary(X, A):
    A = set(A)
    return sum(1 for u, v in X.arcs if u in A and v not in A)


def removal_kappa(X):
    """Vertex connectivity by trying every vertex subset in increasing size."""
    from itertools import combinations

    n = X.vertex_count
    for k in range(n):
        for cut in combinations(range(n), k):
            rest = [v for v in range(n) if v not in cut]
            if len(rest) <= 1:
                return k
            keep = set(rest)
            sub = Digraph.from_arcs(
                len(rest),
                ((rest.index(u), rest.index(v)) for u, v in X.arcs if u in keep and v in keep),
            )
            if not bfs_strongly_connected(sub):
                return k
    return n - 1

"""Vertex and arc connectivity, fragments, atoms and superatoms.

Two independent routes are kept apart on purpose. ``arc_connectivity`` and
``vertex_connectivity`` use max-flow. The ``*_oracle`` / ``find_*`` functions
enumerate every vertex subset through a numpy table indexed by subset bitmask
and are the reference in tests.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .digraph import (
    BiCayleySpec,
    Digraph,
    build_bicayley,
    fiber_swap,
    induced,
    is_complete_symmetric,
    is_strongly_connected,
    is_weakly_connected,
    min_degrees,
)
from .flow import local_arc_connectivity, local_vertex_connectivity, split_network
from .groups import ElementSet, is_subgroup

DEFAULT_ORACLE_THRESHOLD = 20
POSITIVE = "positive"
NEGATIVE = "negative"


class ConnectivityError(ValueError):
    """Connectivity asked of a digraph where it is not defined here."""


class OracleLimitError(RuntimeError):
    """Exhaustive enumeration refused because the digraph is too large."""


class AtomsNotApplicable(ValueError):
    """Vertex atoms are not defined for complete symmetric digraphs."""


def mask_of(A: Iterable[int]) -> int:
    m = 0
    for v in A:
        m |= 1 << v
    return m


def members(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True, order=True)
class Fragment:
    vertices: tuple[int, ...]
    kind: str = POSITIVE
    boundary_size: int = 0

    @property
    def mask(self) -> int:
        return mask_of(self.vertices)

    def __len__(self):
        return len(self.vertices)


# -- boundaries and neighborhoods --------------------------------------------


def arc_boundary_out(X: Digraph, A: Iterable[int]) -> set[tuple[int, int]]:
    """omega+(A): arcs leaving ``A``."""
    A = set(A)
    return {(u, v) for u, v in X.arcs if u in A and v not in A}


def arc_boundary_in(X: Digraph, A: Iterable[int]) -> set[tuple[int, int]]:
    """omega-(A): arcs entering ``A``."""
    A = set(A)
    return {(u, v) for u, v in X.arcs if u not in A and v in A}


def _out_size(X: Digraph, mask: int) -> int:
    outside = ~mask
    total = 0
    m = mask
    while m:
        low = m & -m
        total += (X.out_masks[low.bit_length() - 1] & outside).bit_count()
        m ^= low
    return total


def boundary_size(X: Digraph, A: Iterable[int] | int, kind: str = POSITIVE) -> int:
    mask = A if isinstance(A, int) else mask_of(A)
    if kind == NEGATIVE:
        mask = X.full_mask & ~mask
    return _out_size(X, mask)


def positive_neighborhood(X: Digraph, F: Iterable[int]) -> set[int]:
    F = mask_of(F)
    reach = 0
    for v in members(F):
        reach |= X.out_masks[v]
    return set(members(reach & ~F))


def negative_neighborhood(X: Digraph, F: Iterable[int]) -> set[int]:
    F = mask_of(F)
    reach = 0
    for v in members(F):
        reach |= X.in_masks[v]
    return set(members(reach & ~F))


def positive_closure(X: Digraph, F: Iterable[int]) -> set[int]:
    F = set(F)
    return F | positive_neighborhood(X, F)


def negative_closure(X: Digraph, F: Iterable[int]) -> set[int]:
    F = set(F)
    return F | negative_neighborhood(X, F)


# -- flow-based connectivity -------------------------------------------------


def _require_strong(X: Digraph) -> None:
    if X.vertex_count < 2:
        raise ConnectivityError("connectivity needs at least two vertices")
    if not is_strongly_connected(X):
        raise ConnectivityError("digraph is not strongly connected")


def arc_connectivity(X: Digraph) -> int:
    """lambda(X): fix vertex 0 and take the least flow to and from every other vertex."""
    _require_strong(X)
    best = min_degrees(X)[2]
    succ = X.out_masks
    for v in range(1, X.vertex_count):
        if best == 0:
            break
        best = min(best, local_arc_connectivity(succ, 0, v, best))
        best = min(best, local_arc_connectivity(succ, v, 0, best))
    return best


def vertex_connectivity(X: Digraph) -> int:
    """kappa(X) by vertex-split flows over Even's reduced set of pairs.

    Some vertex among the first ``kappa + 1`` avoids a minimum separator, and
    every vertex separated from it has a larger index, so sources ``0..best``
    with higher-indexed partners suffice.
    """
    _require_strong(X)
    n = X.vertex_count
    if is_complete_symmetric(X):
        return n - 1
    best = min_degrees(X)[2]
    split = split_network(X.out_masks)
    out = X.out_masks
    i = 0
    while i <= best and i < n:
        for j in range(i + 1, n):
            if not (out[i] >> j) & 1:
                best = min(best, local_vertex_connectivity(split, n, i, j, best))
            if not (out[j] >> i) & 1:
                best = min(best, local_vertex_connectivity(split, n, j, i, best))
        i += 1
    return best


# -- exhaustive tables -------------------------------------------------------


def _check_size(X: Digraph, threshold: int) -> None:
    if X.vertex_count > threshold:
        raise OracleLimitError(
            f"{X.vertex_count} vertices exceeds the exhaustive threshold {threshold}; "
            "use the flow-based connectivity instead"
        )


def boundary_table(X: Digraph, threshold: int = DEFAULT_ORACLE_THRESHOLD) -> np.ndarray:
    """``table[M] = |omega+(M)|`` for every subset bitmask ``M``.

    Built by doubling: adding vertex ``k`` to a set ``S`` of lower vertices
    adds its out-degree and removes the arcs between ``k`` and ``S``.
    """
    _check_size(X, threshold)
    n = X.vertex_count
    table = np.zeros(1 << n, dtype=np.int64)
    for k in range(n):
        lo = np.arange(1 << k, dtype=np.int64)
        out_k = X.out_masks[k] & ((1 << k) - 1)
        in_k = X.in_masks[k] & ((1 << k) - 1)
        table[1 << k : 1 << (k + 1)] = (
            table[: 1 << k]
            + X.out_masks[k].bit_count()
            - np.bitwise_count(lo & out_k)
            - np.bitwise_count(lo & in_k)
        )
    return table


def _union_table(masks: Sequence[int], threshold: int) -> np.ndarray:
    n = len(masks)
    if n > threshold:
        raise OracleLimitError(f"{n} vertices exceeds the exhaustive threshold {threshold}")
    table = np.zeros(1 << n, dtype=np.int64)
    for k in range(n):
        table[1 << k : 1 << (k + 1)] = table[: 1 << k] | masks[k]
    return table


def _popcounts(n: int) -> np.ndarray:
    return np.bitwise_count(np.arange(1 << n, dtype=np.int64)).astype(np.int64)


@dataclass
class SubsetOracle:
    """All-subsets view of one digraph: positive and negative boundary sizes."""

    X: Digraph
    threshold: int = DEFAULT_ORACLE_THRESHOLD
    out_sizes: np.ndarray = field(init=False, repr=False)
    sizes: np.ndarray = field(init=False, repr=False)
    lam: int = field(init=False)

    def __post_init__(self):
        n = self.X.vertex_count
        if n < 2:
            raise ConnectivityError("fragments need at least two vertices")
        self.out_sizes = boundary_table(self.X, self.threshold)
        self.sizes = _popcounts(n)
        self.lam = int(self.out_sizes[1:-1].min())

    @property
    def full(self) -> int:
        return self.X.full_mask

    def in_sizes(self) -> np.ndarray:
        # omega-(A) = omega+(V \ A): reverse the index order
        return self.out_sizes[::-1]

    def fragment_masks(self, kind: str = POSITIVE) -> np.ndarray:
        b = self.out_sizes if kind == POSITIVE else self.in_sizes()
        proper = np.zeros(len(b), dtype=bool)
        proper[1:-1] = True
        return np.flatnonzero(proper & (b == self.lam))

    def strict_fragment_masks(self, kind: str = POSITIVE) -> np.ndarray:
        idx = self.fragment_masks(kind)
        s = self.sizes[idx]
        return idx[(s >= 2) & (s <= self.X.vertex_count - 2)]

    def boundary(self, mask: int, kind: str = POSITIVE) -> int:
        if kind == NEGATIVE:
            mask = self.full & ~mask
        return int(self.out_sizes[mask])

    def fragments(self, kind: str = POSITIVE) -> list[Fragment]:
        return _to_fragments(self.fragment_masks(kind), kind, self.lam)


def _to_fragments(masks: Iterable[int], kind: str, lam: int) -> list[Fragment]:
    return sorted(Fragment(members(int(m)), kind, lam) for m in masks)


def lambda_oracle(X: Digraph, threshold: int = DEFAULT_ORACLE_THRESHOLD):
    """``(lambda, positive arc fragments)`` by enumerating every proper subset."""
    o = SubsetOracle(X, threshold)
    return o.lam, o.fragments(POSITIVE)


def is_super_lambda_bruteforce(X: Digraph, threshold: int = DEFAULT_ORACLE_THRESHOLD,
                               oracle: SubsetOracle | None = None):
    """``(True, None)`` when no strict arc fragment reaches lambda.

    Otherwise ``(False, A)`` with ``A`` the lexicographically least strict
    positive fragment of least size. Negative strict fragments are
    complements of positive ones, so checking one orientation is enough.
    """
    _require_strong(X)
    o = oracle or SubsetOracle(X, threshold)
    idx = o.strict_fragment_masks(POSITIVE)
    if len(idx) == 0:
        return True, None
    smallest = o.sizes[idx].min()
    cands = _to_fragments(idx[o.sizes[idx] == smallest], POSITIVE, o.lam)
    return False, cands[0]


def find_lambda_atoms(X: Digraph, threshold: int = DEFAULT_ORACLE_THRESHOLD,
                      oracle: SubsetOracle | None = None) -> list[Fragment]:
    """Least-size positive fragments followed by least-size negative fragments."""
    o = oracle or SubsetOracle(X, threshold)
    out = []
    for kind in (POSITIVE, NEGATIVE):
        idx = o.fragment_masks(kind)
        s = o.sizes[idx]
        out += _to_fragments(idx[s == s.min()], kind, o.lam)
    return out


def find_lambda_superatoms(X: Digraph, threshold: int = DEFAULT_ORACLE_THRESHOLD,
                           oracle: SubsetOracle | None = None) -> list[Fragment]:
    """Strict fragments (either orientation) of the least size any strict fragment has.

    Empty exactly when ``X`` is super-lambda.
    """
    o = oracle or SubsetOracle(X, threshold)
    per_kind = {k: o.strict_fragment_masks(k) for k in (POSITIVE, NEGATIVE)}
    if not any(len(v) for v in per_kind.values()):
        return []
    smallest = min(int(o.sizes[v].min()) for v in per_kind.values() if len(v))
    out = []
    for kind, idx in per_kind.items():
        out += _to_fragments(idx[o.sizes[idx] == smallest], kind, o.lam)
    return out


def find_atoms(X: Digraph, kappa: int | None = None,
               threshold: int = DEFAULT_ORACLE_THRESHOLD) -> list[Fragment]:
    """Vertex atoms: least-size sets ``F`` with ``|N+(F)| = kappa`` and ``C+(F) != V``
    (positive) or the mirror statement (negative).

    The recorded ``boundary_size`` is the neighborhood size, i.e. kappa.
    """
    if is_complete_symmetric(X):
        raise AtomsNotApplicable("every closure of a complete symmetric digraph is V")
    frags = vertex_fragments(X, kappa, threshold)
    smallest = min(len(f) for f in frags)
    return [f for f in frags if len(f) == smallest]


def vertex_fragments(X: Digraph, kappa: int | None = None,
                     threshold: int = DEFAULT_ORACLE_THRESHOLD) -> list[Fragment]:
    """All positive then all negative vertex fragments."""
    if is_complete_symmetric(X):
        raise AtomsNotApplicable("every closure of a complete symmetric digraph is V")
    if kappa is None:
        kappa = vertex_connectivity(X)
    n = X.vertex_count
    full = X.full_mask
    allm = np.arange(1 << n, dtype=np.int64)
    out = []
    for kind, masks in ((POSITIVE, X.out_masks), (NEGATIVE, X.in_masks)):
        reach = _union_table(masks, threshold)
        nb = reach & ~allm
        closure = reach | allm
        ok = (np.bitwise_count(nb) == kappa) & (closure != full)
        ok[0] = False
        out += _to_fragments(np.flatnonzero(ok), kind, kappa)
    return out


def fragment_algebra_detail(X: Digraph, A: Fragment, B: Fragment,
                            oracle: SubsetOracle | None = None) -> dict[str, bool] | None:
    """Which of ``A&B``, ``A|B``, ``A-B``, ``B-A`` are fragments of the same
    orientation as the crossing fragments ``A`` and ``B``.

    ``None`` when the pair does not meet the preconditions. The meet and join
    always qualify by submodularity of the boundary; the two differences are
    only guaranteed when the digraph is balanced.
    """
    if A.kind != B.kind:
        return None
    a, b = A.mask, B.mask
    full = X.full_mask
    if a & ~b == 0 or b & ~a == 0 or a & b == 0 or (a | b) == full:
        return None
    if oracle is not None:
        lam = oracle.lam
        size = lambda m: oracle.boundary(m, A.kind)  # noqa: E731
    else:
        lam = arc_connectivity(X)
        size = lambda m: boundary_size(X, m, A.kind)  # noqa: E731
    if size(a) != lam or size(b) != lam:
        return None
    sets = {"A&B": a & b, "A|B": a | b, "A-B": a & ~b, "B-A": b & ~a}
    return {name: size(m) == lam for name, m in sets.items()}


def check_fragment_algebra(X: Digraph, A: Fragment, B: Fragment,
                           oracle: SubsetOracle | None = None) -> bool | None:
    """True when all four sets of :func:`fragment_algebra_detail` are fragments;
    ``None`` when the pair is inapplicable."""
    detail = fragment_algebra_detail(X, A, B, oracle)
    return None if detail is None else all(detail.values())


# -- superatom structure in Bi-Cayley digraphs -------------------------------


@dataclass
class SuperatomProfile:
    """Fiber decomposition of a lambda-superatom of ``BD(G, T0, T1)``.

    ``A0``/``A1`` are the fiber parts as group elements, ``H0``/``H1`` the same
    parts right-translated so that ``H0`` contains the identity. For a negative
    superatom all of this refers to the matching positive superatom of
    ``BD(G, T0^-1, T1^-1)`` under the fiber swap.
    """

    A0: ElementSet
    A1: ElementSet
    p: int | None
    q: int | None
    H0: ElementSet | None = None
    H1: ElementSet | None = None
    coset_rep: int | None = None
    weakly_connected: bool = False
    boundary: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_superatom_structure(spec: BiCayleySpec, superatom: Fragment,
                               lam: int | None = None) -> SuperatomProfile:
    G = spec.group
    n = G.order
    t, inv = G.product_table, G.inverse_table
    verts = superatom.vertices
    if superatom.kind == NEGATIVE:
        swap = fiber_swap(n)
        verts = tuple(sorted(swap[v] for v in verts))
        spec = BiCayleySpec.of(G, (inv[x] for x in spec.T0), (inv[x] for x in spec.T1))
    X = build_bicayley(spec)
    if lam is None:
        lam = arc_connectivity(X)
    delta = min_degrees(X)[2]
    amask = mask_of(verts)
    A0 = ElementSet.of(G, (v for v in verts if v < n))
    A1 = ElementSet.of(G, (v - n for v in verts if v >= n))
    bsize = _out_size(X, amask)
    prof = SuperatomProfile(A0, A1, None, None, boundary=bsize)
    bad = prof.violations

    if not 2 <= len(verts) <= 2 * n - 2:
        bad.append(f"not strict: |A| = {len(verts)}")
    if bsize != lam:
        bad.append(f"|omega+(A)| = {bsize} != lambda = {lam}")
    if len(A0) != len(A1):
        bad.append(f"|A0| = {len(A0)} != |A1| = {len(A1)}")
    if len(verts) < delta:
        bad.append(f"|A| = {len(verts)} < delta = {delta}")
    prof.weakly_connected = is_weakly_connected(induced(X, verts))
    if not prof.weakly_connected:
        bad.append("X[A] is not weakly connected")

    ps = {(X.out_masks[v] & amask).bit_count() for v in verts if v < n}
    qs = {(X.out_masks[v] & amask).bit_count() for v in verts if v >= n}
    if len(ps) > 1 or len(qs) > 1:
        bad.append(f"internal degrees not constant on fibers: p in {ps}, q in {qs}")
    prof.p = min(ps) if ps else None
    prof.q = min(qs) if qs else None
    if prof.p is not None and prof.q is not None and not bad:
        identity = len(A0) * (len(spec.T0) - prof.p) + len(A1) * (len(spec.T1) - prof.q)
        if identity != lam:
            bad.append(f"boundary identity gives {identity} != lambda = {lam}")

    if len(A0) == 0:
        bad.append("A has no fiber-0 vertex")
        return prof
    g = A0.members[0]
    gi = inv[g]
    H0 = ElementSet.of(G, (t[x][gi] for x in A0))
    H1 = ElementSet.of(G, (t[y][gi] for y in A1))
    prof.H0, prof.H1 = H0, H1
    if not is_subgroup(G, H0):
        bad.append(f"translated H0 = {list(H0)} is not a subgroup")
    else:
        for t0 in spec.T0:
            if ElementSet.of(G, (t[t0][h] for h in H0)) == H1:
                prof.coset_rep = t0
                break
        else:
            bad.append(f"H1 = {list(H1)} is not t0*H0 for any t0 in T0")
    return prof


def superatoms_partition(fragments: Sequence[Fragment], vertex_count: int) -> tuple[bool, bool]:
    """``(pairwise disjoint, covers V)`` for one orientation's superatoms."""
    seen = 0
    disjoint = True
    for f in fragments:
        m = f.mask
        if seen & m:
            disjoint = False
        seen |= m
    return disjoint, seen == (1 << vertex_count) - 1


# -- reports -----------------------------------------------------------------


@dataclass
class ConnectivityReport:
    kappa: int
    lam: int
    delta_plus: int
    delta_minus: int
    delta: int
    super_lambda: bool | None
    oracle_confirmed: bool
    witnesses: list[Fragment] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "kappa": self.kappa,
            "lambda": self.lam,
            "delta": self.delta,
            "delta_plus": self.delta_plus,
            "delta_minus": self.delta_minus,
            "super_lambda": self.super_lambda,
            "oracle_confirmed": self.oracle_confirmed,
            "witnesses": [list(w.vertices) for w in self.witnesses],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def analyze(X: Digraph, oracle_threshold: int = DEFAULT_ORACLE_THRESHOLD,
            algebraic_super_lambda: bool | None = None) -> ConnectivityReport:
    """Flow-based kappa and lambda, plus the exhaustive super-lambda verdict when
    the digraph is small enough. Above the threshold the verdict falls back to
    ``algebraic_super_lambda`` and is marked unconfirmed."""
    dp, dm, d = min_degrees(X)
    kappa = vertex_connectivity(X)
    lam = arc_connectivity(X)
    if X.vertex_count <= oracle_threshold:
        o = SubsetOracle(X, oracle_threshold)
        idx = o.strict_fragment_masks(POSITIVE)
        witnesses = []
        if len(idx):
            idx = idx[o.sizes[idx] == o.sizes[idx].min()]
            witnesses = _to_fragments(idx, POSITIVE, o.lam)
        return ConnectivityReport(kappa, lam, dp, dm, d, not witnesses, True, witnesses)
    return ConnectivityReport(kappa, lam, dp, dm, d, algebraic_super_lambda, False)

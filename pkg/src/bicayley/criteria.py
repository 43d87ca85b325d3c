"""Decisions made from ``(G, T0, T1)`` alone, without looking at cuts.

* strong connectivity: both sets nonempty and ``T1^-1 T0`` generates ``G``;
* ``kappa = lambda = delta = min(|T0|, |T1|)`` for strongly connected ones;
* super-lambda, via five subgroup conditions (tags ``1a 1b 2a 2b 3``) that
  each exhibit a strict fragment ``H x {0} u t0H x {1}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .connectivity import boundary_size, mask_of
from .digraph import BiCayleySpec, build_bicayley, is_directed_cycle, is_symmetric_cycle
from .groups import (
    ElementSet,
    Subgroup,
    all_subgroups,
    generated_subgroup,
    inverse_set,
    is_subgroup,
    product_set,
)

CONDITIONS = ("1a", "1b", "2a", "2b", "3")


class CriteriaError(ValueError):
    """The theorem's hypotheses do not hold for this spec."""


@dataclass(frozen=True)
class ApplicabilityVerdict:
    strongly_connected: bool
    shape_exclusion: str | None  # None, "directed-cycle" or "symmetric-cycle"

    @property
    def theorem_applicable(self) -> bool:
        return self.strongly_connected and self.shape_exclusion is None


@dataclass(frozen=True)
class SuperLambdaWitness:
    condition: str
    H: Subgroup
    t0: int
    excluded_T0: tuple[int, ...]
    excluded_T1: tuple[int, ...]
    predicted_superatom: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "H": list(self.H.members),
            "t0": self.t0,
            "excluded_T0": list(self.excluded_T0),
            "excluded_T1": list(self.excluded_T1),
            "predicted_superatom": list(self.predicted_superatom),
        }


def strong_connectivity_criterion(spec: BiCayleySpec) -> bool:
    if len(spec.T0) == 0 or len(spec.T1) == 0:
        return False
    G = spec.group
    gens = product_set(G, inverse_set(G, spec.T1), spec.T0)
    return len(generated_subgroup(G, gens)) == G.order


def predict_connectivities(spec: BiCayleySpec) -> tuple[int, int, int] | None:
    """``(kappa, lambda, delta)``, or ``None`` if the digraph is not strongly connected."""
    if not strong_connectivity_criterion(spec):
        return None
    d = min(len(spec.T0), len(spec.T1))
    return d, d, d


def applicability(spec: BiCayleySpec) -> ApplicabilityVerdict:
    if not strong_connectivity_criterion(spec):
        return ApplicabilityVerdict(False, None)
    X = build_bicayley(spec)
    if is_directed_cycle(X):
        return ApplicabilityVerdict(True, "directed-cycle")
    if is_symmetric_cycle(X):
        return ApplicabilityVerdict(True, "symmetric-cycle")
    return ApplicabilityVerdict(True, None)


def predicted_superatom(spec: BiCayleySpec, H, t0: int) -> tuple[int, ...]:
    """Vertex ids of ``H x {0}  u  t0H x {1}``."""
    G = spec.group
    n = G.order
    row = G.product_table[t0]
    return tuple(sorted([h for h in H] + [n + row[h] for h in H]))


def _within(S: set[int], H: frozenset[int], strict: bool) -> bool:
    # paper-style "subset": strict mode also demands S != H
    return S <= H and not (strict and S == H)


def _candidates(spec: BiCayleySpec, H: frozenset[int], t0: int, strict: bool
                ) -> Iterator[tuple[str, tuple[int, ...], tuple[int, ...]]]:
    G = spec.group
    t, inv = G.product_table, G.inverse_table
    T0, T1 = spec.T0.members, spec.T1.members
    d = min(len(T0), len(T1))
    it0 = inv[t0]
    left0 = {x: t[it0][x] for x in T0}   # t0^-1 x
    right1 = {y: t[inv[y]][t0] for y in T1}  # y^-1 t0
    others0 = [x for x in T0 if x != t0]

    if len(H) == d:
        # 1a
        if set(right1.values()) <= H:
            for a in others0:
                if left0[a] not in H and _within({left0[x] for x in T0 if x != a}, H, strict):
                    yield "1a", (a,), ()
        # 2a
        if _within(set(left0.values()), H, strict):
            for b in T1:
                if right1[b] not in H and _within({right1[y] for y in T1 if y != b}, H, strict):
                    yield "2a", (), (b,)
    if d % 2 == 0 and len(H) == d // 2:
        # 1b
        if set(right1.values()) <= H:
            for a, a2 in itertools.combinations(others0, 2):
                if left0[a] in H or left0[a2] in H:
                    continue
                if _within({left0[x] for x in T0 if x not in (a, a2)}, H, strict):
                    yield "1b", (a, a2), ()
        # 2b
        if _within(set(left0.values()), H, strict):
            for b, b2 in itertools.combinations(T1, 2):
                if right1[b] in H or right1[b2] in H:
                    continue
                if _within({right1[y] for y in T1 if y not in (b, b2)}, H, strict):
                    yield "2b", (), (b, b2)
        # 3
        for a in others0:
            if left0[a] in H or not _within({left0[x] for x in T0 if x != a}, H, strict):
                continue
            for b in T1:
                if right1[b] not in H and _within({right1[y] for y in T1 if y != b}, H, strict):
                    yield "3", (a,), (b,)


def iter_witnesses(spec: BiCayleySpec, strict: bool = False) -> Iterator[SuperLambdaWitness]:
    """Every witness, in the fixed search order: subgroup size ``delta`` then
    ``delta/2``; subgroups by carrier; ``t0`` ascending; conditions in tag
    order; excluded elements ascending."""
    verdict = applicability(spec)
    if not verdict.theorem_applicable:
        reason = verdict.shape_exclusion or "not strongly connected"
        raise CriteriaError(f"{spec}: super-lambda characterization does not apply ({reason})")
    d = min(len(spec.T0), len(spec.T1))
    sizes = [d] + ([d // 2] if d % 2 == 0 else [])
    subs = all_subgroups(spec.group)
    for size in sizes:
        for H in subs:
            if len(H) != size:
                continue
            hset = frozenset(H.members)
            for t0 in spec.T0:
                found = sorted(_candidates(spec, hset, t0, strict),
                               key=lambda c: (CONDITIONS.index(c[0]), c[1], c[2]))
                for cond, ex0, ex1 in found:
                    yield SuperLambdaWitness(cond, H, t0, ex0, ex1,
                                             predicted_superatom(spec, H, t0))


def theorem39_find_witness(spec: BiCayleySpec, strict: bool = False) -> SuperLambdaWitness | None:
    """First witness of non-super-lambda, or ``None`` if the digraph is super-lambda."""
    return next(iter_witnesses(spec, strict), None)


def is_super_lambda_algebraic(spec: BiCayleySpec, strict: bool = False) -> bool:
    return theorem39_find_witness(spec, strict) is None


def validate_witness(spec: BiCayleySpec, w: SuperLambdaWitness, strict: bool = False) -> bool:
    """Re-derive every clause of ``w`` element by element, then confirm on the
    digraph that the predicted set is a strict fragment with boundary ``delta``."""
    G = spec.group
    T0, T1 = set(spec.T0), set(spec.T1)
    d = min(len(T0), len(T1))
    if w.condition not in CONDITIONS:
        return False
    half = w.condition in ("1b", "2b", "3")
    if half and d % 2:
        return False
    want = d // 2 if half else d
    H = set(w.H.members)
    if len(H) != want or not is_subgroup(G, ElementSet.of(G, H)):
        return False
    if w.t0 not in T0:
        return False
    n_ex0 = {"1a": 1, "1b": 2, "2a": 0, "2b": 0, "3": 1}[w.condition]
    n_ex1 = {"1a": 0, "1b": 0, "2a": 1, "2b": 2, "3": 1}[w.condition]
    ex0, ex1 = list(w.excluded_T0), list(w.excluded_T1)
    if len(ex0) != n_ex0 or len(set(ex0)) != n_ex0 or not set(ex0) <= T0 - {w.t0}:
        return False
    if len(ex1) != n_ex1 or len(set(ex1)) != n_ex1 or not set(ex1) <= T1:
        return False

    def m(a, b):
        return G.product_table[a][b]

    def i(a):
        return G.inverse_table[a]

    def contained(S):
        S = set(S)
        return S.issubset(H) and not (strict and S == H)

    t0 = w.t0
    if w.condition in ("1a", "1b"):
        if not {m(i(y), t0) for y in T1}.issubset(H):
            return False
    else:
        if not contained(m(i(y), t0) for y in T1 if y not in ex1):
            return False
        if any(m(i(y), t0) in H for y in ex1):
            return False
    if w.condition in ("2a", "2b"):
        if not contained(m(i(t0), x) for x in T0):
            return False
    else:
        if not contained(m(i(t0), x) for x in T0 if x not in ex0):
            return False
        if any(m(i(t0), x) in H for x in ex0):
            return False

    A = predicted_superatom(spec, w.H, t0)
    if tuple(A) != tuple(w.predicted_superatom):
        return False
    X = build_bicayley(spec)
    if not 2 <= len(A) <= X.vertex_count - 2:
        return False
    return boundary_size(X, mask_of(A)) == d

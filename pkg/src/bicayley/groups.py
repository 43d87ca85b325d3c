"""Finite groups as explicit multiplication tables.

Elements are the integers ``0..n-1`` and element ``0`` is always the identity.
Everything here is immutable; subsets of a group are canonical sorted tuples so
that set equality is plain tuple equality.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

__all__ = [
    "GroupError",
    "FiniteGroup",
    "ElementSet",
    "Subgroup",
    "make_group",
    "parse_group",
    "multiply",
    "inverse",
    "product_set",
    "inverse_set",
    "generated_subgroup",
    "all_subgroups",
    "is_subgroup",
    "left_cosets",
    "element_order",
]

DEFAULT_SUBGROUP_BOUND = 64
MAX_SYMMETRIC_DEGREE = 5


class GroupError(ValueError):
    """Invalid group construction or invalid element arguments."""


@dataclass(frozen=True)
class FiniteGroup:
    """A group given by its full multiplication table.

    ``product_table[a][b]`` is the id of ``a * b``.  Prefer :func:`make_group`
    or :meth:`from_table` over calling this directly; the constructor checks
    the shape of the data but not the group axioms.
    """

    product_table: tuple[tuple[int, ...], ...]
    label: str = "G"
    inverse_table: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        n = len(self.product_table)
        if n == 0:
            raise GroupError("group must have at least one element")
        if any(len(row) != n for row in self.product_table):
            raise GroupError("product table must be square")
        inv = []
        for a, row in enumerate(self.product_table):
            try:
                inv.append(row.index(0))
            except ValueError:
                raise GroupError(f"inverse axiom fails: element {a} has no inverse") from None
        object.__setattr__(self, "inverse_table", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.product_table)

    @property
    def identity_id(self) -> int:
        return 0

    @property
    def elements(self) -> range:
        return range(self.order)

    def __hash__(self):
        return hash((self.label, self.order))

    def mul(self, a: int, b: int) -> int:
        return self.product_table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse_table[a]

    def subset(self, ids: Iterable[int]) -> ElementSet:
        return ElementSet.of(self, ids)

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], label: str = "G") -> FiniteGroup:
        """Validate an arbitrary table and relabel it so the identity is ``0``."""
        n = len(table)
        if n == 0:
            raise GroupError("group must have at least one element")
        rows = [list(map(int, row)) for row in table]
        if any(len(row) != n for row in rows):
            raise GroupError("product table must be square")
        for a, row in enumerate(rows):
            for b, c in enumerate(row):
                if not 0 <= c < n:
                    raise GroupError(f"closure fails: {a}*{b} = {c} is not an element")
        ident = None
        for e in range(n):
            if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise GroupError("identity axiom fails: no two-sided identity element")
        for a in range(n):
            if not any(rows[a][b] == ident and rows[b][a] == ident for b in range(n)):
                raise GroupError(f"inverse axiom fails: element {a} has no inverse")
        for a in range(n):
            ra = rows[a]
            for b in range(n):
                ab = ra[b]
                rab, rb = rows[ab], rows[b]
                for c in range(n):
                    if rab[c] != ra[rb[c]]:
                        raise GroupError(
                            f"associativity fails: ({a}*{b})*{c} != {a}*({b}*{c})"
                        )
        # identity goes to 0, the other ids keep their relative order
        old = [ident] + [x for x in range(n) if x != ident]
        new_of = {o: i for i, o in enumerate(old)}
        canon = tuple(
            tuple(new_of[rows[old[i]][old[j]]] for j in range(n)) for i in range(n)
        )
        return cls(canon, label)


@dataclass(frozen=True)
class ElementSet:
    """A duplicate-free, sorted set of element ids of one group."""

    group: FiniteGroup = field(repr=False, hash=False)
    members: tuple[int, ...]

    @classmethod
    def of(cls, group: FiniteGroup, ids: Iterable[int]) -> ElementSet:
        ids = sorted(set(int(i) for i in ids))
        for i in ids:
            _check_id(group, i)
        return cls(group, tuple(ids))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x):
        return x in self.members

    def as_set(self) -> frozenset[int]:
        return frozenset(self.members)


@dataclass(frozen=True)
class Subgroup:
    carrier: ElementSet

    @property
    def group(self) -> FiniteGroup:
        return self.carrier.group

    @property
    def members(self) -> tuple[int, ...]:
        return self.carrier.members

    def __len__(self):
        return len(self.carrier)

    def __iter__(self):
        return iter(self.carrier)

    def __contains__(self, x):
        return x in self.carrier


def _check_id(group: FiniteGroup, a) -> None:
    if not isinstance(a, int) or not 0 <= a < group.order:
        raise GroupError(f"element id {a!r} out of range for group of order {group.order}")


def _same_group(*sets: ElementSet) -> FiniteGroup:
    g = sets[0].group
    for s in sets[1:]:
        if s.group is not g and s.group != g:
            raise GroupError("element sets belong to different groups")
    return g


def multiply(g: FiniteGroup, a: int, b: int) -> int:
    _check_id(g, a)
    _check_id(g, b)
    return g.product_table[a][b]


def inverse(g: FiniteGroup, a: int) -> int:
    _check_id(g, a)
    return g.inverse_table[a]


def element_order(g: FiniteGroup, a: int) -> int:
    _check_id(g, a)
    k, x = 1, a
    while x != 0:
        x = g.product_table[x][a]
        k += 1
    return k


def product_set(g: FiniteGroup, A: ElementSet, B: ElementSet) -> ElementSet:
    if _same_group(A, B) != g:
        raise GroupError("element sets belong to a different group")
    t = g.product_table
    return ElementSet.of(g, {t[a][b] for a in A for b in B})


def inverse_set(g: FiniteGroup, A: ElementSet) -> ElementSet:
    if _same_group(A) != g:
        raise GroupError("element set belongs to a different group")
    return ElementSet.of(g, (g.inverse_table[a] for a in A))


def _closure(g: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    t = g.product_table
    gens = set(gens) - {0}
    elems = {0}
    frontier = [0]
    # right-multiplying by generators is enough in a finite group
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = t[x][s]
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


def generated_subgroup(g: FiniteGroup, S: ElementSet | Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``S``; the empty set generates ``{identity}``."""
    if not isinstance(S, ElementSet):
        S = ElementSet.of(g, S)
    return Subgroup(ElementSet.of(g, _closure(g, S.members)))


def is_subgroup(g: FiniteGroup, S: ElementSet | Iterable[int]) -> bool:
    members = S.as_set() if isinstance(S, ElementSet) else frozenset(S)
    if 0 not in members:
        return False
    t, inv = g.product_table, g.inverse_table
    for a in members:
        if inv[a] not in members:
            return False
        row = t[a]
        for b in members:
            if row[b] not in members:
                return False
    return True


def all_subgroups(g: FiniteGroup, bound: int = DEFAULT_SUBGROUP_BOUND) -> list[Subgroup]:
    """Every subgroup of ``g``, sorted by size and then by carrier.

    Starts from the cyclic subgroups and closes under joins until nothing new
    appears.
    """
    if g.order > bound:
        raise GroupError(f"group order {g.order} exceeds subgroup enumeration bound {bound}")
    return list(_subgroups_cached(g))


_SUBGROUP_CACHE: dict[tuple, tuple[Subgroup, ...]] = {}


def _subgroups_cached(g: FiniteGroup) -> tuple[Subgroup, ...]:
    key = (g.label, g.product_table)
    hit = _SUBGROUP_CACHE.get(key)
    if hit is not None:
        return hit
    found = {_closure(g, [a]) for a in g.elements}
    pending = list(found)
    while pending:
        h = pending.pop()
        for k in list(found):
            if h <= k or k <= h:
                continue
            j = _closure(g, h | k)
            if j not in found:
                found.add(j)
                pending.append(j)
    ordered = sorted((tuple(sorted(s)) for s in found), key=lambda c: (len(c), c))
    result = tuple(Subgroup(ElementSet(g, c)) for c in ordered)
    if len(_SUBGROUP_CACHE) > 256:
        _SUBGROUP_CACHE.clear()
    _SUBGROUP_CACHE[key] = result
    return result


def left_cosets(g: FiniteGroup, H: Subgroup) -> list[ElementSet]:
    """The left cosets ``xH`` in order of their smallest element."""
    t = g.product_table
    seen: set[int] = set()
    cells = []
    for x in g.elements:
        if x in seen:
            continue
        cell = ElementSet.of(g, (t[x][h] for h in H))
        seen.update(cell.members)
        cells.append(cell)
    return cells


# -- constructors ------------------------------------------------------------


def _cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), f"Z{n}")


def _dihedral(n: int) -> FiniteGroup:
    # id j*n + i encodes r^i s^j; rotations first
    if n < 3:
        raise GroupError("dihedral group needs n >= 3")

    def mul(x, y):
        a, b = x % n, x // n
        c, d = y % n, y // n
        i = (a + (c if b == 0 else -c)) % n
        return ((b + d) % 2) * n + i

    m = 2 * n
    return FiniteGroup(tuple(tuple(mul(x, y) for y in range(m)) for x in range(m)), f"D{n}")


def _symmetric(k: int) -> FiniteGroup:
    # product is composition: (p*q)(x) = p(q(x)); identity permutation comes first
    if k < 1 or k > MAX_SYMMETRIC_DEGREE:
        raise GroupError(f"symmetric group needs 1 <= k <= {MAX_SYMMETRIC_DEGREE}")
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(index[tuple(p[q[x]] for x in range(k))] for q in perms) for p in perms
    )
    return FiniteGroup(table, f"S{k}")


def _direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    m = B.order
    ta, tb = A.product_table, B.product_table
    table = tuple(
        tuple(ta[x // m][y // m] * m + tb[x % m][y % m] for y in range(A.order * m))
        for x in range(A.order * m)
    )
    return FiniteGroup(table, f"{A.label}x{B.label}")


def load_table(path: str | Path) -> FiniteGroup:
    doc = json.loads(Path(path).read_text())
    table = doc.get("table")
    if table is None:
        raise GroupError(f"{path}: missing 'table'")
    if "order" in doc and doc["order"] != len(table):
        raise GroupError(f"{path}: order {doc['order']} does not match table size {len(table)}")
    return FiniteGroup.from_table(table, doc.get("label", Path(path).stem))


def make_group(kind: str, *params) -> FiniteGroup:
    """Build a group from a family name.

    ``kind`` is one of ``cyclic``, ``dihedral``, ``symmetric``, ``product``
    (params are two or more groups) or ``table`` (param is a table or a path).
    """
    if kind == "cyclic":
        (n,) = params
        return _cyclic(int(n))
    if kind == "dihedral":
        (n,) = params
        return _dihedral(int(n))
    if kind == "symmetric":
        (k,) = params
        return _symmetric(int(k))
    if kind == "product":
        if len(params) < 2:
            raise GroupError("direct product needs at least two factors")
        out = params[0]
        for f in params[1:]:
            out = _direct_product(out, f)
        return out
    if kind == "table":
        (src,) = params
        if isinstance(src, (str, Path)):
            return load_table(src)
        return FiniteGroup.from_table(src)
    raise GroupError(f"unknown group family {kind!r}")


def parse_group(descriptor: str) -> FiniteGroup:
    """Parse ``cyclic:6``, ``dihedral:4``, ``symmetric:3``, ``table:<path>`` or
    ``product:cyclic:2,cyclic:4`` (factors folded from the left)."""
    kind, _, rest = descriptor.strip().partition(":")
    if not rest:
        raise GroupError(f"bad group descriptor {descriptor!r}")
    if kind == "product":
        return make_group("product", *(parse_group(p) for p in rest.split(",")))
    if kind == "table":
        return make_group("table", rest)
    try:
        n = int(rest)
    except ValueError:
        raise GroupError(f"bad group descriptor {descriptor!r}") from None
    return make_group(kind, n)

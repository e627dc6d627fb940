"""Finite groups as multiplication tables over element indices 0..n-1.

A `Group` stores an n-by-n table whose (i, j) entry is the index of the
product e_i * e_j.  Validated groups always have the identity at index 0.
Groups are immutable after construction; every operation here is a pure
function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    BadParams,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotLatinSquare,
    NotNormal,
    NotPermutation,
    OrderCap,
)

DEFAULT_ORDER_CAP = 65536
SUBGROUP_ENUM_CAP = 128
FULL_ASSOC_LIMIT = 512


class Group:
    """A finite group given by its multiplication table; identity is index 0."""

    __slots__ = (
        "order",
        "table",
        "names",
        "_rows",
        "_inv",
        "_orders",
        "_classes",
        "_class_id",
        "_gens",
    )

    def __init__(self, table: np.ndarray, names: Optional[Sequence[str]] = None):
        # Trusted constructor: callers guarantee group axioms and identity at 0.
        table = np.ascontiguousarray(table, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise BadParams(f"table must be square, got shape {table.shape}")
        self.order = int(table.shape[0])
        table.flags.writeable = False
        self.table = table
        self.names = tuple(names) if names is not None else None
        if self.names is not None and len(self.names) != self.order:
            raise BadParams("names length does not match order")
        self._rows = None
        self._inv = None
        self._orders = None
        self._classes = None
        self._class_id = None
        self._gens = None

    # -- element arithmetic ------------------------------------------------

    @property
    def rows(self) -> list:
        """Table as a list of Python lists, for scalar-heavy loops."""
        if self._rows is None:
            self._rows = self.table.tolist()
        return self._rows

    @property
    def inverses(self) -> np.ndarray:
        if self._inv is None:
            # identity is 0, so T[i, j] == 0 exactly when j is i's inverse
            r, c = np.nonzero(self.table == 0)
            inv = np.empty(self.order, dtype=np.int32)
            inv[r] = c
            inv.flags.writeable = False
            self._inv = inv
        return self._inv

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def conj(self, a: int, g: int) -> int:
        """g^-1 * a * g."""
        r = self.rows
        return r[r[self.inv(g)][a]][g]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        acc, row = 0, self.rows
        base = a
        while k:
            if k & 1:
                acc = row[acc][base]
            base = row[base][base]
            k >>= 1
        return acc

    def order_of(self, a: int) -> int:
        x, n, row = a, 1, self.rows
        while x != 0:
            x = row[x][a]
            n += 1
        return n

    def element_orders(self) -> list:
        if self._orders is None:
            self._orders = [self.order_of(a) for a in range(self.order)]
        return self._orders

    def exponent(self) -> int:
        e = 1
        for k in self.element_orders():
            e = e * k // gcd(e, k)
        return e

    def name_of(self, a: int) -> str:
        return self.names[a] if self.names is not None else str(a)

    # -- global structure --------------------------------------------------

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def conjugacy_classes(self) -> list:
        """Conjugation orbits as sorted index arrays, ordered by least member."""
        if self._classes is None:
            T, inv, n = self.table, self.inverses, self.order
            g = np.arange(n)
            cid = np.full(n, -1, dtype=np.int32)
            classes = []
            for i in range(n):
                if cid[i] >= 0:
                    continue
                members = np.unique(T[inv, T[i, g]])
                cid[members] = len(classes)
                classes.append(members)
            cid.flags.writeable = False
            self._classes = classes
            self._class_id = cid
        return self._classes

    def class_ids(self) -> np.ndarray:
        self.conjugacy_classes()
        return self._class_id

    def centralizer(self, xs: Iterable[int]) -> "Subgroup":
        T = self.table
        mask = np.ones(self.order, dtype=bool)
        for x in xs:
            mask &= T[:, x] == T[x, :]
        return Subgroup(self, np.nonzero(mask)[0])

    def center(self) -> "Subgroup":
        return self.centralizer(range(self.order))

    def closure(self, seed: Iterable[int]) -> np.ndarray:
        """Smallest subgroup containing `seed`, as a sorted index array."""
        mem = np.unique(np.asarray([0, *seed], dtype=np.int32))
        while True:
            prod = np.unique(self.table[np.ix_(mem, mem)])
            if prod.size == mem.size:
                return prod
            mem = prod

    def subgroup(self, seed: Iterable[int]) -> "Subgroup":
        return Subgroup(self, self.closure(seed))

    def generating_sequence(self) -> list:
        """Greedy canonical generators: lowest index not yet generated."""
        if self._gens is None:
            gens: list = []
            mem = np.array([0], dtype=np.int32)
            while mem.size < self.order:
                free = np.setdiff1d(np.arange(self.order, dtype=np.int32), mem)
                g = int(free[0])
                gens.append(g)
                mem = self.closure([*mem.tolist(), g])
            self._gens = gens
        return list(self._gens)

    def cyclic_subgroups(self) -> list:
        """All distinct cyclic subgroups, ordered by least generator index."""
        seen = {}
        row = self.rows
        for g in range(self.order):
            mem = [0]
            x = g
            while x != 0:
                mem.append(x)
                x = row[x][g]
            key = tuple(sorted(mem))
            if key not in seen:
                seen[key] = Subgroup(self, np.asarray(key, dtype=np.int32))
        return list(seen.values())

    def all_subgroups(self, cap: int = SUBGROUP_ENUM_CAP) -> list:
        """Every subgroup, each exactly once, ordered by (order, members)."""
        if self.order > cap:
            raise OrderCap(f"all_subgroups: order {self.order} exceeds cap {cap}")
        cyclics = [tuple(s.members.tolist()) for s in self.cyclic_subgroups()]
        found = {c: np.asarray(c, dtype=np.int32) for c in cyclics}
        frontier = list(found)
        while frontier:
            fresh = []
            for hk in frontier:
                hset = set(hk)
                for ck in cyclics:
                    if hset.issuperset(ck):
                        continue
                    mem = self.closure(hk + ck)
                    key = tuple(mem.tolist())
                    if key not in found:
                        found[key] = mem
                        fresh.append(key)
            frontier = fresh
        keys = sorted(found, key=lambda k: (len(k), k))
        return [Subgroup(self, found[k]) for k in keys]

    def normalizer(self, sub: "Subgroup") -> "Subgroup":
        T, inv = self.table, self.inverses
        mem = sub.members
        keep = []
        memset = frozenset(mem.tolist())
        for g in range(self.order):
            conj = T[inv[g], T[mem, g]]
            if frozenset(conj.tolist()) == memset:
                keep.append(g)
        return Subgroup(self, np.asarray(keep, dtype=np.int32))

    def is_normal(self, sub: "Subgroup") -> bool:
        T, inv = self.table, self.inverses
        mem = sub.members
        memset = frozenset(mem.tolist())
        for g in range(self.order):
            if not frozenset(T[inv[g], T[mem, g]].tolist()) <= memset:
                return False
        return True

    def sylow(self, p: int) -> "Subgroup":
        """One Sylow p-subgroup, by greedy normalizer extension."""
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise BadParams(f"p must be prime, got {p}")
        full = 1
        n = self.order
        while n % p == 0:
            full *= p
            n //= p
        orders = self.element_orders()
        p_elems = [g for g in range(self.order) if _is_power_of(orders[g], p)]
        if full == 1:
            return Subgroup(self, np.array([0], dtype=np.int32))
        start = max(p_elems, key=lambda g: (orders[g], -g))
        mem = self.closure([start])
        while mem.size < full:
            norm = self.normalizer(Subgroup(self, mem)).members
            inside = set(mem.tolist())
            ext = next(g for g in norm.tolist() if g not in inside and _is_power_of(orders[g], p))
            mem = self.closure([*mem.tolist(), ext])
        return Subgroup(self, mem)

    def o_p(self, p: int) -> "Subgroup":
        """Largest normal p-subgroup: intersection of all Sylow p-conjugates."""
        P = self.sylow(p).members
        T, inv = self.table, self.inverses
        keep = np.zeros(self.order, dtype=bool)
        keep[P] = True
        for g in range(self.order):
            conj = np.zeros(self.order, dtype=bool)
            conj[T[inv[g], T[P, g]]] = True
            keep &= conj
            if keep.sum() == 1:
                break
        return Subgroup(self, np.nonzero(keep)[0])

    def normal_p_complement(self, p: int) -> Optional["Subgroup"]:
        """The set of p'-elements, when it happens to form a subgroup."""
        orders = self.element_orders()
        mem = np.asarray([g for g in range(self.order) if gcd(orders[g], p) == 1], dtype=np.int32)
        prods = self.table[np.ix_(mem, mem)]
        ok = np.zeros(self.order, dtype=bool)
        ok[mem] = True
        if not ok[prods].all():
            return None
        return Subgroup(self, mem)

    def commutator_subgroup(self) -> "Subgroup":
        T, inv = self.table, self.inverses
        comms = np.unique(T[T[np.ix_(inv, inv)], T])
        return Subgroup(self, self.closure(comms))

    def is_nilpotent(self) -> bool:
        n, primes = self.order, []
        m = n
        d = 2
        while d * d <= m:
            if m % d == 0:
                primes.append(d)
                while m % d == 0:
                    m //= d
            d += 1
        if m > 1:
            primes.append(m)
        return all(self.is_normal(self.sylow(p)) for p in primes)

    def quotient(self, sub: "Subgroup") -> tuple:
        """Coset group G/N plus the canonical projection map."""
        if not self.is_normal(sub):
            raise NotNormal("quotient by a non-normal subgroup")
        T = self.table
        nmem = sub.members
        coset_id = np.full(self.order, -1, dtype=np.int32)
        reps = []
        for i in range(self.order):
            if coset_id[i] < 0:
                coset_id[T[i, nmem]] = len(reps)
                reps.append(i)
        reps = np.asarray(reps, dtype=np.int32)
        qtable = coset_id[T[np.ix_(reps, reps)]]
        names = None
        if self.names is not None:
            names = [f"[{self.names[r]}]" for r in reps.tolist()]
        q = Group(qtable, names)
        return q, GroupMap(self, q, coset_id)

    def __repr__(self):
        return f"Group(order={self.order})"


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


@dataclass(frozen=True)
class Subgroup:
    """A subset of a parent group's indices, closed under product and inverse."""

    parent: Group
    members: np.ndarray

    def __post_init__(self):
        mem = np.unique(np.asarray(self.members, dtype=np.int32))
        mem.flags.writeable = False
        object.__setattr__(self, "members", mem)

    @property
    def order(self) -> int:
        return int(self.members.size)

    def contains(self, i: int) -> bool:
        j = int(np.searchsorted(self.members, i))
        return j < self.members.size and int(self.members[j]) == i

    def contains_all(self, xs) -> bool:
        return all(self.contains(int(x)) for x in np.asarray(xs).ravel())

    def is_normal(self) -> bool:
        return self.parent.is_normal(self)

    def check(self) -> None:
        """Assert the subgroup invariants: identity, closure, inverses, Lagrange."""
        if not self.contains(0):
            raise BadParams("subgroup misses the identity")
        prods = self.parent.table[np.ix_(self.members, self.members)]
        if not self.contains_all(np.unique(prods)):
            raise BadParams("subgroup not closed under products")
        if not self.contains_all(self.parent.inverses[self.members]):
            raise BadParams("subgroup not closed under inverses")
        if self.parent.order % self.order != 0:
            raise BadParams("subgroup order does not divide group order")

    def as_group(self) -> tuple:
        """Materialize as a standalone Group; returns (group, member list)."""
        mem = self.members
        pos = np.full(self.parent.order, -1, dtype=np.int32)
        pos[mem] = np.arange(mem.size, dtype=np.int32)
        table = pos[self.parent.table[np.ix_(mem, mem)]]
        names = None
        if self.parent.names is not None:
            names = [self.parent.names[i] for i in mem.tolist()]
        return Group(table, names), mem.tolist()

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.parent is other.parent
            and np.array_equal(self.members, other.members)
        )

    def __hash__(self):
        return hash((id(self.parent), self.members.tobytes()))

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent.order})"


class GroupMap:
    """A map between groups given by an image list, one entry per source element."""

    __slots__ = ("source", "target", "images", "_bytes")

    def __init__(self, source: Group, target: Group, images):
        self.source = source
        self.target = target
        img = np.ascontiguousarray(images, dtype=np.int32)
        if img.shape != (source.order,):
            raise BadParams("image list length does not match source order")
        img.flags.writeable = False
        self.images = img
        self._bytes = img.tobytes()

    def apply(self, a: int) -> int:
        return int(self.images[a])

    def then(self, other: "GroupMap") -> "GroupMap":
        """Composition: apply self first, then `other`."""
        if other.source is not self.target:
            raise BadParams("composition domains do not match")
        return GroupMap(self.source, other.target, other.images[self.images])

    def is_bijective(self) -> bool:
        return bool(np.unique(self.images).size == self.source.order)

    def inverse(self) -> "GroupMap":
        if self.source.order != self.target.order or not self.is_bijective():
            raise NotPermutation("map is not invertible")
        inv = np.empty(self.source.order, dtype=np.int32)
        inv[self.images] = np.arange(self.source.order, dtype=np.int32)
        return GroupMap(self.target, self.source, inv)

    def is_homomorphism(self) -> bool:
        f, ts, tt = self.images, self.source.table, self.target.table
        return bool(np.array_equal(f[ts], tt[np.ix_(f, f)]))

    def is_automorphism(self) -> bool:
        return self.source is self.target and self.is_bijective() and self.is_homomorphism()

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.source.order)))

    def map_order(self) -> int:
        """Order as a permutation (lcm of cycle lengths)."""
        img = self.images
        n = img.size
        seen = np.zeros(n, dtype=bool)
        out = 1
        for i in range(n):
            if seen[i]:
                continue
            ln, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = int(img[j])
                ln += 1
            out = out * ln // gcd(out, ln)
        return out

    def fixed_points(self) -> np.ndarray:
        return np.nonzero(self.images == np.arange(self.source.order))[0]

    def __eq__(self, other):
        return (
            isinstance(other, GroupMap)
            and self.source is other.source
            and self.target is other.target
            and self._bytes == other._bytes
        )

    def __hash__(self):
        return hash(self._bytes)

    def __repr__(self):
        return f"GroupMap({self.source.order}->{self.target.order})"


def identity_map(g: Group) -> GroupMap:
    return GroupMap(g, g, np.arange(g.order, dtype=np.int32))


class Action:
    """A homomorphism from a group H into the automorphisms of a group N."""

    __slots__ = ("actor", "acted", "maps")

    def __init__(self, actor: Group, acted: Group, maps: Sequence[np.ndarray], check: bool = True):
        self.actor = actor
        self.acted = acted
        self.maps = [np.ascontiguousarray(m, dtype=np.int32) for m in maps]
        if len(self.maps) != actor.order:
            raise BadParams("need one automorphism per actor element")
        if check:
            self.check()

    def check(self) -> None:
        if not np.array_equal(self.maps[0], np.arange(self.acted.order)):
            raise BadParams("identity must act trivially")
        for m in self.maps:
            gm = GroupMap(self.acted, self.acted, m)
            if not gm.is_automorphism():
                raise BadParams("actor element does not act as an automorphism")
        th = self.actor.rows
        for h1 in range(self.actor.order):
            for h2 in range(self.actor.order):
                # act(h1 h2) must equal act(h1) after act(h2):
                # (act(h1)∘act(h2))(x) = act(h1)(act(h2)(x))
                lhs = self.maps[th[h1][h2]]
                rhs = self.maps[h1][self.maps[h2]]
                if not np.array_equal(lhs, rhs):
                    raise BadParams(f"action is not a homomorphism at ({h1},{h2})")

    def apply(self, h: int, n: int) -> int:
        return int(self.maps[h][n])


def trivial_action(actor: Group, acted: Group) -> Action:
    ident = np.arange(acted.order, dtype=np.int32)
    return Action(actor, acted, [ident] * actor.order, check=False)


# -- validation of raw tables ----------------------------------------------


def validate_group(
    table,
    names: Optional[Sequence[str]] = None,
    *,
    order: Optional[int] = None,
    assoc_limit: int = FULL_ASSOC_LIMIT,
) -> Group:
    """Validate a raw multiplication table and return a Group.

    The identity is located and relabeled to index 0.  Checks: Latin square,
    identity, two-sided inverses, associativity (full O(n^3) for n <= assoc
    limit, generator-based Light test above it).
    """
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise NotLatinSquare(f"table must be square, got shape {t.shape}")
    n = int(t.shape[0])
    if order is not None and order != n:
        raise BadParams(f"declared order {order} does not match table size {n}")
    if t.min(initial=0) < 0 or t.max(initial=0) >= n:
        raise NotLatinSquare("table entries out of range")
    ident = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(t[i]), ident):
            raise NotLatinSquare(f"row {i} is not a permutation")
        if not np.array_equal(np.sort(t[:, i]), ident):
            raise NotLatinSquare(f"column {i} is not a permutation")
    e = -1
    for i in range(n):
        if np.array_equal(t[i], ident) and np.array_equal(t[:, i], ident):
            e = i
            break
    if e < 0:
        raise NoIdentity("no two-sided identity element")
    if e != 0:
        perm = np.arange(n)
        perm[0], perm[e] = e, 0
        t = perm[t[np.ix_(perm, perm)]]
        if names is not None:
            names = list(names)
            names[0], names[e] = names[e], names[0]
    for a in range(n):
        b = int(np.nonzero(t[a] == 0)[0][0])
        if t[b, a] != 0:
            raise NoInverse(f"element {a} has no two-sided inverse")
    if n <= assoc_limit:
        for a in range(n):
            lhs = t[t[a], :]          # (a*b)*c over (b, c)
            rhs = t[a][t]             # a*(b*c) over (b, c)
            if not np.array_equal(lhs, rhs):
                b, c = np.argwhere(lhs != rhs)[0]
                raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")
    else:
        # Light's test: checking (x*a)*y == x*(a*y) for generators a suffices.
        g = Group(t.astype(np.int32), None)
        for a in g.generating_sequence():
            lhs = t[t[:, a], :]
            rhs = t[:, t[a, :]]
            if not np.array_equal(lhs, rhs):
                x, y = np.argwhere(lhs != rhs)[0]
                raise NotAssociative(f"({x}*{a})*{y} != {x}*({a}*{y})")
    return Group(t.astype(np.int32), names)

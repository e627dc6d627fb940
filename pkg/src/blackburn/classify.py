"""Structural classifiers: Dedekind groups, Q-groups, R(G), Blackburn groups.

R(G) is the intersection of all non-normal subgroups; it is "defined" when a
non-normal subgroup exists.  A group is a Blackburn group when R(G) is
defined and nontrivial; for finite groups R(G) is then a cyclic p-group.

Every subgroup is generated by cyclic subgroups and a join of normal
subgroups is normal, so each non-normal subgroup contains a non-normal
cyclic subgroup.  Hence R(G) equals the intersection of the non-normal
cyclic subgroups, which is what `r_of` computes; the full-lattice variant
is kept as a test oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .catalog import cyclic, direct_product, elementary_abelian, generalized_quaternion
from .core import Group, Subgroup, SUBGROUP_ENUM_CAP
from .errors import (
    NoFormMatched,
    NotBlackburn2Group,
    OrderCap,
    PreconditionFailed,
    TrichotomyViolated,
)

UNDEFINED = "undefined"
TRIVIAL = "trivial"
NONTRIVIAL = "nontrivial"


@dataclass(frozen=True)
class RStatus:
    """Status of R(G): undefined (Dedekind), trivial, or a nontrivial subgroup."""

    tag: str
    subgroup: Optional[Subgroup]

    @property
    def order(self) -> int:
        return self.subgroup.order if self.subgroup is not None else 0


def is_dedekind(g: Group) -> bool:
    """True when every subgroup is normal; cyclic subgroups suffice."""
    return all(s.is_normal() for s in g.cyclic_subgroups())


def r_of(g: Group) -> RStatus:
    """R(G) via non-normal cyclic subgroups."""
    non_normal = [s for s in g.cyclic_subgroups() if not s.is_normal()]
    return _intersect_status(g, non_normal)


def r_of_lattice(g: Group, cap: int = SUBGROUP_ENUM_CAP) -> RStatus:
    """R(G) via the full subgroup lattice; oracle for r_of."""
    non_normal = [s for s in g.all_subgroups(cap) if not s.is_normal()]
    return _intersect_status(g, non_normal)


def _intersect_status(g: Group, non_normal: list) -> RStatus:
    if not non_normal:
        return RStatus(UNDEFINED, None)
    keep = np.ones(g.order, dtype=bool)
    for s in non_normal:
        mask = np.zeros(g.order, dtype=bool)
        mask[s.members] = True
        keep &= mask
    sub = Subgroup(g, np.nonzero(keep)[0])
    return RStatus(TRIVIAL if sub.order == 1 else NONTRIVIAL, sub)


def is_blackburn(g: Group) -> bool:
    """True when R(G) is defined and nontrivial; R(G) is then a cyclic p-group."""
    status = r_of(g)
    if status.tag != NONTRIVIAL:
        return False
    r = status.subgroup
    k = r.order
    if not any(g.order_of(x) == k for x in r.members.tolist()):
        raise TrichotomyViolated("R(G) is nontrivial but not cyclic")
    if len(_prime_factors(k)) != 1:
        raise TrichotomyViolated("R(G) is nontrivial but not of prime-power order")
    return True


def blackburn_prime(g: Group) -> int:
    """The prime p for which R(G) is a cyclic p-group."""
    status = r_of(g)
    if status.tag != NONTRIVIAL:
        raise PreconditionFailed("R(G) is not nontrivial")
    return _prime_factors(status.subgroup.order)[0]


def _prime_factors(n: int) -> list:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- Q-groups -----------------------------------------------------------------


@dataclass(frozen=True)
class QGroupWitness:
    a: Subgroup
    b: int


def index2_subgroups(g: Group) -> list:
    """All index-2 subgroups, via the quotient by squares and commutators."""
    seeds = [g.mul(x, x) for x in range(g.order)]
    seeds += g.commutator_subgroup().members.tolist()
    m = g.subgroup(seeds)
    if g.order // m.order == 1:
        return []
    q, proj = g.quotient(m)
    # q is elementary abelian of order 2^r; its index-2 subgroups are the
    # kernels of the nonzero functionals on the coordinate space
    basis = q.generating_sequence()
    r = len(basis)
    coords = np.zeros(q.order, dtype=np.int64)
    done = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for i, b in enumerate(basis):
                y = q.mul(x, b)
                if y not in done:
                    coords[y] = coords[x] ^ (1 << i)
                    done.add(y)
                    nxt.append(y)
        frontier = nxt
    out = []
    for c in range(1, 1 << r):
        inside = np.asarray([bin(int(coords[x]) & c).count("1") % 2 == 0 for x in range(q.order)])
        members = np.nonzero(inside[proj.images])[0]
        out.append(Subgroup(g, members))
    return out


def q_group_witness(g: Group) -> Optional[QGroupWitness]:
    """A pair (A, b): abelian non-elementary-abelian index-2 subgroup A and an
    order-4 element b inverting A pointwise, if one exists."""
    t, inv = g.table, g.inverses
    orders = g.element_orders()
    for a in index2_subgroups(g):
        sub_t = t[np.ix_(a.members, a.members)]
        if not np.array_equal(sub_t, sub_t.T):
            continue
        if all(orders[x] <= 2 for x in a.members.tolist()):
            continue  # elementary abelian base is excluded
        outside = np.setdiff1d(np.arange(g.order), a.members)
        for b in outside.tolist():
            if orders[b] != 4:
                continue
            conj = t[inv[b], t[a.members, b]]
            if np.array_equal(conj, inv[a.members]):
                return QGroupWitness(a, int(b))
    return None


def is_q_group(g: Group) -> bool:
    return q_group_witness(g) is not None


Q_GROUP = "q_group"
Q8_C4_E2 = "q8_c4_e2"
Q8_Q8_E2 = "q8_q8_e2"


def blackburn_2group_form(g: Group, cap: int = 256) -> str:
    """Which of the three shapes a Blackburn 2-group has.

    Every Blackburn 2-group is a Q-group, Q8 x C4 x E2, or Q8 x Q8 x E2
    (the elementary abelian factor may be trivial).
    """
    if g.order > cap:
        raise OrderCap(f"form matching capped at order {cap}")
    if _prime_factors(g.order) != [2]:
        raise NotBlackburn2Group("not a 2-group")
    if not is_blackburn(g):
        raise NotBlackburn2Group("not a Blackburn group")
    if is_q_group(g):
        return Q_GROUP
    from .autos import find_isomorphism  # local import avoids a cycle

    for base, label in ((32, Q8_C4_E2), (64, Q8_Q8_E2)):
        if g.order % base != 0:
            continue
        k = (g.order // base).bit_length() - 1
        if 2**k * base != g.order:
            continue
        shape = generalized_quaternion(8)
        shape = direct_product(shape, cyclic(4) if base == 32 else generalized_quaternion(8))
        if k:
            shape = direct_product(shape, elementary_abelian(2, k))
        if find_isomorphism(g, shape) is not None:
            return label
    raise NoFormMatched(f"order {g.order} matches no Blackburn 2-group shape")


# -- structure of q-elements for q != p ---------------------------------------


@dataclass(frozen=True)
class QElementsReport:
    q: int
    members: tuple
    is_subgroup: bool
    is_q_group_order: bool
    is_normal: bool
    all_subgroups_normal: bool
    abelian_when_odd: bool
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_q_element_structure(g: Group, q: int) -> QElementsReport:
    """Check that the q-elements form a normal q-subgroup all of whose
    subgroups are normal in G (and abelian for odd q), for q != p."""
    status = r_of(g)
    if status.tag != NONTRIVIAL:
        raise PreconditionFailed("group has no non-normal subgroup with nontrivial R(G)")
    p = blackburn_prime(g)
    if q == p or len(_prime_factors(q)) != 1 or q < 2 or _prime_factors(q) != [q]:
        raise PreconditionFailed(f"q must be a prime different from {p}")
    orders = g.element_orders()
    members = [x for x in range(g.order) if _q_power(orders[x], q)]
    violations = []
    tq_set = set(members)
    closed = all(g.mul(a, b) in tq_set for a in members for b in members)
    if not closed:
        violations.append("q-elements are not closed under products")
    sub = Subgroup(g, np.asarray(members, dtype=np.int32))
    q_order = _q_power(sub.order, q)
    if not q_order:
        violations.append("q-elements do not form a q-group")
    normal = sub.is_normal() if closed else False
    if closed and not normal:
        violations.append("the q-subgroup is not normal")
    all_normal = True
    if closed:
        sub_group, mem = sub.as_group()
        for c in sub_group.cyclic_subgroups():
            lifted = Subgroup(g, np.asarray([mem[i] for i in c.members.tolist()], dtype=np.int32))
            if not lifted.is_normal():
                all_normal = False
                violations.append("a subgroup of the q-part is not normal in G")
                break
    abelian_odd = True
    if q != 2 and closed:
        sub_group, _ = sub.as_group()
        abelian_odd = sub_group.is_abelian()
        if not abelian_odd:
            violations.append("odd q-part is not abelian")
    return QElementsReport(
        q=q,
        members=tuple(members),
        is_subgroup=closed,
        is_q_group_order=bool(q_order),
        is_normal=bool(normal),
        all_subgroups_normal=all_normal,
        abelian_when_odd=abelian_odd,
        violations=tuple(violations),
    )


def _q_power(n: int, q: int) -> bool:
    while n % q == 0:
        n //= q
    return n == 1


# -- trichotomy for finite normal subgroups ------------------------------------


@dataclass(frozen=True)
class CaseCData:
    x: int
    t_members: tuple
    exponent_ok: bool
    centralizing_ok: bool


@dataclass(frozen=True)
class TrichotomyVerdict:
    p: int
    p_complement: tuple
    dedekind_complement: bool
    complement_normal_in_g: bool
    case: str
    case_c: Optional[CaseCData]


def verify_normal_subgroup_trichotomy(g: Group, n_sub: Subgroup) -> TrichotomyVerdict:
    """Classify a finite normal subgroup N of a Blackburn group G.

    N always has a normal p-complement H that is Dedekind with every subgroup
    normal in G.  Then exactly one of: (a) N nilpotent; (b) Z(S) <= O_p(N)
    for a Sylow p-subgroup S of N; (c) S abelian with S = <x> x T, [x,H] != 1,
    T <= O_p(N), |C_<x>(H)| = exponent of O_p(N), and anything centralizing
    C_<x>(H) centralizes T.
    """
    if not is_blackburn(g):
        raise PreconditionFailed("G is not a Blackburn group")
    if not n_sub.is_normal():
        raise PreconditionFailed("N is not normal in G")
    p = blackburn_prime(g)
    n_grp, mem = n_sub.as_group()

    h_sub = n_grp.normal_p_complement(p)
    if h_sub is None:
        raise TrichotomyViolated("N has no normal p-complement")
    h_grp, h_mem = h_sub.as_group()
    h_lift = [mem[i] for i in h_mem]  # h_grp index -> index in G
    dedekind = is_dedekind(h_grp)
    complement_normal = all(
        Subgroup(g, np.asarray([h_lift[i] for i in c.members.tolist()], dtype=np.int32)).is_normal()
        for c in h_grp.cyclic_subgroups()
    )
    if not dedekind or not complement_normal:
        raise TrichotomyViolated("p-complement is not Dedekind with all subgroups normal in G")

    case_c = None
    if n_grp.is_nilpotent():
        case = "a"
    else:
        s_sub = n_grp.sylow(p)
        s_grp, s_mem = s_sub.as_group()
        zs = [s_mem[i] for i in s_grp.center().members.tolist()]
        op = n_grp.o_p(p)
        op_set = set(op.members.tolist())
        if all(z in op_set for z in zs):
            case = "b"
        else:
            case = "c"
            case_c = _case_c_data(g, n_grp, mem, h_sub, s_sub, op, p)
    return TrichotomyVerdict(
        p=p,
        p_complement=tuple(mem[i] for i in h_sub.members.tolist()),
        dedekind_complement=dedekind,
        complement_normal_in_g=complement_normal,
        case=case,
        case_c=case_c,
    )


def _case_c_data(g: Group, n_grp: Group, mem, h_sub, s_sub, op, p) -> CaseCData:
    if not _sub_abelian(n_grp, s_sub):
        raise TrichotomyViolated("case c reached but the Sylow p-subgroup is not abelian")
    s_grp, s_mem = s_sub.as_group()
    h_members = h_sub.members.tolist()
    op_set = set(op.members.tolist())
    s_orders = s_grp.element_orders()
    candidates = sorted(range(s_grp.order), key=lambda i: (-s_orders[i], i))
    for xi in candidates:
        x_in_n = s_mem[xi]
        if all(n_grp.mul(x_in_n, h) == n_grp.mul(h, x_in_n) for h in h_members):
            continue  # [x, H] must be nontrivial
        x_cyc = set(s_grp.closure([xi]).tolist())
        need = s_grp.order // len(x_cyc)
        for t_cand in s_grp.all_subgroups():
            if t_cand.order != need:
                continue
            t_set = set(t_cand.members.tolist())
            if x_cyc & t_set != {0}:
                continue
            if len(s_grp.closure([*x_cyc, *t_set])) != s_grp.order:
                continue
            if not all(s_mem[i] in op_set for i in t_set):
                continue
            return _check_case_c(g, n_grp, mem, h_members, s_mem, xi, x_cyc, t_set, op)
    raise TrichotomyViolated("case c reached but no direct decomposition found")


def _sub_abelian(parent: Group, sub: Subgroup) -> bool:
    t = parent.table[np.ix_(sub.members, sub.members)]
    return bool(np.array_equal(t, t.T))


def _check_case_c(g, n_grp, mem, h_members, s_mem, xi, x_cyc, t_set, op) -> CaseCData:
    # C_<x>(H): the part of <x> centralizing the p-complement
    cx = [i for i in sorted(x_cyc)
          if all(n_grp.mul(s_mem[i], h) == n_grp.mul(h, s_mem[i]) for h in h_members)]
    op_grp, _ = op.as_group()
    exponent_ok = len(cx) == op_grp.exponent()
    cx_in_g = [mem[s_mem[i]] for i in cx]
    t_in_g = [mem[s_mem[i]] for i in sorted(t_set)]
    centralizing_ok = True
    rows = g.rows
    for z in range(g.order):
        if all(rows[z][c] == rows[c][z] for c in cx_in_g):
            if not all(rows[z][t] == rows[t][z] for t in t_in_g):
                centralizing_ok = False
                break
    if not (exponent_ok and centralizing_ok):
        raise TrichotomyViolated("case c sub-assertions failed")
    return CaseCData(
        x=mem[s_mem[xi]],
        t_members=tuple(mem[s_mem[i]] for i in sorted(t_set)),
        exponent_ok=exponent_ok,
        centralizing_ok=centralizing_ok,
    )

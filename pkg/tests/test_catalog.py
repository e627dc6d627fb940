"""Named constructors and products."""

import itertools

import numpy as np
import pytest

from blackburn.autos import find_isomorphism, is_isomorphic
from blackburn.catalog import (
    CATALOG,
    alternating4,
    builtin,
    catalog_build,
    cyclic,
    cyclic_by_cyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    generalized_quaternion,
    heisenberg3,
    q_group,
    quaternion_power_product,
    semidirect_product,
    symmetric,
)
from blackburn.core import Action, trivial_action
from blackburn.errors import BadParams, OrderCap


def test_cyclic_trivial():
    assert cyclic(1).order == 1
    assert cyclic(5).order_of(1) == 5


def test_catalog_build_dispatch():
    assert catalog_build("cyclic", 6).order == 6
    assert catalog_build("dihedral", 8).order == 8
    with pytest.raises(BadParams):
        catalog_build("nope", 3)


def test_q_group_of_c4_is_q8():
    a = cyclic(4)
    g = q_group(a, 2)
    assert g.order == 8
    assert find_isomorphism(g, generalized_quaternion(8)) is not None


def test_q_group_rejects_bad_params():
    with pytest.raises(BadParams):
        q_group(cyclic(4), 1)  # not an involution
    with pytest.raises(BadParams):
        q_group(symmetric(3), 3)  # not abelian


def test_generalized_quaternion_unique_involution():
    for order in (8, 16, 32, 64):
        g = generalized_quaternion(order)
        assert g.order == order
        assert sum(1 for o in g.element_orders() if o == 2) == 1
    with pytest.raises(BadParams):
        generalized_quaternion(12)
    with pytest.raises(BadParams):
        generalized_quaternion(4)


def test_symmetric_against_independent_composition():
    """Rebuild S4 from raw tuples and compare structure."""
    g = symmetric(4)
    assert g.order == 24
    perms = sorted(itertools.permutations(range(4)))
    idx = {p: i for i, p in enumerate(perms)}
    for i, a in enumerate(perms):
        for j, b in enumerate(perms):
            composed = tuple(b[a[x]] for x in range(4))
            assert g.mul(i, j) == idx[composed]
    assert sorted(len(c) for c in g.conjugacy_classes()) == [1, 3, 6, 6, 8]
    with pytest.raises(BadParams):
        symmetric(6)


def test_dihedral():
    d8 = dihedral(8)
    assert d8.order == 8
    assert sorted(d8.element_orders()) == [1, 2, 2, 2, 2, 2, 4, 4]
    assert is_isomorphic(dihedral(6), symmetric(3))
    with pytest.raises(BadParams):
        dihedral(7)


def test_direct_product():
    v4 = direct_product(cyclic(2), cyclic(2))
    assert v4.order == 4 and v4.exponent() == 2
    g = direct_product(generalized_quaternion(8), cyclic(4))
    assert g.order == 32 and g.center().order == 8
    q8 = generalized_quaternion(8)
    assert is_isomorphic(direct_product(q8, cyclic(1)), q8)
    with pytest.raises(OrderCap):
        direct_product(cyclic(300), cyclic(300), cap=1000)


def test_semidirect_trivial_action_equals_direct():
    a, b = cyclic(6), symmetric(3)
    direct = direct_product(a, b)
    semi = semidirect_product(a, b, trivial_action(b, a))
    assert np.array_equal(direct.table, semi.table)


def test_semidirect_inversion_gives_s3():
    c3, c2 = cyclic(3), cyclic(2)
    inv = np.asarray([0, 2, 1], dtype=np.int32)
    act = Action(c2, c3, [np.arange(3, dtype=np.int32), inv])
    g = semidirect_product(c3, c2, act)
    assert find_isomorphism(g, symmetric(3)) is not None


def test_semidirect_conjugation_convention():
    """(1, h)(n, 1)(1, h)^-1 applies act(h)."""
    c3, c2 = cyclic(3), cyclic(2)
    inv = np.asarray([0, 2, 1], dtype=np.int32)
    act = Action(c2, c3, [np.arange(3, dtype=np.int32), inv])
    g = semidirect_product(c3, c2, act)
    h = 1          # (0, 1)
    n = 1 * 2      # (1, 0)
    lhs = g.mul(g.mul(h, n), g.inv(h))
    assert lhs == int(inv[1]) * 2


def test_cyclic_by_cyclic_orders():
    g = cyclic_by_cyclic(7, 9, 2)
    assert g.order == 63
    assert not g.is_abelian()
    f20 = cyclic_by_cyclic(5, 4, 2)
    assert f20.order == 20 and f20.center().order == 1


def test_quaternion_power_product():
    g = quaternion_power_product(7, 8, 1, -1)
    assert g.order == 56
    assert g.center().order == 2
    assert g.sylow(2).order == 8
    assert g.o_p(2).order == 4  # the kernel-of-action half of Q8


def test_special_constructors():
    he = heisenberg3()
    assert he.order == 27 and he.exponent() == 3 and not he.is_abelian()
    a4 = alternating4()
    assert a4.order == 12
    assert sorted(len(c) for c in a4.conjugacy_classes()) == [1, 3, 4, 4]
    m27 = builtin("m27")
    assert m27.order == 27 and m27.exponent() == 9 and not m27.is_abelian()


def test_elementary_abelian():
    e = elementary_abelian(2, 3)
    assert e.order == 8 and e.exponent() == 2
    assert elementary_abelian(3, 0).order == 1
    with pytest.raises(BadParams):
        elementary_abelian(4, 2)


def test_builtin_specs():
    assert builtin("q16").order == 16
    assert builtin("cyclic(12)").order == 12
    assert builtin("elementary_abelian(3, 2)").order == 9
    with pytest.raises(BadParams):
        builtin("wat(3)")


def test_catalog_entries_build_and_match_declared_order():
    for entry in CATALOG:
        g = entry.build()
        assert g.order == entry.order, entry.name


def test_catalog_names_unique_and_sorted():
    names = [e.name for e in CATALOG]
    assert len(set(names)) == len(names)
    orders = [(e.order, e.name) for e in CATALOG]
    assert orders == sorted(orders)

import json

import pytest
from hypothesis import given

from spectop import (CycleError, EmptySpaceError, FinitePoset, Ordinal,
                     Subspace, UnknownLabelError, cb_derivative, cb_rank,
                     closure, construct_poset, dual_poset, export,
                     find_isolated_constructive, is_open, isolated_points,
                     scattered_via_closed_subsets, td_witness)

from conftest import posets


def fan(n=2):
    labels = [f"p{i}" for i in range(1, n + 1)] + ["m"]
    return construct_poset(labels, [(f"p{i}", "m") for i in range(1, n + 1)])


def chain(*labels):
    return construct_poset(list(labels), list(zip(labels, labels[1:])))


# -- construction ----------------------------------------------------------


def test_construct_singleton():
    p = construct_poset(["a"], [])
    assert p.elements == ("a",)
    assert p.covers == ()


def test_construct_fan():
    p = fan(2)
    assert p.leq("p1", "m") and p.leq("p2", "m")
    assert not p.leq("m", "p1") and not p.leq("p1", "p2")


def test_construct_rejects_cycles():
    with pytest.raises(CycleError):
        construct_poset(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(CycleError):
        construct_poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
    with pytest.raises(CycleError):
        construct_poset(["a"], [("a", "a")])


def test_construct_rejects_unknown_labels():
    with pytest.raises(UnknownLabelError):
        construct_poset(["a"], [("a", "b")])


def test_construct_rejects_duplicate_labels():
    with pytest.raises(ValueError):
        construct_poset(["a", "a"], [])


def test_transitive_input_reduces_to_covers():
    direct = construct_poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
    with_shortcut = construct_poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    assert direct == with_shortcut
    assert with_shortcut.covers == (("a", "b"), ("b", "c"))


@given(posets())
def test_partial_order_laws(p):
    els = p.elements
    for x in els:
        assert p.leq(x, x)
    for x in els:
        for y in els:
            if p.leq(x, y) and p.leq(y, x):
                assert x == y
            for z in els:
                if p.leq(x, y) and p.leq(y, z):
                    assert p.leq(x, z)


# -- closure and opens -------------------------------------------------------


def test_closure_examples():
    p = fan(2)
    assert closure(p, {"p1"}) == {"p1", "m"}
    assert closure(p, set()) == set()
    assert closure(p, {"m"}) == {"m"}


def test_is_open_examples():
    p = fan(2)
    assert is_open(p, {"p1", "p2"})
    assert not is_open(p, {"m"})
    assert is_open(p, set())


@given(posets())
def test_closure_is_smallest_closed_superset(p):
    for x in p.elements:
        s = frozenset([x])
        cl = p.closure(s)
        assert s <= cl and p.is_closed(cl)
        assert p.closure(cl) == cl
    full = frozenset(p.elements)
    assert p.closure(full) == full
    # monotone on nested singleton/full pairs
    for x in p.elements:
        assert p.closure({x}) <= p.closure(full)


@given(posets(max_size=5))
def test_closure_minimality_against_all_closed_sets(p):
    everything = frozenset(range(len(p)))
    for x in p.elements:
        cl = p.closure({x})
        for down in p.iter_downsets():
            up = frozenset(p.elements[i] for i in everything - down)
            if x in up:
                assert cl <= up


# -- isolated points and derivatives ------------------------------------------


def test_isolated_examples():
    anti = construct_poset(["a", "b"], [])
    assert isolated_points(Subspace(anti, frozenset({"a", "b"}))) == {"a", "b"}
    two = chain("a", "b")
    assert isolated_points(Subspace(two, frozenset({"a", "b"}))) == {"a"}
    assert isolated_points(Subspace(two, frozenset())) == frozenset()


def test_subspace_rejects_foreign_members():
    with pytest.raises(UnknownLabelError):
        Subspace(chain("a", "b"), frozenset({"z"}))


def test_derivative_examples():
    p = fan(3)
    full = Subspace(p, frozenset(p.elements))
    assert cb_derivative(full).members == {"m"}
    assert cb_derivative(Subspace(p, frozenset({"m"}))).members == frozenset()
    assert cb_derivative(Subspace(p, frozenset())).members == frozenset()


def test_isolated_in_subspace_is_minimal_in_induced_order():
    p = construct_poset(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("a", "d")])
    sub = {"b", "c", "d"}
    induced = p.restrict(sub)
    assert p.isolated_in(sub) == frozenset(induced.minimal_elements())


# -- rank ---------------------------------------------------------------------


def test_rank_examples():
    assert cb_rank(fan(5)) == Ordinal.from_int(2)
    assert cb_rank(chain("a", "b", "c")) == Ordinal.from_int(3)
    assert cb_rank(construct_poset([], [])) == Ordinal.from_int(0)


@given(posets())
def test_rank_is_height_plus_one(p):
    if len(p):
        assert p.rank_int() == p.height() + 1
    else:
        assert p.rank_int() == 0 and p.height() == -1


@given(posets(max_size=4), posets(max_size=4))
def test_rank_of_disjoint_union_is_max(p, q):
    left = construct_poset([f"l{x}" for x in p.elements],
                           [(f"l{a}", f"l{b}") for a, b in p.covers])
    right = construct_poset([f"r{x}" for x in q.elements],
                            [(f"r{a}", f"r{b}") for a, b in q.covers])
    union = left.disjoint_union(right)
    assert union.rank_int() == max(left.rank_int(), right.rank_int())
    got = union.derivative_in(union.elements)
    want = left.derivative_in(left.elements) | right.derivative_in(right.elements)
    assert got == want


def test_disjoint_union_rejects_label_clash():
    with pytest.raises(ValueError):
        fan(2).disjoint_union(fan(2))


def test_layers_partition_the_space():
    p = fan(4)
    layers = p.cb_layers()
    assert layers[0] == {"p1", "p2", "p3", "p4"}
    assert layers[1] == {"m"}


# -- duality --------------------------------------------------------------------


def test_dual_fan_is_cofan_shape():
    d = dual_poset(fan(3))
    assert set(d.covers) == {("m", "p1"), ("m", "p2"), ("m", "p3")}
    assert d.minimal_elements() == ("m",)


@given(posets())
def test_dual_involution(p):
    assert dual_poset(dual_poset(p)) == p


@given(posets())
def test_dual_preserves_rank(p):
    assert dual_poset(p).rank_int() == p.rank_int()


def test_dual_singleton():
    s = construct_poset(["a"], [])
    assert dual_poset(s) == s


# -- separation witnesses ----------------------------------------------------------


def test_td_witness_examples():
    p = fan(2)
    w, ok = td_witness(p, "p1")
    assert w == {"p1", "p2"} and ok
    w, ok = td_witness(p, "m")
    assert w == {"p1", "p2", "m"} and ok
    anti = construct_poset(["a", "b"], [])
    w, ok = td_witness(anti, "a")
    assert w == {"a", "b"} and ok


@given(posets())
def test_td_witness_always_open(p):
    for x in p.elements:
        w, ok = p.td_witness(x)
        assert ok
        assert x in w


def test_td_witness_unknown_point():
    with pytest.raises(UnknownLabelError):
        td_witness(fan(2), "zz")


# -- scatteredness -------------------------------------------------------------------


def test_scattered_examples():
    assert scattered_via_closed_subsets(fan(4))
    assert scattered_via_closed_subsets(construct_poset([], []))
    assert scattered_via_closed_subsets(chain("a", "b", "c"))


@given(posets())
def test_scattered_enumeration_and_kernel_routes_agree(p):
    by_enumeration = p.scattered_via_closed_subsets(upset_budget=1 << 16)
    by_kernel = p.scattered_via_closed_subsets(upset_budget=0)
    assert by_enumeration is True and by_kernel is True


# -- constructive isolated point --------------------------------------------------------


def test_find_isolated_examples():
    x, u, w = find_isolated_constructive(fan(2))
    assert x == "p1" and u == {"p1"} and w == {"p1", "p2"}
    x, u, w = find_isolated_constructive(chain("a", "b", "c"))
    assert x == "a" and u == {"a"} and u & w == {"a"}
    s = construct_poset(["a"], [])
    assert find_isolated_constructive(s) == ("a", {"a"}, {"a"})


def test_find_isolated_empty_space():
    with pytest.raises(EmptySpaceError):
        find_isolated_constructive(construct_poset([], []))


@given(posets())
def test_find_isolated_witness_laws(p):
    if not len(p):
        return
    x, u, w = p.find_isolated()
    assert p.is_open(u) and p.is_open(w)
    assert u & w == {x}
    assert p.is_open({x})


def test_find_isolated_tie_break_uses_element_order():
    p = construct_poset(["z", "a", "m"], [("z", "m"), ("a", "m")])
    x, _, _ = p.find_isolated()
    assert x == "z"


# -- export ------------------------------------------------------------------------------


def test_export_singleton_json():
    assert json.loads(export(construct_poset(["a"], []), "json")) == {
        "labels": ["a"],
        "covers": [],
    }


def test_export_fan_dot():
    text = export(fan(2), "dot")
    assert '"p1" -> "m";' in text and '"p2" -> "m";' in text
    assert text.startswith("digraph")


def test_export_unknown_format():
    with pytest.raises(ValueError):
        export(fan(1), "xml")


@given(posets())
def test_export_json_roundtrip(p):
    assert FinitePoset.from_json(export(p, "json")) == p


# -- restriction and large mode ------------------------------------------------------------


def test_restrict_induces_suborder():
    p = chain("a", "b", "c")
    r = p.restrict({"a", "c"})
    assert r.elements == ("a", "c")
    assert r.leq("a", "c") and not r.leq("c", "a")


def test_large_mode_matches_small_mode_semantics():
    # above CLOSURE_LIMIT the poset switches to traversal-backed queries
    n = 1200
    labels = [f"p{i}" for i in range(n)] + ["m"]
    big = construct_poset(labels, [(f"p{i}", "m") for i in range(n)])
    assert big.rank_int() == 2
    assert big.leq("p7", "m") and not big.leq("m", "p7")
    assert big.closure({"p3"}) == {"p3", "m"}
    assert big.isolated_in({"p1", "p2", "m"}) == {"p1", "p2"}
    assert big.dual().rank_int() == 2
    x, u, w = big.find_isolated()
    assert x == "p0" and u == {"p0"}
    assert big.scattered_via_closed_subsets(upset_budget=16)

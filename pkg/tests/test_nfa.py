import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from regatta.bench.families import gen_param
from regatta.bench.problem import materialize
from regatta.bench.randgen import letter_table, random_bre, random_nfa
from regatta.core import Nfa
from regatta.core.bre import Compl, Inter, Leaf
from regatta.core.bre import accepts as bre_accepts
from regatta.nfa import (
    AntichainSet,
    antichain_included,
    build_bre_nfa,
    complement,
    determinize,
    eval_bre,
    hkc_equivalent,
    intersect,
    is_empty,
    minimize,
    reduce_bisim,
    union,
)
from regatta.nfa.hkc import in_congruence
from regatta.regex import compile_regex, parse_regex, table_for

AB = letter_table("ab")
A, B = 0, 1


def words(k, nm=2):
    for n in range(k + 1):
        yield from product(range(nm), repeat=n)


def same_language(x, y, k=6):
    return all(x.accepts(w) == y.accepts(w) for w in words(k, len(x.table)))


def lit(word_letters):
    """NFA accepting exactly the given words over {a,b}."""
    edges, finals, n = [], [], 1
    for w in word_letters:
        cur = 0
        for ch in w:
            edges.append((cur, "ab".index(ch), n))
            cur = n
            n += 1
        finals.append(cur)
    return Nfa(n, edges, [0], finals, AB)


def test_determinize_dfa_unchanged():
    d = Nfa(2, [(0, A, 1), (0, B, 0), (1, A, 1), (1, B, 0)], [0], [1], AB)
    out = determinize(d)
    assert out.num_states == 2
    assert same_language(out.to_nfa(), d)


def test_determinize_ends_in_a():
    n = Nfa(2, [(0, A, 0), (0, B, 0), (0, A, 1)], [0], [1], AB)
    d = determinize(n)
    assert d.num_states == 2
    for w in words(5):
        assert d.accepts(w) == (len(w) > 0 and w[-1] == A)


def test_determinize_family_three_style():
    ast = parse_regex("(.{2})+a", alphabet_max=ord("b") + 1)
    n = compile_regex("(.{2})+a", table=table_for([ast], alphabet_max=ord("b") + 1))
    d = determinize(n)
    for w in product("ab", repeat=6):
        text = "".join(w)
        assert d.accepts([n.table.locate(ord(c)) for c in text]) == (len(text) % 2 == 1 and text[-1] == "a" and len(text) >= 3)


def test_complement_of_empty_language():
    c = complement(Nfa.empty_language(AB))
    assert c.accepts(()) and c.accepts((A,))


def test_complement_of_universal_is_empty():
    assert is_empty(complement(Nfa.universal(AB))).empty


@pytest.mark.parametrize("seed", range(30))
def test_double_complement(seed):
    n = random_nfa(random.Random(seed), AB)
    assert same_language(complement(complement(n)), n)
    assert same_language(determinize(n).to_nfa(), n)
    assert same_language(minimize(determinize(n)).to_nfa(), n)


def test_intersection_with_empty():
    assert is_empty(intersect(lit(["ab"]), Nfa.empty_language(AB))).empty


def test_length_mismatch_intersection_is_empty():
    t = table_for([parse_regex("[a-c]a[a-c]{2}")])
    x = compile_regex("[a-c]a[a-c]{2}", table=t)
    y = compile_regex("[a-c]a[a-c]{1}", table=t)
    assert is_empty(intersect(x, y)).empty


def test_intersection_idempotent():
    x = lit(["a", "ab", "bb"])
    assert hkc_equivalent(intersect(x, x), x).holds


def test_union_examples():
    x = lit(["a"])
    assert same_language(union(x, Nfa.empty_language(AB)), x)
    u = union(lit(["a"]), lit(["b"]))
    assert {w for w in words(3) if u.accepts(w)} == {(A,), (B,)}


@pytest.mark.parametrize("seed", range(20))
def test_union_and_intersection_against_oracle(seed):
    rng = random.Random(seed)
    x, y = random_nfa(rng, AB), random_nfa(rng, AB)
    u, i = union(x, y), intersect(x, y)
    for w in words(5):
        assert u.accepts(w) == (x.accepts(w) or y.accepts(w))
        assert i.accepts(w) == (x.accepts(w) and y.accepts(w))
    assert same_language(union(x, y), union(y, x))


def test_is_empty_cases():
    assert is_empty(Nfa(2, [(0, A, 1)], [0], [], AB)).empty
    v = is_empty(Nfa(1, [], [0], [0], AB))
    assert not v.empty and v.witness == ()


def test_is_empty_shortest_witness():
    v = is_empty(lit(["abb", "ba"]))
    assert v.witness == (B, A)
    assert v.word() == (ord("b"), ord("a"))


def test_family_eight_intersection_empty():
    inst = materialize(gen_param(8, 3))
    assert is_empty(build_bre_nfa(inst.emptiness_tree())).empty


def test_antichain_inclusion_examples():
    a, ab = lit(["a"]), lit(["a", "b"])
    assert antichain_included(a, a).holds
    assert antichain_included(a, ab).holds
    res = antichain_included(ab, a)
    assert not res.holds and res.counterexample == (B,)


@pytest.mark.parametrize("seed", range(40))
def test_inclusion_agrees_with_complement_product(seed):
    rng = random.Random(seed)
    x, y = random_nfa(rng, AB, 5), random_nfa(rng, AB, 5)
    res = antichain_included(x, y)
    assert res.holds == is_empty(intersect(x, complement(y))).empty
    if not res.holds:
        assert x.accepts(res.counterexample) and not y.accepts(res.counterexample)


@pytest.mark.parametrize("seed", range(40))
def test_hkc_agrees_with_two_inclusions(seed):
    rng = random.Random(seed)
    x, y = random_nfa(rng, AB, 5), random_nfa(rng, AB, 5)
    if seed % 3 == 0:
        y = reduce_bisim(union(x, x))
    res = hkc_equivalent(x, y)
    assert res.holds == (antichain_included(x, y).holds and antichain_included(y, x).holds)
    dx, dy = minimize(determinize(x)), minimize(determinize(y))
    assert res.holds == (dx.num_states == dy.num_states and same_language(dx.to_nfa(), dy.to_nfa(), 8))
    if not res.holds:
        assert x.accepts(res.counterexample) != y.accepts(res.counterexample)


def test_hkc_commuted_alternation():
    t = table_for([parse_regex("a|b")])
    assert hkc_equivalent(compile_regex("(a|b)*", table=t), compile_regex("(b|a)*", table=t)).holds


def test_congruence_closure_uses_union():
    # from {1}~{2} and {2}~{4}: {1,4} ~ {2,4} ~ {1,2,4}
    rules = [(0b001, 0b010), (0b010, 0b100)]
    assert in_congruence(0b101, 0b110, rules)
    assert not in_congruence(0b001, 0b1000, rules)


def test_bisim_merges_duplicate_branches():
    n = Nfa(3, [(0, A, 1), (0, A, 2)], [0], [1, 2], AB)
    r = reduce_bisim(n)
    assert r.num_states == 2
    assert same_language(r, n)


def test_bisim_keeps_minimal_dfa():
    d = minimize(determinize(lit(["ab", "b"])))
    n = d.to_nfa()
    assert reduce_bisim(n).num_states == n.num_states


@pytest.mark.parametrize("seed", range(30))
def test_bisim_preserves_language(seed):
    n = random_nfa(random.Random(seed), AB, 5)
    r = reduce_bisim(n)
    assert r.num_states <= n.num_states
    assert same_language(r, n)


@given(st.lists(st.integers(0, 63), max_size=30), st.sampled_from(["min", "max"]))
def test_antichain_set_incomparable(items, keep):
    ac = AntichainSet(keep)
    for c in items:
        ac.insert(c)
    els = list(ac)
    for i, x in enumerate(els):
        for y in els[i + 1 :]:
            assert x & ~y and y & ~x
    for c in items:
        assert ac.covers(c)


@pytest.mark.parametrize("seed", range(40))
def test_eval_bre_strategies_agree_with_oracle(seed):
    rng = random.Random(seed)
    e = random_bre(rng, AB)
    oracle = next((w for w in words(8) if bre_accepts(e, w)), None)
    for strategy in ("nfa", "dfa"):
        v = eval_bre(e, strategy)
        if oracle is not None:
            assert not v.empty
        if not v.empty:
            assert bre_accepts(e, v.witness)
            assert len(v.witness) <= len(oracle) if oracle is not None else True


def test_eval_bre_single_leaf():
    x = lit(["ba"])
    assert eval_bre(Leaf(x)).witness == is_empty(x).witness


def test_eval_bre_self_difference_empty():
    for seed in range(10):
        x = random_nfa(random.Random(seed), AB)
        assert eval_bre(Inter((Leaf(x), Compl(Leaf(x))))).empty


def test_family_five_difference_nonempty():
    inst = materialize(gen_param(5, 2))
    assert not eval_bre(inst.emptiness_tree()).empty

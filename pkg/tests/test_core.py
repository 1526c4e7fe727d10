import random
import subprocess
import sys
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from regatta.afa import accepts as afa_accepts
from regatta.afa import bfa_accepts
from regatta.bench.randgen import letter_table, random_bfa
from regatta.core import (
    Afa,
    Bfa,
    CharClass,
    FALSE,
    TRUE,
    bfa_to_afa,
    check_polarity,
    conj,
    disj,
    eval_formula,
    mintermize,
    neg,
    parse_formula,
    pred,
    var,
)
from regatta.core import formula as fm

SMALL = 64


def cc(lo, hi=None):
    return CharClass.span(lo, hi or lo)


# -- character classes and mintermization ---------------------------------


def test_charclass_normalizes_adjacent_ranges():
    c = CharClass([(ord("c"), ord("d")), (ord("a"), ord("b"))])
    assert c.ranges == ((ord("a"), ord("d")),)


def test_mintermize_single_predicate():
    t = mintermize([cc("a", "z")], residual=True)
    assert t.minterms[0] == cc("a", "z")
    assert len(t) == 2
    assert t.minterms[1] == cc("a", "z").complement()


def test_mintermize_overlapping():
    t = mintermize([cc("a", "c"), cc("b", "d")], residual=True)
    assert t.minterms[:3] == (cc("a"), cc("b", "c"), cc("d"))
    assert t.membership == (frozenset({0, 1}), frozenset({1, 2}))
    assert len(t) == 4


def test_mintermize_duplicates_collapse():
    t = mintermize([cc("0", "1"), cc("0", "1")], residual=True)
    assert t.minterms[0] == cc("0", "1")
    assert len(t) == 2


def test_mintermize_without_residual():
    t = mintermize([cc("a", "c"), cc("b", "d")])
    assert len(t) == 3
    assert not t.complete


def test_mintermize_rejects_empty_list():
    with pytest.raises(ValueError, match="no predicates"):
        mintermize([])


ranges = st.lists(
    st.tuples(st.integers(0, SMALL - 1), st.integers(0, 6)).map(lambda t: (t[0], min(SMALL - 1, t[0] + t[1]))),
    min_size=1,
    max_size=3,
)
classes = ranges.map(CharClass)


@given(st.lists(classes, min_size=1, max_size=4), st.booleans())
def test_mintermize_partition_exhaustive(preds, residual):
    t = mintermize(preds, residual=residual, alphabet_max=SMALL)
    union = CharClass()
    for i, m in enumerate(t.minterms):
        assert m
        for j in range(i):
            assert not (m & t.minterms[j])
        union = union | m
    cover = CharClass()
    for p in preds:
        cover = cover | p
    assert union == (CharClass.full(SMALL) if residual else cover)
    for p, members in zip(preds, t.membership):
        for x in range(SMALL):
            assert (x in p) == any(x in t.minterms[m] for m in members)
    assert len(t) <= 2 ** len(preds)


@given(st.lists(classes, min_size=1, max_size=4))
def test_mintermize_idempotent(preds):
    t = mintermize(preds, alphabet_max=SMALL)
    again = mintermize(list(t.minterms), alphabet_max=SMALL)
    assert set(again.minterms) == set(t.minterms)


# -- formulas ---------------------------------------------------------------


def test_eval_true_on_empty_config():
    assert eval_formula(TRUE, 0)


def test_eval_conjunction_with_negation():
    assert eval_formula(conj([var(0), neg(var(1))]), 0b01)


def test_eval_predicate_atom():
    t = mintermize([cc("a", "c"), cc("b")])
    b = t.locate(ord("b"))
    f = disj([var(0), pred(cc("a", "c"))])
    assert eval_formula(f, 0, b, t)


def test_eval_predicate_needs_symbol():
    with pytest.raises(ValueError, match="symbol required"):
        eval_formula(pred(cc("a")), 0)


def test_polarity_examples():
    assert check_polarity(disj([var(0), var(1)])) == "positive"
    assert check_polarity(conj([neg(var(0)), neg(var(1))])) == "negative"
    assert check_polarity(conj([var(0), neg(var(1))])) == "mixed"


def test_hash_consing_shares_structure():
    a = conj([var(1), var(0)])
    b = conj([var(0), var(1)])
    assert a is b


def test_formula_text_round_trip():
    f = parse_formula("q0 & !q1 | [61-63]")
    assert parse_formula(fm.to_text(f)) is f


def positive_formulas(n):
    leaf = st.one_of(st.integers(0, n - 1).map(var), st.just(TRUE), st.just(FALSE))
    return st.recursive(
        leaf,
        lambda kids: st.one_of(
            st.lists(kids, min_size=1, max_size=3).map(conj),
            st.lists(kids, min_size=1, max_size=3).map(disj),
        ),
        max_leaves=8,
    )


@given(positive_formulas(4), st.integers(0, 15), st.integers(0, 15))
def test_positive_formula_monotone(f, c, extra):
    if eval_formula(f, c):
        assert eval_formula(f, c | extra)


@given(positive_formulas(4))
def test_nnf_of_negation_keeps_truth_table(f):
    g = fm.nnf(neg(f))
    for c in range(16):
        assert eval_formula(g, c) == (not eval_formula(f, c))


# -- BFA to AFA -------------------------------------------------------------


def words(k, letters=2):
    for n in range(k + 1):
        yield from product(range(letters), repeat=n)


def test_bfa_to_afa_doubles_states():
    t = letter_table("ab")
    b = Bfa(2, [disj([var(0), var(1)]), pred(cc("a"))], var(0), neg(var(1)), t)
    a = bfa_to_afa(b)
    assert isinstance(a, Afa)
    assert a.num_states == 4
    for w in words(4):
        assert afa_accepts(a, w) == bfa_accepts(b, w)


def test_bfa_to_afa_negated_initial_uses_dual():
    t = letter_table("ab")
    b = Bfa(1, [pred(cc("a"))], neg(var(0)), TRUE, t)
    a = bfa_to_afa(b)
    assert a.init is var(1)


def test_one_state_bfa_language():
    # The AFA encoding agrees with the BFA; the language is larger than {"a"}.
    t = letter_table("ab")
    b = Bfa(1, [conj([neg(var(0)), pred(cc("a"))])], var(0), neg(var(0)), t)
    a = bfa_to_afa(b)
    assert a.num_states == 2
    lang = {w for w in words(3) if bfa_accepts(b, w)}
    assert lang == {(0,), (0, 1), (0, 0, 0), (0, 1, 0), (0, 1, 1)}
    for w in words(3):
        assert afa_accepts(a, w) == (w in lang)


@pytest.mark.parametrize("seed", range(40))
def test_bfa_to_afa_preserves_language(seed):
    b = random_bfa(random.Random(seed), max_states=5)
    a = bfa_to_afa(b)
    assert check_polarity(a.final) in ("negative", "positive") or a.final in (TRUE, FALSE)
    for w in words(6):
        assert afa_accepts(a, w) == bfa_accepts(b, w), (w, b.num_states, fm.to_text(b.init), fm.to_text(b.final), [fm.to_text(d) for d in b.delta])


def test_child_order_independent_of_creation_history():
    code = (
        "from regatta.core.formula import conj, disj, var, to_text\n"
        "names = ['x%d' % i for i in range(8)]\n"
        "keep = [var(n) for n in (names if {} else names[::-1])]\n"
        "vs = [var(n) for n in names]\n"
        "print(to_text(conj([disj(vs[:3]), *vs])))\n"
    )
    outs = [
        subprocess.run([sys.executable, "-c", code.format(flag)], capture_output=True, text=True, check=True).stdout
        for flag in (True, False)
    ]
    assert outs[0] == outs[1]

import random

import pytest

from regatta import budget
from regatta.afa import antisat_empty
from regatta.bench.randgen import letter_table, random_afa
from regatta.bts import (
    REACHABLE,
    UNKNOWN,
    UNREACHABLE,
    Bts,
    build_bw_bts,
    build_fw_bts,
    check_reach,
    export_aiger,
    import_aiger,
    replays,
    trace_word,
)
from regatta.core import FALSE, TRUE, Afa, CharClass, conj, neg, pred, var
from regatta.afa import accepts

AB = letter_table("ab")
A, B = 0, 1
PA, PB = pred(CharClass.of("a")), pred(CharClass.of("b"))


def eps_afa():
    return Afa(1, [PA], var(0), TRUE, AB)


def b_afa():
    # q0 --b--> q1, accepts exactly "b"
    return Afa(2, [conj([PB, var(1)]), FALSE], var(0), neg(var(0)), AB)


def empty_afa():
    return Afa(1, [conj([PA, var(0)])], var(0), neg(var(0)), AB)


@pytest.mark.parametrize("build", [build_fw_bts, build_bw_bts])
def test_epsilon_reachable_at_depth_zero(build):
    v = check_reach(build(eps_afa()))
    assert v.status == REACHABLE and v.depth == 0


@pytest.mark.parametrize("build", [build_fw_bts, build_bw_bts])
def test_chain_reachable_at_depth_one(build):
    b = build(b_afa())
    v = check_reach(b)
    assert v.status == REACHABLE and v.depth == 1
    assert trace_word(v, b.direction) == (B,)
    assert replays(b, v)


@pytest.mark.parametrize("build", [build_fw_bts, build_bw_bts])
def test_empty_language_proved(build):
    v = check_reach(build(empty_afa()))
    assert v.status == UNREACHABLE


def test_false_bad_unreachable():
    b = Bts(("x",), (), var("x"), FALSE, var("x'"))
    v = check_reach(b)
    assert v.status == UNREACHABLE and v.depth == 1


def test_init_and_bad_overlap():
    b = Bts(("x",), (), var("x"), var("x"), var("x'"))
    v = check_reach(b)
    assert v.status == REACHABLE and v.depth == 0


def test_depth_bound_gives_unknown():
    # a 4-bit counter reaches 15 only after 15 steps
    names = [f"c{i}" for i in range(4)]
    parts = []
    carry = TRUE
    for n in names:
        nxt = var(n + "'")
        flip = conj([var(n), neg(carry)])
        keep = conj([neg(var(n)), carry])
        bit = conj([neg(conj([neg(flip), neg(keep)]))])
        parts.append(conj([neg(conj([nxt, neg(bit)])), neg(conj([neg(nxt), bit]))]))
        carry = conj([carry, var(n)])
    b = Bts(tuple(names), (), conj([neg(var(n)) for n in names]), conj([var(n) for n in names]), conj(parts))
    assert check_reach(b, max_depth=5).status == UNKNOWN
    v = check_reach(b, max_depth=20)
    assert v.status == REACHABLE and v.depth == 15 and replays(b, v)


def test_undeclared_variable_rejected():
    with pytest.raises(ValueError):
        Bts(("x",), (), var("y"), FALSE, TRUE)


def test_transition_shape():
    b = build_bw_bts(b_afa())
    assert b.init is conj([neg(var("q0"))])
    assert b.bad is var("q0")
    assert b.input_vars == ("a0", "a1")


def bounded_reach(b, depth, steps=20000):
    """check_reach under a work budget; None when it does not conclude."""
    try:
        with budget.deadline(None, steps):
            v = check_reach(b, max_depth=depth)
    except budget.Timeout:
        return None
    return None if v.status == UNKNOWN else v


@pytest.mark.parametrize("build", [build_fw_bts, build_bw_bts])
def test_reachability_matches_emptiness(build):
    concluded = 0
    for seed in range(60):
        a = random_afa(random.Random(seed))
        empty = antisat_empty(a).empty
        b = build(a)
        v = bounded_reach(b, 32)
        if v is None:
            continue
        concluded += 1
        assert (v.status == REACHABLE) == (not empty), seed
        assert replays(b, v)
        if v.status == REACHABLE:
            assert accepts(a, trace_word(v, b.direction))
    assert concluded >= 55


def parse_aag(text):
    lines = text.splitlines()
    head = lines[0].split()
    assert head[0] == "aag"
    m, i, l, o, a = map(int, head[1:])
    body = lines[1 : 1 + i + l + o + a]
    inputs = [int(x) for x in body[:i]]
    latches = [tuple(map(int, x.split())) for x in body[i : i + l]]
    outputs = [int(x) for x in body[i + l : i + l + o]]
    ands = [tuple(map(int, x.split())) for x in body[i + l + o :]]
    defined = set()
    for lit in inputs + [x[0] for x in latches] + [x[0] for x in ands]:
        assert lit % 2 == 0 and 2 <= lit <= 2 * m and lit not in defined
        defined.add(lit)
    for lhs, r0, r1 in ands:
        assert r0 < lhs and r1 < lhs
        for r in (r0, r1):
            assert r <= 1 or (r & ~1) in defined
    for x in outputs + [lt[1] for lt in latches]:
        assert x <= 1 or (x & ~1) in defined
    return m, i, l, o, a


def test_aiger_valid_and_round_trips():
    compared = 0
    for seed in range(30):
        a = random_afa(random.Random(seed))
        b = build_bw_bts(a)
        text = export_aiger(b)
        _, _, latches, outputs, _ = parse_aag(text)
        assert latches == a.num_states + 2
        assert outputs == 1
        assert export_aiger(b) == text
        back = import_aiger(text)
        v0 = bounded_reach(b, 32)
        v1 = bounded_reach(back, 40)
        if v0 is None or v1 is None:
            continue
        compared += 1
        assert (v0.status == REACHABLE) == (v1.status == REACHABLE), seed
        assert replays(back, v1)
    assert compared >= 25


def test_aiger_of_empty_language_is_safe():
    back = import_aiger(export_aiger(build_bw_bts(empty_afa())))
    assert check_reach(back).status == UNREACHABLE


def test_aiger_symbols():
    text = export_aiger(build_fw_bts(b_afa()))
    assert "l0 q0" in text.splitlines()
    assert text.rstrip().endswith("fw 2")

import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from regatta.bench.randgen import random_cnf
from regatta.core import TRUE, conj, disj, eval_formula, neg, var
from regatta.sat import SAT, UNSAT, Solver, exactly_one, tseitin


def satisfies(model, clauses):
    return all(any(model[abs(l)] == (l > 0) for l in c) for c in clauses)


def brute_models(nvars, clauses):
    for bits in product((False, True), repeat=nvars):
        m = (False,) + bits
        if satisfies(m, clauses):
            yield m


def test_unit_clause():
    s = Solver()
    x = s.new_var()
    s.add_clause([x])
    r = s.solve()
    assert r.sat and r.value(x)


def test_contradictory_units():
    s = Solver()
    x = s.new_var()
    s.add_clauses([[x], [-x]])
    assert s.solve().status == UNSAT


def test_empty_clause_is_unsat():
    s = Solver()
    s.new_var()
    s.add_clause([])
    assert s.solve().status == UNSAT


def test_assumptions():
    s = Solver()
    x, y = s.new_vars(2)
    s.add_clause([x, y])
    r = s.solve_under([-x])
    assert r.sat and r.value(y)
    assert s.solve_under([-x, -y]).status == UNSAT
    assert s.solve().sat


def test_nothing_is_sat():
    assert Solver().solve().status == SAT


def test_unallocated_literal_rejected():
    s = Solver()
    with pytest.raises(ValueError):
        s.add_clause([3])


def test_dimacs_header():
    s = Solver()
    x, y = s.new_vars(2)
    s.add_clauses([[x, -y], [y]])
    assert s.to_dimacs().splitlines()[0] == "p cnf 2 2"
    assert s.to_dimacs().splitlines()[1] == "1 -2 0"


def test_tseitin_conjunction():
    counter = iter(range(3, 100))
    clauses, root = tseitin(conj([var("x"), var("y")]), {"x": 1, "y": 2}, lambda: next(counter))
    assert root == 3
    assert sorted(map(sorted, clauses)) == sorted(map(sorted, [[-3, 1], [-3, 2], [3, -1, -2]]))


def test_tseitin_true_uses_constant_literal():
    s = Solver()
    root = s.add_formula(TRUE, {})
    assert root == s.true_lit()


def test_tseitin_unmapped_atom():
    with pytest.raises(ValueError, match="unmapped"):
        tseitin(var("z"), {}, lambda: 1)


formulas = st.recursive(
    st.integers(0, 3).map(var),
    lambda kids: st.one_of(
        kids.map(neg),
        st.lists(kids, min_size=2, max_size=3).map(conj),
        st.lists(kids, min_size=2, max_size=3).map(disj),
    ),
    max_leaves=10,
)


@given(formulas)
def test_tseitin_projection_matches_evaluation(f):
    for bits in range(16):
        s = Solver()
        xs = s.new_vars(4)
        root = s.add_formula(f, {q: xs[q] for q in range(4)})
        fixed = [xs[q] if bits >> q & 1 else -xs[q] for q in range(4)]
        assert s.solve_under([*fixed, root]).sat == eval_formula(f, bits)


@pytest.mark.parametrize("seed", range(60))
def test_agrees_with_truth_table(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 12)
    clauses = random_cnf(rng, n, rng.randint(n, 5 * n))
    s = Solver(seed)
    s.new_vars(n)
    s.add_clauses(clauses)
    r = s.solve()
    expect = next(brute_models(n, clauses), None) is not None
    assert r.sat == expect
    if r.sat:
        assert satisfies(r.model, clauses)


def test_maximal_model_mutual_exclusion():
    s = Solver()
    x, y = s.new_vars(2)
    s.add_clause([-x, -y])
    r = s.maximal_model([], [x, y])
    assert r.value(x) != r.value(y)


def test_maximal_model_unconstrained():
    s = Solver()
    x, y = s.new_vars(2)
    r = s.maximal_model([], [x, y])
    assert r.value(x) and r.value(y)


def is_maximal(model, clauses, n, targets):
    on = {v for v in targets if model[v]}
    for m in brute_models(n, clauses):
        bigger = {v for v in targets if m[v]}
        if on < bigger:
            return False
    return True


@pytest.mark.parametrize("seed", range(40))
def test_maximal_model_is_maximal(seed):
    rng = random.Random(1000 + seed)
    n = 6
    clauses = random_cnf(rng, n, rng.randint(4, 14))
    s = Solver(seed)
    s.new_vars(n)
    s.add_clauses(clauses)
    targets = sorted(rng.sample(range(1, n + 1), rng.randint(1, n)))
    r = s.maximal_model([], targets)
    if r.sat:
        assert satisfies(r.model, clauses)
        assert is_maximal(r.model, clauses, n, targets)
    else:
        assert next(brute_models(n, clauses), None) is None


def test_incremental_clauses_after_solve():
    s = Solver()
    xs = s.new_vars(3)
    s.add_clauses(exactly_one(xs))
    seen = []
    while True:
        r = s.solve()
        if not r.sat:
            break
        hit = next(v for v in xs if r.value(v))
        seen.append(hit)
        s.add_clause([-hit])
    assert sorted(seen) == xs


def test_deterministic_given_seed():
    def run():
        rng = random.Random(5)
        clauses = random_cnf(rng, 12, 50)
        s = Solver(3)
        s.new_vars(12)
        s.add_clauses(clauses)
        return s.solve().model

    assert run() == run()

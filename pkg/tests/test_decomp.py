import random

import pytest

from chevlab import decomp
from chevlab.chevgroup import (GroupWord, build_basis, evaluate_word,
                               parse_word, root_element)
from chevlab.exactring import NotAUnit, RingSpec
from chevlab.rootsys import Root, all_roots


def test_rank_one_symbolic():
    fr = RingSpec("fraction", ("u", "v"))
    u, v = fr.var("u"), fr.var("v")
    for tag in ("A1", "A2", "B2", "G2"):
        basis = build_basis(tag)
        for g in all_roots(tag):
            word = decomp.rank_one_factor(g, u, v)
            lhs = root_element(basis, -g, u) * root_element(basis, g, v)
            rhs = evaluate_word(word, basis, "adjoint", spec=fr)
            assert (lhs - rhs).is_zero(), (tag, g)


def test_rank_one_degenerate_and_error():
    spec = RingSpec("poly", ("v",))
    g = Root("A2", (1, 0))
    word = decomp.rank_one_factor(g, spec.zero(), spec.var("v"))
    # u = 0 collapses to x_g(v) h_g(1) x_{-g}(0)
    basis = build_basis("A2")
    lhs = root_element(basis, g, spec.var("v"))
    assert (evaluate_word(word, basis, spec=spec) - lhs).is_zero()

    f5 = RingSpec("modular", modulus=5)
    with pytest.raises(NotAUnit):
        decomp.rank_one_factor(g, f5.const(2), f5.const(2))  # 1+4 = 0


def test_nilpotent_commute():
    from chevlab.exactring import RewriteRule
    q = RingSpec("quotient", ("u",), rules=[RewriteRule((2,), {})])
    u = q.var("u")
    g = Root("A2", (1, 0))
    word = decomp.nilpotent_commute(g, u)
    basis = build_basis("A2")
    lhs = root_element(basis, -g, u) * root_element(basis, g, q.one())
    assert (evaluate_word(word, basis, spec=q) - lhs).is_zero()

    word0 = decomp.nilpotent_commute(g, q.zero())
    assert (evaluate_word(word0, basis, spec=q)
            - root_element(basis, g, q.one())).is_zero()

    p = RingSpec("poly", ("u",))
    with pytest.raises(decomp.MissingRewriteRule):
        decomp.nilpotent_commute(g, p.var("u"))


def test_gauss_examples():
    basis = build_basis("A1")
    f5 = RingSpec("modular", modulus=5)
    m = root_element(basis, basis.root("-a"), f5.one(), "a1std")
    fact = decomp.gauss_decompose_a1(m, basis)
    letters = fact.word().letters
    # t = 1, a = 0, b = 1, c = 0
    assert letters[0][2].is_one()
    assert letters[1][2].is_zero()
    assert letters[2][2].is_one()
    assert letters[3][2].is_zero()

    ident = evaluate_word(GroupWord("A1"), basis, "a1std", spec=f5)
    fact = decomp.gauss_decompose_a1(ident, basis)
    assert all(p.is_one() or p.is_zero() for _, _, p in fact.word().letters)


@pytest.mark.parametrize("p,k", [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2),
                                 (7, 2)])
def test_gauss_round_trip(p, k):
    basis = build_basis("A1")
    spec = RingSpec("modular", modulus=p ** k)
    rng = random.Random(100 * p + k)
    for _ in range(200):
        word = GroupWord("A1")
        for _ in range(rng.randint(1, 8)):
            word = word * GroupWord.x("A1", rng.choice(["a", "-a"]),
                                      spec.const(rng.randrange(p ** k)))
        m = evaluate_word(word, basis, "a1std", spec=spec)
        fact = decomp.gauss_decompose_a1(m, basis)
        again = evaluate_word(fact.word(), basis, "a1std", spec=spec)
        assert (again - m).is_zero()


def test_gauss_torus_shape():
    # the torus factor is diag(t, 1/t, 1) in the standard realization
    basis = build_basis("A1")
    f7 = RingSpec("modular", modulus=7)
    w = parse_word("x(a,2) x(-a,3) x(a,1) x(-a,5)", "A1", f7)
    m = evaluate_word(w, basis, "a1std", spec=f7)
    fact = decomp.gauss_decompose_a1(m, basis)
    kind, idx, t = fact.torus.letters[0]
    assert kind == "t" and idx == 0
    mat = evaluate_word(fact.torus, basis, "a1std", spec=f7)
    assert mat.entry(0, 0) == t and (mat.entry(1, 1) * t).is_one()
    assert mat.entry(2, 2).is_one()


def test_gauss_rejects_outsiders():
    from chevlab.chevgroup import matrix_from_entries
    f5 = RingSpec("modular", modulus=5)
    bad = matrix_from_entries(f5, [[1, 1, 1], [0, 1, 1], [0, 0, 1]], "a1std")
    with pytest.raises(decomp.NoFactorization):
        decomp.gauss_decompose_a1(bad, build_basis("A1"))


def test_bruhat_examples():
    basis = build_basis("A1")
    f3 = RingSpec("modular", modulus=3)
    m = root_element(basis, basis.root("a"), f3.one(), "a1std")
    fact = decomp.bruhat_bruteforce(m, "A1", 3)
    assert fact.weyl_word == ()

    w = parse_word("w(a,1)", "A1", f3)
    mw = evaluate_word(w, basis, "a1std", spec=f3)
    fact = decomp.bruhat_bruteforce(mw, "A1", 3)
    assert fact.weyl_word == (0,)


@pytest.mark.parametrize("system,p", [("A1", 3), ("A1", 5), ("A2", 2)])
def test_bruhat_cells_partition(system, p):
    cells, table = decomp.bruhat_cells(system, p)
    assert len(cells) == len(table)
    assert all(len(ws) == 1 for ws in cells.values())


def test_verify_factorization():
    basis = build_basis("A1")
    spec = RingSpec("poly", ("h",))
    from chevlab.chevgroup import matrix_from_entries
    p_inv = matrix_from_entries(spec, [["1", "-h", "0"], ["0", "1", "0"],
                                       ["0", "0", "1"]], "a1std")
    p = matrix_from_entries(spec, [["1", "h", "0"], ["0", "1", "0"],
                                   ["0", "0", "1"]], "a1std")
    x = root_element(basis, basis.root("-a"), spec.one(), "a1std")
    target = p_inv * x * p
    claim = matrix_from_entries(spec, [["1-h", "-h^2", "-2*h"],
                                       ["1", "1+h", "2"],
                                       ["1", "h", "1"]], "a1std")
    ok, residual = decomp.verify_factorization(target, claim, basis, "a1std")
    assert ok and residual is None

    word = parse_word("x(a,1) x(-a,1)", "A1", RingSpec("poly", ()))
    ok, _ = decomp.verify_factorization(word, word, basis, "a1std",
                                        spec=RingSpec("poly", ()))
    assert ok

    bad = matrix_from_entries(spec, [["1-h", "h^2", "-2*h"],
                                     ["1", "1+h", "2"],
                                     ["1", "h", "1"]], "a1std")
    ok, residual = decomp.verify_factorization(target, bad, basis, "a1std")
    assert not ok and not residual.is_zero()

import random
from fractions import Fraction

import pytest

from chevlab.chevgroup import (GroupWord, build_basis, commutator_relation,
                               diag_torus, evaluate_word, identity_matrix,
                               matrix_from_entries, parse_root, parse_word,
                               pgl3_equal, root_element, torus_element,
                               trace_poly, unipotent_coordinates,
                               weyl_element, RealizationError)
from chevlab.exactring import NotAUnit, RingError, RingSpec, invert
from chevlab.rootsys import all_roots, positive_roots, reflect

SYSTEMS = ("A1", "A2", "B2", "G2")


def test_basis_dimensions():
    for tag, dim in [("A1", 3), ("A2", 8), ("B2", 10), ("G2", 14)]:
        assert build_basis(tag).dim == dim


def test_structure_constants():
    from chevlab.rootsys import root_string
    for tag in SYSTEMS:
        basis = build_basis(tag)
        for (gc, dc), val in basis.N.items():
            assert basis.N[(dc, gc)] == -val
            neg = (tuple(-x for x in gc), tuple(-x for x in dc))
            assert basis.N[neg] == -val
            g = basis.root("[" + ",".join(map(str, gc)) + "]")
            d = basis.root("[" + ",".join(map(str, dc)) + "]")
            p, _ = root_string(g, d)
            assert abs(val) == p + 1


def test_b2_structure_constant_pattern():
    basis = build_basis("B2")
    a, b, ab = (basis.root(n) for n in ("a", "b", "a+b"))
    assert abs(basis.N[(a.coords, b.coords)]) == 1
    assert abs(basis.N[(ab.coords, b.coords)]) == 2


DISPLAYED = {
    "A2": {("a1", "a2"): {(1, 1): 1},
           ("a1", "-a1-a2"): {(1, 1): -1},
           ("a2", "-a1-a2"): {(1, 1): 1},
           ("a1+a2", "-a1"): {(1, 1): -1},
           ("a1+a2", "-a2"): {(1, 1): 1}},
    "B2": {("a", "b"): {(1, 1): -1, (1, 2): -1},
           ("a+b", "b"): {(1, 1): -2}},
    "G2": {("a", "b"): {(1, 1): 1, (1, 2): -1, (1, 3): -1, (2, 3): 1},
           ("a+b", "b"): {(1, 1): 2, (1, 2): 3, (2, 1): 3},
           ("a", "a+3b"): {(1, 1): 1},
           ("a+2b", "b"): {(1, 1): -3},
           ("a+b", "a+2b"): {(1, 1): 3}},
}


def test_displayed_relations():
    for tag, table in DISPLAYED.items():
        basis = build_basis(tag)
        for (g, d), want in table.items():
            rel = commutator_relation(basis, g, d)
            assert rel.constants() == want, (tag, g, d)


def test_trivial_commutator():
    basis = build_basis("B2")
    rel = commutator_relation(basis, "a", "a+2b")
    assert rel.is_trivial()
    with pytest.raises(ValueError):
        commutator_relation(basis, "a", "a")


def test_root_sum_iff_nontrivial_commutator():
    # the sum of two roots is a root exactly when the commutator table has
    # a nontrivial entry for the pair
    from chevlab.rootsys import is_root
    for tag in SYSTEMS:
        basis = build_basis(tag)
        for g in all_roots(tag):
            for d in all_roots(tag):
                if g == d or g == -d:
                    continue
                rel = commutator_relation(basis, g, d)
                s = tuple(x + y for x, y in zip(g.coords, d.coords))
                assert is_root(s, tag) == ((1, 1) in rel.constants())


def test_additivity_all_roots():
    spec = RingSpec("poly", ("t", "s"))
    t, s = spec.var("t"), spec.var("s")
    for tag in SYSTEMS:
        basis = build_basis(tag)
        for g in all_roots(tag):
            lhs = root_element(basis, g, t) * root_element(basis, g, s)
            assert (lhs - root_element(basis, g, t + s)).is_zero()


def test_root_element_at_zero():
    spec = RingSpec("poly", ())
    for tag in SYSTEMS:
        basis = build_basis(tag)
        for g in all_roots(tag):
            assert root_element(basis, g, spec.zero()).is_identity()


def test_torus_weights_all_pairs():
    fr = RingSpec("fraction", ("u", "t"))
    u, t = fr.var("u"), fr.var("t")
    from chevlab.rootsys import cartan_integer
    for tag in SYSTEMS:
        basis = build_basis(tag)
        for g in all_roots(tag):
            h = torus_element(basis, g, u)
            h_inv = torus_element(basis, g, invert(u))
            for d in all_roots(tag):
                n = cartan_integer(d, g)
                scaled = (u ** n if n >= 0 else invert(u) ** (-n)) * t
                lhs = h * root_element(basis, d, t) * h_inv
                assert (lhs - root_element(basis, d, scaled)).is_zero()


def test_weyl_action_all_pairs():
    fr = RingSpec("fraction", ("t",))
    t = fr.var("t")
    one = fr.one()
    for tag in SYSTEMS:
        basis = build_basis(tag)
        for g in all_roots(tag):
            w = weyl_element(basis, g, one)
            w_inv = weyl_element(basis, g, -one)
            for d in all_roots(tag):
                target = reflect(d, g)
                lhs = w * root_element(basis, d, t) * w_inv
                plus = root_element(basis, target, t)
                minus = root_element(basis, target, -t)
                assert (lhs - plus).is_zero() or (lhs - minus).is_zero()


def test_h_is_weyl_quotient():
    # h_g(u) = w_g(u) w_g(1)^{-1}
    fr = RingSpec("fraction", ("u",))
    u = fr.var("u")
    one = fr.one()
    for tag in SYSTEMS:
        basis = build_basis(tag)
        for g in positive_roots(tag):
            lhs = weyl_element(basis, g, u) * weyl_element(basis, g, -one)
            assert (lhs - torus_element(basis, g, u)).is_zero()


def test_torus_of_one_is_identity():
    spec = RingSpec("poly", ())
    for tag in SYSTEMS:
        basis = build_basis(tag)
        for g in all_roots(tag):
            assert torus_element(basis, g, spec.one()).is_identity()


def test_a1_adjoint_h_minus_one():
    # rank-one adjoint pairings are even, so h_a(-1) acts trivially
    basis = build_basis("A1")
    spec = RingSpec("poly", ())
    assert torus_element(basis, basis.root("a"), spec.const(-1)).is_identity()


def test_a1std_matrices_and_trace():
    basis = build_basis("A1")
    spec = RingSpec("poly", ("t",))
    t = spec.var("t")
    x = root_element(basis, basis.root("a"), t, "a1std")
    want = matrix_from_entries(spec, [["1", "t^2", "2*t"], ["0", "1", "0"],
                                      ["0", "t", "1"]], "a1std")
    assert (x - want).is_zero()
    y = root_element(basis, basis.root("-a"), t, "a1std")
    wanty = matrix_from_entries(spec, [["1", "0", "0"], ["t^2", "1", "2*t"],
                                       ["t", "0", "1"]], "a1std")
    assert (y - wanty).is_zero()
    # the a1std torus has the diag(t, 1/t, 1) shape used in the Gauss form
    fr = RingSpec("fraction", ("u",))
    u = fr.var("u")
    h = torus_element(basis, basis.root("a"), u, "a1std")
    assert h.entry(0, 0) == u * u and h.entry(2, 2).is_one()
    d = diag_torus(basis, 0, u, "a1std")
    assert d.entry(0, 0) == u and (d.entry(1, 1) * u).is_one()


def test_trace_polys():
    spec = RingSpec("poly", ("t", "s"))
    t, s = spec.var("t"), spec.var("s")
    assert trace_poly(build_basis("A1"), "a") == s * s * t * t + 4 * s * t + 3
    assert trace_poly(build_basis("A2"), "a1+a2") == \
        s * s * t * t + 6 * s * t + 8
    assert trace_poly(build_basis("B2"), "a") == s * s * t * t + 6 * s * t + 10
    g2 = trace_poly(build_basis("G2"), "a")
    assert g2 == s * s * t * t + 8 * s * t + 14
    # trace at s = 0 is the representation dimension, for every long root
    from chevlab.exactring import substitute
    for tag in SYSTEMS:
        basis = build_basis(tag)
        for g in positive_roots(tag):
            if g.length_class != "long":
                continue
            tp = trace_poly(basis, g)
            assert substitute(tp, {"t": 0, "s": 0}) == spec.const(basis.dim)


def test_pgl3_realization():
    basis = build_basis("A2")
    spec = RingSpec("poly", ())
    one = spec.one()
    w = weyl_element(basis, basis.root("a1+a2"), one, "pgl3")
    want = matrix_from_entries(spec, [[0, 0, 1], [0, 1, 0], [-1, 0, 0]],
                               "pgl3")
    assert (w - want).is_zero()
    h1 = torus_element(basis, basis.root("a1"), spec.const(2), "pgl3")
    assert [h1.entry(i, i).constant_value() for i in range(3)] == \
        [2, Fraction(1, 2), 1]
    with pytest.raises(RealizationError):
        root_element(build_basis("B2"), build_basis("B2").root("a"), one,
                     "pgl3")


def test_word_evaluation_examples():
    basis = build_basis("A1")
    spec = RingSpec("poly", ())
    empty = GroupWord("A1")
    assert evaluate_word(empty, basis, "a1std", spec=spec).is_identity()
    quad = parse_word("(x(a,-1) x(-a,1) x(a,-1))^2", "A1", spec)
    assert evaluate_word(quad, basis, "a1std", spec=spec).is_identity()


def test_f7_word_example():
    spec = RingSpec("modular", modulus=7)
    basis = build_basis("A2")
    word = parse_word(
        "x(a1,1) x(-a1,2) x(a2,3) x(-a2,-5) x(a2,3)"
        " (x(a2,1) x(-a2,-1) x(a2,1))^-1", "A2", spec)
    got = evaluate_word(word, basis, "pgl3", spec=spec)
    want = matrix_from_entries(spec, [[3, 3, 0], [2, 3, 0], [0, 0, 5]], "pgl3")
    assert pgl3_equal(got, want)
    htilde = parse_word(
        "x(a2,3) x(-a2,-5) x(a2,3) (x(a2,1) x(-a2,-1) x(a2,1))^-1",
        "A2", spec)
    h = parse_word("h(a2,3)", "A2", spec)
    assert pgl3_equal(evaluate_word(htilde, basis, "pgl3", spec=spec),
                      evaluate_word(h, basis, "pgl3", spec=spec))


def test_pgl3_equal():
    spec = RingSpec("modular", modulus=7)
    basis = build_basis("A2")
    m = root_element(basis, basis.root("a1"), spec.one(), "pgl3")
    assert pgl3_equal(m, m.scale(spec.const(2)))
    ident = identity_matrix(spec, 3, "pgl3")
    assert not pgl3_equal(ident, m)
    with pytest.raises(RingError):
        pgl3_equal(
            root_element(basis, basis.root("a1"),
                         RingSpec("poly", ("t",)).var("t"), "pgl3"),
            root_element(basis, basis.root("a1"),
                         RingSpec("poly", ("t",)).var("t"), "pgl3"))


def test_w_squared():
    fr = RingSpec("fraction", ("u",))
    u = fr.var("u")
    basis = build_basis("A2")
    for i in (1, 2):
        g = basis.root(f"a{i}")
        w = weyl_element(basis, g, u, "pgl3")
        h = torus_element(basis, g, fr.const(-1), "pgl3")
        assert (w * w - h).is_zero()


def test_word_grammar():
    spec = RingSpec("poly", ("t",))
    w = parse_word("x(a+3b, t^2) h(a, -1) w(b, 1) t1(1) t2(1)", "G2", spec)
    assert len(w.letters) == 5
    assert w.letters[0][1].coords == (1, 3)
    again = parse_word(w.format_text(), "G2", spec)
    assert again.format_text() == w.format_text()
    assert parse_root("[1,2]", "B2").coords == (1, 2)
    assert parse_root("-2a-3b", "G2").coords == (-2, -3)
    assert parse_root("-a1-a2", "A2").coords == (-1, -1)
    with pytest.raises(ValueError):
        parse_word("x(a,1", "A1", spec)
    with pytest.raises(ValueError):
        parse_word("y(a,1)", "A1", spec)
    with pytest.raises(ValueError):
        parse_word("t2(1)", "A1", spec)


def test_word_inverse_and_power():
    spec = RingSpec("modular", modulus=11)
    basis = build_basis("B2")
    word = parse_word("x(a,3) w(b,2) h(a+b,4) x(a+2b,9) t1(5)", "B2", spec)
    m = evaluate_word(word, basis, "adjoint", spec=spec)
    minv = evaluate_word(word.inverse(), basis, "adjoint", spec=spec)
    assert (m * minv).is_identity()
    sq = evaluate_word(word ** 2, basis, "adjoint", spec=spec)
    assert (sq - m * m).is_zero()


def _det_mod_p(m, p):
    n = m.dim
    a = [[e.residue % p for e in row] for row in m.rows]
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for i in range(c + 1, n):
            f = a[i][c] * inv % p
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[c])]
    return det % p


def test_random_word_determinants_are_units():
    rng = random.Random(3)
    for p in (5, 7, 11):
        spec = RingSpec("modular", modulus=p)
        for tag in SYSTEMS:
            basis = build_basis(tag)
            roots = all_roots(tag)
            for _ in range(10):
                word = GroupWord(tag)
                for _ in range(rng.randint(1, 6)):
                    word = word * GroupWord.x(
                        tag, rng.choice(roots), spec.const(rng.randrange(p)))
                m = evaluate_word(word, basis, "adjoint", spec=spec)
                assert _det_mod_p(m, p) != 0


def test_unipotent_coordinates_round_trip():
    spec = RingSpec("poly", ("t", "s", "r"))
    basis = build_basis("G2")
    pos = positive_roots("G2")
    word = (root_element(basis, pos[1], spec.var("t"))
            * root_element(basis, pos[3], spec.var("s"))
            * root_element(basis, pos[5], spec.var("r")))
    coords = unipotent_coordinates(word, basis, pos)
    values = {root.coords: p for root, p in coords}
    assert values[(0, 1)] == spec.var("t")
    assert values[(1, 0)].is_zero()
    with pytest.raises(ValueError):
        unipotent_coordinates(
            root_element(basis, -pos[0], spec.var("t")), basis, pos)


def test_torus_letters():
    # t_i(u) rescales x_delta(s) by u^(alpha_i-coefficient of delta)
    fr = RingSpec("fraction", ("u", "s"))
    u, s = fr.var("u"), fr.var("s")
    basis = build_basis("G2")
    t1 = diag_torus(basis, 0, u)
    t1i = diag_torus(basis, 0, invert(u))
    for d in all_roots("G2"):
        n = d.coords[0]
        scaled = (u ** n if n >= 0 else invert(u) ** (-n)) * s
        lhs = t1 * root_element(basis, d, s) * t1i
        assert (lhs - root_element(basis, d, scaled)).is_zero()


def test_not_a_unit_paths():
    spec = RingSpec("poly", ("t",))
    basis = build_basis("A1")
    with pytest.raises(NotAUnit):
        torus_element(basis, basis.root("a"), spec.var("t"))
    with pytest.raises(NotAUnit):
        weyl_element(basis, basis.root("a"), spec.zero())

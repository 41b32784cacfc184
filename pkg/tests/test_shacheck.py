import random

import pytest

from chevlab.shacheck import (CapExceeded, REJECT, class_preserving_endos,
                              conjugacy_classes, extend_homomorphism,
                              generate_group, inner_endomorphisms, is_inner,
                              sha_report)


def test_group_orders():
    assert len(generate_group("A1", 3)) == 12
    assert len(generate_group("A1", 5)) == 60
    assert len(generate_group("A1", 7)) == 168
    assert len(generate_group("A2", 2)) == 168


def test_cap():
    with pytest.raises(CapExceeded):
        generate_group("A2", 5, cap=1000)


def test_generator_order_independence():
    base = generate_group("A1", 5)
    keys = set(base.index)
    # closing from the reversed generator list reaches the same element set
    table = generate_group("A1", 5)
    shuffled = list(reversed(table.generators))
    seen = {table.identity_id}
    frontier = [table.identity_id]
    while frontier:
        nxt = []
        for x in frontier:
            for _, g in shuffled:
                y = table.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    assert len(seen) == len(keys)


def test_mul_inv():
    G = generate_group("A1", 5)
    rng = random.Random(1)
    e = G.identity_id
    for _ in range(50):
        i = rng.randrange(len(G))
        j = rng.randrange(len(G))
        assert G.mul(i, G.inv(i)) == e
        assert G.mul(G.inv(i), i) == e
        assert G.inv(G.mul(i, j)) == G.mul(G.inv(j), G.inv(i))


def test_conjugacy_classes():
    G = generate_group("A1", 3)
    classes, class_of = conjugacy_classes(G)
    assert len(classes) == 4
    assert sorted(len(c) for c in classes) == [1, 3, 4, 4]
    assert sum(len(c) for c in classes) == len(G)
    for c in classes:
        assert len(G) % len(c) == 0
    assert classes[class_of[G.identity_id]] == [G.identity_id]


def test_extend_homomorphism():
    G = generate_group("A1", 3)
    gen_ids = [g for _, g in G.generators]
    ident = extend_homomorphism(G, gen_ids)
    assert ident is not REJECT
    assert ident.table == tuple(range(len(G)))

    # conjugated generators extend to the inner map
    h = 5
    conj = [G.conj(h, g) for g in gen_ids]
    endo = extend_homomorphism(G, conj)
    assert endo is not REJECT
    assert all(endo.table[x] == G.conj(h, x) for x in range(len(G)))

    # an image of mismatched order is rejected
    classes, class_of = conjugacy_classes(G)
    x = gen_ids[0]
    wrong = next(i for i in range(len(G))
                 if class_of[i] != class_of[x] and i != G.identity_id)
    assert extend_homomorphism(G, [wrong, gen_ids[1]]) is REJECT


def test_extension_composes():
    G = generate_group("A1", 3)
    gen_ids = [g for _, g in G.generators]
    f = extend_homomorphism(G, [G.conj(3, g) for g in gen_ids])
    g = extend_homomorphism(G, [G.conj(7, x) for x in gen_ids])
    composed = extend_homomorphism(G, [f.table[img] for img in g.images])
    assert composed is not REJECT
    assert composed.table == tuple(f.table[g.table[x]] for x in range(len(G)))


def test_class_preserving_endos_a1_p3():
    G = generate_group("A1", 3)
    cp = class_preserving_endos(G)
    inner = inner_endomorphisms(G)
    inner_tables = {e.table for e in inner}
    assert len(cp) == len(inner_tables) == 12
    classes, class_of = conjugacy_classes(G)
    for endo in cp:
        ok, conjugator = is_inner(G, endo)
        assert ok and conjugator is not None
        # independent elementwise re-check
        assert all(class_of[endo.table[x]] == class_of[x]
                   for x in range(len(G)))
    # inner maps form a subgroup under composition
    table_set = {e.table for e in cp}
    for e1 in cp[:4]:
        for e2 in cp[:4]:
            comp = tuple(e1.table[e2.table[x]] for x in range(len(G)))
            assert comp in table_set


def test_is_inner_identity():
    G = generate_group("A1", 3)
    ident = extend_homomorphism(G, [g for _, g in G.generators])
    ok, conjugator = is_inner(G, ident)
    assert ok and conjugator == G.identity_id


@pytest.mark.parametrize("p", [3, 5])
def test_sha_reports(p):
    rep = sha_report("A1", p)
    assert rep["verdict"] == "PASS"
    assert rep["cp_endo_count"] == rep["inner_count"] == rep["group_order"]
    assert not rep["hypothesis_violated"]


def test_sha_p2_flagged():
    rep = sha_report("A1", 2)
    assert rep["hypothesis_violated"]
    assert set(rep) >= {"system", "p", "group_order", "class_count",
                        "cp_endo_count", "inner_count", "verdict", "seconds"}


def test_sha_a2_p3_needs_slow():
    with pytest.raises(CapExceeded):
        sha_report("A2", 3)

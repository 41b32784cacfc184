"""Brute-force Sha-rigidity certification over small prime fields.

Builds the elementary group E(system, F_p) by closure of the root-element
generators, enumerates every class-preserving endomorphism by searching
generator images inside the generators' conjugacy classes, and checks that
each one is inner.
"""

from __future__ import annotations

import time

import numpy as np

from .chevgroup import GroupWord, build_basis, root_element
from .exactring import RingSpec
from .rootsys import SystemType, simple_roots


class CapExceeded(Exception):
    pass


DEFAULT_CAP = 10000

REJECT = "REJECT"


def _default_realization(system: SystemType) -> str:
    return {"A1": "a1std", "A2": "pgl3"}.get(system.tag, "adjoint")


def _canonicalize(arr: np.ndarray, realization: str, p: int) -> np.ndarray:
    """Canonical representative mod p (projective scaling for pgl3)."""
    arr = arr % p
    if realization != "pgl3":
        return arr
    flat = arr.reshape(arr.shape[0], -1)
    idx = (flat != 0).argmax(axis=1)
    lead = flat[np.arange(flat.shape[0]), idx]
    inv = np.array([0] + [pow(int(u), -1, p) for u in range(1, p)],
                   dtype=np.int64)
    return (arr * inv[lead][:, None, None]) % p


def matrix_key(m, realization: str, p: int) -> bytes:
    """Canonical byte key of an exact AdjointMatrix over Z/p."""
    arr = np.array([[e.residue for e in row] for row in m.rows],
                   dtype=np.int64)[None, :, :]
    return _canonicalize(arr, realization, p)[0].astype(np.uint8).tobytes()


def matrix_key_raw(arr: np.ndarray, p: int) -> bytes:
    return (arr % p).astype(np.uint8).tobytes()


class FiniteGroupTable:
    """The elements of E(system, F_p), closed under multiplication, with
    generator data and memoized products."""

    def __init__(self, system, p, realization, elements, index, generators):
        self.system = SystemType(system)
        self.p = p
        self.realization = realization
        self.elements = elements          # list of canonical uint8 arrays
        self.index = index                # bytes -> id
        self.generators = generators      # list of (GroupWord, id)
        self._mul_memo = {}
        self._inv_memo = {}
        self.identity_id = index[matrix_key_raw(
            np.eye(elements[0].shape[0], dtype=np.uint8), p)]

    def __len__(self):
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        out = self._mul_memo.get(key)
        if out is None:
            prod = (self.elements[i].astype(np.int64)
                    @ self.elements[j].astype(np.int64))
            prod = _canonicalize(prod[None, :, :], self.realization, self.p)[0]
            out = self.index[prod.astype(np.uint8).tobytes()]
            self._mul_memo[key] = out
        return out

    def inv(self, i: int) -> int:
        out = self._inv_memo.get(i)
        if out is None:
            # i has finite order k; the inverse is i^(k-1)
            prev, j = self.identity_id, i
            while j != self.identity_id:
                prev, j = j, self.mul(j, i)
            out = prev
            self._inv_memo[i] = out
        return out

    def conj(self, g: int, x: int) -> int:
        return self.mul(self.mul(g, x), self.inv(g))


def generate_group(system, p: int, realization: str = None,
                   cap: int = DEFAULT_CAP) -> FiniteGroupTable:
    """Closure of the root-element generators of E(system, F_p)."""
    system = SystemType(system)
    if p < 2:
        raise ValueError("p must be at least 2")
    realization = realization or _default_realization(system)
    basis = build_basis(system)
    spec = RingSpec("modular", modulus=p)
    one = spec.one()

    gen_roots = []
    for g in simple_roots(system):
        gen_roots += [g, -g]

    gen_words = [GroupWord.x(system, g, one) for g in gen_roots]
    gen_mats = []
    for g in gen_roots:
        m = root_element(basis, g, one, realization)
        gen_mats.append(np.array([[e.residue for e in row] for row in m.rows],
                                 dtype=np.int64))
    gens = _canonicalize(np.stack(gen_mats), realization, p)

    dim = gens.shape[1]
    ident = _canonicalize(np.eye(dim, dtype=np.int64)[None], realization, p)
    index = {}
    elements = []

    def add_batch(batch):
        fresh = []
        for arr in batch:
            k = matrix_key_raw(arr, p)
            if k not in index:
                if len(elements) >= cap:
                    raise CapExceeded(
                        f"group order exceeds cap {cap}; raise --cap")
                index[k] = len(elements)
                elements.append(arr.astype(np.uint8))
                fresh.append(arr)
        return fresh

    frontier = add_batch(ident)
    while frontier:
        stack = np.stack(frontier).astype(np.int64)
        new = []
        for g in gens:
            prods = _canonicalize(stack @ g, realization, p)
            new.extend(add_batch(prods))
        frontier = new

    gen_ids = [index[matrix_key_raw(g, p)] for g in gens]
    return FiniteGroupTable(system, p, realization, elements, index,
                            list(zip(gen_words, gen_ids)))


def conjugacy_classes(G: FiniteGroupTable):
    """Orbits of the conjugation action, as lists of element ids."""
    gen_ids = [gid for _, gid in G.generators]
    class_of = [-1] * len(G)
    classes = []
    for start in range(len(G)):
        if class_of[start] >= 0:
            continue
        orbit = [start]
        class_of[start] = len(classes)
        queue = [start]
        while queue:
            x = queue.pop()
            for g in gen_ids:
                y = G.conj(g, x)
                if class_of[y] < 0:
                    class_of[y] = len(classes)
                    orbit.append(y)
                    queue.append(y)
        classes.append(sorted(orbit))
    return classes, class_of


class EndoMap:
    """A verified endomorphism, stored as images per generator plus the
    full id -> id table."""

    __slots__ = ("images", "table")

    def __init__(self, images, table):
        self.images = tuple(images)
        self.table = tuple(table)

    def __eq__(self, other):
        return isinstance(other, EndoMap) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"EndoMap(images={self.images})"


def extend_homomorphism(G: FiniteGroupTable, images):
    """Breadth-first extension of generator images over the Cayley graph;
    returns an EndoMap, or REJECT on any conflict."""
    gen_ids = [gid for _, gid in G.generators]
    images = list(images)
    table = [-1] * len(G)
    table[G.identity_id] = G.identity_id
    queue = [G.identity_id]
    while queue:
        x = queue.pop()
        fx = table[x]
        for g, fg in zip(gen_ids, images):
            y = G.mul(x, g)
            fy = G.mul(fx, fg)
            if table[y] < 0:
                table[y] = fy
                queue.append(y)
            elif table[y] != fy:
                return REJECT
    assert all(v >= 0 for v in table)
    return EndoMap(images, table)


def inner_endomorphisms(G: FiniteGroupTable):
    """All conjugation maps, deduplicated (one per coset of the center)."""
    out = {}
    gen_ids = [gid for _, gid in G.generators]
    for g in range(len(G)):
        images = tuple(G.conj(g, x) for x in gen_ids)
        if images not in out:
            table = tuple(G.conj(g, x) for x in range(len(G)))
            out[images] = EndoMap(images, table)
    return list({e.table: e for e in out.values()}.values())


def class_preserving_endos(G: FiniteGroupTable):
    """All endomorphisms sending every element into its conjugacy class."""
    classes, class_of = conjugacy_classes(G)
    gen_ids = [gid for _, gid in G.generators]
    candidates = [classes[class_of[g]] for g in gen_ids]

    n = len(gen_ids)
    pair_target = {}
    for i in range(n):
        for j in range(n):
            if i != j:
                prod = G.mul(gen_ids[i], gen_ids[j])
                comm = G.mul(G.mul(gen_ids[i], gen_ids[j]),
                             G.mul(G.inv(gen_ids[i]), G.inv(gen_ids[j])))
                pair_target[(i, j)] = (class_of[prod], class_of[comm])

    found = {}

    def search(k, chosen):
        if k == n:
            endo = extend_homomorphism(G, chosen)
            if endo is REJECT:
                return
            if all(class_of[endo.table[x]] == class_of[x] for x in range(len(G))):
                found[endo.table] = endo
            return
        for c in candidates[k]:
            ok = True
            for i in range(k):
                ti = pair_target[(i, k)]
                if (class_of[G.mul(chosen[i], c)] != ti[0]
                        or class_of[G.mul(G.mul(chosen[i], c),
                                          G.mul(G.inv(chosen[i]), G.inv(c)))]
                        != ti[1]):
                    ok = False
                    break
            if ok:
                search(k + 1, chosen + [c])

    search(0, [])
    return sorted(found.values(), key=lambda e: e.table)


def is_inner(G: FiniteGroupTable, endo: EndoMap):
    """Exhaustive search for a conjugator realizing the endomorphism."""
    for g in range(len(G)):
        if all(endo.table[x] == G.conj(g, x) for x in range(len(G))):
            return True, g
    return False, None


def sha_report(system, p: int, cap: int = DEFAULT_CAP, slow: bool = False):
    """PASS iff every class-preserving endomorphism of E(system, F_p) is
    inner and the counts agree."""
    t0 = time.time()
    system = SystemType(system)
    if system.tag == "A2" and p == 3 and not slow:
        raise CapExceeded("A2 over F_3 has order 5616; pass slow=True")
    G = generate_group(system, p, cap=cap)
    classes, _ = conjugacy_classes(G)
    cp = class_preserving_endos(G)
    inner = inner_endomorphisms(G)
    inner_tables = {e.table for e in inner}
    all_inner = all(e.table in inner_tables for e in cp)
    verdict = "PASS" if (all_inner and len(cp) == len(inner_tables)) else "FAIL"
    return {
        "system": system.tag,
        "p": p,
        "group_order": len(G),
        "class_count": len(classes),
        "cp_endo_count": len(cp),
        "inner_count": len(inner_tables),
        "verdict": verdict,
        "hypothesis_violated": p == 2,
        "seconds": round(time.time() - t0, 3),
    }

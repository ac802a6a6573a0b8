"""Shared test utilities: brute-force oracles and small structure builders.

The oracles here deliberately avoid the library's optimized code paths so
that agreement tests are meaningful: subsets are enumerated exhaustively,
maps are enumerated as raw functions, and least upper bounds are found by
scanning all upper bounds.
"""

from itertools import product
import random

import numpy as np

import triadkit as tk


def upper_bound_scan_join(leq, x, y):
    """Least upper bound by scanning all upper bounds; None if missing."""
    n = len(leq)
    ubs = [z for z in range(n) if leq[x][z] and leq[y][z]]
    least = [u for u in ubs if all(leq[u][v] for v in ubs)]
    return least[0] if least else None


def brute_force_sup_maps(source, target):
    """All functions preserving bottom and binary joins, as sorted tuples."""
    found = []
    for table in product(range(target.size), repeat=source.size):
        if table[source.bottom] != target.bottom:
            continue
        ok = all(
            table[source.join[x, y]] == target.join[table[x], table[y]]
            for x in range(source.size)
            for y in range(source.size)
        )
        if ok:
            found.append(tuple(table))
    return sorted(found)


def tensor_closure_rules(triad, pairs):
    """One round of the four closure rule families on a set of (r, l) pairs."""
    lat_l, lat_r = triad.left.carrier, triad.right.carrier
    tl, rt = triad.left.action, triad.right.action
    out = set(pairs)
    out |= {(r, int(lat_l.bottom)) for r in range(lat_r.size)}
    out |= {(int(lat_r.bottom), l) for l in range(lat_l.size)}
    for r, l in list(out):
        for r2 in np.flatnonzero(lat_r.leq[:, r]):
            for l2 in np.flatnonzero(lat_l.leq[:, l]):
                out.add((int(r2), int(l2)))
    for r1, l1 in list(out):
        for r2, l2 in list(out):
            if l1 == l2:
                out.add((int(lat_r.join[r1, r2]), l1))
            if r1 == r2:
                out.add((r1, int(lat_l.join[l1, l2])))
    for r in range(lat_r.size):
        for t in range(triad.t.size):
            for l in range(lat_l.size):
                if (int(rt[r, t]), l) in out:
                    out.add((r, int(tl[t, l])))
                if (r, int(tl[t, l])) in out:
                    out.add((int(rt[r, t]), l))
    return out


def brute_closure(triad, pairs):
    """Fixpoint of the closure rules, computed naively."""
    current = set(pairs)
    while True:
        nxt = tensor_closure_rules(triad, current)
        if nxt == current:
            return frozenset(current)
        current = nxt


def brute_closed_sets(triad):
    """All closed subsets of R x L by filtering every subset (tiny carriers)."""
    nl, nr = triad.left.carrier.size, triad.right.carrier.size
    all_pairs = [(r, l) for r in range(nr) for l in range(nl)]
    closed = set()
    for bits in range(1 << len(all_pairs)):
        subset = {all_pairs[i] for i in range(len(all_pairs)) if bits >> i & 1}
        if tensor_closure_rules(triad, subset) == subset:
            closed.add(frozenset(subset))
    return closed


def mask_of_pairs(triad, pairs):
    nl = triad.left.carrier.size
    out = 0
    for r, l in pairs:
        out |= 1 << (r * nl + l)
    return out


def brute_force_q1_pairs(triad):
    """Compatible endomorphism pairs by scanning all function pairs."""
    lat_l, lat_r = triad.left.carrier, triad.right.carrier
    tl, rt, pair = triad.left.action, triad.right.action, triad.pairing
    alphas = brute_force_sup_maps(lat_l, lat_l)
    alphas = [
        a
        for a in alphas
        if all(
            a[tl[t, l]] == tl[t, a[l]] for t in range(triad.t.size) for l in range(lat_l.size)
        )
    ]
    betas = brute_force_sup_maps(lat_r, lat_r)
    betas = [
        b
        for b in betas
        if all(
            b[rt[r, t]] == rt[b[r], t] for t in range(triad.t.size) for r in range(lat_r.size)
        )
    ]
    out = []
    for a in alphas:
        for b in betas:
            if all(
                pair[a[l], r] == pair[l, b[r]]
                for l in range(lat_l.size)
                for r in range(lat_r.size)
            ):
                out.append((a, b))
    return sorted(out)


def zero_pairing_triad(n_l=2, n_r=2):
    """A triad over the two-element quantale whose pairing is constantly 0."""
    t = tk.two_quantale()
    lat_l = tk.SupLattice.chain(n_l)
    lat_r = tk.SupLattice.chain(n_r)
    left = tk.make_module(
        t, lat_l, "left",
        np.stack([np.zeros(n_l, dtype=np.int64), np.arange(n_l)]),
    )
    right = tk.make_module(
        t, lat_r, "right",
        np.stack([np.zeros(n_r, dtype=np.int64), np.arange(n_r)]).T,
    )
    pairing = np.zeros((n_l, n_r), dtype=np.int64)
    return tk.validate_triad(t, left, right, pairing)


def _lattice_of_set_family(sets):
    elems = sorted(sets, key=lambda s: (len(s), sorted(s)))
    n = len(elems)
    leq = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            leq[i, j] = elems[i] <= elems[j]
    return tk.validate_sup_lattice(leq)


def random_lattice(rng, universe=3, generators=3):
    """A random closure system: intersections of random subsets, by inclusion."""
    full = frozenset(range(universe))
    sets = {full}
    for _ in range(generators):
        sets.add(frozenset(i for i in range(universe) if rng.random() < 0.5))
    changed = True
    while changed:
        changed = False
        for a in list(sets):
            for b in list(sets):
                if a & b not in sets:
                    sets.add(a & b)
                    changed = True
    return _lattice_of_set_family(sets)


def random_distributive_lattice(rng, universe=3, generators=3):
    """A random ring of sets (closed under union and intersection): a frame."""
    full = frozenset(range(universe))
    sets = {full, frozenset()}
    for _ in range(generators):
        sets.add(frozenset(i for i in range(universe) if rng.random() < 0.5))
    changed = True
    while changed:
        changed = False
        for a in list(sets):
            for b in list(sets):
                for c in (a & b, a | b):
                    if c not in sets:
                        sets.add(c)
                        changed = True
    return _lattice_of_set_family(sets)


def one_point_triad():
    one = tk.SupLattice.chain(1)
    q = tk.validate_quantale(one, np.zeros((1, 1), dtype=np.int64))
    left = tk.make_module(q, one, "left", np.zeros((1, 1), dtype=np.int64))
    right = tk.make_module(q, one, "right", np.zeros((1, 1), dtype=np.int64))
    return tk.validate_triad(q, left, right, np.zeros((1, 1), dtype=np.int64))


def closure_rule_families(triad):
    """The four rule families as separate one-step operators on pair sets."""
    lat_l, lat_r = triad.left.carrier, triad.right.carrier
    tl, rt = triad.left.action, triad.right.action

    def bottoms(pairs):
        out = {(r, int(lat_l.bottom)) for r in range(lat_r.size)}
        out |= {(int(lat_r.bottom), l) for l in range(lat_l.size)}
        return out

    def down(pairs):
        out = set()
        for r, l in pairs:
            for r2 in np.flatnonzero(lat_r.leq[:, r]):
                for l2 in np.flatnonzero(lat_l.leq[:, l]):
                    out.add((int(r2), int(l2)))
        return out

    def coordinate_joins(pairs):
        out = set()
        for r1, l1 in pairs:
            for r2, l2 in pairs:
                if l1 == l2:
                    out.add((int(lat_r.join[r1, r2]), l1))
                if r1 == r2:
                    out.add((r1, int(lat_l.join[l1, l2])))
        return out

    def exchange(pairs):
        out = set()
        for r in range(lat_r.size):
            for t in range(triad.t.size):
                for l in range(lat_l.size):
                    if (int(rt[r, t]), l) in pairs:
                        out.add((r, int(tl[t, l])))
                    if (r, int(tl[t, l])) in pairs:
                        out.add((int(rt[r, t]), l))
        return out

    return [bottoms, down, coordinate_joins, exchange]


def ordered_closure(triad, pairs, order):
    """Fixpoint reached by applying the rule families in the given order."""
    families = closure_rule_families(triad)
    current = set(pairs)
    while True:
        before = set(current)
        for i in order:
            current |= families[i](current)
        if current == before:
            return frozenset(current)


def run_closure_properties(n_instances, seed=20240501):
    """Extensive, monotone, idempotent on random subsets of R x L."""
    rng = random.Random(seed)
    pool = [
        tk.duality(tk.SupLattice.chain(2)).triad,
        tk.duality(tk.SupLattice.chain(3)).triad,
        tk.galois(tk.SupLattice.chain(2), tk.SupLattice.chain(3), [2, 0]).triad,
        zero_pairing_triad(),
        tk.generate(tk.ExampleSpec("orthomodular", {"name": "mo1"})).triad,
    ]
    tensors = [tk.tensor_over_t(t, tk.Guards(max_tensor_pairs=64)) for t in pool]
    for _ in range(n_instances):
        i = rng.randrange(len(pool))
        triad, tp = pool[i], tensors[i]
        npairs = triad.l_carrier.size * triad.r_carrier.size
        mask_a = rng.getrandbits(npairs)
        mask_b = rng.getrandbits(npairs)
        closed_a = tp.members[tp.element_of_mask(mask_a)]
        assert mask_a & closed_a == mask_a, "closure must be extensive"
        closed_ab = tp.members[tp.element_of_mask(mask_a | mask_b)]
        assert closed_a & closed_ab == closed_a, "closure must be monotone"
        assert tp.members[tp.element_of_mask(closed_a)] == closed_a, "closure must be idempotent"


def run_adjunction_properties(n_instances, seed=20240502):
    """f(x) <= y iff x <= adjoint(f)(y), on random lattices and morphisms."""
    rng = random.Random(seed)
    for _ in range(n_instances):
        src = random_lattice(rng, universe=3, generators=rng.randrange(1, 4))
        tgt = random_lattice(rng, universe=3, generators=rng.randrange(1, 4))
        maps = tk.enumerate_sup_morphisms(src, tgt)
        f = maps[rng.randrange(len(maps))]
        g = tk.adjoint(f)
        lhs = tgt.leq[f.table[:, None], np.arange(tgt.size)[None, :]]
        rhs = src.leq[np.arange(src.size)[:, None], g[None, :]]
        assert np.array_equal(lhs, rhs)


def run_semiunital_properties(n_instances, seed=20240503):
    """r 1 = r and 1 l = l for sided elements of random semiunital quantales."""
    rng = random.Random(seed)
    for k in range(n_instances):
        if k % 3 == 0:
            lat = random_lattice(rng, universe=3, generators=rng.randrange(1, 4))
            q = tk.endo_quantale(lat)
        else:
            lat = random_distributive_lattice(rng, universe=3, generators=rng.randrange(1, 4))
            q = tk.frame(lat)
        assert tk.classify_quantale(q).semiunital
        left, _, right = tk.sided_elements(q)
        top = q.carrier.top
        assert all(int(q.mult[r, top]) == r for r in right)
        assert all(int(q.mult[top, l]) == l for l in left)

"""Triads (L, T, R): a quantale with a left and a right module and a pairing.

The five associative laws are tagged TTT, TTL, RTT, LRT, TLR; the first
three live inside the component validators and are re-checked here so a
triad report is self-contained.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InternalDefect, ValidationError, Violation
from .algebra import (
    ModuleAction,
    Quantale,
    _bimorphism_violations,
    _check_table,
    classify_quantale,
    make_module,
    module_violations,
    quantale_violations,
    sided_elements,
    validate_quantale,
)
from .suplat import SupLattice, _first_true, _freeze, join_set, validate_sup_lattice


@dataclass(frozen=True, eq=False)
class Triad:
    t: Quantale
    left: ModuleAction   # T acting on L from the left: (nt, nl) -> l
    right: ModuleAction  # T acting on R from the right: (nr, nt) -> r
    pairing: np.ndarray  # (nl, nr) -> t

    @property
    def l_carrier(self) -> SupLattice:
        return self.left.carrier

    @property
    def r_carrier(self) -> SupLattice:
        return self.right.carrier


def triad_violations(t: Quantale, left: ModuleAction, right: ModuleAction, pairing) -> list[Violation]:
    lat_l, lat_r, lat_t = left.carrier, right.carrier, t.carrier
    pair = _check_table(pairing, (lat_l.size, lat_r.size), lat_t.size, "pairing table")
    out: list[Violation] = []
    out += [Violation("TTT" if v.law == "Associativity" else v.law, v.witness, v.detail)
            for v in quantale_violations(t.carrier, t.mult, t.unit, t.involution)]
    out += [Violation("TTL" if v.law == "ActionAssociativity" else v.law, v.witness, v.detail)
            for v in module_violations(left)]
    out += [Violation("RTT" if v.law == "ActionAssociativity" else v.law, v.witness, v.detail)
            for v in module_violations(right)]
    out += [Violation("PairingNotBimorphism", v.witness, f"{v.law}: {v.detail}".rstrip(": "))
            for v in _bimorphism_violations(pair, lat_l, lat_r, lat_t, "pairing")]
    # (l r) t == l (r t)
    lhs = t.mult[pair, :]                       # [l, r, t]
    rhs = pair[:, right.action]                 # [l, r, t]
    bad = lhs != rhs
    if bad.any():
        out.append(Violation("LRT", _first_true(bad)))
    # (t l) r == t (l r)
    lhs = pair[left.action, :]                  # [t, l, r]
    rhs = t.mult[:, pair]                       # [t, l, r]
    bad = lhs != rhs
    if bad.any():
        out.append(Violation("TLR", _first_true(bad)))
    return out


def validate_triad(t: Quantale, left: ModuleAction, right: ModuleAction, pairing) -> Triad:
    pair = _check_table(pairing, (left.carrier.size, right.carrier.size), t.size, "pairing table")
    bad = triad_violations(t, left, right, pair)
    if bad:
        raise ValidationError(bad, "triad")
    return Triad(t, left, right, _freeze(pair.copy()))


def sublattice(lattice: SupLattice, members) -> tuple[SupLattice, np.ndarray]:
    """Induced order on a join-closed subset; returns (lattice, global->local)."""
    members = np.asarray(sorted(int(m) for m in members), dtype=np.int64)
    local = np.full(lattice.size, -1, dtype=np.int64)
    local[members] = np.arange(len(members))
    sub = validate_sup_lattice(lattice.leq[np.ix_(members, members)])
    return sub, local


def triad_of_quantale(q: Quantale) -> Triad:
    """The triad of left-, two-, and right-sided elements of a quantale."""
    left_set, two_set, right_set = sided_elements(q)
    lat_l, loc_l = sublattice(q.carrier, left_set)
    lat_t, loc_t = sublattice(q.carrier, two_set)
    lat_r, loc_r = sublattice(q.carrier, right_set)
    ls = np.array(left_set, dtype=np.int64)
    ts = np.array(two_set, dtype=np.int64)
    rs = np.array(right_set, dtype=np.int64)
    mult_t = loc_t[q.mult[np.ix_(ts, ts)]]
    if (mult_t < 0).any():
        raise InternalDefect("two-sided elements not closed under multiplication")
    tq = validate_quantale(lat_t, mult_t)
    act_l = loc_l[q.mult[np.ix_(ts, ls)]]
    act_r = loc_r[q.mult[np.ix_(rs, ts)]]
    pair = loc_t[q.mult[np.ix_(ls, rs)]]
    if (act_l < 0).any() or (act_r < 0).any() or (pair < 0).any():
        raise InternalDefect("sided elements not closed under the restricted actions")
    left = make_module(tq, lat_l, "left", act_l)
    right = make_module(tq, lat_r, "right", act_r)
    return validate_triad(tq, left, right, pair)


@dataclass(frozen=True)
class TriadPredicates:
    strong: bool
    unital: bool
    strict: bool
    central: bool


def triad_predicates(triad: Triad) -> TriadPredicates:
    t, left, right, pair = triad.t, triad.left, triad.right, triad.pairing
    lat_l, lat_r = left.carrier, right.carrier
    idx_l = np.arange(lat_l.size)
    idx_r = np.arange(lat_r.size)
    strong = bool(
        np.all(lat_l.leq[idx_l, left.action[pair[:, lat_r.top], lat_l.top]])
        and np.all(lat_r.leq[idx_r, right.action[lat_r.top, pair[lat_l.top, :]]])
    )
    unital = (
        t.unit is not None
        and np.array_equal(left.action[t.unit, :], idx_l)
        and np.array_equal(right.action[:, t.unit], idx_r)
    )
    strict = strong and unital and int(pair[lat_l.top, lat_r.top]) == t.unit
    center = set(classify_quantale(t).center)
    central = all(int(v) in center for v in pair.ravel())
    return TriadPredicates(strong, unital, strict, central)


@dataclass(frozen=True, eq=False)
class TriadInvolution:
    """Involution on T together with the L <-> R swap tables."""

    star_t: np.ndarray   # (nt,)
    star_lr: np.ndarray  # (nl,) -> r index
    star_rl: np.ndarray  # (nr,) -> l index


def involutive_triad_violations(triad: Triad, inv: TriadInvolution) -> list[Violation]:
    t, left, right, pair = triad.t, triad.left, triad.right, triad.pairing
    lat_l, lat_r = left.carrier, right.carrier
    st = _check_table(inv.star_t, (t.size,), t.size, "star_t")
    slr = _check_table(inv.star_lr, (lat_l.size,), lat_r.size, "star_lr")
    srl = _check_table(inv.star_rl, (lat_r.size,), lat_l.size, "star_rl")
    out: list[Violation] = []
    out += [v for v in quantale_violations(t.carrier, t.mult, None, st) if v.law == "InvolutionLaw"]
    if not np.array_equal(srl[slr], np.arange(lat_l.size)) or not np.array_equal(
        slr[srl], np.arange(lat_r.size)
    ):
        out.append(Violation("InvolutionLaw", (), "L/R stars are not mutually inverse"))
    bad = slr[lat_l.join] != lat_r.join[slr[:, None], slr[None, :]]
    if bad.any():
        out.append(Violation("StarNotJoinPreserving", _first_true(bad), "on L"))
    bad = srl[lat_r.join] != lat_l.join[srl[:, None], srl[None, :]]
    if bad.any():
        out.append(Violation("StarNotJoinPreserving", _first_true(bad), "on R"))
    # (t l)* == l* t*
    lhs = slr[left.action]                     # [t, l]
    rhs = right.action[slr[:, None], st[None, :]].T
    bad = lhs != rhs
    if bad.any():
        out.append(Violation("StarLaw", _first_true(bad), "(tl)* != l* t*"))
    # (r t)* == t* r*
    lhs = srl[right.action]                    # [r, t]
    rhs = left.action[st[:, None], srl[None, :]].T
    bad = lhs != rhs
    if bad.any():
        out.append(Violation("StarLaw", _first_true(bad), "(rt)* != t* r*"))
    # (l r)* == r* l*
    lhs = st[pair]                             # [l, r]
    rhs = pair[srl[:, None], slr[None, :]].T
    bad = lhs != rhs
    if bad.any():
        out.append(Violation("StarLaw", _first_true(bad), "(lr)* != r* l*"))
    return out


def validate_involutive_triad(triad: Triad, inv: TriadInvolution) -> list[Violation]:
    return involutive_triad_violations(triad, inv)


@dataclass(frozen=True, eq=False)
class GirardTriadWitness:
    d_t: int
    perp_l: np.ndarray  # (nl,) -> r: the duality L^op ~ R
    perp_r: np.ndarray  # (nr,) -> l: its inverse


def girard_triad_structure(triad: Triad) -> list[GirardTriadWitness]:
    """All cyclic elements of T whose pairing residuals form a duality."""
    t, pair = triad.t, triad.pairing
    lat_l, lat_r, lat_t = triad.left.carrier, triad.right.carrier, t.carrier
    nl, nr = lat_l.size, lat_r.size
    found = []
    for d in range(t.size):
        below_t = lat_t.leq[:, d][t.mult]
        if not np.array_equal(below_t, below_t.T):
            continue  # d must be cyclic for T's own multiplication
        below = lat_t.leq[:, d][pair]  # [l, r] iff l r <= d
        perp_l = np.empty(nl, dtype=np.int64)
        for l in range(nl):
            perp_l[l] = join_set(lat_r, np.flatnonzero(below[l]))
        perp_r = np.empty(nr, dtype=np.int64)
        for r in range(nr):
            perp_r[r] = join_set(lat_l, np.flatnonzero(below[:, r]))
        if not np.array_equal(perp_r[perp_l], np.arange(nl)):
            continue
        if not np.array_equal(perp_l[perp_r], np.arange(nr)):
            continue
        # mutually inverse order anti-isomorphisms
        if not np.array_equal(lat_l.leq, lat_r.leq[perp_l[:, None], perp_l[None, :]].T):
            continue
        if not np.array_equal(lat_r.leq, lat_l.leq[perp_r[:, None], perp_r[None, :]].T):
            continue
        # l r <= d  iff  r <= l^perp  iff  l <= r^perp, pointwise
        ok = np.array_equal(below, lat_r.leq[np.arange(nr)[None, :], perp_l[:, None]])
        ok = ok and np.array_equal(below, lat_l.leq[np.arange(nl)[:, None], perp_r[None, :]])
        if not ok:
            continue
        found.append(GirardTriadWitness(d, _freeze(perp_l), _freeze(perp_r)))
    return found

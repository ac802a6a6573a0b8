"""Quantales, their modules and bimodules, sided elements, couples.

Units are detected rather than declared: when no unit is supplied the
validator searches for one and records it, since being unital is a property
of the multiplication, not extra structure.  Residuations are never stored;
they are computed as adjoints of the translation maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InternalDefect, ValidationError, Violation
from .suplat import SupLattice, SupMap, _first_true, _freeze, join_set, sup_map_violations


@dataclass(frozen=True, eq=False)
class Quantale:
    carrier: SupLattice
    mult: np.ndarray  # int (n, n)
    unit: Optional[int] = None
    involution: Optional[np.ndarray] = None

    @property
    def size(self) -> int:
        return self.carrier.size


def _check_table(tab, shape, bound, what: str) -> np.ndarray:
    arr = np.asarray(tab, dtype=np.int64)
    if arr.shape != shape:
        raise ValueError(f"{what} must have shape {shape}, got {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= bound):
        raise ValueError(f"{what} contains out-of-range element indices")
    return arr


def _assoc_violations(table: np.ndarray, law: str) -> list[Violation]:
    """(ab)c == a(bc) over all triples, one left-translation row at a time."""
    n = table.shape[0]
    for a in range(n):
        lhs = table[table[a], :]   # [b, c] = (ab)c
        rhs = table[a][table]      # [b, c] = a(bc)
        if not np.array_equal(lhs, rhs):
            b, c = _first_true(lhs != rhs)
            return [Violation(law, (a, b, c))]
    return []


def _bimorphism_violations(
    table: np.ndarray,
    left_lat: SupLattice,
    right_lat: SupLattice,
    out_lat: SupLattice,
    tag: str,
) -> list[Violation]:
    """Join distribution in each argument plus bottom annihilation."""
    out: list[Violation] = []
    nl, nr = table.shape
    left_bad = table[:, right_lat.bottom] != out_lat.bottom
    if left_bad.any():
        q = int(np.flatnonzero(left_bad)[0])
        out.append(Violation(f"ZeroAnnihilation({tag})", (q,), "right argument bottom"))
    right_bad = table[left_lat.bottom, :] != out_lat.bottom
    if right_bad.any():
        q = int(np.flatnonzero(right_bad)[0])
        out.append(Violation(f"ZeroAnnihilation({tag})", (q,), "left argument bottom"))
    # (a v b) * c == a*c v b*c, one a at a time
    for a in range(nl):
        lhs = table[left_lat.join[a], :]                  # [b, c] = (a v b) * c
        rhs = out_lat.join[table[a][None, :], table]      # [b, c] = a*c v b*c
        if not np.array_equal(lhs, rhs):
            b, c = _first_true(lhs != rhs)
            out.append(Violation(f"JoinDistribution({tag})", (a, b, c), "left argument"))
            break
    # c * (a v b) == c*a v c*b, one c at a time
    for c in range(nl):
        row = table[c, :]
        lhs = row[right_lat.join]
        rhs = out_lat.join[row[:, None], row[None, :]]
        if not np.array_equal(lhs, rhs):
            a, b = _first_true(lhs != rhs)
            out.append(Violation(f"JoinDistribution({tag})", (c, a, b), "right argument"))
            break
    return out


def quantale_violations(carrier: SupLattice, mult, unit=None, involution=None) -> list[Violation]:
    n = carrier.size
    table = _check_table(mult, (n, n), n, "multiplication table")
    out = _assoc_violations(table, "Associativity")
    out += _bimorphism_violations(table, carrier, carrier, carrier, "mult")
    if unit is not None:
        bad = (table[unit, :] != np.arange(n)) | (table[:, unit] != np.arange(n))
        if bad.any():
            out.append(Violation("UnitLaw", (int(np.flatnonzero(bad)[0]),)))
    if involution is not None:
        star = _check_table(involution, (n,), n, "involution table")
        if (star[star] != np.arange(n)).any():
            q = int(np.flatnonzero(star[star] != np.arange(n))[0])
            out.append(Violation("InvolutionLaw", (q,), "not involutive"))
        anti = star[table] != table[star[:, None], star[None, :]].T
        if anti.any():
            out.append(Violation("InvolutionLaw", _first_true(anti), "(qq')* != q'* q*"))
        joins = star[carrier.join] != carrier.join[star[:, None], star[None, :]]
        if joins.any():
            out.append(Violation("InvolutionLaw", _first_true(joins), "star not join-preserving"))
        if star[carrier.bottom] != carrier.bottom:
            out.append(Violation("InvolutionLaw", (carrier.bottom,), "star moves bottom"))
    return out


def find_unit(carrier: SupLattice, mult: np.ndarray) -> Optional[int]:
    n = carrier.size
    idx = np.arange(n)
    for e in range(n):
        if np.array_equal(mult[e, :], idx) and np.array_equal(mult[:, e], idx):
            return e
    return None


def validate_quantale(carrier: SupLattice, mult, unit=None, involution=None) -> Quantale:
    n = carrier.size
    table = _check_table(mult, (n, n), n, "multiplication table")
    bad = quantale_violations(carrier, table, unit, involution)
    if bad:
        raise ValidationError(bad, "quantale")
    if unit is None:
        unit = find_unit(carrier, table)
    star = None
    if involution is not None:
        star = _freeze(np.asarray(involution, dtype=np.int64).copy())
    return Quantale(carrier, _freeze(table.copy()), unit, star)


def _join_over_rows(lattice: SupLattice, mask: np.ndarray) -> np.ndarray:
    """Per-row join of {x | mask[row, x]}; rows of an (m, n) boolean mask."""
    m, n = mask.shape
    res = np.full(m, lattice.bottom, dtype=np.int64)
    for x in range(n):
        sel = mask[:, x]
        res[sel] = lattice.join[res[sel], x]
    return res


def left_residual(q: Quantale, d: int) -> np.ndarray:
    """Table y -> join{x | x*y <= d} (adjoint of right translation)."""
    below = q.carrier.leq[:, d][q.mult]  # below[x, y] iff x*y <= d
    return _join_over_rows(q.carrier, below.T)


def right_residual(q: Quantale, d: int) -> np.ndarray:
    """Table y -> join{x | y*x <= d} (adjoint of left translation)."""
    below = q.carrier.leq[:, d][q.mult]
    return _join_over_rows(q.carrier, below)


@dataclass(frozen=True)
class QuantaleClassification:
    unital: bool
    semiunital: bool
    strictly_two_sided: bool
    girard_elements: tuple[int, ...]
    center: tuple[int, ...]


def classify_quantale(q: Quantale) -> QuantaleClassification:
    lat, mult = q.carrier, q.mult
    n = lat.size
    idx = np.arange(n)
    semi = bool(
        np.all(lat.leq[idx, mult[idx, lat.top]] & lat.leq[idx, mult[lat.top, idx]])
    )
    girard = []
    for d in range(n):
        below = lat.leq[:, d][mult]
        if not np.array_equal(below, below.T):
            continue  # not cyclic
        rres = _join_over_rows(lat, below)      # q -> join{x | q*x <= d}
        lres = _join_over_rows(lat, below.T)    # q -> join{x | x*q <= d}
        if np.array_equal(lres[rres], idx) and np.array_equal(rres[lres], idx):
            girard.append(d)
    center = tuple(int(c) for c in range(n) if np.array_equal(mult[c, :], mult[:, c]))
    return QuantaleClassification(
        unital=q.unit is not None,
        semiunital=semi,
        strictly_two_sided=q.unit is not None and q.unit == lat.top,
        girard_elements=tuple(girard),
        center=center,
    )


def sided_elements(q: Quantale) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """(left-sided, two-sided, right-sided) element sets, join-closure verified."""
    lat, mult = q.carrier, q.mult
    idx = np.arange(lat.size)
    right = np.flatnonzero(lat.leq[mult[idx, lat.top], idx])
    left = np.flatnonzero(lat.leq[mult[lat.top, idx], idx])
    two = np.intersect1d(left, right)
    for name, members in (("left", left), ("two", two), ("right", right)):
        inside = set(int(x) for x in members)
        for x in members:
            for y in members:
                if int(lat.join[x, y]) not in inside:
                    raise InternalDefect(
                        f"{name}-sided elements not closed under joins at ({x}, {y})"
                    )
    return tuple(map(int, left)), tuple(map(int, two)), tuple(map(int, right))


@dataclass(frozen=True)
class QuantalePredicates:
    faithful: bool
    strictly_faithful: bool
    distributive: bool


def quantale_predicates(q: Quantale) -> QuantalePredicates:
    lat, mult = q.carrier, q.mult
    n = lat.size
    left, _, right = sided_elements(q)
    ls = np.array(left, dtype=np.int64)
    rs = np.array(right, dtype=np.int64)
    keys = {}
    faithful = True
    for x in range(n):
        key = (mult[ls, x].tobytes(), mult[x, rs].tobytes())
        if key in keys:
            faithful = False
            break
        keys[key] = x
    keys = {}
    strictly = True
    for x in range(n):
        key = mult[mult[ls[:, None], x], rs[None, :]].tobytes()
        if key in keys:
            strictly = False
            break
        keys[key] = x
    lhs = lat.meet[
        lat.join[rs[:, None, None], np.arange(n)[None, None, :]],
        lat.join[ls[None, :, None], np.arange(n)[None, None, :]],
    ]
    rhs = lat.join[mult[rs[:, None], ls[None, :]][:, :, None], np.arange(n)[None, None, :]]
    distributive = bool(np.array_equal(lhs, rhs))
    return QuantalePredicates(faithful, strictly, distributive)


@dataclass(frozen=True, eq=False)
class ModuleAction:
    """A quantale acting on a sup-lattice from the declared side.

    Left actions are tables (n_q, n_m) -> m; right actions (n_m, n_q) -> m.
    """

    quantale: Quantale
    carrier: SupLattice
    side: str
    action: np.ndarray

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', got {self.side!r}")


def module_violations(action: ModuleAction, unital_required: bool = False) -> list[Violation]:
    q, m = action.quantale, action.carrier
    nq, nm = q.size, m.size
    out: list[Violation] = []
    if action.side == "left":
        tab = _check_table(action.action, (nq, nm), nm, "left action table")
        out += _bimorphism_violations(tab, q.carrier, m, m, "action")
        # (q q') m == q (q' m), one q at a time
        for qi in range(nq):
            lhs = tab[q.mult[qi], :]
            rhs = tab[qi][tab]
            if not np.array_equal(lhs, rhs):
                qj, mi = _first_true(lhs != rhs)
                out.append(Violation("ActionAssociativity", (qi, qj, mi)))
                break
        if unital_required:
            if q.unit is None:
                out.append(Violation("UnitAction", (), "quantale has no unit"))
            else:
                bad = tab[q.unit, :] != np.arange(nm)
                if bad.any():
                    out.append(Violation("UnitAction", (int(np.flatnonzero(bad)[0]),)))
    else:
        tab = _check_table(action.action, (nm, nq), nm, "right action table")
        out += _bimorphism_violations(tab, m, q.carrier, m, "action")
        # (m q) q' == m (q q'), one m at a time
        for mi in range(nm):
            lhs = tab[tab[mi], :]     # [q, q'] = tab[tab[m, q], q']
            rhs = tab[mi][q.mult]     # [q, q'] = tab[m, mult[q, q']]
            if not np.array_equal(lhs, rhs):
                qi, qj = _first_true(lhs != rhs)
                out.append(Violation("ActionAssociativity", (mi, qi, qj)))
                break
        if unital_required:
            if q.unit is None:
                out.append(Violation("UnitAction", (), "quantale has no unit"))
            else:
                bad = tab[:, q.unit] != np.arange(nm)
                if bad.any():
                    out.append(Violation("UnitAction", (int(np.flatnonzero(bad)[0]),)))
    return out


def validate_module(action: ModuleAction, unital_required: bool = False) -> ModuleAction:
    bad = module_violations(action, unital_required)
    if bad:
        raise ValidationError(bad, f"{action.side} module")
    return action


def make_module(quantale: Quantale, carrier: SupLattice, side: str, action,
                unital_required: bool = False) -> ModuleAction:
    shape = (quantale.size, carrier.size) if side == "left" else (carrier.size, quantale.size)
    tab = _check_table(action, shape, carrier.size, f"{side} action table")
    mod = ModuleAction(quantale, carrier, side, _freeze(tab.copy()))
    return validate_module(mod, unital_required)


@dataclass(frozen=True, eq=False)
class Couple:
    """Quantales C -> Q with Q acting on C on both sides."""

    c: Quantale
    q: Quantale
    phi: SupMap          # C -> Q
    left: ModuleAction   # Q x C -> C
    right: ModuleAction  # C x Q -> C


@dataclass(frozen=True)
class CoupleReport:
    violations: tuple[Violation, ...]
    unital: bool

    @property
    def ok(self) -> bool:
        return not self.violations


def couple_violations(couple: Couple) -> list[Violation]:
    c, q = couple.c, couple.q
    nc, nq = c.size, q.size
    la, ra = couple.left.action, couple.right.action
    phi = couple.phi.table
    out: list[Violation] = []
    out += [
        Violation(f"Phi.{v.law}", v.witness, v.detail)
        for v in sup_map_violations(couple.phi.source, couple.phi.target, phi)
    ]
    out += [Violation(f"LeftAction.{v.law}", v.witness, v.detail) for v in module_violations(couple.left)]
    out += [Violation(f"RightAction.{v.law}", v.witness, v.detail) for v in module_violations(couple.right)]
    # bimodule: (q c) q' == q (c q'), chunked over q
    for qi in range(nq):
        lhs = ra[la[qi], :]
        rhs = la[qi][ra]
        bad = lhs != rhs
        if bad.any():
            ci, qj = _first_true(bad)
            out.append(Violation("BimoduleLaw", (qi, ci, qj)))
            break
    bad = phi[c.mult] != q.mult[phi[:, None], phi[None, :]]
    if bad.any():
        out.append(Violation("PhiNotMultiplicative", _first_true(bad)))
    bad = phi[la] != q.mult[np.arange(nq)[:, None], phi[None, :]]
    if bad.any():
        out.append(Violation("PhiNotLeftEquivariant", _first_true(bad)))
    bad = phi[ra] != q.mult[phi[:, None], np.arange(nq)[None, :]]
    if bad.any():
        out.append(Violation("PhiNotRightEquivariant", _first_true(bad)))
    bad = c.mult != la[phi, :]
    if bad.any():
        out.append(Violation("CouplingLaw", _first_true(bad), "cc' != phi(c)c'"))
    bad = c.mult != ra[:, phi]
    if bad.any():
        out.append(Violation("CouplingLaw", _first_true(bad), "cc' != c phi(c')"))
    return out


def validate_couple(couple: Couple) -> CoupleReport:
    out = couple_violations(couple)
    unital = False
    if couple.q.unit is not None:
        e = couple.q.unit
        idx = np.arange(couple.c.size)
        unital = bool(
            np.array_equal(couple.left.action[e, :], idx)
            and np.array_equal(couple.right.action[:, e], idx)
        )
    return CoupleReport(tuple(out), unital)


def girard_couple_check(couple: Couple, d: int) -> list[Violation]:
    """Cyclic-dualizing check for d in C with respect to the bimodule actions."""
    c, q = couple.c, couple.q
    la, ra = couple.left.action, couple.right.action
    clat, qlat = c.carrier, q.carrier
    nc, nq = c.size, q.size
    out: list[Violation] = []
    below_l = clat.leq[:, d][la]  # [q, c] iff q*c <= d
    below_r = clat.leq[:, d][ra]  # [c, q] iff c*q <= d
    bad = below_l != below_r.T
    if bad.any():
        out.append(Violation("CyclicityFails", _first_true(bad)))
    # residuations as adjoints of the C-valued translations
    q_to_c = _join_over_rows(clat, below_l)        # q -> join{c | q c <= d}
    c_from_q = _join_over_rows(clat, below_r.T)    # q -> join{c | c q <= d}
    d_from_c = _join_over_rows(qlat, below_l.T)    # c -> join{p | p c <= d}
    c_to_d = _join_over_rows(qlat, below_r)        # c -> join{p | c p <= d}
    idx_q = np.arange(nq)
    bad_q = (d_from_c[q_to_c] != idx_q) | (c_to_d[c_from_q] != idx_q)
    if bad_q.any():
        out.append(Violation("DualizingFailsOnQ", (int(np.flatnonzero(bad_q)[0]),)))
    idx_c = np.arange(nc)
    # c = d <- (c -> d): the outer residuation is over (-)*y : C -> C with y in Q,
    # which is exactly c_from_q; dually for (d <- c) -> d via q_to_c.
    bad_c = (c_from_q[c_to_d] != idx_c) | (q_to_c[d_from_c] != idx_c)
    if bad_c.any():
        out.append(Violation("DualizingFailsOnC", (int(np.flatnonzero(bad_c)[0]),)))
    return out

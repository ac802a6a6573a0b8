"""Extremal solutions of a triad and verifiers for the statements about them.

The tensor solution is built on the quotient tensor product of the two
modules over the quantale.  Its elements are canonicalized as maximal closed
subsets of R x L, computed by a worklist fixpoint over four rule families:
down-closure, coordinatewise join-closure, the exchange rule for the
quantale action (both directions), and bottom-pair absorption.  Internally
a closed set is carried as its vector of column maxima (one R-element per
L-column), which is a bijective encoding of the closed set.

The endomorphism solution consists of the compatible pairs of module
endomorphisms, ordered pointwise.  Joins of such pairs are pointwise, and
this is asserted during the build.

Every element of the tensor lattice is the join of the pure tensors of its
column maxima, so any operation that is join-preserving in each argument
extends from pure tensors by folding over columns; the constructions below
use that extension and the validators then re-check all laws exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    InternalDefect,
    NotCentralTriad,
    PreconditionError,
    PropertyMismatch,
    SearchSpaceExceeded,
    ValidationError,
    Violation,
)
from .algebra import (
    Couple,
    ModuleAction,
    Quantale,
    _bimorphism_violations,
    _join_over_rows,
    classify_quantale,
    find_unit,
    girard_couple_check,
    module_violations,
    quantale_predicates,
    quantale_violations,
    sided_elements,
    validate_couple,
)
from .suplat import (
    Guards,
    SupLattice,
    SupMap,
    _first_true,
    _freeze,
    enumerate_sup_morphisms,
    join_set,
    meet_set,
    validate_sup_lattice,
    validate_sup_map,
)
from .triad import (
    GirardTriadWitness,
    Triad,
    TriadInvolution,
    girard_triad_structure,
    triad_predicates,
    validate_involutive_triad,
)


class _TensorEngine:
    """Closure computations for subsets of R x L, in column-max form."""

    def __init__(self, triad: Triad, guards: Guards):
        self.triad = triad
        self.lat_l = triad.left.carrier
        self.lat_r = triad.right.carrier
        self.nl = self.lat_l.size
        self.nr = self.lat_r.size
        self.nt = triad.t.size
        pairs = self.nl * self.nr
        if pairs > guards.max_tensor_pairs:
            raise SearchSpaceExceeded(2**pairs, 2**guards.max_tensor_pairs, "tensor closure")
        self.tl = triad.left.action
        self.rt = triad.right.action
        # res[t, x] = join{r | r t <= x}: residual of the right action
        res = np.empty((self.nt, self.nr), dtype=np.int64)
        for t in range(self.nt):
            below = self.lat_r.leq[self.rt[:, t], :]  # [r, x] iff r t <= x
            for x in range(self.nr):
                res[t, x] = join_set(self.lat_r, np.flatnonzero(below[:, x]))
        self.res = res
        self.ups = [np.flatnonzero(self.lat_l.leq[l]) for l in range(self.nl)]
        self.join_targets = [
            (l1, l2, int(self.lat_l.join[l1, l2]))
            for l1 in range(self.nl)
            for l2 in range(l1 + 1, self.nl)
            if self.lat_l.join[l1, l2] not in (l1, l2)
        ]

    def template(self, batch: int) -> np.ndarray:
        m = np.full((batch, self.nl), self.lat_r.bottom, dtype=np.int64)
        m[:, self.lat_l.bottom] = self.lat_r.top
        return m

    def close(self, m: np.ndarray) -> np.ndarray:
        """Least closed column-max vectors above the given ones (in place)."""
        joinr, meetr = self.lat_r.join, self.lat_r.meet
        m[:, self.lat_l.bottom] = self.lat_r.top
        while True:
            before = m.copy()
            for l in range(self.nl):
                for l2 in self.ups[l]:
                    if l2 != l:
                        m[:, l] = joinr[m[:, l], m[:, l2]]
            for l1, l2, j in self.join_targets:
                m[:, j] = joinr[m[:, j], meetr[m[:, l1], m[:, l2]]]
            for t in range(self.nt):
                for l in range(self.nl):
                    tl = self.tl[t, l]
                    m[:, tl] = joinr[m[:, tl], self.res[t][m[:, l]]]
                    m[:, l] = joinr[m[:, l], self.rt[m[:, tl], t]]
            if np.array_equal(m, before):
                return m

    def close_mask(self, mask: int) -> np.ndarray:
        """Closure of an arbitrary pair set given as a bitmask."""
        m = self.template(1)
        for p in _mask_bits(mask):
            r, l = divmod(p, self.nl)
            m[0, l] = self.lat_r.join[m[0, l], r]
        return self.close(m)[0]

    def mask_of(self, m: np.ndarray) -> int:
        out = 0
        for l in range(self.nl):
            for r in np.flatnonzero(self.lat_r.leq[:, m[l]]):
                out |= 1 << (int(r) * self.nl + l)
        return out


def _mask_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _RowIndex:
    """Vectorized lookup of integer matrix rows against a fixed row set."""

    def __init__(self, rows: np.ndarray):
        self._dtype = np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))
        keys = np.ascontiguousarray(rows).view(self._dtype).ravel()
        self._order = np.argsort(keys)
        self._sorted = keys[self._order]

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Row indices into the fixed set, -1 where a row is absent."""
        keys = np.ascontiguousarray(rows).view(self._dtype).ravel()
        pos = np.searchsorted(self._sorted, keys)
        pos = np.minimum(pos, len(self._sorted) - 1)
        found = self._sorted[pos] == keys
        return np.where(found, self._order[pos], -1)


class TensorProduct:
    """The quotient tensor lattice: all closed subsets of R x L."""

    def __init__(self, triad: Triad, guards: Guards = Guards()):
        self.triad = triad
        eng = _TensorEngine(triad, guards)
        self._engine = eng
        nl, nr = eng.nl, eng.nr
        # closures of all pure tensors seed the join-generation
        seeds = eng.template(nr * nl)
        for r in range(nr):
            for l in range(nl):
                row = r * nl + l
                seeds[row, l] = eng.lat_r.join[seeds[row, l], r]
        seeds = eng.close(seeds)
        bottom = eng.close(eng.template(1))
        known: dict[bytes, np.ndarray] = {bottom[0].tobytes(): bottom[0]}
        gens: dict[bytes, np.ndarray] = {}
        for row in seeds:
            gens.setdefault(row.tobytes(), row)
        known.update(gens)
        frontier = list(known.values())
        gen_rows = list(gens.values())
        joinr = eng.lat_r.join
        while frontier:
            stack = np.array(frontier, dtype=np.int64)
            fresh: dict[bytes, np.ndarray] = {}
            for g in gen_rows:
                cand = eng.close(joinr[stack, g[None, :]])
                for row in cand:
                    key = row.tobytes()
                    if key not in known and key not in fresh:
                        fresh[key] = row
            known.update(fresh)
            frontier = list(fresh.values())

        rows = list(known.values())
        masks = [eng.mask_of(m) for m in rows]
        order = sorted(
            range(len(rows)),
            key=lambda i: (masks[i].bit_count(), tuple(_mask_bits(masks[i]))),
        )
        self.column_max = _freeze(np.array([rows[i] for i in order], dtype=np.int64))
        self.members = tuple(masks[i] for i in order)
        self.index = {self.column_max[i].tobytes(): i for i in range(len(order))}
        pure = np.empty((nr, nl), dtype=np.int64)
        for r in range(nr):
            for l in range(nl):
                pure[r, l] = self.index[seeds[r * nl + l].tobytes()]
        self.pure = _freeze(pure)
        n = len(self.members)
        leq = np.empty((n, n), dtype=bool)
        block = max(1, (1 << 22) // max(1, n * nl))
        for start in range(0, n, block):
            stop = min(start + block, n)
            cmp = eng.lat_r.leq[
                self.column_max[start:stop, None, :], self.column_max[None, :, :]
            ]
            leq[start:stop] = cmp.all(axis=2)
        self.lattice = validate_sup_lattice(leq)

    @property
    def size(self) -> int:
        return len(self.members)

    def element_of_mask(self, mask: int) -> int:
        """Index of the closure of an arbitrary pair set."""
        return self.index[self._engine.close_mask(mask).tobytes()]


def tensor_over_t(triad: Triad, guards: Guards = Guards()) -> TensorProduct:
    """All closed subsets of R x L with the inclusion order and pure-tensor table."""
    return TensorProduct(triad, guards)


@dataclass(frozen=True, eq=False)
class Solution:
    """A quantale acting on both modules with a compatible pairing."""

    triad: Triad
    quantale: Quantale
    qr: np.ndarray  # (nq, nr) -> r
    lq: np.ndarray  # (nl, nq) -> l
    rl: np.ndarray  # (nr, nl) -> q


_SOLUTION_LAWS = (
    ("TLQ", "(tl)q = t(lq)"),
    ("QRT", "(qr)t = q(rt)"),
    ("QRL", "(qr)l = q(rl)"),
    ("RLQ", "(rl)q = r(lq)"),
    ("RTL", "(rt)l = r(tl)"),
    ("LQR", "(lq)r = l(qr)"),
    ("RLR", "(rl)r' = r(lr')"),
    ("LRL", "(lr)l' = l(rl')"),
)


def solution_violations(triad: Triad, sol: Solution) -> list[Violation]:
    """Exhaustive check of the solution laws, tagged by law name."""
    q = sol.quantale
    lat_l, lat_r = triad.left.carrier, triad.right.carrier
    tl, rt, pair = triad.left.action, triad.right.action, triad.pairing
    qr, lq, rl, mult = sol.qr, sol.lq, sol.rl, q.mult
    out: list[Violation] = []
    out += [
        Violation("QQQ" if v.law == "Associativity" else f"QQ.{v.law}", v.witness, v.detail)
        for v in quantale_violations(q.carrier, mult, q.unit)
    ]
    out += [
        Violation("QQR" if v.law == "ActionAssociativity" else f"QR.{v.law}", v.witness, v.detail)
        for v in module_violations(ModuleAction(q, lat_r, "left", qr))
    ]
    out += [
        Violation("LQQ" if v.law == "ActionAssociativity" else f"LQ.{v.law}", v.witness, v.detail)
        for v in module_violations(ModuleAction(q, lat_l, "right", lq))
    ]
    out += [
        Violation(f"RL.{v.law}", v.witness, v.detail)
        for v in _bimorphism_violations(rl, lat_r, lat_l, q.carrier, "RL")
    ]
    nq = q.size
    checks = {
        "TLQ": (lq[tl, :], tl[:, lq]),
        "QRT": (rt[qr, :], qr[:, rt]),
        "QRL": (rl[qr, :], mult[:, rl]),
        "RLQ": (mult[rl, :], rl[:, lq]),
        "RTL": (rl[rt, :], rl[:, tl]),
        "LQR": (pair[lq, :], pair[:, qr]),
        "RLR": (qr[rl, :], rt[:, pair]),
        "LRL": (tl[pair, :], lq[:, rl]),
    }
    for tag, _ in _SOLUTION_LAWS:
        lhs, rhs = checks[tag]
        bad = lhs != rhs
        if bad.any():
            out.append(Violation(tag, _first_true(bad)))
    return out


def validate_solution(triad: Triad, sol: Solution) -> list[Violation]:
    return solution_violations(triad, sol)


class TensorSolution:
    """The tensor quantale as a solution of its triad."""

    def __init__(self, triad: Triad, guards: Guards = Guards()):
        self.triad = triad
        tp = TensorProduct(triad, guards)
        self.tensor = tp
        cm = tp.column_max
        lat_l, lat_r = triad.left.carrier, triad.right.carrier
        tl, rt, pair = triad.left.action, triad.right.action, triad.pairing
        nl, nr, nc = lat_l.size, lat_r.size, tp.size
        qr = np.empty((nc, nr), dtype=np.int64)
        for rp in range(nr):
            acc = np.full(nc, lat_r.bottom, dtype=np.int64)
            for l in range(nl):
                acc = lat_r.join[acc, rt[cm[:, l], pair[l, rp]]]
            qr[:, rp] = acc
        lq = np.empty((nl, nc), dtype=np.int64)
        for l in range(nl):
            acc = np.full(nc, lat_l.bottom, dtype=np.int64)
            for lp in range(nl):
                acc = lat_l.join[acc, tl[pair[l, cm[:, lp]], lp]]
            lq[l, :] = acc
        joinc = tp.lattice.join
        mult = np.empty((nc, nc), dtype=np.int64)
        for a in range(nc):
            acc = np.full(nc, tp.lattice.bottom, dtype=np.int64)
            for lp in range(nl):
                acc = joinc[acc, tp.pure[qr[a, cm[:, lp]], lp]]
            mult[a, :] = acc
        rl = tp.pure
        # solution_violations re-checks the quantale laws, so build it directly
        quantale = Quantale(tp.lattice, _freeze(mult), find_unit(tp.lattice, mult))
        self.solution = Solution(triad, quantale, _freeze(qr), _freeze(lq), rl)
        bad = solution_violations(triad, self.solution)
        if bad:
            raise InternalDefect(f"tensor solution failed its own laws: {bad[0]}")

    @property
    def quantale(self) -> Quantale:
        return self.solution.quantale

    @property
    def size(self) -> int:
        return self.tensor.size


def build_q0(triad: Triad, guards: Guards = Guards()) -> TensorSolution:
    return TensorSolution(triad, guards)


class EndoSolution:
    """Compatible pairs of module endomorphisms as a solution."""

    def __init__(self, triad: Triad, guards: Guards = Guards()):
        self.triad = triad
        lat_l, lat_r = triad.left.carrier, triad.right.carrier
        tl, rt, pair = triad.left.action, triad.right.action, triad.pairing
        nl, nr, nt = lat_l.size, lat_r.size, triad.t.size
        cand_a = np.array(
            [f.table for f in enumerate_sup_morphisms(lat_l, lat_l, guards)], dtype=np.int64
        ).reshape(-1, nl)
        keep = np.ones(len(cand_a), dtype=bool)
        for t in range(nt):
            keep &= (cand_a[:, tl[t]] == tl[t][cand_a]).all(axis=1)
        alphas = cand_a[keep]
        cand_b = np.array(
            [f.table for f in enumerate_sup_morphisms(lat_r, lat_r, guards)], dtype=np.int64
        ).reshape(-1, nr)
        keep = np.ones(len(cand_b), dtype=bool)
        for t in range(nt):
            keep &= (cand_b[:, rt[:, t]] == rt[cand_b, t]).all(axis=1)
        betas = cand_b[keep]
        self.n_alphas, self.n_betas = len(alphas), len(betas)

        buckets: dict[bytes, tuple[list[int], list[int]]] = {}
        for i, a in enumerate(alphas):
            buckets.setdefault(pair[a, :].tobytes(), ([], []))[0].append(i)
        for j, b in enumerate(betas):
            key = pair[:, b].tobytes()
            if key in buckets:
                buckets[key][1].append(j)
        pairs = sorted(
            (tuple(alphas[i]), tuple(betas[j]))
            for ai, bj in buckets.values()
            for i in ai
            for j in bj
        )
        self.alphas = _freeze(np.array([p[0] for p in pairs], dtype=np.int64).reshape(-1, nl))
        self.betas = _freeze(np.array([p[1] for p in pairs], dtype=np.int64).reshape(-1, nr))
        nq = len(pairs)
        self.index = {
            (self.alphas[i].tobytes(), self.betas[i].tobytes()): i for i in range(nq)
        }
        leq = np.empty((nq, nq), dtype=bool)
        block = max(1, (1 << 22) // max(1, nq * (nl + nr)))
        for start in range(0, nq, block):
            stop = min(start + block, nq)
            ok = lat_l.leq[self.alphas[start:stop, None, :], self.alphas[None, :, :]].all(axis=2)
            ok &= lat_r.leq[self.betas[start:stop, None, :], self.betas[None, :, :]].all(axis=2)
            leq[start:stop] = ok
        lattice = validate_sup_lattice(leq)
        # joins must be pointwise joins of tables (compatibility is join-stable)
        for i in range(nq):
            ja = lat_l.join[self.alphas[i][None, :], self.alphas]
            jb = lat_r.join[self.betas[i][None, :], self.betas]
            j = lattice.join[i]
            if not np.array_equal(ja, self.alphas[j]) or not np.array_equal(jb, self.betas[j]):
                raise InternalDefect(f"pointwise joins with pair {i} are not the lattice joins")
        rows = _RowIndex(np.concatenate([self.alphas, self.betas], axis=1))
        mult = np.empty((nq, nq), dtype=np.int64)
        for i in range(nq):
            comp_a = self.alphas[:, self.alphas[i]]          # alpha' o alpha_i
            comp_b = self.betas[i][self.betas]               # beta_i o beta'
            mult[i] = rows.lookup(np.concatenate([comp_a, comp_b], axis=1))
        if (mult < 0).any():
            raise InternalDefect("composition of compatible pairs left the pair set")
        rl = np.empty((nr, nl), dtype=np.int64)
        for r in range(nr):
            for l in range(nl):
                a = tl[pair[:, r], l]
                b = rt[r, pair[l, :]]
                rl[r, l] = self.index[(a.tobytes(), b.tobytes())]
        quantale = Quantale(lattice, _freeze(mult), find_unit(lattice, mult))
        ident = self.index.get(
            (np.arange(nl, dtype=np.int64).tobytes(), np.arange(nr, dtype=np.int64).tobytes())
        )
        if ident is None or quantale.unit != ident:
            raise InternalDefect("identity pair is not the unit of the pair quantale")
        self.solution = Solution(
            triad, quantale, _freeze(self.betas.copy()), _freeze(self.alphas.T.copy()), _freeze(rl)
        )
        bad = solution_violations(triad, self.solution)
        if bad:
            raise InternalDefect(f"endomorphism solution failed its own laws: {bad[0]}")

    @property
    def quantale(self) -> Quantale:
        return self.solution.quantale

    @property
    def size(self) -> int:
        return len(self.alphas)


def build_q1(triad: Triad, guards: Guards = Guards()) -> EndoSolution:
    return EndoSolution(triad, guards)


class SolutionCouple:
    """Q0 -> Q1 with the canonical map and the bimodule actions of Q1 on Q0."""

    def __init__(self, q0: TensorSolution, q1: EndoSolution):
        if q0.triad is not q1.triad:
            raise ValueError("both solutions must come from the same triad")
        self.q0, self.q1 = q0, q1
        triad = q0.triad
        tp = q0.tensor
        cm = tp.column_max
        nl = triad.left.carrier.size
        nc, nq = q0.size, q1.size
        lat1 = q1.quantale.carrier
        phi = np.full(nc, lat1.bottom, dtype=np.int64)
        for l in range(nl):
            phi = lat1.join[phi, q1.solution.rl[cm[:, l], l]]
        self.phi = validate_sup_map(tp.lattice, lat1, phi)
        joinc = tp.lattice.join
        left = np.empty((nq, nc), dtype=np.int64)
        right = np.empty((nc, nq), dtype=np.int64)
        for qi in range(nq):
            acc = np.full(nc, tp.lattice.bottom, dtype=np.int64)
            beta = q1.betas[qi]
            for l in range(nl):
                acc = joinc[acc, tp.pure[beta[cm[:, l]], l]]
            left[qi, :] = acc
            acc = np.full(nc, tp.lattice.bottom, dtype=np.int64)
            alpha = q1.alphas[qi]
            for l in range(nl):
                acc = joinc[acc, tp.pure[cm[:, l], alpha[l]]]
            right[:, qi] = acc
        # validate_couple below re-checks both actions exhaustively
        self.couple = Couple(
            q0.quantale,
            q1.quantale,
            self.phi,
            ModuleAction(q1.quantale, tp.lattice, "left", _freeze(left)),
            ModuleAction(q1.quantale, tp.lattice, "right", _freeze(right)),
        )
        report = validate_couple(self.couple)
        if not report.ok:
            raise InternalDefect(f"canonical couple failed validation: {report.violations[0]}")
        if not report.unital:
            raise InternalDefect("canonical couple is not unital")

    @property
    def triad(self) -> Triad:
        return self.q0.triad


def phi_map(q0: TensorSolution, q1: EndoSolution) -> SolutionCouple:
    return SolutionCouple(q0, q1)


@dataclass(frozen=True, eq=False)
class CoupleFactorization:
    k: Quantale
    phi0: SupMap  # Q0 -> K
    phi1: SupMap  # K -> Q1


def factorization_violations(sc: SolutionCouple, f: CoupleFactorization) -> list[Violation]:
    out: list[Violation] = []
    phi0, phi1 = f.phi0.table, f.phi1.table
    mult_k = f.k.mult
    mult_c = sc.q0.quantale.mult
    mult_q = sc.q1.quantale.mult
    if not np.array_equal(phi1[phi0], sc.phi.table):
        bad = phi1[phi0] != sc.phi.table
        out.append(Violation("PhiComposition", (int(np.flatnonzero(bad)[0]),)))
    bad = phi0[mult_c] != mult_k[phi0[:, None], phi0[None, :]]
    if bad.any():
        out.append(Violation("Phi0NotMultiplicative", _first_true(bad)))
    bad = phi1[mult_k] != mult_q[phi1[:, None], phi1[None, :]]
    if bad.any():
        out.append(Violation("Phi1NotMultiplicative", _first_true(bad)))
    la = sc.couple.left.action
    ra = sc.couple.right.action
    nk = f.k.size
    lhs = phi0[la[phi1, :]]
    rhs = mult_k[np.arange(nk)[:, None], phi0[None, :]]
    bad = lhs != rhs
    if bad.any():
        out.append(Violation("CouplingLaw", _first_true(bad), "phi0(phi1(k) c) != k phi0(c)"))
    lhs = phi0[ra[:, phi1]]
    rhs = mult_k[phi0[:, None], np.arange(nk)[None, :]]
    bad = lhs != rhs
    if bad.any():
        out.append(Violation("CouplingLaw", _first_true(bad), "phi0(c phi1(k)) != phi0(c) k"))
    return out


def solution_to_factorization(sc: SolutionCouple, sol: Solution) -> CoupleFactorization:
    """phi0(r (x) l) = rl and phi1(k) = (acting on L, acting on R)."""
    tp = sc.q0.tensor
    cm = tp.column_max
    nl = sc.triad.left.carrier.size
    k = sol.quantale
    phi0 = np.full(tp.size, k.carrier.bottom, dtype=np.int64)
    for l in range(nl):
        phi0 = k.carrier.join[phi0, sol.rl[cm[:, l], l]]
    phi1 = np.empty(k.size, dtype=np.int64)
    for ki in range(k.size):
        key = (sol.lq[:, ki].tobytes(), sol.qr[ki, :].tobytes())
        idx = sc.q1.index.get(key)
        if idx is None:
            raise InternalDefect(f"solution element {ki} does not act as a compatible pair")
        phi1[ki] = idx
    f = CoupleFactorization(
        k,
        validate_sup_map(tp.lattice, k.carrier, phi0),
        validate_sup_map(k.carrier, sc.q1.quantale.carrier, phi1),
    )
    bad = factorization_violations(sc, f)
    if bad:
        raise InternalDefect(f"factorization of a valid solution failed: {bad[0]}")
    return f


def factorization_to_solution(sc: SolutionCouple, f: CoupleFactorization) -> Solution:
    """lq = l phi1(k), qr = phi1(k) r, rl = phi0(r (x) l)."""
    phi1 = f.phi1.table
    lq = sc.q1.alphas[phi1].T.copy()
    qr = sc.q1.betas[phi1].copy()
    rl = f.phi0.table[sc.q0.tensor.pure]
    sol = Solution(sc.triad, f.k, _freeze(qr), _freeze(lq), _freeze(rl))
    bad = solution_violations(sc.triad, sol)
    if bad:
        raise InternalDefect(f"solution rebuilt from a factorization failed: {bad[0]}")
    return sol


@dataclass(frozen=True)
class SidedIsomorphisms:
    """Explicit bijections between the triad carriers and the sided elements."""

    r_sided: tuple[int, ...]
    l_sided: tuple[int, ...]
    t_sided: tuple[int, ...]
    r_map: np.ndarray
    l_map: np.ndarray
    t_map: np.ndarray


def sided_isomorphisms(sol: Solution) -> SidedIsomorphisms:
    """For a strict triad: R = R(Q), L = L(Q), T = T(Q) via the top pairings."""
    triad = sol.triad
    q = sol.quantale
    lat_l, lat_r, lat_t = triad.left.carrier, triad.right.carrier, triad.t.carrier
    top_l, top_r = lat_l.top, lat_r.top
    left_set, two_set, right_set = sided_elements(q)
    r_map = sol.rl[:, top_l]
    l_map = sol.rl[top_r, :]
    t_map = sol.rl[triad.right.action[top_r, :], top_l]
    if set(map(int, r_map)) - set(right_set):
        raise PropertyMismatch("r |-> r 1_L does not land in the right-sided elements")
    if set(map(int, l_map)) - set(left_set):
        raise PropertyMismatch("l |-> 1_R l does not land in the left-sided elements")
    if set(map(int, t_map)) - set(two_set):
        raise PropertyMismatch("t |-> 1_R t 1_L does not land in the two-sided elements")
    r_inv = sol.qr[:, top_r]
    l_inv = sol.lq[top_l, :]
    if not np.array_equal(r_inv[r_map], np.arange(lat_r.size)):
        raise PropertyMismatch("R recovery (r 1_L) 1_R = r fails", int(_first_bad(r_inv[r_map])))
    if not np.array_equal(l_inv[l_map], np.arange(lat_l.size)):
        raise PropertyMismatch("L recovery 1_L (1_R l) = l fails", int(_first_bad(l_inv[l_map])))
    for rho in right_set:
        if int(r_map[r_inv[rho]]) != rho:
            raise PropertyMismatch("right-sided element not recovered", rho)
    for lam in left_set:
        if int(l_map[l_inv[lam]]) != lam:
            raise PropertyMismatch("left-sided element not recovered", lam)
    t_inv = triad.pairing[sol.lq[top_l, :], top_r]
    if not np.array_equal(t_inv[t_map], np.arange(lat_t.size)):
        raise PropertyMismatch("T recovery 1_L (1_R t 1_L) 1_R = t fails")
    for kappa in two_set:
        if int(t_map[t_inv[kappa]]) != kappa:
            raise PropertyMismatch("two-sided element not recovered", kappa)
    if len(right_set) != lat_r.size or len(left_set) != lat_l.size or len(two_set) != lat_t.size:
        raise PropertyMismatch(
            "sided element counts differ from the triad carriers",
            (len(left_set), len(two_set), len(right_set)),
        )
    # module morphisms over the solution quantale and the quantale morphism on T
    bad = r_map[sol.qr] != q.mult[np.arange(q.size)[:, None], r_map[None, :]]
    if bad.any():
        raise PropertyMismatch("R identification is not a Q-module morphism", _first_true(bad))
    bad = l_map[sol.lq] != q.mult[l_map[:, None], np.arange(q.size)[None, :]]
    if bad.any():
        raise PropertyMismatch("L identification is not a Q-module morphism", _first_true(bad))
    bad = t_map[triad.t.mult] != q.mult[t_map[:, None], t_map[None, :]]
    if bad.any():
        raise PropertyMismatch("T identification is not multiplicative", _first_true(bad))
    bad = r_map[lat_r.join] != q.carrier.join[r_map[:, None], r_map[None, :]]
    if bad.any():
        raise PropertyMismatch("R identification is not join-preserving", _first_true(bad))
    bad = l_map[lat_l.join] != q.carrier.join[l_map[:, None], l_map[None, :]]
    if bad.any():
        raise PropertyMismatch("L identification is not join-preserving", _first_true(bad))
    bad = t_map[lat_t.join] != q.carrier.join[t_map[:, None], t_map[None, :]]
    if bad.any():
        raise PropertyMismatch("T identification is not join-preserving", _first_true(bad))
    if not classify_quantale(triad.t).strictly_two_sided:
        raise PropertyMismatch("T of a strict triad is not strictly two-sided")
    return SidedIsomorphisms(
        right_set, left_set, two_set, _freeze(r_map.copy()), _freeze(l_map.copy()), _freeze(t_map.copy())
    )


def _first_bad(arr: np.ndarray) -> int:
    idx = np.arange(len(arr))
    return int(np.flatnonzero(arr != idx)[0])


@dataclass(frozen=True)
class PropStrReport:
    phi_strong: bool
    triad_strong: bool
    sided: Optional[dict]


def check_prop_str(sc: SolutionCouple) -> PropStrReport:
    """phi strong iff the triad is strong; sided identifications when strict."""
    preds = triad_predicates(sc.triad)
    phi_strong = int(sc.phi.table[sc.q0.quantale.carrier.top]) == sc.q1.quantale.carrier.top
    if phi_strong != preds.strong:
        raise PropertyMismatch(
            f"phi strong is {phi_strong} but the triad strong predicate is {preds.strong}"
        )
    sided = None
    if preds.strict:
        sided = {
            "q0": sided_isomorphisms(sc.q0.solution),
            "q1": sided_isomorphisms(sc.q1.solution),
        }
    return PropStrReport(phi_strong, preds.strong, sided)


@dataclass(frozen=True)
class CentralMapsReport:
    zeta: np.ndarray      # (nt,) -> Q1 index
    tau: np.ndarray       # (nc,) -> T index
    tau_adjoint: np.ndarray  # (nt,) -> Q0 index


def central_maps(sc: SolutionCouple) -> CentralMapsReport:
    """The center embedding into Q1 and the trace onto T, fully verified."""
    triad = sc.triad
    if not triad_predicates(triad).central:
        raise NotCentralTriad("the triad pairing does not land in the center of T")
    q1, q0 = sc.q1, sc.q0
    tl, rt, pair = triad.left.action, triad.right.action, triad.pairing
    lat_t = triad.t.carrier
    nt = lat_t.size
    zeta = np.empty(nt, dtype=np.int64)
    for t in range(nt):
        idx = q1.index.get((tl[t].tobytes(), rt[:, t].copy().tobytes()))
        if idx is None:
            raise PropertyMismatch("zeta(t) is not a compatible endomorphism pair", t)
        zeta[t] = idx
    mult1 = q1.quantale.mult
    bad = zeta[triad.t.mult] != mult1[zeta[:, None], zeta[None, :]]
    if bad.any():
        raise PropertyMismatch("zeta is not multiplicative", _first_true(bad))
    validate_sup_map(lat_t, q1.quantale.carrier, zeta)
    bad = mult1[zeta, :] != mult1[:, zeta].T
    if bad.any():
        raise PropertyMismatch("zeta image is not central in Q1", _first_true(bad))
    cm = q0.tensor.column_max
    tau = np.full(q0.size, lat_t.bottom, dtype=np.int64)
    for l in range(triad.left.carrier.size):
        tau = lat_t.join[tau, pair[l, cm[:, l]]]
    validate_sup_map(q0.tensor.lattice, lat_t, tau)
    lat_c = q0.tensor.lattice
    tau_adj = np.empty(nt, dtype=np.int64)
    la, ra = sc.couple.left.action, sc.couple.right.action
    for t in range(nt):
        tau_adj[t] = join_set(lat_c, np.flatnonzero(lat_t.leq[tau, t]))
        below = lat_c.leq[:, tau_adj[t]]
        bad = below[la] != below[ra].T
        if bad.any():
            raise PropertyMismatch(f"tau^adj({t}) is not cyclic for the couple", _first_true(bad))
    return CentralMapsReport(_freeze(zeta), _freeze(tau), _freeze(tau_adj))


@dataclass(frozen=True)
class InvolutiveCoupleReport:
    q0_star: np.ndarray
    q1_star: np.ndarray


def involutive_solutions(sc: SolutionCouple, inv: TriadInvolution) -> InvolutiveCoupleReport:
    """Involutions on Q0 and Q1 making phi an involutive couple."""
    bad = validate_involutive_triad(sc.triad, inv)
    if bad:
        raise ValidationError(bad, "involutive triad")
    triad = sc.triad
    q0, q1 = sc.q0, sc.q1
    tp = q0.tensor
    cm = tp.column_max
    nl = triad.left.carrier.size
    joinc = tp.lattice.join
    star0 = np.full(tp.size, tp.lattice.bottom, dtype=np.int64)
    for l in range(nl):
        star0 = joinc[star0, tp.pure[inv.star_lr[l], inv.star_rl[cm[:, l]]]]
    star1 = np.empty(q1.size, dtype=np.int64)
    for qi in range(q1.size):
        new_alpha = inv.star_rl[q1.betas[qi][inv.star_lr]]
        new_beta = inv.star_lr[q1.alphas[qi][inv.star_rl]]
        idx = q1.index.get((new_alpha.tobytes(), new_beta.tobytes()))
        if idx is None:
            raise PropertyMismatch("conjugate pair is not a compatible pair", qi)
        star1[qi] = idx
    for name, star, quant in (("Q0", star0, q0.quantale), ("Q1", star1, q1.quantale)):
        n = quant.size
        if not np.array_equal(star[star], np.arange(n)):
            raise PropertyMismatch(f"{name} star is not involutive", _first_bad(star[star]))
        bad = star[quant.mult] != quant.mult[star[:, None], star[None, :]].T
        if bad.any():
            raise PropertyMismatch(f"{name} star is not antimultiplicative", _first_true(bad))
        validate_sup_map(quant.carrier, quant.carrier, star)
    if not np.array_equal(sc.phi.table[star0], star1[sc.phi.table]):
        raise PropertyMismatch("phi does not commute with the involutions")
    la, ra = sc.couple.left.action, sc.couple.right.action
    bad = star0[la] != ra[star0[None, :], star1[:, None]]
    if bad.any():
        raise PropertyMismatch("(q c)* != c* q* for the couple", _first_true(bad))
    return InvolutiveCoupleReport(_freeze(star0), _freeze(star1))


@dataclass(frozen=True)
class GirardVerifyReport:
    d_q: int
    complement: np.ndarray  # (nc,) -> Q1 index, the order anti-isomorphism
    pi: np.ndarray          # (nl, nl) -> Q1 index


def girard_verify(sc: SolutionCouple, witness: GirardTriadWitness) -> GirardVerifyReport:
    """Checks for a Girard triad: unique beta, the duality Q0 ~ Q1^op, and d_Q."""
    triad = sc.triad
    q0, q1 = sc.q0, sc.q1
    lat_l, lat_r = triad.left.carrier, triad.right.carrier
    lat_c, lat_q = q0.quantale.carrier, q1.quantale.carrier
    nl, nr = lat_l.size, lat_r.size
    nc, nq = q0.size, q1.size
    perp_l, perp_r, d_t = witness.perp_l, witness.perp_r, witness.d_t
    # (a) beta is uniquely determined by alpha and the pair count is |T-Mod(L,L)|
    if not (nq == q1.n_alphas == q1.n_betas):
        raise PropertyMismatch(
            "pair count differs from the endomorphism counts", (nq, q1.n_alphas, q1.n_betas)
        )
    if len({a.tobytes() for a in q1.alphas}) != nq or len({b.tobytes() for b in q1.betas}) != nq:
        raise PropertyMismatch("alphas or betas repeat across pairs")
    for i in range(nq):
        transported = perp_l[q1.alphas[i][perp_r]]  # r' -> alpha(r'^perp)^perp
        formula = np.empty(nr, dtype=np.int64)
        for r in range(nr):
            formula[r] = meet_set(lat_r, np.flatnonzero(lat_r.leq[r, transported]))
        if not np.array_equal(formula, q1.betas[i]):
            raise PropertyMismatch("beta differs from the complement-transport formula", i)
    # (b) |Q1| = |Q0| with an order anti-isomorphism from the pi elements
    if nc != nq:
        raise PropertyMismatch("tensor and pair solutions have different sizes", (nc, nq))
    pi = np.empty((nl, nl), dtype=np.int64)
    for l in range(nl):
        for lp in range(nl):
            members = np.flatnonzero(lat_l.leq[q1.alphas[:, l], lp])
            pi[l, lp] = join_set(lat_q, members)
    cm = q0.tensor.column_max
    comp = np.full(nc, lat_q.top, dtype=np.int64)
    for l in range(nl):
        comp = lat_q.meet[comp, pi[l, perp_r[cm[:, l]]]]
    if len(set(map(int, comp))) != nc:
        raise PropertyMismatch("pi-complement is not a bijection")
    if not np.array_equal(lat_c.leq, lat_q.leq[comp[:, None], comp[None, :]].T):
        raise PropertyMismatch("pi-complement is not an order anti-isomorphism")
    # the complement agrees with residuation by d_Q
    pair = triad.pairing
    d_rows = np.empty(nl, dtype=np.int64)
    for l in range(nl):
        d_rows[l] = join_set(lat_r, np.flatnonzero(triad.t.carrier.leq[pair[l, :], d_t]))
    eng = q0.tensor._engine
    closed = eng.close(d_rows[None, :].copy())[0]
    d_q = q0.tensor.index[closed.tobytes()]
    ra = sc.couple.right.action
    resid = _join_over_rows(lat_q, lat_c.leq[:, d_q][ra])
    if not np.array_equal(resid, comp):
        raise PropertyMismatch("residuation by d_Q differs from the pi-complement")
    # (c) d_Q is cyclic and dualizing for the couple
    bad = girard_couple_check(sc.couple, int(d_q))
    if bad:
        raise PropertyMismatch(f"d_Q fails the Girard couple check: {bad[0]}")
    # (d) pure-tensor membership in d_Q matches the pairing bound
    lhs = lat_c.leq[q0.tensor.pure, d_q]
    rhs = triad.t.carrier.leq[pair.T, d_t]
    if not np.array_equal(lhs, rhs):
        raise PropertyMismatch("r (x) l <= d_Q does not match lr <= d_T", _first_true(lhs != rhs))
    return GirardVerifyReport(int(d_q), _freeze(comp), _freeze(pi))


@dataclass(frozen=True)
class GirardConsequences:
    strictly_faithful: bool
    t_distributive: bool
    q1_distributive: bool


def girard_consequences(sc: SolutionCouple) -> GirardConsequences:
    """For strict Girard triads: Q1 strictly faithful; distributive when T is."""
    preds = triad_predicates(sc.triad)
    if not preds.strict:
        raise PreconditionError("the triad is not strict")
    if not girard_triad_structure(sc.triad):
        raise PreconditionError("the triad is not Girard")
    p1 = quantale_predicates(sc.q1.quantale)
    if not p1.strictly_faithful:
        raise PropertyMismatch("Q1 of a strict Girard triad is not strictly faithful")
    t_dist = quantale_predicates(sc.triad.t).distributive
    if t_dist and not p1.distributive:
        raise PropertyMismatch("Q1 is not distributive although T is")
    return GirardConsequences(p1.strictly_faithful, t_dist, p1.distributive)

"""Finite complete lattices (sup-lattices) over dense element indices.

A lattice is handed to us as a square boolean order relation.  Bottom, top
and the binary join/meet tables are always derived from the relation, never
trusted from input.  All arrays are frozen after validation; every operation
here is a pure function, so validated values can be shared freely between
workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import SearchSpaceExceeded, ValidationError, Violation

DEFAULT_MAX_CANDIDATES = 10_000_000
DEFAULT_MAX_TENSOR_PAIRS = 36


@dataclass(frozen=True)
class Guards:
    """Size limits for enumerative searches.

    max_candidates bounds morphism-enumeration candidate counts;
    max_tensor_pairs bounds |R|*|L| for tensor closure searches.
    """

    max_candidates: int = DEFAULT_MAX_CANDIDATES
    max_tensor_pairs: int = DEFAULT_MAX_TENSOR_PAIRS


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _first_true(mask: np.ndarray) -> tuple:
    """First True position of a boolean array in row-major scan order."""
    flat = int(np.flatnonzero(mask.reshape(-1))[0])
    return tuple(int(i) for i in np.unravel_index(flat, mask.shape))


def _as_bool_square(rel) -> np.ndarray:
    arr = np.asarray(rel)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"order relation must be a square matrix, got shape {arr.shape}")
    return arr.astype(bool)


@dataclass(frozen=True, eq=False)
class SupLattice:
    """A finite complete lattice: order relation plus derived tables."""

    leq: np.ndarray   # bool (n, n); leq[i, j] iff i <= j
    join: np.ndarray  # int (n, n)
    meet: np.ndarray  # int (n, n)
    bottom: int
    top: int

    @property
    def size(self) -> int:
        return int(self.leq.shape[0])

    def le(self, x: int, y: int) -> bool:
        return bool(self.leq[x, y])

    def same_order(self, other: "SupLattice") -> bool:
        return self.size == other.size and bool(np.array_equal(self.leq, other.leq))

    def join_irreducibles(self) -> list[int]:
        """Elements covering exactly one element (excludes bottom)."""
        n = self.size
        lt = self.leq & ~np.eye(n, dtype=bool)
        between = (lt.astype(np.uint8) @ lt.astype(np.uint8)) > 0
        cover = lt & ~between  # cover[i, j]: j covers i
        counts = cover.sum(axis=0)
        return [j for j in range(n) if counts[j] == 1]

    def upset(self, x: int) -> np.ndarray:
        return self.leq[x]

    def downset(self, x: int) -> np.ndarray:
        return self.leq[:, x]

    @classmethod
    def chain(cls, n: int) -> "SupLattice":
        if n < 1:
            raise ValueError("chain needs at least one element")
        idx = np.arange(n)
        return validate_sup_lattice(idx[:, None] <= idx[None, :])

    @classmethod
    def boolean(cls, atoms: int) -> "SupLattice":
        """Powerset of `atoms` generators, elements indexed by bitmask."""
        if atoms < 0:
            raise ValueError("atom count must be nonnegative")
        n = 1 << atoms
        idx = np.arange(n)
        return validate_sup_lattice((idx[:, None] & idx[None, :]) == idx[:, None])

    @classmethod
    def antichain(cls, middles: int) -> "SupLattice":
        """Bottom, `middles` pairwise-incomparable elements, top."""
        n = middles + 2
        leq = np.eye(n, dtype=bool)
        leq[0, :] = True
        leq[:, n - 1] = True
        return validate_sup_lattice(leq)


def _order_violations(leq: np.ndarray) -> list[Violation]:
    n = leq.shape[0]
    if n == 0:
        return [Violation("NotPartialOrder", (), "empty carrier has no bottom")]
    out: list[Violation] = []
    diag = leq.diagonal()
    if not diag.all():
        i = int(np.flatnonzero(~diag)[0])
        out.append(Violation("NotPartialOrder", (i, i), "relation is not reflexive"))
    anti = leq & leq.T & ~np.eye(n, dtype=bool)
    if anti.any():
        out.append(Violation("NotPartialOrder", _first_true(anti), "relation is not antisymmetric"))
    two_step = (leq.astype(np.uint8) @ leq.astype(np.uint8)) > 0
    not_closed = two_step & ~leq
    if not_closed.any():
        out.append(Violation("NotPartialOrder", _first_true(not_closed), "relation is not transitive"))
    return out


def lattice_violations(rel) -> list[Violation]:
    """Check the complete-lattice axioms; return every violation found."""
    leq = _as_bool_square(rel)
    out = _order_violations(leq)
    if out:
        return out
    derived = _derive_tables(leq)
    if isinstance(derived, list):
        return derived
    return []


def _derive_tables(leq: np.ndarray):
    """Join/meet/bottom/top from a valid partial order, or violations."""
    n = leq.shape[0]
    packed_up = np.packbits(leq, axis=1)
    packed_down = np.packbits(leq.T, axis=1)
    up_index = {packed_up[i].tobytes(): i for i in range(n)}
    down_index = {packed_down[i].tobytes(): i for i in range(n)}
    join = np.zeros((n, n), dtype=np.int64)
    meet = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        up_rows = np.packbits(leq[x][None, :] & leq, axis=1)
        down_rows = np.packbits(leq.T[x][None, :] & leq.T, axis=1)
        for y in range(n):
            z = up_index.get(up_rows[y].tobytes())
            if z is None:
                return [Violation("MissingJoin", (x, y), "no least upper bound")]
            join[x, y] = z
            w = down_index.get(down_rows[y].tobytes())
            if w is None:
                return [Violation("MissingMeet", (x, y), "no greatest lower bound")]
            meet[x, y] = w
    bottoms = np.flatnonzero(leq.all(axis=1))
    tops = np.flatnonzero(leq.all(axis=0))
    if len(bottoms) != 1:
        return [Violation("MissingJoin", (), "no bottom element (empty join)")]
    if len(tops) != 1:
        return [Violation("MissingMeet", (), "no top element (empty meet)")]
    return join, meet, int(bottoms[0]), int(tops[0])


def validate_sup_lattice(rel) -> SupLattice:
    """Build a SupLattice from an order relation, or raise with violations."""
    leq = _as_bool_square(rel)
    bad = _order_violations(leq)
    if bad:
        raise ValidationError(bad, "sup-lattice")
    derived = _derive_tables(leq)
    if isinstance(derived, list):
        raise ValidationError(derived, "sup-lattice")
    join, meet, bottom, top = derived
    return SupLattice(_freeze(leq.copy()), _freeze(join), _freeze(meet), bottom, top)


def join_set(lattice: SupLattice, xs: Iterable[int]) -> int:
    """Least upper bound of a subset; the empty join is bottom."""
    acc = lattice.bottom
    for x in xs:
        acc = int(lattice.join[acc, x])
    return acc


def meet_set(lattice: SupLattice, xs: Iterable[int]) -> int:
    """Greatest lower bound of a subset; the empty meet is top."""
    acc = lattice.top
    for x in xs:
        acc = int(lattice.meet[acc, x])
    return acc


def opposite(lattice: SupLattice) -> SupLattice:
    """Same elements with the order reversed; joins and meets swap."""
    return SupLattice(
        _freeze(lattice.leq.T.copy()),
        lattice.meet,
        lattice.join,
        lattice.top,
        lattice.bottom,
    )


@dataclass(frozen=True, eq=False)
class SupMap:
    """A join-preserving map between two sup-lattices."""

    source: SupLattice
    target: SupLattice
    table: np.ndarray  # int (n_source,)


def sup_map_violations(source: SupLattice, target: SupLattice, table) -> list[Violation]:
    tab = np.asarray(table, dtype=np.int64)
    if tab.shape != (source.size,):
        raise ValueError(f"map table must have shape ({source.size},), got {tab.shape}")
    if tab.size and (tab.min() < 0 or tab.max() >= target.size):
        raise ValueError("map table contains out-of-range element indices")
    out: list[Violation] = []
    if tab[source.bottom] != target.bottom:
        out.append(Violation("BottomNotPreserved", (source.bottom,)))
    lhs = tab[source.join]
    rhs = target.join[tab[:, None], tab[None, :]]
    bad = lhs != rhs
    if bad.any():
        out.append(Violation("NotJoinPreserving", _first_true(bad)))
    return out


def validate_sup_map(source: SupLattice, target: SupLattice, table) -> SupMap:
    tab = np.asarray(table, dtype=np.int64)
    bad = sup_map_violations(source, target, tab)
    if bad:
        raise ValidationError(bad, "sup-map")
    return SupMap(source, target, _freeze(tab.copy()))


def adjoint(f: SupMap) -> np.ndarray:
    """Adjoint table g with f(x) <= y iff x <= g(y); g preserves meets.

    Computed pointwise as g(y) = join of {x | f(x) <= y}.
    """
    src, tgt = f.source, f.target
    g = np.empty(tgt.size, dtype=np.int64)
    for y in range(tgt.size):
        g[y] = join_set(src, np.flatnonzero(tgt.leq[f.table, y]))
    return g


def _candidate_blocks(k: int, base: int, block: int = 1 << 18):
    """Yield (block_size, digits) arrays enumerating all base**k assignments."""
    total = base**k
    weights = [base ** (k - 1 - i) for i in range(k)]
    start = 0
    while start < total:
        stop = min(start + block, total)
        v = np.arange(start, stop, dtype=np.int64)
        digits = np.empty((stop - start, k), dtype=np.int64)
        for i, w in enumerate(weights):
            digits[:, i] = (v // w) % base
        yield digits
        start = stop


def enumerate_sup_morphisms(
    source: SupLattice, target: SupLattice, guards: Guards = Guards()
) -> list[SupMap]:
    """All join-preserving maps source -> target, lexicographically ordered.

    Values are assigned on join-irreducible elements and extended by joins;
    an extension is kept only when it preserves binary joins globally.
    """
    irr = source.join_irreducibles()
    k = len(irr)
    n, n2 = source.size, target.size
    estimate = n2**k
    if estimate > guards.max_candidates:
        raise SearchSpaceExceeded(estimate, guards.max_candidates, "sup-morphism enumeration")

    irr_pairs = [
        (i, j) for i in range(k) for j in range(k) if i != j and source.le(irr[i], irr[j])
    ]
    below = [[i for i in range(k) if source.le(irr[i], x)] for x in range(n)]
    join_pairs = [(x, y) for x in range(n) for y in range(n)]

    tables: list[np.ndarray] = []
    for digits in _candidate_blocks(k, n2):
        keep = np.ones(len(digits), dtype=bool)
        for i, j in irr_pairs:
            keep &= target.leq[digits[:, i], digits[:, j]]
        digits = digits[keep]
        if not len(digits):
            continue
        full = np.full((len(digits), n), target.bottom, dtype=np.int64)
        for x in range(n):
            for i in below[x]:
                full[:, x] = target.join[full[:, x], digits[:, i]]
        ok = np.ones(len(full), dtype=bool)
        for x, y in join_pairs:
            ok &= full[:, source.join[x, y]] == target.join[full[:, x], full[:, y]]
        tables.append(full[ok])

    if tables:
        stacked = np.concatenate(tables, axis=0)
    else:
        stacked = np.empty((0, n), dtype=np.int64)
    order = np.lexsort(stacked.T[::-1]) if len(stacked) else []
    return [validate_sup_map(source, target, stacked[i]) for i in order]

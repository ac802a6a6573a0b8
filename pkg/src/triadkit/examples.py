"""Deterministic generators for the finite triad families.

The orthomodular catalog stores explicit order and orthocomplement tables:
Boolean cubes 2^n (n <= 4), the modular lattices MO_n (horizontal sums of n
four-element Boolean blocks, n <= 3), and one larger horizontal-sum pasting
of a 2^3 and a 2^2 block.  The orthomodular law x <= y  =>  y = x v (y ^ x')
is asserted on every catalog entry when it is built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import InternalDefect, ParamOutOfRange, UnknownFamily, ValidationError
from .algebra import Quantale, make_module, validate_quantale
from .suplat import (
    Guards,
    SupLattice,
    adjoint,
    enumerate_sup_morphisms,
    join_set,
    meet_set,
    opposite,
    validate_sup_lattice,
    validate_sup_map,
)
from .triad import (
    Triad,
    TriadInvolution,
    triad_of_quantale,
    validate_involutive_triad,
    validate_triad,
)


@dataclass(frozen=True)
class ExampleSpec:
    family: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class GeneratedTriad:
    triad: Triad
    involution: Optional[TriadInvolution]
    description: str


def frame(lattice: SupLattice) -> Quantale:
    """Any frame is a unital involutive quantale with meet as multiplication."""
    return validate_quantale(
        lattice, lattice.meet, unit=lattice.top, involution=np.arange(lattice.size)
    )


def two_quantale() -> Quantale:
    return frame(SupLattice.chain(2))


def endo_quantale(s: SupLattice, guards: Guards = Guards()) -> Quantale:
    """All sup-endomorphisms of s under composition, ordered pointwise."""
    maps = enumerate_sup_morphisms(s, s, guards)
    tables = np.array([m.table for m in maps], dtype=np.int64)
    n = len(tables)
    leq = np.empty((n, n), dtype=bool)
    for i in range(n):
        leq[i] = s.leq[tables[i][None, :], tables].all(axis=1)
    lattice = validate_sup_lattice(leq)
    index = {tables[i].tobytes(): i for i in range(n)}
    mult = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        composed = tables[i][tables]  # (f g)(x) = f(g(x))
        for j in range(n):
            mult[i, j] = index[composed[j].tobytes()]
    unit = index[np.arange(s.size, dtype=np.int64).tobytes()]
    return validate_quantale(lattice, mult, unit=unit)


def c_quantale(s: SupLattice, guards: Guards = Guards()) -> Quantale:
    """The tensor of s with its opposite over the two-element quantale."""
    from .solve import build_q0

    return build_q0(duality(s).triad, guards).quantale


def _two_module_actions(t: Quantale, lat: SupLattice, side: str):
    """Unital action of the two-element quantale: bottom kills, top fixes."""
    n = lat.size
    if side == "left":
        action = np.stack([np.full(n, lat.bottom, dtype=np.int64), np.arange(n)])
    else:
        action = np.stack([np.full(n, lat.bottom, dtype=np.int64), np.arange(n)]).T
    return make_module(t, lat, side, action)


def duality(s: SupLattice) -> GeneratedTriad:
    """The triad (S^op, 2, S) with x y = 0 exactly when y <= x in S."""
    t = two_quantale()
    lat_l = opposite(s)
    pairing = (~s.leq.T).astype(np.int64)  # pairing[x, y] = 0 iff y <= x
    triad = validate_triad(
        t,
        _two_module_actions(t, lat_l, "left"),
        _two_module_actions(t, s, "right"),
        pairing,
    )
    involution = _self_duality_involution(s)
    return GeneratedTriad(triad, involution, f"duality triad over a {s.size}-element lattice")


def _self_duality_involution(s: SupLattice) -> Optional[TriadInvolution]:
    """An order anti-automorphism of s, when one is easy to name."""
    n = s.size
    rev = None
    if np.array_equal(s.leq, SupLattice.chain(n).leq):
        rev = np.arange(n - 1, -1, -1, dtype=np.int64)
    else:
        atoms = int(np.log2(n)) if n & (n - 1) == 0 else 0
        if atoms and np.array_equal(s.leq, SupLattice.boolean(atoms).leq):
            rev = np.int64(n - 1) - np.arange(n, dtype=np.int64)
    if rev is None:
        return None
    return TriadInvolution(
        star_t=np.arange(2, dtype=np.int64), star_lr=rev.copy(), star_rl=rev.copy()
    )


def galois(s: SupLattice, s2: SupLattice, f_table=None) -> GeneratedTriad:
    """The triad (S, 2, S') of a Galois connection, with x y = 0 when y <= f(x).

    The connection is given by the single table f, required to send joins of
    S to meets of S'; the companion g is computed as its adjoint and the law
    y <= f(x)  iff  x <= g(y) is then automatic (and re-checked here).
    """
    if f_table is None:
        f_table = default_galois_map(s, s2)
    f = validate_sup_map(s, opposite(s2), np.asarray(f_table, dtype=np.int64))
    g = adjoint(f)  # g(y) = join{x | y <= f(x)}
    ok = s2.leq[np.arange(s2.size)[None, :], f.table[:, None]] == s.leq[
        np.arange(s.size)[:, None], g[None, :]
    ]
    if not ok.all():
        raise InternalDefect("computed adjoint fails the Galois law")
    t = two_quantale()
    pairing = (~s2.leq[np.arange(s2.size)[None, :], f.table[:, None]]).astype(np.int64)
    triad = validate_triad(
        t,
        _two_module_actions(t, s, "left"),
        _two_module_actions(t, s2, "right"),
        pairing,
    )
    return GeneratedTriad(triad, None, "Galois triad")


def default_galois_map(s: SupLattice, s2: SupLattice) -> np.ndarray:
    """For chains: the order-reversing rescaling; it sends joins to meets."""
    n, m = s.size, s2.size
    if not np.array_equal(s.leq, SupLattice.chain(n).leq):
        raise ParamOutOfRange("a default Galois map is only defined for chains")
    if not np.array_equal(s2.leq, SupLattice.chain(m).leq):
        raise ParamOutOfRange("a default Galois map is only defined for chains")
    if n == 1:
        return np.array([m - 1], dtype=np.int64)
    return np.array([round((m - 1) * (n - 1 - i) / (n - 1)) for i in range(n)], dtype=np.int64)


@dataclass(frozen=True, eq=False)
class OrthoLattice:
    """A complete orthomodular lattice with its orthocomplement table."""

    lattice: SupLattice
    perp: np.ndarray

    @property
    def size(self) -> int:
        return self.lattice.size


def _check_orthomodular(lat: SupLattice, perp: np.ndarray) -> OrthoLattice:
    n = lat.size
    idx = np.arange(n)
    if not np.array_equal(perp[perp], idx):
        raise InternalDefect("orthocomplement is not involutive")
    if not np.array_equal(lat.leq, lat.leq[perp[:, None], perp[None, :]].T):
        raise InternalDefect("orthocomplement is not antitone")
    if not np.all(lat.join[idx, perp] == lat.top) or not np.all(lat.meet[idx, perp] == lat.bottom):
        raise InternalDefect("orthocomplement is not a complement")
    for x in range(n):
        for y in np.flatnonzero(lat.leq[x]):
            if lat.join[x, lat.meet[y, perp[x]]] != y:
                raise InternalDefect(f"orthomodular law fails at ({x}, {int(y)})")
    return OrthoLattice(lat, perp.astype(np.int64))


def boolean_ortho(atoms: int) -> OrthoLattice:
    lat = SupLattice.boolean(atoms)
    perp = np.int64(lat.size - 1) - np.arange(lat.size, dtype=np.int64)
    return _check_orthomodular(lat, perp)


def mo_ortho(n: int) -> OrthoLattice:
    """MO_n: bottom, top, and n blocks of two complementary atoms."""
    lat = SupLattice.antichain(2 * n)
    size = lat.size
    perp = np.empty(size, dtype=np.int64)
    perp[0], perp[size - 1] = size - 1, 0
    for i in range(n):
        perp[1 + 2 * i], perp[2 + 2 * i] = 2 + 2 * i, 1 + 2 * i
    return _check_orthomodular(lat, perp)


def horizontal_sum(a: OrthoLattice, b: OrthoLattice) -> OrthoLattice:
    """Identify the bounds of two ortholattices; blocks stay incomparable."""
    na, nb = a.size - 2, b.size - 2
    n = na + nb + 2
    amid = [i for i in range(a.size) if i not in (a.lattice.bottom, a.lattice.top)]
    bmid = [i for i in range(b.size) if i not in (b.lattice.bottom, b.lattice.top)]
    leq = np.eye(n, dtype=bool)
    leq[0, :] = True
    leq[:, n - 1] = True
    for i, x in enumerate(amid):
        for j, y in enumerate(amid):
            leq[1 + i, 1 + j] = a.lattice.leq[x, y]
    for i, x in enumerate(bmid):
        for j, y in enumerate(bmid):
            leq[1 + na + i, 1 + na + j] = b.lattice.leq[x, y]
    lat = validate_sup_lattice(leq)
    loc_a = {x: 1 + i for i, x in enumerate(amid)}
    loc_b = {x: 1 + na + i for i, x in enumerate(bmid)}
    perp = np.empty(n, dtype=np.int64)
    perp[0], perp[n - 1] = n - 1, 0
    for x, i in loc_a.items():
        perp[i] = loc_a[int(a.perp[x])]
    for x, i in loc_b.items():
        perp[i] = loc_b[int(b.perp[x])]
    return _check_orthomodular(lat, perp)


def ortho_catalog() -> dict[str, Callable[[], OrthoLattice]]:
    out: dict[str, Callable[[], OrthoLattice]] = {}
    for k in range(1, 5):
        out[f"boolean{k}"] = (lambda kk: lambda: boolean_ortho(kk))(k)
    for k in range(1, 4):
        out[f"mo{k}"] = (lambda kk: lambda: mo_ortho(kk))(k)
    out["paste_b3_b2"] = lambda: horizontal_sum(boolean_ortho(3), boolean_ortho(2))
    return out


def ortho_center(oml: OrthoLattice) -> list[int]:
    """Elements z with z = (z ^ x) v (z ^ x') against every x."""
    lat, perp = oml.lattice, oml.perp
    n = lat.size
    out = []
    for z in range(n):
        parts = lat.join[lat.meet[z, :], lat.meet[z, perp]]
        if np.all(parts == z):
            out.append(z)
    return out


def central_cover(oml: OrthoLattice, center: list[int], m: int) -> int:
    return meet_set(oml.lattice, [z for z in center if oml.lattice.leq[m, z]])


def sasaki(oml: OrthoLattice, x: int, y: int) -> int:
    """The skew meet (x v y') ^ y."""
    lat = oml.lattice
    return int(lat.meet[lat.join[x, oml.perp[y]], y])


def orthomodular_triad(name: str) -> GeneratedTriad:
    """The triad (M, Z(M), M) with the central-cover-of-skew-meet pairing."""
    catalog = ortho_catalog()
    if name not in catalog:
        raise ParamOutOfRange(f"unknown orthomodular catalog entry {name!r}")
    oml = catalog[name]()
    lat = oml.lattice
    n = lat.size
    center = ortho_center(oml)
    zlocal = {z: i for i, z in enumerate(center)}
    zlat = validate_sup_lattice(lat.leq[np.ix_(center, center)])
    zmult = np.array(
        [[zlocal[int(lat.meet[a, b])] for b in center] for a in center], dtype=np.int64
    )
    t = validate_quantale(zlat, zmult, unit=zlocal[lat.top], involution=np.arange(len(center)))
    act_left = np.array([[lat.meet[z, x] for x in range(n)] for z in center], dtype=np.int64)
    act_right = np.array([[lat.meet[x, z] for z in center] for x in range(n)], dtype=np.int64)
    pairing = np.array(
        [[zlocal[central_cover(oml, center, sasaki(oml, x, y))] for y in range(n)] for x in range(n)],
        dtype=np.int64,
    )
    triad = validate_triad(
        t,
        make_module(t, lat, "left", act_left),
        make_module(t, lat, "right", act_right),
        pairing,
    )
    inv = TriadInvolution(
        star_t=np.arange(len(center), dtype=np.int64),
        star_lr=np.arange(n, dtype=np.int64),
        star_rl=np.arange(n, dtype=np.int64),
    )
    if validate_involutive_triad(triad, inv):
        inv = None  # identity works only when the pairing is symmetric
    return GeneratedTriad(triad, inv, f"orthomodular triad over {name}")


def sided_triad(quantale: Quantale, description: str = "") -> GeneratedTriad:
    return GeneratedTriad(
        triad_of_quantale(quantale), None, description or "sided-element triad"
    )


def _lattice_from_params(params: dict, guards: Guards) -> SupLattice:
    shape = params.get("shape", "chain")
    size = int(params.get("size", 2))
    if shape == "chain":
        if not 1 <= size <= 64:
            raise ParamOutOfRange(f"chain size {size} out of range 1..64")
        return SupLattice.chain(size)
    if shape == "boolean":
        if not 0 <= size <= 6:
            raise ParamOutOfRange(f"boolean atom count {size} out of range 0..6")
        return SupLattice.boolean(size)
    if shape == "mo":
        if not 1 <= size <= 8:
            raise ParamOutOfRange(f"mo block count {size} out of range 1..8")
        return mo_ortho(size).lattice
    raise ParamOutOfRange(f"unknown lattice shape {shape!r}")


def _generate_duality(params: dict, guards: Guards) -> GeneratedTriad:
    return duality(_lattice_from_params(params, guards))


def _generate_galois(params: dict, guards: Guards) -> GeneratedTriad:
    s = _lattice_from_params(params, guards)
    p2 = dict(params)
    if "size2" in params:
        p2["size"] = params["size2"]
    s2 = _lattice_from_params(p2, guards)
    f_table = params.get("f")
    return galois(s, s2, f_table)


def _generate_orthomodular(params: dict, guards: Guards) -> GeneratedTriad:
    return orthomodular_triad(str(params.get("name", "mo2")))


def _generate_sided(params: dict, guards: Guards) -> GeneratedTriad:
    kind = params.get("quantale", "frame")
    if kind == "frame":
        q = frame(_lattice_from_params(params, guards))
    elif kind == "endo":
        q = endo_quantale(_lattice_from_params(params, guards), guards)
    elif kind == "c":
        q = c_quantale(_lattice_from_params(params, guards), guards)
    else:
        raise ParamOutOfRange(f"unknown quantale kind {kind!r}")
    return sided_triad(q, f"sided-element triad of a {kind} quantale")


FAMILIES: dict[str, Callable[[dict, Guards], GeneratedTriad]] = {
    "duality": _generate_duality,
    "galois": _generate_galois,
    "orthomodular": _generate_orthomodular,
    "quantum_frame": _generate_orthomodular,  # instantiated through the catalog
    "sided": _generate_sided,
}


def generate(spec: ExampleSpec, guards: Guards = Guards()) -> GeneratedTriad:
    if spec.family not in FAMILIES:
        raise UnknownFamily(f"unknown family {spec.family!r}; known: {sorted(FAMILIES)}")
    return FAMILIES[spec.family](dict(spec.params), guards)

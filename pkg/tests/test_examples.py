import numpy as np
import pytest

import triadkit as tk
from triadkit.examples import (
    boolean_ortho,
    central_cover,
    horizontal_sum,
    mo_ortho,
    ortho_catalog,
    ortho_center,
    sasaki,
)
from triadkit.suplat import SupLattice

GUARDS = tk.Guards(max_tensor_pairs=64)


def test_generate_duality_two_chain():
    g = tk.generate(tk.ExampleSpec("duality", {"size": 2}))
    sizes = (g.triad.l_carrier.size, g.triad.t.size, g.triad.r_carrier.size)
    assert sizes == (2, 2, 2)
    assert tk.triad_predicates(g.triad).strict


def test_generate_rejects_unknown_families_and_params():
    with pytest.raises(tk.UnknownFamily):
        tk.generate(tk.ExampleSpec("rings", {}))
    with pytest.raises(tk.ParamOutOfRange):
        tk.generate(tk.ExampleSpec("duality", {"shape": "boolean", "size": 9}))
    with pytest.raises(tk.ParamOutOfRange):
        tk.generate(tk.ExampleSpec("orthomodular", {"name": "mo9"}))


def test_mo2_center_and_pairing_values():
    oml = mo_ortho(2)
    assert ortho_center(oml) == [0, 5]
    # a o a' = 0 via (a v a) ^ a' = 0; a o b = 1 via (a v b') ^ b = b, cover 1
    assert sasaki(oml, 1, 2) == 0
    assert sasaki(oml, 1, 3) == 3
    g = tk.generate(tk.ExampleSpec("orthomodular", {"name": "mo2"}))
    assert (g.triad.l_carrier.size, g.triad.t.size, g.triad.r_carrier.size) == (6, 2, 6)
    assert g.triad.pairing[1, 2] == 0
    assert g.triad.pairing[1, 3] == 1


def test_boolean_orthomodular_pairing_is_plain_meet():
    g = tk.generate(tk.ExampleSpec("orthomodular", {"name": "boolean2"}))
    lat = SupLattice.boolean(2)
    # everything is central, so the skew meet collapses to the meet
    assert g.triad.t.size == 4
    assert np.array_equal(g.triad.pairing, lat.meet)


def test_central_cover_is_least_central_above():
    oml = mo_ortho(2)
    center = ortho_center(oml)
    for m in range(oml.size):
        cover = central_cover(oml, center, m)
        assert oml.lattice.le(m, cover) and cover in center
        for z in center:
            if oml.lattice.le(m, z):
                assert oml.lattice.le(cover, z)


def test_catalog_entries_build_valid_triads():
    for name in ortho_catalog():
        g = tk.generate(tk.ExampleSpec("orthomodular", {"name": name}))
        assert tk.triad_violations(g.triad.t, g.triad.left, g.triad.right, g.triad.pairing) == []
        assert tk.triad_predicates(g.triad).central


def test_horizontal_sum_center_is_trivial():
    oml = horizontal_sum(boolean_ortho(3), boolean_ortho(2))
    assert oml.size == (8 - 2) + (4 - 2) + 2
    assert ortho_center(oml) == [0, oml.size - 1]


def test_mo3_sizes():
    g = tk.generate(tk.ExampleSpec("orthomodular", {"name": "mo3"}))
    assert (g.triad.l_carrier.size, g.triad.t.size, g.triad.r_carrier.size) == (8, 2, 8)


def test_endo_quantale_sizes_and_unit():
    q2 = tk.endo_quantale(SupLattice.chain(2))
    assert q2.size == 2
    q3 = tk.endo_quantale(SupLattice.chain(3))
    assert q3.size == 6
    ident = np.arange(3, dtype=np.int64)
    # the unit composes as the identity on both sides
    assert np.array_equal(q3.mult[q3.unit], np.arange(6))
    assert np.array_equal(q3.mult[:, q3.unit], np.arange(6))
    assert ident is not None


def test_c_quantale_of_two_chain():
    c = tk.c_quantale(SupLattice.chain(2))
    assert c.size == 2


def test_c_quantale_equals_q0_of_the_duality_triad():
    s = SupLattice.boolean(2)
    c = tk.c_quantale(s, GUARDS)
    q0 = tk.build_q0(tk.duality(s).triad, GUARDS)
    assert np.array_equal(c.mult, q0.quantale.mult)
    assert np.array_equal(c.carrier.leq, q0.quantale.carrier.leq)


def test_c_quantale_is_a_solution_of_the_duality_triad():
    s = SupLattice.boolean(2)
    triad = tk.duality(s).triad
    q0 = tk.build_q0(triad, GUARDS)
    assert tk.validate_solution(triad, q0.solution) == []


def test_marked_strict_families_are_strict():
    cases = [
        tk.generate(tk.ExampleSpec("duality", {"size": 3})),
        tk.generate(tk.ExampleSpec("duality", {"shape": "boolean", "size": 2})),
        tk.generate(tk.ExampleSpec("galois", {"size": 4})),
        tk.generate(tk.ExampleSpec("orthomodular", {"name": "mo2"})),
        tk.generate(tk.ExampleSpec("orthomodular", {"name": "boolean3"})),
        tk.generate(tk.ExampleSpec("quantum_frame", {"name": "paste_b3_b2"})),
    ]
    for g in cases:
        assert tk.triad_predicates(g.triad).strict, g.description


def test_duality_is_girard_for_every_generated_lattice():
    for params in ({"size": 2}, {"size": 4}, {"shape": "boolean", "size": 2}, {"shape": "mo", "size": 2}):
        g = tk.generate(tk.ExampleSpec("duality", params))
        assert tk.girard_triad_structure(g.triad)


def test_galois_with_explicit_connection_table():
    s = SupLattice.chain(3)
    g = tk.galois(s, s, [2, 1, 0])
    assert tk.triad_predicates(g.triad).strict
    # orthogonality: x _|_ y iff y <= f(x)
    assert g.triad.pairing[0, 2] == 0 and g.triad.pairing[2, 1] == 1


def test_galois_rejects_non_meet_reversing_tables():
    s = SupLattice.chain(3)
    with pytest.raises(tk.ValidationError):
        tk.galois(s, s, [0, 1, 2])  # monotone identity does not reverse joins


def test_sided_family_generates_from_quantale_specs():
    g = tk.generate(tk.ExampleSpec("sided", {"quantale": "endo", "shape": "chain", "size": 3}))
    assert (g.triad.l_carrier.size, g.triad.t.size, g.triad.r_carrier.size) == (3, 2, 3)
    g2 = tk.generate(tk.ExampleSpec("sided", {"quantale": "frame", "shape": "boolean", "size": 2}))
    assert g2.triad.t.size == 4

import json

import pytest

from gctor.modules import GradedModule
from gctor.ring import polynomial_ring, quotient_ring
from gctor.semidualizing import canonical_module, make_context, trivial_context
from gctor.verify import (PreconditionError, verify_am_sequence, verify_depth_formula_absolute,
                          verify_depth_formula_relative, verify_duality, verify_hull_lemma, verify_independence)

W = list(range(-10, 11))


def test_am_sequence_line():
    R = polynomial_ring(["x"])
    k = GradedModule.residue_field(R)
    rep = verify_am_sequence(k, k, trivial_context(R), W)
    assert rep.n == 1 and rep.exact and rep.verdict == "exact"
    assert rep.positions and rep.first_failure() is None
    # over a regular ring Tate homology vanishes, so Tor = relative Tor
    assert rep.tate.is_zero()
    assert rep.tor.data == rep.relative.data


def test_am_sequence_node():
    B = quotient_ring(["x", "y"], ["x*y"])
    M = GradedModule.cyclic(B, ["x^2"])
    N = GradedModule.cyclic(B, ["x"])
    rep = verify_am_sequence(M, N, trivial_context(B), W)
    assert rep.exact
    assert rep.tate.vector(1) == rep.tor.vector(1) == {2: 1}
    assert rep.relative.vector(1) == {}
    js = rep.to_json()
    json.dumps(js)
    assert js["verdict"] == "exact" and js["n"] == 1


def test_am_sequence_needs_auslander_class():
    Z = quotient_ring(["x", "y"], ["x^2", "x*y", "y^2"])
    ctx = make_context(canonical_module(Z))
    k = GradedModule.residue_field(Z)
    with pytest.raises(PreconditionError):
        verify_am_sequence(k, k, ctx, W)


def test_depth_formula_plane():
    P = polynomial_ring(["x", "y"])
    ctx = trivial_context(P)
    k = GradedModule.residue_field(P)
    rep = verify_depth_formula_absolute(k, k, ctx)
    assert rep.applicable and rep.q == 2 and rep.holds
    rep = verify_depth_formula_absolute(k, GradedModule.cyclic(P, ["x"]), ctx)
    assert rep.q == 1 and rep.holds
    rel = verify_depth_formula_relative(k, GradedModule.cyclic(P, ["x"]), ctx, window=W)
    assert rel.applicable and rel.holds


def test_duality_dual_numbers():
    A = quotient_ring(["x"], ["x^2"])
    k = GradedModule.residue_field(A)
    rep = verify_duality(k, k, trivial_context(A), 3, W)
    assert rep.holds and len(rep.rows) == 4


def test_independence_node():
    B = quotient_ring(["x", "y"], ["x*y"])
    k = GradedModule.residue_field(B)
    rep = verify_independence(k, k, trivial_context(B), 3, W, seed=1)
    assert rep.holds


def test_hull_lemma_node():
    B = quotient_ring(["x", "y"], ["x*y"])
    M = GradedModule.cyclic(B, ["x^2"])
    N = GradedModule.cyclic(B, ["x"])
    rep = verify_hull_lemma(M, N, trivial_context(B), 3, W)
    assert rep is not None and rep.holds

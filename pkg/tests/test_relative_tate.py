import pytest

from gctor.complexes import tor_table
from gctor.modules import GradedMatrix, GradedModule, ModuleMap
from gctor.relative_tate import (certify_short_exact, complete_resolution, gc_approximation, gc_hull,
                                 les_first_argument, les_second_argument, pc_relative_tor, proper_gc_resolution,
                                 properness_check, relative_tor, tate_table, tate_tor)
from gctor.ring import polynomial_ring, quotient_ring
from gctor.semidualizing import canonical_module, make_context, trivial_context

W = list(range(-8, 12))


@pytest.fixture(scope="module")
def node():
    B = quotient_ring(["x", "y"], ["x*y"])
    ctx = trivial_context(B)
    M = GradedModule.cyclic(B, ["x^2"])
    N = GradedModule.cyclic(B, ["x"])
    return B, ctx, M, N, gc_approximation(M, ctx)


def test_approximation_of_residue_field_over_line():
    R = polynomial_ring(["x"])
    a = gc_approximation(GradedModule.residue_field(R), trivial_context(R))
    assert a.n == 1
    assert a.Y.gens == (1,) and a.Y.is_free()
    assert a.X.gens == (0,) and a.X.is_free()
    assert certify_short_exact(a.iota, a.pi) is None


def test_approximation_certificates(node):
    _, ctx, M, _, a = node
    assert a.n == 1
    assert a.x_verdict.member
    assert a.y_pc_dim < a.n


def test_hull(node):
    _, ctx, M, _, a = node
    h = gc_hull(M, ctx, approx=a)
    assert certify_short_exact(h.into, h.onto) is None
    assert h.x_verdict.member and h.y_pc_dim < 2


def test_proper_resolution_is_proper(node):
    B, ctx, M, N, a = node
    X, aug = proper_gc_resolution(M, ctx, approx=a)
    assert properness_check(X, aug, [GradedModule.free(B), N, GradedModule.cyclic(B, ["y"])]) == []


def test_relative_tor_evaluators_agree(node):
    _, ctx, M, N, a = node
    r1 = relative_tor(M, N, ctx, range(4), W, "resolution", a)
    r2 = relative_tor(M, N, ctx, range(4), W, "sequence", a)
    assert r2.evaluator == "sequence"
    assert r1.table.data == r2.table.data
    # C = R: P_C-relative Tor is absolute Tor
    pc = pc_relative_tor(M, N, ctx, range(4), W)
    assert pc.data == tor_table(M, N, range(4), W).data


def test_sequence_evaluator_falls_back_outside_auslander_class():
    Z = quotient_ring(["x", "y"], ["x^2", "x*y", "y^2"])
    ctx = make_context(canonical_module(Z))
    k = GradedModule.residue_field(Z)
    r = relative_tor(k, k, ctx, range(2), W, "sequence")
    assert r.evaluator == "resolution" and r.notes


def test_periodic_complete_resolution_over_node():
    B = quotient_ring(["x", "y"], ["x*y"])
    ctx = trivial_context(B)
    M = GradedModule.cyclic(B, ["x"])
    cr = complete_resolution(M, ctx, 4)
    assert cr.n == 0 and cr.window == (-4, 4)
    assert all(cr.T.obj(i).ngens == 1 for i in range(-5, 6))
    # T is exact, so T (x) R has no homology
    assert tate_table(cr, GradedModule.free(B), None, W).is_zero()


def test_tate_of_residue_field_over_dual_numbers():
    A = quotient_ring(["x"], ["x^2"])
    k = GradedModule.residue_field(A)
    t = tate_tor(k, k, trivial_context(A), 4, W)
    assert [t.table.total(i) for i in range(-4, 5)] == [1] * 9
    # Tate homology of k in index i sits in internal degree i
    assert all(t.table.vector(i) == {i: 1} for i in range(-4, 5))


def test_tate_agrees_with_tor_above_dimension(node):
    _, ctx, M, N, _ = node
    cr = complete_resolution(M, ctx, 4)
    idx = [i for i in cr.indices() if i > cr.n]
    assert tate_table(cr, N, idx, W).data == tor_table(M, N, idx, W).data


def _dual_numbers_sequence():
    A = quotient_ring(["x"], ["x^2"])
    k = GradedModule.residue_field(A)
    k1 = GradedModule.residue_field(A, 1)
    F = GradedModule.cyclic(A, [])
    x = A.S.parse("x")
    f = ModuleMap(k1, F, GradedMatrix.from_polys(A, (1,), (0,), [[x]]))
    g = ModuleMap(F, k, GradedMatrix.identity(A, (0,)))
    return A, k, f, g


def test_long_exact_sequence_second_argument():
    A, k, f, g = _dual_numbers_sequence()
    cr = complete_resolution(k, trivial_context(A), 4)
    rep = les_second_argument(cr, f, g, window=range(-6, 8))
    assert rep.exact and len(rep.positions) > 0


def test_long_exact_sequence_first_argument():
    A, k, f, g = _dual_numbers_sequence()
    rep = les_first_argument(f, g, k, trivial_context(A), 4, window=range(-6, 8))
    assert rep.exact and len(rep.positions) > 0


def test_short_exact_certificate_rejects_non_injective():
    A, k, f, g = _dual_numbers_sequence()
    zero = ModuleMap(f.source, f.target, GradedMatrix.zero(A, f.source.gens, f.target.gens))
    assert certify_short_exact(zero, g) is not None

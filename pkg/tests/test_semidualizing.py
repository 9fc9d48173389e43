import pytest

from gctor.complexes import INF
from gctor.modules import GradedModule
from gctor.ring import polynomial_ring, quotient_ring
from gctor.semidualizing import (c_injective_artinian, canonical_module, dual, gc_dimension, ic_dimension,
                                 in_auslander_class, in_bass_class, is_semidualizing, is_totally_C_reflexive,
                                 make_context, matlis_dual_of_ring, pc_dimension, transpose, trivial_context)

W = range(-8, 9)


def hilb(M, window=W):
    return {d: M.hilbert(d) for d in window if M.hilbert(d)}


@pytest.fixture(scope="module")
def fat():
    Z = quotient_ring(["x", "y"], ["x^2", "x*y", "y^2"])
    return Z, make_context(canonical_module(Z))


def test_canonical_of_artinian_is_matlis_dual(fat):
    Z, ctx = fat
    assert ctx.C.gens == (-1, -1)
    assert hilb(ctx.C) == hilb(matlis_dual_of_ring(Z)) == {-1: 2, 0: 1}
    assert not ctx.is_trivial


def test_gorenstein_canonical_is_free():
    G = quotient_ring(["x", "y"], ["x^2", "y^2"])
    ctx = make_context(canonical_module(G))
    assert ctx.twist == -2
    assert ctx.notes == ("C is free of rank one (R(2))",)


def test_artinian_auslander_class_is_free_modules(fat):
    Z, ctx = fat
    k = GradedModule.residue_field(Z)
    assert in_auslander_class(GradedModule.free(Z, (0, 3)), ctx).member
    v = in_auslander_class(k, ctx)
    assert not v.member and v.witness
    assert in_bass_class(ctx.C, ctx).member
    assert not in_bass_class(k, ctx).member


def test_dimensions_over_artinian(fat):
    Z, ctx = fat
    k = GradedModule.residue_field(Z)
    assert gc_dimension(k, ctx) == 0
    assert pc_dimension(ctx.C, ctx) == 0
    assert ic_dimension(k, ctx) == INF


def test_c_injective_is_ring_for_canonical(fat):
    Z, ctx = fat
    assert hilb(c_injective_artinian(ctx)) == hilb(GradedModule.free(Z)) == {0: 1, 1: 2}


def test_trivial_context_everything_in_auslander():
    B = quotient_ring(["x", "y"], ["x*y"])
    ctx = trivial_context(B)
    for M in (GradedModule.residue_field(B), GradedModule.cyclic(B, ["x^2"])):
        assert in_auslander_class(M, ctx).member


def test_gc_dimension_matches_depth_deficit():
    # for C = R over a Gorenstein ring, G-dim M = depth R - depth M
    B = quotient_ring(["x", "y"], ["x*y"])
    ctx = trivial_context(B)
    assert gc_dimension(GradedModule.residue_field(B), ctx) == 1
    assert gc_dimension(GradedModule.cyclic(B, ["x"]), ctx) == 0
    P = polynomial_ring(["x", "y"])
    tp = trivial_context(P)
    k = GradedModule.residue_field(P)
    assert gc_dimension(k, tp) == pc_dimension(k, tp) == 2


def test_total_reflexivity():
    B = quotient_ring(["x", "y"], ["x*y"])
    ctx = trivial_context(B)
    assert is_totally_C_reflexive(GradedModule.cyclic(B, ["x"]), ctx).member
    assert not is_totally_C_reflexive(GradedModule.residue_field(B), ctx).member


def test_semidualizing_check():
    A = quotient_ring(["x"], ["x^2"])
    assert is_semidualizing(GradedModule.free(A)).member
    assert not is_semidualizing(GradedModule.residue_field(A)).member
    with pytest.raises(ValueError):
        make_context(GradedModule.residue_field(A))


def test_dual_and_transpose_over_node():
    B = quotient_ring(["x", "y"], ["x*y"])
    ctx = trivial_context(B)
    M = GradedModule.cyclic(B, ["x"])
    D = dual(M, ctx)
    assert D.gens == (1,)
    assert hilb(D, range(0, 5)) == {1: 1, 2: 1, 3: 1, 4: 1}
    Tr = transpose(M, ctx)
    assert Tr.gens == (-1,)
    assert hilb(Tr, range(0, 5)) == {d: 1 for d in range(5)}

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from waringlab.binary import BinaryForm
from waringlab.decomposer import (
    MUTATIONS,
    GenericCase,
    WDecomposition,
    decompose,
    generate_generic_instance,
    generate_instance,
    make_addendum,
    mutate,
    uniqueness_probe,
    verify,
)
from waringlab.errors import NotSubgeneric, OutOfRegime, PreconditionError, RegimeViolation
from waringlab.forms import Form, Line, power_of_linear
from waringlab.schemes import PointMult, Scheme0Dim


def test_worked_example(worked_example):
    W = decompose(worked_example)
    assert isinstance(W, WDecomposition)
    assert W.line == Line(((1, 0, 0), (0, 1, 0)))
    assert W.t == 1
    assert [a.M for a in W.addenda] == [(0, 0, 1)]
    assert W.Q.expand() == Form.from_terms(2, 5, {(4, 1, 0): 1})
    assert (W.sbr, W.sr) == (3, 6)
    assert [(t.l, t.m, t.d_i) for t in W.gen.terms] == [((1, 0, 0), (0, 1), 1)]
    assert verify(worked_example, W).passed


def test_sum_of_fifth_powers_is_generic():
    F = Form.zero(2, 5)
    for p in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        F = F + power_of_linear(p, 5)
    G = decompose(F)
    assert isinstance(G, GenericCase)
    assert G.lgp and G.unique_by_lgp and G.Z.degree == 3


def test_regime_examples():
    inst = generate_instance(2, 5, 1, (2,), seed=0)
    gt = inst.ground_truth
    assert (gt.sbr, gt.sr) == (3, 6)
    with pytest.raises(RegimeViolation) as exc:
        generate_instance(2, 4, 2, (2,))
    assert exc.value.inequality == "t <= (d-1)/2"
    inst = generate_instance(3, 7, 2, (2, 1), seed=0)
    assert (inst.ground_truth.sbr, inst.ground_truth.sr) == (5, 8)


def test_regime_other_inequalities():
    with pytest.raises(RegimeViolation, match="m >= 2"):
        generate_instance(1, 5, 1, (2,))
    with pytest.raises(RegimeViolation, match="some e_i >= 2"):
        generate_instance(2, 5, 1, (1, 1))
    with pytest.raises(RegimeViolation, match="2\\*sum"):
        generate_instance(2, 5, 0, (2, 2))


def test_decompose_refuses_small_cases():
    F = Form.from_terms(2, 3, {(3, 0, 0): 1, (0, 3, 0): 1, (1, 1, 1): 1})
    with pytest.raises(PreconditionError):
        decompose(F)
    with pytest.raises(PreconditionError):
        decompose(Form.from_terms(1, 5, {(4, 1): 1}))


def test_generic_rank_is_out_of_regime():
    # a general ternary quintic has no degree with two equal maximal catalecticant ranks
    F = Form(2, 5, tuple(Fraction((7 * i * i + 3 * i + 1) % 11 - 5) for i in range(21)))
    with pytest.raises(OutOfRegime):
        decompose(F)


def test_make_addendum_absorbs_roots():
    a = make_addendum((2, 4, 6), Fraction(-32), 5)
    assert a.c == 1 and a.M == (-2, -4, -6)
    b = make_addendum((1, 0, 0), Fraction(2), 5)
    assert b.c == 2 and b.M == (1, 0, 0)


@given(st.integers(0, 10**6), st.sampled_from([(2, 5, 1, (2,)), (2, 6, 2, (2,)), (2, 7, 1, (2, 1)), (3, 6, 1, (3,))]))
@settings(max_examples=15, deadline=None)
def test_round_trip(seed, cfg):
    inst = generate_instance(*cfg, seed=seed)
    gt = inst.ground_truth
    W = decompose(inst.F, seed=seed)
    assert W.line == gt.line
    assert W.Q.expand() == gt.Q.expand()
    assert sorted(a.form(W.d).coeffs for a in W.addenda) == sorted(a.form(W.d).coeffs for a in gt.addenda)
    assert (W.sbr, W.sr) == (gt.sbr, gt.sr)
    assert W.sbr + W.sr == 2 * W.t + W.d + 2 <= 2 * W.d + 1
    assert W.Z.same_as(gt.Z)


def test_chart_independence():
    inst = generate_instance(3, 6, 1, (2,), seed=4)
    assert decompose(inst.F, seed=1) == decompose(inst.F, seed=2)


def test_mutations_fail(worked_example):
    W = decompose(worked_example)
    for kind in MUTATIONS:
        assert not verify(worked_example, mutate(W, kind, seed=3)).passed, kind


def test_mutation_clause_details(worked_example):
    W = decompose(worked_example)
    rep = verify(worked_example, mutate(W, "extra_addendum"))
    assert rep.clauses["a"][0] == "FAIL"
    rep = verify(worked_example, mutate(W, "generic_binary"))
    assert rep.clauses["c"][0] == "FAIL"
    assert rep.clauses["d"][0] == "N/A"


def test_verify_never_raises(worked_example):
    W = decompose(worked_example)
    broken = WDecomposition(W.line, W.t, W.addenda, BinaryForm(5, (0,) * 6, W.line), W.gen, W.sbr, W.sr, W.Z)
    rep = verify(worked_example, broken)
    assert not rep.passed


def test_probe_on_worked_example(worked_example):
    W = decompose(worked_example)
    rep = uniqueness_probe(worked_example, W, trials=200, seed=1)
    assert rep.trials == 200 and rep.alternatives == [] and rep.redecompose_identical


def test_probe_detects_superfluous_point():
    inst = generate_generic_instance(2, 6, 3, seed=2)
    G = decompose(inst.F)
    padded = GenericCase(G.Z.union(Scheme0Dim((PointMult((1, 3, 7)),), 2)), 4, G.lgp, G.addenda, G.d)
    rep = uniqueness_probe(inst.F, padded, trials=200, seed=0, redecompose=False)
    assert rep.alternatives


def test_probe_preconditions():
    F = power_of_linear((1, 0, 0), 3) + power_of_linear((0, 1, 0), 3) + power_of_linear((1, 1, 0), 3)
    Z = Scheme0Dim.reduced([(1, 0, 0), (0, 1, 0), (1, 1, 0)])
    with pytest.raises(PreconditionError):
        uniqueness_probe(F, GenericCase(Z, 3, False, (), 3))
    inst = generate_instance(2, 6, 1, (2,), seed=0)
    W = decompose(inst.F)
    generic_q = BinaryForm(6, tuple(Fraction(c) for c in (1, 2, 5, 3, 7, 1, 4)), W.line)
    with pytest.raises(NotSubgeneric):
        uniqueness_probe(inst.F, WDecomposition(W.line, W.t, W.addenda, generic_q, W.gen, W.sbr, W.sr, W.Z))


def test_generic_generator():
    inst = generate_generic_instance(2, 7, 4, seed=0)
    G = decompose(inst.F)
    assert isinstance(G, GenericCase) and G.Z.same_as(inst.ground_truth.Z)
    with pytest.raises(RegimeViolation):
        generate_generic_instance(2, 5, 50)

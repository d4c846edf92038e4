import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from regring.errors import NotMutuallyReflexive, TraceNotStabilized, TraceTooShort
from regring.models import RingSpec
from regring.models.trace import AXIS, UNIT, Certificate, Exhausted, Stabilized
from regring.services import ideal_lattice as lat
from regring.services import reduction, ring_core
from regring.services.examples import build_example1
from regring.services.laws import another_reflexive_inverse
from regring.utils.serialization import CERTIFICATE_SCHEMA, validate_document

from .conftest import elements_of

M3F2 = RingSpec.matrix_ring(3, 2)
MIXED = RingSpec.parse('M2(F3)xM1(F2)')
M4F2 = RingSpec.matrix_ring(4, 2)
M3F3 = RingSpec.matrix_ring(3, 3)


def test_reflexive_pair_check(units):
    assert reduction.is_mutually_reflexive(units['E12'], units['E21'])
    assert not reduction.is_mutually_reflexive(units['E12'], units['E12'])
    with pytest.raises(NotMutuallyReflexive):
        reduction.run_reduction(units['E12'], units['E12'])


def test_matrix_unit_pair_stabilizes_at_once(units):
    """e0 = E22, f0 = E11, so g0 = 0 and the chain is stable at 0."""
    trace = reduction.run_reduction(units['E12'], units['E21'])
    assert trace.steps[0].e == units['E22']
    assert trace.steps[0].f == units['E11']
    assert trace.steps[0].g.is_zero()
    assert trace.status == Stabilized(0)
    assert trace.heights() == [0, 0]


def test_identity_pair(one2):
    trace = reduction.run_reduction(one2, one2)
    assert trace.status == Stabilized(0)
    assert trace.heights() == [2, 2]
    assert trace.steps[0].alpha_fixes_g


def test_certificates_golden(units):
    """Axis [[1,0],[1,0]] and unit quasi-inverse [[0,1],[1,0]] for E12, E21."""
    bundle = reduction.certify(units['E12'], units['E21'])
    assert bundle.ok
    assert bundle.axis.payload.parts[0].to_rows() == [[1, 0], [1, 0]]
    assert bundle.unit.payload == units['E12'] + units['E21']


def test_unit_witness_of_unit_is_inverse(m2f2, one2):
    a = ring_core.ring_one(m2f2) + ring_core.element_at(m2f2, 4)
    assert ring_core.is_unit(a)
    b = ring_core.unit_inverse(a)
    trace = reduction.run_reduction(a, b)
    assert reduction.unit_witness(a, b, trace).payload == b


def test_unit_witness_of_zero(m2f2, one2):
    zero = ring_core.ring_zero(m2f2)
    trace = reduction.run_reduction(zero, zero)
    assert reduction.unit_witness(zero, zero, trace).payload == one2


def test_default_partner_is_reflexive_inverse(units):
    bundle = reduction.certify(units['E12'])
    assert bundle.trace.b == units['E21']


@given(elements_of(M3F2))
def test_certificates_verify_m3f2(a):
    """Stabilizes within the length and both certificates re-verify."""
    bundle = reduction.certify(a)
    b = bundle.trace.b
    assert bundle.trace.stabilized_at <= M3F2.length
    assert bundle.ok
    assert reduction.verify_certificate(a, b, bundle.axis)
    assert reduction.verify_certificate(a, b, bundle.unit)


@given(elements_of(MIXED))
def test_certificates_verify_product_ring(a):
    bundle = reduction.certify(a)
    assert bundle.ok
    assert lat.is_axis(lat.ideal_of(bundle.trace.b), lat.ideal_of(a), lat.ideal_of(bundle.axis.payload))


@pytest.mark.parametrize('spec', [M4F2, M3F3], ids=str)
@given(data=st.data())
def test_certificates_with_another_reflexive_inverse(spec, data):
    """b = x a x for a random inner inverse x, not the canonical partner."""
    a = data.draw(elements_of(spec))
    b = another_reflexive_inverse(a, np.random.default_rng(data.draw(st.integers(0, 2 ** 32 - 1))))
    assert reduction.is_mutually_reflexive(a, b)
    bundle = reduction.certify(a, b)
    assert bundle.trace.b == b
    assert bundle.trace.stabilized_at <= spec.length
    assert bundle.ok, (bundle.axis.verified, bundle.unit.verified)
    assert reduction.verify_certificate(a, b, bundle.axis)
    assert reduction.verify_certificate(a, b, bundle.unit)
    assert reduction.lemma_ind_decomposition(bundle.trace).ok


def test_tampered_certificates_fail(units, one2):
    a, b = units['E12'], units['E21']
    assert not reduction.verify_certificate(a, b, Certificate(UNIT, units['E12']))
    assert not reduction.verify_certificate(a, b, Certificate(AXIS, one2))
    assert not reduction.verify_certificate(a, b, Certificate('other', one2))


def test_heights_never_increase():
    """g_0 > g_1 > g_2 = g_3 on the depth-1 slow pair."""
    a, b = build_example1(1, 2).pair()
    trace = reduction.run_reduction(a, b)
    assert trace.heights() == [3, 1, 0, 0]
    assert trace.status == Stabilized(2)
    assert all(step.injective for step in trace.steps)


def test_step_limit_exhausts():
    a, b = build_example1(1, 2).pair()
    trace = reduction.run_reduction(a, b, max_steps=1)
    assert trace.status == Exhausted(1)
    assert not trace.stabilized
    with pytest.raises(TraceNotStabilized):
        reduction.axis_witness(a, b, trace)
    with pytest.raises(TraceNotStabilized):
        reduction.certify(a, b, max_steps=1)


def test_decomposition_matrix_unit_pair(units, m2f2):
    """x_0 generates span(e2) = E22R and y_0 generates span(e1)."""
    trace = reduction.run_reduction(units['E12'], units['E21'])
    decomposition = reduction.lemma_ind_decomposition(trace)
    assert decomposition.ok
    assert lat.ideal_of(decomposition.xs[0]) == lat.ideal_of(units['E22'])
    assert lat.ideal_of(decomposition.ys[0]) == lat.ideal_of(units['E11'])


def test_decomposition_slow_pair():
    """Every recorded check holds on the depth-1 slow pair."""
    a, b = build_example1(1, 2).pair()
    trace = reduction.run_reduction(a, b)
    decomposition = reduction.lemma_ind_decomposition(trace)
    assert decomposition.ok
    assert len(decomposition.xs) == trace.stabilized_at + 1
    assert 'x + g_0 = e_0' in decomposition.checks


def test_decomposition_sums_are_perspective():
    """x_0 + ... + x_m and y_0 + ... + y_m meet in 0 and have equal dimensions."""
    a, b = build_example1(2, 3).pair()
    trace = reduction.run_reduction(a, b)
    decomposition = reduction.lemma_ind_decomposition(trace)
    assert decomposition.checks['x ≈ y']
    x_sum = lat.join_all(a.spec, [lat.ideal_of(x) for x in decomposition.xs])
    y_sum = lat.join_all(a.spec, [lat.ideal_of(y) for y in decomposition.ys])
    assert lat.meet(x_sum, y_sum).is_zero()
    assert x_sum.dims == y_sum.dims
    assert x_sum.height > 0


@given(elements_of(MIXED))
def test_decomposition_holds_on_random_elements(a):
    trace = reduction.run_reduction(*reduction.make_reflexive_pair(a))
    decomposition = reduction.lemma_ind_decomposition(trace)
    assert decomposition.ok, decomposition.checks
    assert 'x ≈ y' in decomposition.checks


def test_decomposition_needs_next_step(units):
    trace = reduction.run_reduction(units['E12'], units['E21'])
    with pytest.raises(TraceTooShort):
        reduction.lemma_ind_decomposition(trace, m=5)


def test_bundle_matches_schema(units):
    document = reduction.certify(units['E12'], units['E21']).to_dict()
    validate_document(document, CERTIFICATE_SCHEMA)
    assert document['status'] == {'stabilized_at': 0}
    assert document['verified'] == {'axis': True, 'unit': True}
    assert document['unit'] == '0,1,1,0'

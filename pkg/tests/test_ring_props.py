import pytest

from regring.models import RingSpec
from regring.services import reduction, ring_core, ring_props

PRODUCT = RingSpec.parse('M1(F2)xM1(F3)')


def test_directly_finite(m2f2):
    report = ring_props.is_directly_finite(m2f2)
    assert report.holds
    assert report.cases == 16


@pytest.mark.parametrize('name, index', [
    ('E12', 2),
    ('E11', 1),
    ('E22', 1),
])
def test_strong_pi_index_of_matrix_units(units, name, index):
    assert ring_props.strong_pi_index(units[name]) == index


def test_strong_pi_index_of_zero_and_one(m2f2, one2):
    assert ring_props.strong_pi_index(ring_core.ring_zero(m2f2)) == 1
    assert ring_props.strong_pi_index(one2) == 1


def test_strongly_pi_regular(m2f2):
    assert ring_props.strongly_pi_regular_scan(m2f2).holds
    assert ring_props.strongly_pi_regular_scan(PRODUCT).holds


def test_unit_regular_element(units):
    """The unit comes from the reduction certificate."""
    a = units['E12']
    report = ring_props.is_unit_regular_element(a)
    assert report.holds
    u = report.witness_or_counterexample['u']
    assert ring_core.is_unit(u)
    assert a * u * a == a


def test_bruteforce_unit_quasi_inverse(units):
    """The first unit u with E12·u·E12 = E12 in enumeration order is the swap."""
    u = ring_props.find_unit_quasi_inverse_bruteforce(units['E12'])
    assert u == units['E12'] + units['E21']


def test_certificate_agrees_with_bruteforce(m2f2):
    for a in ring_core.enumerate_elements(m2f2):
        assert ring_props.is_unit_regular_element(a).holds
        assert ring_props.find_unit_quasi_inverse_bruteforce(a) is not None


def test_handelman(m2f2):
    report = ring_props.handelman_scan(m2f2)
    assert report.holds
    assert report.cases > 16


def test_handelman_on_product_ring():
    assert ring_props.handelman_scan(RingSpec.parse('M2(F2)xM1(F2)'), check_elements=False).holds


def test_ehrlich(m2f2):
    assert ring_props.ehrlich_scan(m2f2).holds
    assert ring_props.ehrlich_scan(PRODUCT).holds


def test_mainr_length(m2f2):
    """t_1·t_0 = t_0 on all mutually reflexive pairs of a length-2 ring."""
    report = ring_props.mainr_length_scan(m2f2)
    assert report.holds
    pairs = sum(1 for a in ring_core.enumerate_elements(m2f2)
                for b in ring_core.enumerate_elements(m2f2)
                if reduction.is_mutually_reflexive(a, b))
    assert report.cases == pairs


def test_mainr_length_refuses_long_rings(m3f2):
    with pytest.raises(ValueError):
        ring_props.mainr_length_scan(m3f2, n=0)


def test_theorem23(m2f2):
    report = ring_props.theorem23_check(2, [m2f2, PRODUCT])
    assert report.holds
    assert report.cases == 3 * (16 + 6)


def test_theorem23_guards(m2f2, m3f2):
    with pytest.raises(ValueError):
        ring_props.theorem23_check(2, [m3f2])
    with pytest.raises(ValueError):
        ring_props.theorem23_check(1, [m2f2])


def test_exploratory_scan_reports(m2f2):
    report = ring_props.exploratory_scan(m2f2, 0)
    assert report.property == 'exploratory_s0'
    assert report.cases == 16


def test_idempotents(m2f2):
    """0, 1 and the six rank-one idempotents of M2(F2)."""
    assert len(ring_props.idempotents(m2f2)) == 8


@pytest.mark.parametrize('d, spec, cases', [
    (3, RingSpec.matrix_ring(3, 2), 3 * 512),
    (2, RingSpec.matrix_ring(2, 3), 3 * 81),
], ids=['M3(F2)', 'M2(F3)'])
def test_theorem23_at_full_length(d, spec, cases):
    report = ring_props.theorem23_check(d, [spec])
    assert report.holds, report.witness_or_counterexample
    assert report.cases == cases


SCANNED = [RingSpec.matrix_ring(3, 2), RingSpec.matrix_ring(2, 3), RingSpec.parse('M2(F2)xM1(F3)')]


@pytest.mark.parametrize('spec', SCANNED, ids=str)
def test_handelman_on_larger_rings(spec):
    report = ring_props.handelman_scan(spec)
    assert report.holds, report.witness_or_counterexample
    assert report.cases > spec.cardinality()


@pytest.mark.parametrize('spec', SCANNED, ids=str)
def test_strongly_pi_regular_on_larger_rings(spec):
    report = ring_props.strongly_pi_regular_scan(spec)
    assert report.holds, report.witness_or_counterexample
    assert report.cases == spec.cardinality()

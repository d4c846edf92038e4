import numpy as np
import pytest
from hypothesis import given

from regring.errors import DimensionMismatch, FormatError, IntervalViolation
from regring.models import Mat, PrimeField
from regring.services import gf_linear
from regring.utils.formats import MatrixBlock, parse_element_blocks

from .conftest import matrices


def _unit(f, i, j, n=2):
    return Mat.unit(f, n, i, j)


def test_entries_are_reduced_mod_p():
    """Entries are stored as residues."""
    m = Mat(PrimeField(3), [[4, -1], [3, 5]])
    assert m.to_rows() == [[1, 2], [0, 2]]


def test_from_entries_rejects_non_residues():
    """Entries outside 0..p-1 are a format error."""
    with pytest.raises(FormatError):
        Mat.from_entries(2, 2, 2, [0, 1, 2, 0])


def test_matrix_text_format(f2):
    """p:RxC:[...] text parses back to the same entries."""
    m = Mat.from_entries(f2, 2, 3, [1, 0, 1, 0, 1, 1])
    assert m.to_text() == '2:2x3:[1,0,1,0,1,1]'
    assert parse_element_blocks(m.to_text()) == [MatrixBlock(2, 2, 3, [1, 0, 1, 0, 1, 1])]


def test_shape_mismatch_raises(f2):
    """Products need matching inner dimensions."""
    with pytest.raises(DimensionMismatch):
        Mat.zeros(f2, 2, 3) @ Mat.zeros(f2, 2, 3)


def test_rank_and_rref(f2):
    """rank of I, 0 and a matrix unit."""
    assert gf_linear.rank(Mat.identity(f2, 3)) == 3
    assert gf_linear.rank(Mat.zeros(f2, 3)) == 0
    assert gf_linear.rank(_unit(f2, 0, 1)) == 1
    reduced, r, pivots = gf_linear.rref(Mat(f2, [[1, 1], [1, 1]]))
    assert r == 1
    assert pivots == (0,)
    assert reduced.to_rows() == [[1, 1], [0, 0]]


def test_rref_over_gf3():
    """Pivots are normalized to 1 with inverses mod 3."""
    reduced, r, _ = gf_linear.rref(Mat(PrimeField(3), [[2, 1], [1, 2]]))
    assert r == 1
    assert reduced.to_rows() == [[1, 2], [0, 0]]


def test_solve_right_consistent(f2):
    """E12·x = E11 has the canonical solution E21."""
    x = gf_linear.solve_right(_unit(f2, 0, 1), _unit(f2, 0, 0))
    assert x == _unit(f2, 1, 0)


def test_solve_right_inconsistent(f2):
    """E12·x = E21 has no solution: the second row of E12·x is always zero."""
    assert gf_linear.solve_right(_unit(f2, 0, 1), _unit(f2, 1, 0)) is None


def test_kernel_and_image(f2):
    """ker E12 = span(e1) = im E12."""
    e12 = _unit(f2, 0, 1)
    kernel = gf_linear.kernel_basis(e12)
    image = gf_linear.image_basis(e12)
    assert kernel.dim == 1
    assert gf_linear.contains_vector(kernel, [1, 0])
    assert image == kernel


def test_sum_and_intersection(f2):
    """span(e1, e2) and span(e2, e3) in GF(2)^3."""
    u = gf_linear.span(f2, 3, [[1, 0, 0], [0, 1, 0]])
    v = gf_linear.span(f2, 3, [[0, 1, 0], [0, 0, 1]])
    assert gf_linear.subspace_intersect(u, v) == gf_linear.span(f2, 3, [[0, 1, 0]])
    assert gf_linear.subspace_sum(u, v).is_full()
    assert gf_linear.subspace_leq(gf_linear.subspace_intersect(u, v), u)
    assert not gf_linear.subspace_leq(u, v)


def test_span_is_canonical(f2):
    """Different spanning sets give equal subspaces."""
    a = gf_linear.span(f2, 3, [[1, 1, 0], [0, 1, 1]])
    b = gf_linear.span(f2, 3, [[1, 0, 1], [1, 1, 0], [0, 1, 1]])
    assert a == b
    assert hash(a) == hash(b)


def test_extend_to_complement(f2):
    """The greedy complement of span(e1) in GF(2)^2 is span(e2)."""
    u = gf_linear.span(f2, 2, [[1, 0]])
    full = gf_linear.full_subspace(f2, 2)
    assert gf_linear.extend_to_complement(u, full) == gf_linear.span(f2, 2, [[0, 1]])


def test_extend_to_complement_needs_containment(f2):
    """u must lie inside w."""
    u = gf_linear.span(f2, 2, [[1, 0]])
    w = gf_linear.span(f2, 2, [[0, 1]])
    with pytest.raises(IntervalViolation):
        gf_linear.extend_to_complement(u, w)


def test_inner_inverse_golden(f2):
    """Canonical inner inverses of matrix units and of 0."""
    assert gf_linear.inner_inverse(_unit(f2, 0, 1)) == _unit(f2, 1, 0)
    assert gf_linear.inner_inverse(_unit(f2, 1, 1)) == _unit(f2, 1, 1)
    assert gf_linear.inner_inverse(Mat.zeros(f2, 2)).is_zero()


def test_inner_inverse_of_invertible_is_inverse():
    """For invertible a the canonical inner inverse is a^-1."""
    a = Mat(PrimeField(5), [[2, 1], [1, 4]])
    assert gf_linear.inner_inverse(a) == gf_linear.inverse(a)
    assert a @ gf_linear.inverse(a) == Mat.identity(PrimeField(5), 2)


def test_inverse_of_singular_is_none(f2):
    assert gf_linear.inverse(Mat(f2, [[1, 1], [1, 1]])) is None


@given(matrices(3, 3, 4))
def test_inner_inverse_defining_identity(a):
    """a·g·a = a for rectangular matrices over GF(3)."""
    g = gf_linear.inner_inverse(a)
    assert g.shape == (4, 3)
    assert a @ g @ a == a


@given(matrices(2, 4, 4))
def test_projection_onto_image(a):
    """The canonical projection onto im a is idempotent with image im a."""
    u = gf_linear.image_basis(a)
    e = gf_linear.projection_onto(u)
    assert e @ e == e
    assert gf_linear.image_basis(e) == u


def test_projection_along_given_kernel(f2):
    """Projection onto span(e1) along span(e1 + e2)."""
    u = gf_linear.span(f2, 2, [[1, 0]])
    along = gf_linear.span(f2, 2, [[1, 1]])
    e = gf_linear.projection_onto(u, along)
    assert e.to_rows() == [[1, 1], [0, 0]]


@pytest.mark.parametrize('p, n, expected', [
    (2, 2, 5),
    (3, 2, 6),
    (2, 3, 16),
])
def test_enumerate_subspaces_counts(p, n, expected):
    """Sum of Gaussian binomials."""
    spaces = list(gf_linear.enumerate_subspaces(PrimeField(p), n))
    assert len(spaces) == expected
    assert len(set(spaces)) == expected


def test_enumerated_bases_are_rref(f2):
    """Each enumerated basis is already canonical."""
    for space in gf_linear.enumerate_subspaces(f2, 3):
        assert gf_linear.span(f2, 3, space.basis.data) == space
        assert np.all(space.basis.data < 2)

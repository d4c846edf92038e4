"""
Ring operations on products of matrix rings.

Quasi-inversion is total and single valued: it is the canonical inner
inverse of gf_linear applied per component. x+ = x'xx' and gamma(x) = x·x+
are built on top of it.
"""
from itertools import product
from typing import Iterator, Optional

import numpy as np

from ..config import current_config
from ..errors import BudgetExceeded, NotAUnit
from ..models.linear import Mat
from ..models.ring import Corner, RingElement, RingSpec
from . import gf_linear


def ring_zero(spec: RingSpec) -> RingElement:
    return RingElement(spec, tuple(Mat.zeros(f, n) for f, n in zip(spec.fields, spec.sizes)))


def ring_one(spec: RingSpec) -> RingElement:
    return RingElement(spec, tuple(Mat.identity(f, n) for f, n in zip(spec.fields, spec.sizes)))


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    return a + b


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    return a * b


def ring_neg(a: RingElement) -> RingElement:
    return -a


def ring_pow(a: RingElement, k: int) -> RingElement:
    """a^k by repeated squaring; a^0 = 1."""
    if k < 0:
        raise ValueError(f"ring_pow: exponent must be non-negative, got {k}")
    result = ring_one(a.spec)
    base = a
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def quasi_inverse(a: RingElement) -> RingElement:
    return RingElement(a.spec, tuple(gf_linear.inner_inverse(m) for m in a.parts))


def reflexive(a: RingElement) -> RingElement:
    """a+ = a'·a·a', a reflexive inverse of a."""
    q = quasi_inverse(a)
    return q * a * q


def gamma(a: RingElement) -> RingElement:
    """Idempotent a·a+ generating the right ideal aR."""
    return a * reflexive(a)


def is_idempotent(a: RingElement) -> bool:
    return a * a == a


def is_unit(a: RingElement) -> bool:
    return all(gf_linear.rank(m) == m.rows for m in a.parts)


def unit_inverse(a: RingElement) -> RingElement:
    parts = []
    for i, m in enumerate(a.parts):
        inv = gf_linear.inverse(m)
        if inv is None:
            raise NotAUnit(f"component {i} of {a.to_text()} is singular")
        parts.append(inv)
    return RingElement(a.spec, tuple(parts))


def ring_solve_right(a: RingElement, b: RingElement) -> Optional[RingElement]:
    """Some x with a·x = b, or None when b is not in aR."""
    parts = []
    for ma, mb in zip(a.parts, b.parts):
        x = gf_linear.solve_right(ma, mb)
        if x is None:
            return None
        parts.append(x)
    return RingElement(a.spec, tuple(parts))


def check_budget(cases: int, budget: Optional[int] = None):
    budget = current_config().ENUM_BUDGET if budget is None else budget
    if cases > budget:
        raise BudgetExceeded(cases, budget)


def split_range(total: int, parts: int):
    """[lo, hi) chunks covering range(total), at most `parts` of them, in order."""
    step = -(-total // parts)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _entry_radices(spec: RingSpec):
    return [p for n, p in spec.components for _ in range(n * n)]


def _from_flat(spec: RingSpec, flat) -> RingElement:
    arrays = []
    offset = 0
    for n, _ in spec.components:
        arrays.append(np.asarray(flat[offset:offset + n * n], dtype=np.int64).reshape(n, n))
        offset += n * n
    return RingElement.from_arrays(spec, arrays)


def enumerate_elements(spec: RingSpec, budget: Optional[int] = None) -> Iterator[RingElement]:
    """Every element once, lexicographic on row-major entries, component-major."""
    check_budget(spec.cardinality(), budget)
    for flat in product(*(range(p) for p in _entry_radices(spec))):
        yield _from_flat(spec, flat)


def element_at(spec: RingSpec, index: int) -> RingElement:
    """The index-th element of enumerate_elements."""
    radices = _entry_radices(spec)
    flat = [0] * len(radices)
    for pos in range(len(radices) - 1, -1, -1):
        index, flat[pos] = divmod(index, radices[pos])
    return _from_flat(spec, flat)


def _as_rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_element(spec: RingSpec, seed=None) -> RingElement:
    """Uniform random element; `seed` is an int or a numpy Generator."""
    rng = _as_rng(seed)
    return RingElement.from_arrays(spec, [
        rng.integers(0, p, size=(n, n), dtype=np.int64) for n, p in spec.components
    ])


def corner_view(e: RingElement) -> Corner:
    return Corner(e)


def corner_elements(corner: Corner, budget: Optional[int] = None) -> Iterator[RingElement]:
    for x in enumerate_elements(corner.spec, budget):
        if corner.contains(x):
            yield x

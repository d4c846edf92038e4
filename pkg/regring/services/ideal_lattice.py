"""
The lattice L(R) of principal right ideals.

In a product of matrix rings aR is determined by the column spaces of the
components of a, so every lattice operation is a subspace operation per
component. Perspectivity and isomorphism answers are always backed by an
explicit witness element.
"""
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence

import numpy as np
from cachetools import LRUCache, cached

from ..config import current_config
from ..errors import IntervalViolation, NotIdempotent, NotIso, NotPerspective, SpecMismatch, VerificationFailed
from ..models.ideal import Ideal, MvnWitness, PerspectivityAxis
from ..models.report import Verdict
from ..models.ring import RingElement, RingSpec
from ..utils.logger import get_linear_logger, log_scan_summary, log_verification_failure
from . import gf_linear, ring_core
from .term_lang import join_of

logger = get_linear_logger()


def _same_spec(*ideals):
    spec = ideals[0].spec
    for other in ideals[1:]:
        if other.spec != spec:
            raise SpecMismatch(f"ideals of {spec} and {other.spec}")
    return spec


# Keyed on the element or on both ideals.
_IDEALS = LRUCache(maxsize=4096)
_AXES = LRUCache(maxsize=1024)


@cached(_IDEALS)
def ideal_of(a: RingElement) -> Ideal:
    return Ideal(a.spec, tuple(gf_linear.image_basis(m) for m in a.parts))


def zero_ideal(spec: RingSpec) -> Ideal:
    return Ideal(spec, tuple(gf_linear.zero_subspace(f, n) for f, n in zip(spec.fields, spec.sizes)))


def full_ideal(spec: RingSpec) -> Ideal:
    return Ideal(spec, tuple(gf_linear.full_subspace(f, n) for f, n in zip(spec.fields, spec.sizes)))


def meet(a: Ideal, b: Ideal) -> Ideal:
    spec = _same_spec(a, b)
    return Ideal(spec, tuple(gf_linear.subspace_intersect(u, v) for u, v in zip(a.spaces, b.spaces)))


def join(a: Ideal, b: Ideal) -> Ideal:
    spec = _same_spec(a, b)
    return Ideal(spec, tuple(gf_linear.subspace_sum(u, v) for u, v in zip(a.spaces, b.spaces)))


def join_all(spec: RingSpec, ideals: Sequence[Ideal]) -> Ideal:
    result = zero_ideal(spec)
    for ideal in ideals:
        result = join(result, ideal)
    return result


def leq(a: Ideal, b: Ideal) -> bool:
    _same_spec(a, b)
    return all(gf_linear.subspace_leq(u, v) for u, v in zip(a.spaces, b.spaces))


def height(a: Ideal) -> int:
    return a.height


def relative_complement(a: Ideal, lo: Ideal, hi: Ideal) -> Ideal:
    """X with a ∩ X = lo and a + X = hi, for lo <= a <= hi.

    X = lo + Y where Y is the canonical complement of a inside [0, hi];
    modularity gives a ∩ (lo + Y) = lo.
    """
    spec = _same_spec(a, lo, hi)
    if not (leq(lo, a) and leq(a, hi)):
        raise IntervalViolation(f"relative_complement needs lo <= a <= hi (heights {lo.height}, {a.height}, {hi.height})")
    spaces = []
    for u, low, high in zip(a.spaces, lo.spaces, hi.spaces):
        spaces.append(gf_linear.subspace_sum(low, gf_linear.extend_to_complement(u, high)))
    return Ideal(spec, tuple(spaces))


def complement(a: Ideal) -> Ideal:
    return relative_complement(a, zero_ideal(a.spec), full_ideal(a.spec))


def idempotent_of(a: Ideal) -> RingElement:
    """Canonical idempotent e with eR = a (kernel along the canonical complement)."""
    return RingElement(a.spec, tuple(gf_linear.projection_onto(u) for u in a.spaces))


def enumerate_ideals(spec: RingSpec, budget: Optional[int] = None) -> Iterator[Ideal]:
    """All of L(R), component-major, each component by dimension then pivots."""
    ring_core.check_budget(count_ideals(spec), budget)
    per_component = [list(gf_linear.enumerate_subspaces(f, n)) for f, n in zip(spec.fields, spec.sizes)]
    for spaces in product(*per_component):
        yield Ideal(spec, spaces)


def _gaussian_binomial(n, k, p):
    num, den = 1, 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def count_ideals(spec: RingSpec) -> int:
    total = 1
    for n, p in spec.components:
        total *= sum(_gaussian_binomial(n, k, p) for k in range(n + 1))
    return total


def axis_checks(a: Ideal, b: Ideal, c: Ideal) -> Dict[str, bool]:
    """The five equalities of a ∼_c b."""
    ab_sum, ac_sum, bc_sum = join(a, b), join(a, c), join(b, c)
    ab_meet, ac_meet, bc_meet = meet(a, b), meet(a, c), meet(b, c)
    return {
        'a+b=a+c': ab_sum == ac_sum,
        'a+b=b+c': ab_sum == bc_sum,
        'a+c=b+c': ac_sum == bc_sum,
        'ab=ac': ab_meet == ac_meet,
        'ab=bc': ab_meet == bc_meet,
    }


def is_axis(a: Ideal, b: Ideal, c: Ideal) -> bool:
    return all(axis_checks(a, b, c).values())


def _check_idempotent(e: RingElement, name: str):
    if not ring_core.is_idempotent(e):
        raise NotIdempotent(f"{name} = {e.to_text()} is not idempotent")


def mvn_witness(e: RingElement, f: RingElement) -> MvnWitness:
    """x, y with y·x = e and x·y = f, by matching canonical bases of im e and im f."""
    _check_idempotent(e, 'e')
    _check_idempotent(f, 'f')
    if e.spec != f.spec:
        raise SpecMismatch(f"mvn_witness: {e.spec} vs {f.spec}")
    xs, ys = [], []
    for i, (me, mf) in enumerate(zip(e.parts, f.parts)):
        e_basis = gf_linear.image_basis(me).columns()
        f_basis = gf_linear.image_basis(mf).columns()
        if e_basis.cols != f_basis.cols:
            raise NotIso(f"component {i}: rank {e_basis.cols} vs {f_basis.cols}")
        # e = E·L_e with L_e·E = I, likewise for f
        left_e = gf_linear.solve_right(e_basis, me)
        left_f = gf_linear.solve_right(f_basis, mf)
        xs.append(f_basis @ left_e)
        ys.append(e_basis @ left_f)
    witness = MvnWitness(RingElement(e.spec, tuple(xs)), RingElement(e.spec, tuple(ys)), e, f)
    if not witness.holds():
        log_verification_failure('mvn_witness', {'e': e.to_text(), 'f': f.to_text()})
        raise VerificationFailed("constructed Murray-von Neumann witness does not verify")
    return witness


def is_module_iso(a: Ideal, b: Ideal) -> bool:
    """aR ≅ bR as right modules, answered only with a verified witness."""
    _same_spec(a, b)
    if a.dims != b.dims:
        return False
    mvn_witness(idempotent_of(a), idempotent_of(b))
    return True


@cached(_AXES)
def common_complement(a: Ideal, b: Ideal) -> PerspectivityAxis:
    """
    Common complement c with a ∼_c b

    With g generating a ∩ b, split a = a' ⊕ g and b = b' ⊕ g, take the
    graph d = e' + x·e' of an isomorphism a' -> b' and return c generating
    dR + gR. For a = b this is c = a.

    Args:
        a: First ideal
        b: Second ideal of the same ring

    Returns:
        PerspectivityAxis holding c and the five checked equalities

    Raises:
        NotPerspective: If a and b differ in dimension on some component
        VerificationFailed: If the constructed c fails a check
    """
    spec = _same_spec(a, b)
    if a.dims != b.dims:
        raise NotPerspective(f"dimensions {list(a.dims)} and {list(b.dims)} differ")
    zero = zero_ideal(spec)
    common = meet(a, b)
    a_rest = relative_complement(common, zero, a)
    b_rest = relative_complement(common, zero, b)
    e_rest, f_rest = idempotent_of(a_rest), idempotent_of(b_rest)
    witness = mvn_witness(e_rest, f_rest)
    d = e_rest + witness.x * e_rest
    c = join_of(d, idempotent_of(common))
    checks = axis_checks(a, b, ideal_of(c))
    axis = PerspectivityAxis(c, checks)
    if not axis.verified:
        log_verification_failure('common_complement', {'a': a.dims, 'b': b.dims}, checks)
        raise VerificationFailed("constructed axis does not satisfy the perspectivity equalities")
    logger.debug(f"axis for heights {a.height}/{b.height}: {c.to_text()}")
    return axis


def is_perspective(a: Ideal, b: Ideal) -> bool:
    try:
        common_complement(a, b)
    except NotPerspective:
        return False
    return True


def find_axis_bruteforce(a: Ideal, b: Ideal, budget: Optional[int] = None) -> Optional[RingElement]:
    """First element c (enumeration order) with a ∼_c b; oracle for tests."""
    for c in ring_core.enumerate_elements(a.spec, budget):
        if is_axis(a, b, ideal_of(c)):
            return c
    return None


def independent(seq: Sequence[Ideal]) -> bool:
    """a_n ∩ (a_{n+1} + ... + a_m) = 0 for every n."""
    if not seq:
        return True
    spec = _same_spec(*seq)
    tail = zero_ideal(spec)
    for ideal in reversed(seq):
        if not meet(ideal, tail).is_zero():
            return False
        tail = join(tail, ideal)
    return True


def _random_ideal(spec, rng):
    return ideal_of(ring_core.sample_element(spec, rng))


def is_neutral(u: Ideal, mode: str = 'exhaustive', budget: Optional[int] = None,
               seed: int = 0, samples: Optional[int] = None) -> Verdict:
    """
    Check (u + x) ∩ (u + y) = u + x ∩ y for all ideals x, y

    Args:
        u: Candidate neutral ideal
        mode: 'exhaustive' over L(R) squared, or 'sampled'
        budget: Case budget for the exhaustive scan
        seed: Sampling seed
        samples: Pairs to draw, DEFAULT_TRIALS when omitted

    Returns:
        Verdict with the first violating x, y as counterexample
    """
    spec = u.spec

    def violated(x, y):
        return meet(join(u, x), join(u, y)) != join(u, meet(x, y))

    if mode == 'exhaustive':
        total = count_ideals(spec) ** 2
        ring_core.check_budget(total, budget)
        ideals = list(enumerate_ideals(spec, budget=float('inf')))
        checked = 0
        for x in ideals:
            for y in ideals:
                checked += 1
                if violated(x, y):
                    log_scan_summary('neutral', checked, 1, mode, ring=spec)
                    return Verdict(False, checked, mode, counterexample={'x': x, 'y': y})
        log_scan_summary('neutral', checked, 0, mode, ring=spec)
        return Verdict(True, checked, mode)

    if mode != 'sampled':
        raise ValueError(f"mode must be 'exhaustive' or 'sampled', got {mode}")
    rng = np.random.default_rng(seed)
    samples = samples or current_config().DEFAULT_TRIALS
    for i in range(samples):
        x, y = _random_ideal(spec, rng), _random_ideal(spec, rng)
        if violated(x, y):
            return Verdict(False, i + 1, mode, counterexample={'x': x, 'y': y})
    return Verdict(True, samples, mode)


def ideal_from_basis(spec: RingSpec, bases: List) -> Ideal:
    """Ideal spanned per component by the given vectors (rows)."""
    return Ideal(spec, tuple(
        gf_linear.span(f, n, np.asarray(vectors, dtype=np.int64).reshape(-1, n))
        for vectors, f, n in zip(bases, spec.fields, spec.sizes)
    ))


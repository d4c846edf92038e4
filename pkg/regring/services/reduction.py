"""
Reduction of a mutually reflexive pair (a, b) to a perspectivity.

Starting from e_0 = ba and f_0 = ab the chains

    g_n     generates e_nR ∩ f_nR
    e_{n+1} = gamma(b^(2^n) g_n)
    f_{n+1} = gamma(a^(2^n) g_n)

descend until g_{n+1}R = g_nR. In a finite ring that happens within
height(g_0) + 1 steps, and from then on bR and aR are perspective and a
has a unit quasi-inverse. Both witnesses are built here and re-verified.
"""
from typing import Optional, Tuple

from ..errors import NotMutuallyReflexive, TraceNotStabilized, TraceTooShort
from ..models.linear import Mat
from ..models.ring import RingElement
from ..models.trace import (AXIS, UNIT, Certificate, CertificateBundle, Decomposition, Exhausted,
                            ReductionStep, ReductionTrace, Stabilized)
from ..utils.logger import get_reduction_logger, log_verification_failure
from . import gf_linear, ideal_lattice, ring_core
from .term_lang import meet_of

logger = get_reduction_logger()


def make_reflexive_pair(a: RingElement) -> Tuple[RingElement, RingElement]:
    return a, ring_core.reflexive(a)


def is_mutually_reflexive(a: RingElement, b: RingElement) -> bool:
    return a * b * a == a and b * a * b == b


def _ranks(x: RingElement):
    return tuple(gf_linear.rank(m) for m in x.parts)


def _step(n, e, f, g, power_a):
    ideal = ideal_lattice.ideal_of
    return ReductionStep(
        n=n, e=e, f=f, g=g,
        e_height=ideal(e).height,
        f_height=ideal(f).height,
        g_height=ideal(g).height,
        alpha_fixes_g=ideal(power_a * g) == ideal(g),
        injective=_ranks(power_a * e) == _ranks(e),
    )


def run_reduction(a: RingElement, b: RingElement, max_steps: Optional[int] = None) -> ReductionTrace:
    """
    Run the chains until g stabilizes or max_steps is reached

    Args:
        a: Element of a finite regular ring
        b: Partner with aba = a and bab = b
        max_steps: Step limit, length + 1 when omitted

    Returns:
        ReductionTrace; Stabilized(n) means g_{n+1}R = g_nR and the trace
        then holds steps 0..n+1, otherwise the status is Exhausted

    Raises:
        NotMutuallyReflexive: If a and b are not a mutually reflexive pair
    """
    if a.spec != b.spec or not is_mutually_reflexive(a, b):
        raise NotMutuallyReflexive(f"aba = a and bab = b fail for a = {a.to_text()}, b = {b.to_text()}")
    max_steps = a.spec.length + 1 if max_steps is None else max_steps

    trace = ReductionTrace(a, b)
    e, f = b * a, a * b
    g = meet_of(e, f)
    power_a, power_b = a, b
    trace.steps.append(_step(0, e, f, g, power_a))

    n = 0
    while True:
        e_next = ring_core.gamma(power_b * g)
        f_next = ring_core.gamma(power_a * g)
        g_next = meet_of(e_next, f_next)
        power_a, power_b = power_a * power_a, power_b * power_b
        trace.steps.append(_step(n + 1, e_next, f_next, g_next, power_a))
        if ideal_lattice.ideal_of(g_next) == ideal_lattice.ideal_of(g):
            trace.status = Stabilized(n)
            break
        n += 1
        if n >= max_steps:
            trace.status = Exhausted(max_steps)
            logger.error(f"reduction did not stabilize within {max_steps} steps on {a.spec} "
                         f"(a = {a.to_text()}, b = {b.to_text()})")
            break
        g = g_next

    logger.debug(f"reduction on {a.spec}: g heights {trace.heights()}, status {trace.status}")
    return trace


def _require_stabilized(trace: ReductionTrace):
    if not trace.stabilized:
        raise TraceNotStabilized(f"trace ended with {trace.status}")


def lemma_ind_decomposition(trace: ReductionTrace, m: Optional[int] = None) -> Decomposition:
    """
    Split e_n = x_n ⊕ (e_{n+1} + g_n) for n <= m and set y_n = gamma(a^(2^n) x_n)

    The checks record the direct sum for f_n, the orthogonality against
    later e_k + f_k, x_n ≈ y_n, independence of x_0, y_0, ..., x_m, y_m,
    x ≈ y for the sums x and y and, at stabilization, x + g_0 = e_0 and y + g_0 = f_0.

    Args:
        trace: Reduction trace of a mutually reflexive pair
        m: Last index, the stabilization index when omitted

    Returns:
        Decomposition with x_n, y_n, the sums and the named checks

    Raises:
        TraceNotStabilized: If m is omitted and the trace did not stabilize
        TraceTooShort: If the trace has no step m + 1
    """
    if m is None:
        _require_stabilized(trace)
        m = trace.stabilized_at
    if m + 1 >= len(trace.steps):
        raise TraceTooShort(f"decomposition up to {m} needs step {m + 1}, trace has {len(trace.steps)} steps")

    lat = ideal_lattice
    spec = trace.spec
    zero = lat.zero_ideal(spec)
    steps = trace.steps
    ideal = lat.ideal_of

    xs, ys = [], []
    x_ideals, y_ideals = [], []
    power_a = trace.a
    for n in range(m + 1):
        e_n, f_n = ideal(steps[n].e), ideal(steps[n].f)
        g_n = ideal(steps[n].g)
        inner = lat.join(ideal(steps[n + 1].e), g_n)
        x_ideal = lat.relative_complement(inner, zero, e_n)
        x = lat.idempotent_of(x_ideal)
        y = ring_core.gamma(power_a * x)
        xs.append(x)
        ys.append(y)
        x_ideals.append(x_ideal)
        y_ideals.append(ideal(y))
        power_a = power_a * power_a

    checks = {}
    direct_f = True
    orthogonal = True
    similar = True
    for n in range(m + 1):
        f_n, g_n = ideal(steps[n].f), ideal(steps[n].g)
        rest = lat.join(g_n, ideal(steps[n + 1].f))
        y_n = y_ideals[n]
        direct_f &= lat.meet(y_n, rest).is_zero() and lat.join(y_n, rest) == f_n
        both = lat.join(x_ideals[n], y_n)
        for k in range(n + 1, m + 2):
            ek_fk = lat.join(ideal(steps[k].e), ideal(steps[k].f))
            orthogonal &= lat.meet(ek_fk, both).is_zero()
        similar &= lat.meet(x_ideals[n], y_n).is_zero() and lat.is_perspective(x_ideals[n], y_n)
    checks['f_n = y_n + (g_n + f_n+1)'] = bool(direct_f)
    checks['(e_k + f_k)(x_n + y_n) = 0'] = bool(orthogonal)
    checks['x_n ≈ y_n'] = bool(similar)

    interleaved = [member for pair in zip(x_ideals, y_ideals) for member in pair]
    checks['independent'] = lat.independent(interleaved)

    x_sum = lat.join_all(spec, x_ideals)
    y_sum = lat.join_all(spec, y_ideals)
    checks['x ≈ y'] = lat.meet(x_sum, y_sum).is_zero() and lat.is_perspective(x_sum, y_sum)

    if ideal(steps[m].g) == ideal(steps[m + 1].g):
        g_0 = ideal(steps[0].g)
        checks['x + g_0 = e_0'] = lat.join(x_sum, g_0) == ideal(steps[0].e)
        checks['y + g_0 = f_0'] = lat.join(y_sum, g_0) == ideal(steps[0].f)

    decomposition = Decomposition(xs, ys, checks)
    if not decomposition.ok:
        log_verification_failure('lemma_ind_decomposition', trace.a.to_text(), checks)
    return decomposition


def axis_witness(a: RingElement, b: RingElement, trace: ReductionTrace) -> Certificate:
    """Axis c with bR ∼_c aR."""
    _require_stabilized(trace)
    axis = ideal_lattice.common_complement(ideal_lattice.ideal_of(b), ideal_lattice.ideal_of(a))
    return Certificate(AXIS, axis.c, dict(axis.checks))


def _decompose_one(f, e_rest, h):
    """Write 1 = f·r + e'·s + (1-h)·t (canonical solution) and return the three summands."""
    spec = f.spec
    one = ring_core.ring_one(spec)
    rest_h = one - h
    first, second, third = [], [], []
    for mf, me, mh, field_, n in zip(f.parts, e_rest.parts, rest_h.parts, spec.fields, spec.sizes):
        system = Mat.hstack(field_, [mf, me, mh])
        x = gf_linear.solve_right(system, Mat.identity(field_, n))
        # f, e' and 1-h span the whole space, so the system is consistent
        r = Mat(field_, x.data[:n])
        s = Mat(field_, x.data[n:2 * n])
        t = Mat(field_, x.data[2 * n:])
        first.append(mf @ r)
        second.append(me @ s)
        third.append(mh @ t)
    return (RingElement(spec, tuple(first)), RingElement(spec, tuple(second)),
            RingElement(spec, tuple(third)))


def unit_witness(a: RingElement, b: RingElement, trace: ReductionTrace) -> Certificate:
    """Unit u with a·u·a = a.

    With e = ba, f = ab, g generating eR ∩ fR, eR = e'R ⊕ gR, fR = f'R ⊕ gR
    and hR = eR + fR, the map ω that is r ↦ br on fR, the isomorphism
    e'R -> f'R on e'R and the identity on (1-h)R is an automorphism of R;
    u = ω(1).
    """
    _require_stabilized(trace)
    lat = ideal_lattice
    spec = a.spec
    zero = lat.zero_ideal(spec)
    e, f = b * a, a * b
    e_ideal, f_ideal = lat.ideal_of(e), lat.ideal_of(f)
    common = lat.meet(e_ideal, f_ideal)
    e_rest = lat.idempotent_of(lat.relative_complement(common, zero, e_ideal))
    f_rest = lat.idempotent_of(lat.relative_complement(common, zero, f_ideal))
    h = lat.idempotent_of(lat.join(e_ideal, f_ideal))
    witness = lat.mvn_witness(e_rest, f_rest)

    on_f, on_e_rest, on_rest = _decompose_one(f, e_rest, h)
    u = b * on_f + witness.x * on_e_rest + on_rest
    return Certificate(UNIT, u, _unit_checks(a, u))


def _unit_checks(a, u):
    return {
        'unit': ring_core.is_unit(u),
        'aua=a': a * u * a == a
    }


def verify_certificate(a: RingElement, b: RingElement, cert: Certificate) -> bool:
    """Recompute the defining equalities of cert from scratch."""
    if cert.payload.spec != a.spec or b.spec != a.spec:
        return False
    if cert.kind == AXIS:
        checks = ideal_lattice.axis_checks(ideal_lattice.ideal_of(b), ideal_lattice.ideal_of(a),
                                           ideal_lattice.ideal_of(cert.payload))
    elif cert.kind == UNIT:
        checks = _unit_checks(a, cert.payload)
    else:
        return False
    if not all(checks.values()):
        log_verification_failure(f"{cert.kind} certificate", cert.payload.to_text(), checks)
        return False
    return True


def certify(a: RingElement, b: Optional[RingElement] = None, max_steps: Optional[int] = None) -> CertificateBundle:
    """
    Reduce a pair and build both certificates

    Args:
        a: Element to certify
        b: Reflexive partner, the canonical reflexive inverse of a when omitted
        max_steps: Passed to run_reduction

    Returns:
        CertificateBundle with the trace, the axis and the unit; failures
        are logged, not raised
    """
    if b is None:
        a, b = make_reflexive_pair(a)
    trace = run_reduction(a, b, max_steps)
    _require_stabilized(trace)
    axis = axis_witness(a, b, trace)
    unit = unit_witness(a, b, trace)
    bundle = CertificateBundle(trace, axis, unit)
    if not bundle.ok:
        log_verification_failure('certify', {'a': a.to_text(), 'b': b.to_text()},
                                 {**axis.verified, **unit.verified})
    return bundle

"""
Pairs whose reduction chain is slow to stabilize.

On GF(p)^N with basis u_0, ..., u_{N-1} the shift a sends u_i to u_{i+1}
for 1 <= i <= N-2, u_{N-1} to u_0 and kills u_0; a_plus undoes it on the
image and kills u_1. Both images are hyperplanes, a maps im a_plus onto
im a, and the heights of g_k are N - 2^(k+1) until they reach 0, so
N = 2^(n+1) + 1 gives the strict chain g_0 > g_1 > ... > g_{n+1}.

extend_with_c doubles the space so that a second reflexive inverse c of a
has t_0(a, c) = 0 while aR, bR and cR stay pairwise perspective.
"""
import numpy as np

from ..errors import VerificationFailed
from ..models.example import ExampleOneInstance, ExampleOneTriple
from ..models.linear import Mat, PrimeField
from ..models.report import PropReport
from ..utils.logger import get_reduction_logger, log_verification_failure
from ..utils.validators import validate_prime
from . import gf_linear, ideal_lattice, reduction
from .term_lang import t_of

logger = get_reduction_logger()


def example1_dim(n: int) -> int:
    return 2 ** (n + 1) + 1


def _instance(n, field, a_data, a_plus_data):
    a, a_plus = Mat(field, a_data), Mat(field, a_plus_data)
    instance = ExampleOneInstance(
        n=n, p=field.p, a=a, a_plus=a_plus,
        v1_basis=gf_linear.image_basis(a_plus),
        v2_basis=gf_linear.image_basis(a),
    )
    checks = instance_checks(instance)
    if not all(checks.values()):
        log_verification_failure('example1 instance', {'n': n, 'p': field.p}, checks)
        raise VerificationFailed(f"example instance n={n}, p={field.p} breaks its invariants")
    return instance


def instance_checks(instance: ExampleOneInstance):
    a, a_plus = instance.a, instance.a_plus
    dim = instance.dim
    v1, v2 = instance.v1_basis, instance.v2_basis
    return {
        'a a+ a = a': a @ a_plus @ a == a,
        'a+ a a+ = a+': a_plus @ a @ a_plus == a_plus,
        'v1 hyperplane': v1.dim == dim - 1,
        'v2 hyperplane': v2.dim == dim - 1,
        'a: v1 -> v2 onto': gf_linear.image_basis(a @ v1.columns()) == v2,
    }


def build_example1(n: int, p: int) -> ExampleOneInstance:
    """Depth-n instance on GF(p)^(2^(n+1) + 1)."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if not validate_prime(p):
        raise ValueError(f"{p} is not a supported prime")
    field = PrimeField(p)
    dim = example1_dim(n)
    a = np.zeros((dim, dim), dtype=np.int64)
    a_plus = np.zeros((dim, dim), dtype=np.int64)
    # column j holds the image of u_j
    for i in range(1, dim - 1):
        a[i + 1, i] = 1
    a[0, dim - 1] = 1
    for i in range(2, dim):
        a_plus[i - 1, i] = 1
    a_plus[dim - 1, 0] = 1
    return _instance(n, field, a, a_plus)


def base_example1(p: int) -> ExampleOneInstance:
    """Three-dimensional instance: a(v1) = v2, a(v2) = 0, a(v1 + v3) = v3;
    a_plus(v1) = 0, a_plus(v2) = v1, a_plus(v3) = v1 + v3."""
    if not validate_prime(p):
        raise ValueError(f"{p} is not a supported prime")
    field = PrimeField(p)
    a = np.array([[0, 0, 0],
                  [1, 0, p - 1],
                  [0, 0, 1]], dtype=np.int64)
    a_plus = np.array([[0, 1, 1],
                       [0, 0, 0],
                       [0, 0, 1]], dtype=np.int64)
    return _instance(0, field, a, a_plus)


def extend_with_c(instance: ExampleOneInstance) -> ExampleOneTriple:
    """
    Double the space of an instance and add a third element c

    On W = V ⊕ U, with U a copy of V and π = a·a_plus the idempotent onto
    im a: a acts as a on V and as π (read through the copy) on U, b is
    a_plus on V and 0 on U, and c copies π(V) onto U and kills U.

    Args:
        instance: Pair (a, a_plus) on V

    Returns:
        ExampleOneTriple on GF(p)^(2 dim), validated by triple_checks
    """
    field = instance.a.field
    zero = Mat.zeros(field, instance.dim)
    pi = instance.a @ instance.a_plus

    def block(top_left, top_right, bottom_left):
        return Mat.vstack(field, [Mat.hstack(field, [top_left, top_right]),
                                  Mat.hstack(field, [bottom_left, zero])])

    triple = ExampleOneTriple(
        base=instance,
        a=block(instance.a, pi, zero),
        b=block(instance.a_plus, zero, zero),
        c=block(zero, zero, pi),
    )
    checks = triple_checks(triple)
    if not all(checks.values()):
        log_verification_failure('example1 triple', {'n': instance.n, 'p': instance.p}, checks)
        raise VerificationFailed(f"extension of n={instance.n}, p={instance.p} breaks its invariants")
    return triple


def triple_checks(triple: ExampleOneTriple):
    a, b, c = triple.elements()
    ideal = ideal_lattice.ideal_of
    perspective = ideal_lattice.is_perspective
    return {
        'a, b reflexive': reduction.is_mutually_reflexive(a, b),
        'a, c reflexive': reduction.is_mutually_reflexive(a, c),
        't_0(a, c) = 0': t_of(0, a, c).is_zero(),
        'aR ∼ bR': perspective(ideal(a), ideal(b)),
        'aR ∼ cR': perspective(ideal(a), ideal(c)),
        'bR ∼ cR': perspective(ideal(b), ideal(c)),
    }


def verify_example1(n: int, p: int, base: bool = False) -> PropReport:
    """
    Run the reduction on the depth-n instance and on its extension by c

    Holds when g_0 > ... > g_{n+1} strictly, the chain stabilizes no later
    than dim, t_{n+1}·t_n differs from t_n, both certificates verify, and
    the extension satisfies triple_checks with the same g heights for (a, b).

    Args:
        n: Depth of the instance
        p: Prime
        base: Use the three-dimensional base instance instead (n = 0)

    Returns:
        PropReport whose witness holds the instance, the extension, the
        heights, the status, every check and the certificate bundle
    """
    instance = base_example1(p) if base else build_example1(n, p)
    a, b = instance.pair()
    trace = reduction.run_reduction(a, b)
    heights = trace.heights()

    checks = {
        'strict drops': len(heights) >= n + 2 and all(heights[k] > heights[k + 1] for k in range(n + 1)),
        'stabilized': trace.stabilized and n + 1 <= trace.stabilized_at <= instance.dim,
    }
    t_n = t_of(n, a, b)
    checks['t_n+1 t_n != t_n'] = t_of(n + 1, a, b) * t_n != t_n

    bundle = None
    if trace.stabilized:
        bundle = reduction.certify(a, b)
        checks['certificates'] = bundle.ok
    triple = extend_with_c(instance)
    for name, ok in triple_checks(triple).items():
        checks[f"W: {name}"] = ok
    wide_a, wide_b, _ = triple.elements()
    checks['W: same heights'] = reduction.run_reduction(wide_a, wide_b).heights() == heights
    wide_t_n = t_of(n, wide_a, wide_b)
    checks['W: t_n+1 t_n != t_n'] = t_of(n + 1, wide_a, wide_b) * wide_t_n != wide_t_n

    holds = all(checks.values())
    if not holds:
        log_verification_failure('example1', {'n': n, 'p': p, 'heights': heights}, checks)
    logger.info(f"example1 n={n} p={p} dim={instance.dim}: heights {heights}")
    return PropReport(str(instance.spec), 'example1', holds, len(trace.steps), {
        'instance': instance,
        'extension': triple,
        'heights': heights,
        'status': trace.status,
        'checks': checks,
        'certificate': bundle,
    })

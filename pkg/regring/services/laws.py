"""
Property suites for the lattice lemmas and the reflexive-inverse facts.

Each suite runs cfg.trials independent trials; trial i draws from
default_rng([cfg.seed, i]), so a failing trial can be replayed alone, and
the trials can be split across cfg.workers processes without changing the
verdict. Constructive mode grows configurations inside random complements
and redraws the free pieces until the hypotheses hold; a trial whose
redraws all miss is skipped. Rejection mode samples freely and skips
trials whose hypotheses fail.
"""
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List

import numpy as np

from ..models.ideal import Ideal
from ..models.linear import Mat
from ..models.report import LawConfig, LawVerdict
from ..models.ring import RingElement
from ..utils.logger import get_laws_logger, log_scan_summary
from . import gf_linear, ideal_lattice as lat, reduction, ring_core

logger = get_laws_logger()

# Redraws per constructive trial
_ATTEMPTS = 8


# Sampling helpers

def _rows(ideal: Ideal):
    return [space.basis.data for space in ideal.spaces]


def _ideal(spec, rows) -> Ideal:
    return lat.ideal_from_basis(spec, rows)


def _sub(spec, rows, rng, dims=None) -> Ideal:
    """Random subspace of span(rows) per component, of the given (or random) dimension."""
    picked = []
    for j, (field, n) in enumerate(zip(spec.fields, spec.sizes)):
        basis = gf_linear.span(field, n, rows[j]).basis.data
        r = basis.shape[0]
        k = int(rng.integers(0, r + 1)) if dims is None else min(dims[j], r)
        while True:
            coeff = rng.integers(0, field.p, size=(k, r), dtype=np.int64)
            if gf_linear.rank(Mat(field, coeff.reshape(k, r))) == k:
                break
        picked.append(coeff @ basis)
    return _ideal(spec, picked)


def _whole(spec):
    return _rows(lat.full_ideal(spec))


def _random_ideal(spec, rng, dims=None) -> Ideal:
    return _sub(spec, _whole(spec), rng, dims)


def _between(spec, lo: Ideal, hi: Ideal, rng) -> Ideal:
    return lat.join(lo, _sub(spec, _rows(hi), rng))


def _random_complement(a: Ideal, rng):
    """Rows spanning a uniformly sheared complement of a.

    Every complement of a is the canonical one with each basis vector moved
    by some vector of a.
    """
    rows = []
    for field, space, own in zip(a.spec.fields, lat.complement(a).spaces, a.spaces):
        c, x = space.basis.data, own.basis.data
        shear = rng.integers(0, field.p, size=(c.shape[0], x.shape[0]), dtype=np.int64)
        rows.append((c + shear @ x) % field.p)
    return rows


def _grown(core: Ideal, rng, dims=None) -> Ideal:
    """core plus a random subspace of a random complement of core."""
    return lat.join(core, _sub(core.spec, _random_complement(core, rng), rng, dims))


def _room(spec, taken: Ideal):
    return [n - d for n, d in zip(spec.sizes, taken.dims)]


def _trial_rng(cfg, index):
    return np.random.default_rng([cfg.seed, index])


def _trial_chunk(args):
    trial, cfg, lo, hi = args
    outcomes = []
    for index in range(lo, hi):
        outcome = trial(cfg, _trial_rng(cfg, index))
        if outcome is not None and outcome[0]:
            outcome = (True, None)
        outcomes.append(outcome)
    return outcomes


def _run(law: str, cfg: LawConfig, trial: Callable) -> LawVerdict:
    """Run trial(cfg, rng) for every trial index.

    Outcomes are recorded in index order, so first_failure is the lowest
    failing trial however the indices are split across processes.
    """
    if cfg.workers > 1 and cfg.trials > 1:
        chunks = ring_core.split_range(cfg.trials, cfg.workers)
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(_trial_chunk, [(trial, cfg, lo, hi) for lo, hi in chunks]))
        outcomes = [outcome for part in parts for outcome in part]
    else:
        outcomes = _trial_chunk((trial, cfg, 0, cfg.trials))

    verdict = LawVerdict(law)
    for index, outcome in enumerate(outcomes):
        if outcome is None:
            verdict.skipped += 1
            continue
        passed, configuration = outcome
        verdict.record(passed, None if passed else {'trial': index, **configuration})
    log_scan_summary(law, cfg.trials, verdict.failed, cfg.mode, ring=cfg.spec)
    return verdict


# Lattice suites

def _fact1_trial(cfg, rng):
    spec = cfg.spec
    a, b = _random_ideal(spec, rng), _random_ideal(spec, rng)
    ab = lat.meet(a, b)
    x, y = _between(spec, ab, a, rng), _between(spec, ab, b, rng)
    x2, y2 = _between(spec, ab, a, rng), _between(spec, ab, b, rng)
    identity = lat.join(x, y) == lat.meet(lat.join(x, b), lat.join(y, a))
    injective = (x, y) == (x2, y2) or lat.join(x, y) != lat.join(x2, y2)
    return identity and injective, {'a': a, 'b': b, 'x': x, 'y': y}


def check_fact1(cfg: LawConfig) -> LawVerdict:
    """[ab, a] x [ab, b] embeds into [ab, a + b] via (x, y) -> x + y = (x + b)(y + a)."""
    return _run('fact1', cfg, _fact1_trial)


def _fact2_guard(a1, b1, a2, b2):
    core = lat.meet(lat.meet(a1, b1), lat.meet(a2, b2))
    return lat.leq(lat.meet(lat.join(a1, b1), lat.join(a2, b2)), core)


def _fact2_sample(spec, rng):
    """w first; a_i grows w away from everything drawn so far, b_i grows w away from a_i only."""
    w = _random_ideal(spec, rng)
    for _ in range(_ATTEMPTS):
        pairs = []
        taken = w
        for _ in range(2):
            dims = [int(rng.integers(0, r // 2 + 1)) for r in _room(spec, taken)]
            a = lat.join(w, _sub(spec, _random_complement(taken, rng), rng, dims))
            b = lat.join(w, _sub(spec, _random_complement(a, rng), rng, dims))
            pairs.append((a, b))
            taken = lat.join(taken, a)
        (a1, b1), (a2, b2) = pairs
        if _fact2_guard(a1, b1, a2, b2):
            return pairs
    return None


def _fact2_trial(cfg, rng):
    spec = cfg.spec
    if cfg.mode == 'constructive':
        pairs = _fact2_sample(spec, rng)
        if pairs is None:
            return None
    else:
        pairs = []
        for _ in range(2):
            a = _random_ideal(spec, rng)
            pairs.append((a, _random_ideal(spec, rng, a.dims)))
    (a1, b1), (a2, b2) = pairs
    configuration = {'a1': a1, 'b1': b1, 'a2': a2, 'b2': b2}
    if not (_fact2_guard(a1, b1, a2, b2) and a1.dims == b1.dims and a2.dims == b2.dims):
        if cfg.mode == 'constructive':
            return False, {**configuration, 'reason': 'sampler broke the guard'}
        return None
    c1 = lat.ideal_of(lat.common_complement(a1, b1).c)
    c2 = lat.ideal_of(lat.common_complement(a2, b2).c)
    return lat.is_axis(lat.join(a1, a2), lat.join(b1, b2), lat.join(c1, c2)), configuration


def check_fact2(cfg: LawConfig) -> LawVerdict:
    """a_i ∼_{c_i} b_i with a_1b_1a_2b_2 >= (a_1+b_1)(a_2+b_2) gives a_1+a_2 ∼_{c_1+c_2} b_1+b_2."""
    return _run('fact2', cfg, _fact2_trial)


def _fact3a_trial(cfg, rng):
    spec = cfg.spec
    a = _random_ideal(spec, rng)
    same = cfg.mode == 'constructive' and rng.integers(0, 2) == 0
    b = _random_ideal(spec, rng, a.dims if same else None)
    ab = lat.meet(a, b)
    zero = lat.zero_ideal(spec)
    x = lat.relative_complement(ab, zero, a)
    y = lat.relative_complement(ab, zero, b)
    total = lat.join(a, b)
    sums = (lat.meet(a, y).is_zero() and lat.join(a, y) == total
            and lat.meet(b, x).is_zero() and lat.join(b, x) == total)
    perspective = lat.is_perspective(a, b) == lat.is_perspective(x, y)
    return sums and perspective, {'a': a, 'b': b, 'x': x, 'y': y}


def check_fact3a(cfg: LawConfig) -> LawVerdict:
    """With a = x ⊕ ab and b = y ⊕ ab: a ⊕ y = a + b = b ⊕ x, and a ∼ b iff x ∼ y."""
    return _run('fact3a', cfg, _fact3a_trial)


def _lemma4_sample(spec, rng):
    """x and u grown from a shared core; y and v redrawn in random complements of x and u until zw = xu.

    y may meet u and v may meet x; those draws are rejected.
    """
    core = _random_ideal(spec, rng)
    x = _grown(core, rng)
    grow = [dx - dc for dx, dc in zip(x.dims, core.dims)] if rng.integers(0, 2) == 0 else None
    u = _grown(core, rng, grow)
    xu = lat.meet(x, u)
    room = _room(spec, lat.join(x, u))
    for _ in range(_ATTEMPTS):
        y_dims = [int(rng.integers(0, r + 1)) for r in room]
        if rng.integers(0, 2) == 0:
            v_dims = y_dims
        else:
            v_dims = [int(rng.integers(0, r - k + 1)) for r, k in zip(room, y_dims)]
        y = _sub(spec, _random_complement(x, rng), rng, y_dims)
        v = _sub(spec, _random_complement(u, rng), rng, v_dims)
        if lat.meet(lat.join(x, y), lat.join(u, v)) == xu:
            return x, y, u, v
    return None


def _lemma4_trial(cfg, rng):
    spec = cfg.spec
    if cfg.mode == 'constructive':
        sample = _lemma4_sample(spec, rng)
        if sample is None:
            return None
        x, y, u, v = sample
    else:
        x, y, u, v = (_random_ideal(spec, rng) for _ in range(4))
    z, w = lat.join(x, y), lat.join(u, v)
    configuration = {'x': x, 'y': y, 'u': u, 'v': v}
    hypotheses = (lat.meet(x, y).is_zero() and lat.meet(u, v).is_zero()
                  and lat.meet(z, w) == lat.meet(x, u))
    if not hypotheses:
        if cfg.mode == 'constructive':
            return False, {**configuration, 'reason': 'sampler broke the hypotheses'}
        return None
    passed = lat.meet(y, v).is_zero() and lat.meet(lat.join(y, v), lat.join(x, u)).is_zero()
    if lat.is_perspective(x, u) and lat.is_perspective(y, v):
        passed = passed and lat.is_perspective(z, w)
    return passed, configuration


def check_lemma4(cfg: LawConfig) -> LawVerdict:
    """z = x ⊕ y, w = u ⊕ v and zw = xu give yv = 0 and (y + v)(x + u) = 0; with x ∼ u, y ∼ v also z ∼ w."""
    return _run('lemma4', cfg, _lemma4_trial)


def _lemma5_trial(cfg, rng):
    spec = cfg.spec
    a = _random_ideal(spec, rng)
    b = _random_ideal(spec, rng, a.dims)
    if cfg.mode == 'constructive':
        outside = lat.complement(lat.join(a, b))
        d = lat.join(_sub(spec, _rows(outside), rng), lat.meet(a, b))
    else:
        d = _random_ideal(spec, rng)
    configuration = {'a': a, 'b': b, 'd': d}
    closed = lat.meet(lat.join(a, d), lat.join(b, d)) == d
    if not closed:
        if cfg.mode == 'constructive':
            return False, {**configuration, 'reason': 'sampler broke d = (a + d)(b + d)'}
        return None
    if not lat.is_perspective(a, b):
        return False, {**configuration, 'reason': 'sampler broke a ∼ b'}
    return lat.is_perspective(lat.join(a, d), lat.join(b, d)), configuration


def check_lemma5(cfg: LawConfig) -> LawVerdict:
    """a ∼ b and d = (a + d)(b + d) give a + d ∼ b + d."""
    return _run('lemma5', cfg, _lemma5_trial)


def _fact5a_sample(spec, rng):
    """a_n drawn away from the earlier pairs, b_n away from a_n only; redrawn until independent."""
    m = int(rng.integers(0, 3))
    for _ in range(_ATTEMPTS):
        pairs = []
        taken = lat.zero_ideal(spec)
        for _ in range(m + 1):
            dims = [int(rng.integers(0, r // 2 + 1)) for r in _room(spec, taken)]
            a = _sub(spec, _random_complement(taken, rng), rng, dims)
            b = _sub(spec, _random_complement(a, rng), rng, dims)
            pairs.append((a, b))
            taken = lat.join(taken, lat.join(a, b))
        if lat.independent([lat.join(a, b) for a, b in pairs]):
            return pairs
    return None


def _fact5a_trial(cfg, rng):
    spec = cfg.spec
    pairs = _fact5a_sample(spec, rng)
    if pairs is None:
        return None
    configuration = {'pairs': [{'a': a, 'b': b} for a, b in pairs]}
    hypotheses = lat.independent([lat.join(a, b) for a, b in pairs]) and all(
        lat.meet(a, b).is_zero() and lat.is_perspective(a, b) for a, b in pairs)
    if not hypotheses:
        return False, {**configuration, 'reason': 'sampler broke the hypotheses'}
    a_sum = lat.join_all(spec, [a for a, _ in pairs])
    b_sum = lat.join_all(spec, [b for _, b in pairs])
    return lat.meet(a_sum, b_sum).is_zero() and lat.is_perspective(a_sum, b_sum), configuration


def check_fact5a(cfg: LawConfig) -> LawVerdict:
    """Independent a_0+b_0, ..., a_m+b_m with a_n ≈ b_n give Σ a_n ≈ Σ b_n."""
    return _run('fact5a', cfg, _fact5a_trial)


# Suites on reduction traces

def _sample_pair(spec, rng):
    a = ring_core.sample_element(spec, rng)
    return reduction.make_reflexive_pair(a)


def _observation_trial(cfg, rng):
    a, b = _sample_pair(cfg.spec, rng)
    trace = reduction.run_reduction(a, b)
    passed = trace.stabilized
    power_a = a
    for now, later in zip(trace.steps, trace.steps[1:]):
        g = lat.ideal_of(now.g)
        preimage, image = lat.ideal_of(later.e), lat.ideal_of(later.f)
        both = lat.meet(preimage, image)
        fixes = image == g
        passed = passed and lat.leq(both, g) and (both == g) == fixes
        passed = passed and fixes == now.alpha_fixes_g and now.injective
        power_a = power_a * power_a
        passed = passed and lat.ideal_of(power_a * later.e) == image
    return passed, {'a': a, 'b': b}


def check_observation(cfg: LawConfig) -> LawVerdict:
    """For α = a^(2^n)· on [0, e_n]: α⁻¹(g) ∩ α(g) <= g, with equality iff α(g) = g.

    Also checks that a^(2^n) is injective on e_n and that a^(2^(n+1)) maps
    e_{n+1}R onto f_{n+1}R.
    """
    return _run('observation', cfg, _observation_trial)


def _lemma6_trial(cfg, rng):
    a, b = _sample_pair(cfg.spec, rng)
    trace = reduction.run_reduction(a, b)
    perspective = [lat.is_perspective(lat.ideal_of(s.e), lat.ideal_of(s.f)) for s in trace.steps]
    passed = True
    for n, step in enumerate(trace.steps):
        if step.alpha_fixes_g:
            passed = passed and perspective[n]
        if n + 1 < len(trace.steps) and perspective[n + 1]:
            passed = passed and perspective[n]
    if trace.stabilized:
        s = trace.stabilized_at
        passed = passed and trace.steps[s].alpha_fixes_g
        passed = passed and reduction.verify_certificate(a, b, reduction.axis_witness(a, b, trace))
    return passed, {'a': a, 'b': b}


def check_lemma6(cfg: LawConfig) -> LawVerdict:
    """Along every trace: α(e∩f) = e∩f gives e ∼ f, and e_{n+1} ∼ f_{n+1} gives e_n ∼ f_n."""
    return _run('lemma6', cfg, _lemma6_trial)


def another_reflexive_inverse(a: RingElement, rng) -> RingElement:
    """x a x for a random inner inverse x = a' + w - a'a w a a'."""
    q = ring_core.quasi_inverse(a)
    w = ring_core.sample_element(a.spec, rng)
    x = q + w - q * a * w * a * q
    return x * a * x


def _ranks(x):
    return tuple(gf_linear.rank(m) for m in x.parts)


def ring_fact_checks(a: RingElement, c: RingElement) -> Dict[str, bool]:
    b = ring_core.reflexive(a)
    e, f = b * a, a * b
    ideal = lat.ideal_of
    return {
        'reflexive': a * b * a == a and b * a * b == b,
        'idempotents': ring_core.is_idempotent(e) and ring_core.is_idempotent(f),
        'fae=a, ebf=b': f * a * e == a and e * b * f == b,
        'bR -> aR': ideal(a * b) == ideal(a) and _ranks(b) == _ranks(a),
        'perspective => iso': (not lat.is_perspective(ideal(e), ideal(f))) or lat.is_module_iso(ideal(e), ideal(f)),
        'second inverse': a * c * a == a and c * a * c == c,
        'bR ∼ cR': lat.is_perspective(ideal(b), ideal(c)),
        'x -> cax': ideal(c * a * b) == ideal(c) and _ranks(c * a * b) == _ranks(b),
    }


def _ring_facts_trial(cfg, rng):
    a = ring_core.sample_element(cfg.spec, rng)
    checks = ring_fact_checks(a, another_reflexive_inverse(a, rng))
    return all(checks.values()), {'a': a, 'checks': checks}


def check_ring_facts(cfg: LawConfig, exhaustive: bool = False) -> LawVerdict:
    """
    Facts on a reflexive inverse b of a and a second reflexive inverse c

    Args:
        cfg: Ring, trials, seed and workers.
        exhaustive: Check every element of the ring once instead of cfg.trials samples.

    Returns:
        LawVerdict counting passed elements, with the first failing one.
    """
    spec = cfg.spec
    if not exhaustive:
        return _run('ring_facts', cfg, _ring_facts_trial)

    verdict = LawVerdict('ring_facts')
    rng = np.random.default_rng(cfg.seed)
    count = 0
    for a in ring_core.enumerate_elements(spec):
        count += 1
        checks = ring_fact_checks(a, another_reflexive_inverse(a, rng))
        verdict.record(all(checks.values()), {'a': a, 'checks': checks})
    log_scan_summary('ring_facts', count, verdict.failed, 'exhaustive', ring=spec)
    return verdict


SUITES: Dict[str, Callable[[LawConfig], LawVerdict]] = {
    'fact1': check_fact1,
    'fact2': check_fact2,
    'fact3a': check_fact3a,
    'lemma4': check_lemma4,
    'lemma5': check_lemma5,
    'observation': check_observation,
    'lemma6': check_lemma6,
    'fact5a': check_fact5a,
    'ring_facts': check_ring_facts,
}


def run_suites(names: List[str], cfg: LawConfig) -> List[LawVerdict]:
    """
    Run the named suites in order

    Args:
        names: Keys of SUITES.
        cfg: Shared sampling setup.

    Returns:
        One LawVerdict per name.

    Raises:
        ValueError: If a name is not a known suite.
    """
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise ValueError(f"unknown law suites {unknown}, expected some of {sorted(SUITES)}")
    return [SUITES[name](cfg) for name in names]

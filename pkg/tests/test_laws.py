import os
from dataclasses import replace

import numpy as np
import pytest

from regring.errors import FormatError
from regring.models import RingSpec
from regring.models.report import LawConfig
from regring.services import ideal_lattice as lat
from regring.services import laws

SMALL = LawConfig(dim=4, p=2, trials=25, seed=0)
F2_5 = RingSpec.matrix_ring(5, 2)


def quarter_fails(cfg, rng):
    """Fails on roughly a quarter of the trials."""
    value = int(rng.integers(0, 4))
    return value != 0, {'value': value}


def draws(sampler, spec, count, seed=3):
    rng = np.random.default_rng(seed)
    return [s for s in (sampler(spec, rng) for _ in range(count)) if s is not None]


@pytest.mark.parametrize('suite', sorted(laws.SUITES))
def test_suite_holds_constructive(suite):
    """Every suite passes in constructive mode on GF(2)^4."""
    verdict = laws.SUITES[suite](SMALL)
    assert verdict.ok, verdict.first_failure
    assert verdict.passed + verdict.skipped == SMALL.trials


@pytest.mark.parametrize('suite', ['fact2', 'lemma4', 'lemma5'])
def test_suite_holds_rejection(suite):
    """Rejection mode skips trials whose hypotheses fail."""
    cfg = LawConfig(dim=3, p=2, trials=40, seed=5, mode='rejection')
    verdict = laws.SUITES[suite](cfg)
    assert verdict.ok, verdict.first_failure
    assert verdict.passed + verdict.skipped == cfg.trials


def test_suites_over_gf3():
    cfg = LawConfig(dim=3, p=3, trials=15, seed=2)
    for verdict in laws.run_suites(['fact1', 'fact3a', 'lemma6'], cfg):
        assert verdict.ok, verdict.first_failure


def test_suites_on_product_ring():
    cfg = LawConfig(trials=15, seed=1, spec=RingSpec.parse('M2(F2)xM2(F3)'))
    for verdict in laws.run_suites(['lemma4', 'observation', 'fact5a'], cfg):
        assert verdict.ok, verdict.first_failure


def test_trials_are_replayable():
    first = laws.check_fact3a(SMALL)
    second = laws.check_fact3a(SMALL)
    assert first.to_dict() == second.to_dict()


def test_ring_fact_checks_on_matrix_unit(units):
    """b = E21 and the second inverse c = E21 for a = E12."""
    checks = laws.ring_fact_checks(units['E12'], units['E21'])
    assert all(checks.values()), checks


def test_ring_facts_exhaustive(m2f2):
    verdict = laws.check_ring_facts(LawConfig(trials=1, spec=m2f2), exhaustive=True)
    assert verdict.ok
    assert verdict.passed == 16


def test_unknown_suite():
    with pytest.raises(ValueError):
        laws.run_suites(['fact9'], SMALL)


@pytest.mark.parametrize('kwargs', [
    {'trials': 0},
    {'seed': -1},
    {'mode': 'random'},
    {'p': 4},
    {'dim': 0},
])
def test_law_config_validation(kwargs):
    with pytest.raises(FormatError):
        LawConfig(**kwargs)


def test_workers_do_not_change_the_verdict():
    cfg = replace(SMALL, trials=40, seed=9)
    single = laws._run('quarter', cfg, quarter_fails)
    pooled = laws._run('quarter', replace(cfg, workers=3), quarter_fails)
    assert single.to_dict() == pooled.to_dict()

    lowest = next(i for i in range(cfg.trials)
                  if int(np.random.default_rng([cfg.seed, i]).integers(0, 4)) == 0)
    assert pooled.first_failure == {'trial': lowest, 'value': 0}
    assert pooled.failed == sum(1 for i in range(cfg.trials)
                                if int(np.random.default_rng([cfg.seed, i]).integers(0, 4)) == 0)


def test_suites_in_worker_processes():
    cfg = replace(SMALL, workers=2)
    for name in ('lemma4', 'lemma6'):
        assert laws.SUITES[name](cfg).to_dict() == laws.SUITES[name](SMALL).to_dict()


def test_lemma4_sampler_reaches_overlapping_configurations():
    """x and u overlap without being equal, y and v are nonzero, and the z ∼ w case comes up."""
    samples = draws(laws._lemma4_sample, F2_5, 200)
    assert len(samples) > 120
    for x, y, u, v in samples:
        z, w = lat.join(x, y), lat.join(u, v)
        assert lat.meet(x, y).is_zero() and lat.meet(u, v).is_zero()
        assert lat.meet(z, w) == lat.meet(x, u)
    assert any(x != u and not lat.meet(x, u).is_zero() and not y.is_zero() and not v.is_zero()
               for x, y, u, v in samples)
    assert any(not y.is_zero() and lat.is_perspective(x, u) and lat.is_perspective(y, v) and x != u
               for x, y, u, v in samples)


def test_lemma4_draws_are_not_all_independent():
    """A y drawn in a complement of x alone can meet u; the sampler rejects those."""
    rng = np.random.default_rng(0)
    x = laws._random_ideal(F2_5, rng, [2])
    u = laws._random_ideal(F2_5, rng, [2])
    hits = 0
    for _ in range(50):
        y = laws._sub(F2_5, laws._random_complement(x, rng), rng, [2])
        assert lat.meet(x, y).is_zero()
        hits += not lat.meet(y, lat.join(x, u)).is_zero()
    assert hits > 0


def test_fact2_sampler_keeps_the_guard():
    samples = draws(laws._fact2_sample, F2_5, 100)
    assert len(samples) > 60
    for (a1, b1), (a2, b2) in samples:
        assert laws._fact2_guard(a1, b1, a2, b2)
        assert a1.dims == b1.dims and a2.dims == b2.dims
    assert any(a1 != b1 and a2 != b2 for (a1, b1), (a2, b2) in samples)


def test_fact5a_sampler_builds_several_nonzero_pairs():
    samples = draws(laws._fact5a_sample, RingSpec.matrix_ring(6, 2), 100)
    assert len(samples) > 60
    for pairs in samples:
        assert lat.independent([lat.join(a, b) for a, b in pairs])
        assert all(a.dims == b.dims and lat.meet(a, b).is_zero() for a, b in pairs)
    assert any(len(pairs) > 1 and all(not a.is_zero() for a, _ in pairs) for pairs in samples)


def test_constructive_suites_mostly_run():
    cfg = LawConfig(dim=5, p=2, trials=60, seed=4)
    for name in ('fact2', 'lemma4', 'fact5a'):
        verdict = laws.SUITES[name](cfg)
        assert verdict.ok, verdict.first_failure
        assert verdict.passed > verdict.skipped


def test_workers_validation():
    with pytest.raises(FormatError):
        LawConfig(workers=0)


@pytest.mark.slow
def test_all_suites_at_full_scale():
    """1000 constructive trials per suite on GF(2)^6."""
    cfg = LawConfig(dim=6, p=2, trials=1000, seed=0, workers=os.cpu_count() or 1)
    for verdict in laws.run_suites(sorted(laws.SUITES), cfg):
        assert verdict.ok, (verdict.law, verdict.first_failure)
        assert verdict.passed > verdict.skipped

import logging
import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from regring import create_cli
from regring.models import Mat, PrimeField, RingElement, RingSpec

settings.register_profile('ci', max_examples=200, deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.register_profile('dev', max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile(os.environ.get('HYPOTHESIS_PROFILE', 'dev'))


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: acceptance-scale runs (deselect with -m "not slow")')


@pytest.fixture(autouse=True)
def restore_root_logging():
    """Commands reconfigure the root logger; undo it after each test."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def cli():
    """The command group with every command registered."""
    return create_cli()


@pytest.fixture
def f2():
    return PrimeField(2)


@pytest.fixture
def m2f2():
    return RingSpec.matrix_ring(2, 2)


@pytest.fixture
def m3f2():
    return RingSpec.matrix_ring(3, 2)


@pytest.fixture
def units(m2f2):
    """Matrix units of M2(F2) by their usual 1-based names."""
    field = m2f2.fields[0]
    return {
        f"E{i + 1}{j + 1}": RingElement(m2f2, (Mat.unit(field, 2, i, j),))
        for i in range(2) for j in range(2)
    }


@pytest.fixture
def one2(m2f2):
    return RingElement(m2f2, (Mat.identity(m2f2.fields[0], 2),))


def elements_of(spec):
    """Hypothesis strategy drawing elements of spec uniformly by entries."""
    blocks = [
        st.lists(st.integers(0, p - 1), min_size=n * n, max_size=n * n)
        for n, p in spec.components
    ]
    return st.tuples(*blocks).map(lambda parts: RingElement.from_blocks(spec, parts))


def matrices(p, rows, cols):
    return st.lists(st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols).map(
        lambda entries: Mat.from_entries(p, rows, cols, entries))

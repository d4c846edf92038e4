import os

import click
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _flag(name, default='false'):
    return os.environ.get(name, default).lower() in ('1', 'true', 'yes')


class Config:
    # Enumeration configuration
    # Exhaustive scans refuse to start above this many cases
    ENUM_BUDGET = int(os.environ.get('REGRING_ENUM_BUDGET', 2 ** 24))

    # Randomized runs
    CI_STRICT = _flag('REGRING_CI')
    DEFAULT_SEED = int(os.environ.get('REGRING_SEED', 0))
    DEFAULT_TRIALS = int(os.environ.get('REGRING_TRIALS', 1000))

    # Process workers for identity scans (1 = run in-process)
    WORKERS = int(os.environ.get('REGRING_WORKERS', 1))

    # Reduction configuration
    # None means length(R) + 1
    MAX_STEPS = os.environ.get('REGRING_MAX_STEPS')

    # Logging configuration
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO')
    LOG_TO_FILE = _flag('LOG_TO_FILE')
    LOG_DIR = os.environ.get('LOG_DIR', 'logs')
    LOG_COLOR = _flag('LOG_COLOR', 'true')

    # Environment name, reported in logs
    REGRING_ENV = os.environ.get('REGRING_ENV', 'development')


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'DEBUG')


class TestingConfig(Config):
    """Testing configuration"""
    TESTING = True
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'DEBUG')
    LOG_COLOR = False
    ENUM_BUDGET = int(os.environ.get('REGRING_ENUM_BUDGET', 2 ** 20))


class CIConfig(Config):
    """CI configuration: every randomized command must be seeded"""
    CI_STRICT = True
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO')
    LOG_COLOR = False


# Configuration mapping
config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'ci': CIConfig,
    'default': DevelopmentConfig
}


def get_config(name=None):
    """Pick the configuration class named by REGRING_ENV (or `name`)."""
    name = name or os.environ.get('REGRING_ENV', 'default')
    if _flag('REGRING_CI') and name == 'default':
        name = 'ci'
    return config.get(name, config['default'])


def current_config():
    """Configuration of the running command (the one chosen by --env), else get_config()."""
    ctx = click.get_current_context(silent=True)
    if ctx is not None:
        obj = ctx.find_root().obj
        if isinstance(obj, type) and issubclass(obj, Config):
            return obj
    return get_config()

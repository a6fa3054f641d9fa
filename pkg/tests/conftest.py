"""Pytest configuration and fixtures for the homkk test suite.

This module contains shared pytest fixtures and configuration used across
the test suite, including the run profile, environment settings, the seeded
random source for corpus tests and logging settings.
"""

import logging
import random
from collections.abc import Generator
from typing import Any

import pytest
from hypothesis import HealthCheck, settings

from homkk.config.dotenv_config import EnvConfig, get_env_settings
from homkk.config.logging_config import DefaultRoleFilter
from homkk.config.profiles import load_profile
from homkk.constants.json_profile_config import CorpusFields, Profile, TopKey

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "TEST CONFTEST"})


@pytest.fixture
def refresh_env_config() -> Generator[None, Any]:
    """Use this fixture in tests that mutate environment variables.

    It clears the cache before test, and clears again after test to avoid leaks.

    Example:
    -------
    >>> def test_override_using_cache_clear(monkeypatch, refresh_env_config):
    >>>     monkeypatch.setenv("HOMKK_MAX_N", "3")
    >>>     fresh = get_env_settings()   # now reads patched env and caches it
    >>>     assert fresh.max_n == 3
    >>> # fixture automatically clears cache at teardown

    """
    get_env_settings.cache_clear()  # ensure no stale cached object
    yield
    get_env_settings.cache_clear()  # cleanup after test


@pytest.fixture(scope="session")
def env_settings() -> EnvConfig:
    """Get cached pydantic settings from .env or real env vars.

    Returns:
        EnvConfig: Pydantic settings object containing the resource limits

    Notes:
        Do not use with monkeypatch since this fixture is session-scoped.
        It will not refresh after environment variable overrides.
        For monkeypatch tests, call get_env_settings() directly instead.

    """
    return get_env_settings()


@pytest.fixture(scope="session")
def json_profile_config(request: pytest.FixtureRequest) -> dict:
    """Load the run profile from its packaged JSON file.

    Parameters
    ----------
    request : pytest.FixtureRequest
        Pytest fixture request object containing configuration

    Returns
    -------
    dict
        Dictionary containing the corpus sizes and the performance threshold

    Notes
    -----
    Reads the profile named by the --profile command line option. Defaults to
    'quick' if not specified.

    """
    profile = request.config.getoption("--profile")  # get CLI value
    return load_profile(profile)


@pytest.fixture(scope="session")
def corpus(json_profile_config: dict) -> dict:
    """Corpus section of the active profile."""
    return json_profile_config[TopKey.CORPUS.value]


@pytest.fixture
def rng(corpus: dict) -> random.Random:
    """Fresh random source seeded from the profile, so every test sees the same draws."""
    return random.Random(corpus[CorpusFields.SEED.value])


def pytest_addoption(parser: pytest.Parser) -> None:
    """Add command line options for pytest.

    Parameters
    ----------
    parser : pytest.Parser
        Pytest parser object for adding options

    """
    parser.addoption(
        "--profile",
        action="store",
        default=Profile.QUICK.value,  # fallback
        choices=[p.value for p in Profile],
        help="Corpus sizes for acceptance tests: quick/standard/acceptance",
    )


def pytest_configure() -> None:
    """Configure hypothesis settings and reduce noise from external libraries."""
    logging.getLogger("hypothesis").setLevel(logging.WARNING)

    settings.register_profile(
        "homkk",
        deadline=None,
        max_examples=40,
        suppress_health_check=[HealthCheck.too_slow],
    )
    settings.load_profile("homkk")


def pytest_sessionstart(session: pytest.Session) -> None:
    """Give third-party records a role before the ini log formats see them.

    The logging plugin installs its handlers during configuration, so they are
    only reachable once the session starts.

    """
    logging_plugin = session.config.pluginmanager.get_plugin("logging-plugin")
    if logging_plugin is None:
        return
    for name in ("log_file_handler", "log_cli_handler"):
        handler = getattr(logging_plugin, name, None)
        if handler is not None:
            handler.addFilter(DefaultRoleFilter())

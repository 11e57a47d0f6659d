"""
Pytest configuration and fixtures.

This module provides shared fixtures for:
- The HTTP client over the ASGI app
- Running the command-line front end in-process
- Fresh settings for configuration tests
"""

import json
from collections.abc import AsyncGenerator, Callable
from dataclasses import dataclass
from typing import Any

import pytest
from httpx import ASGITransport, AsyncClient

from app.cli import main as cli_main
from app.main import app as main_app


# =============================================================================
# Test Client Fixtures
# =============================================================================
@pytest.fixture
def anyio_backend() -> str:
    """Specify the async backend for pytest-asyncio."""
    return "asyncio"


@pytest.fixture
async def client() -> AsyncGenerator[AsyncClient, None]:
    """Provides an async HTTP client for API testing."""
    async with AsyncClient(
        transport=ASGITransport(app=main_app),  # type: ignore[arg-type]
        base_url="http://localhost",
    ) as ac:
        yield ac


# =============================================================================
# CLI Fixtures
# =============================================================================
@dataclass
class CliResult:
    exit_code: int
    stdout: str
    stderr: str

    @property
    def payload(self) -> dict[str, Any]:
        """The JSON envelope printed under --json."""
        return json.loads(self.stdout)


@pytest.fixture
def run_cli(capsys: pytest.CaptureFixture[str]) -> Callable[..., CliResult]:
    """
    Runs ``hyperivt`` in-process and captures what it printed.

    Usage: ``run_cli("classify", "1/w", "--json")``
    """

    def _run(*argv: str) -> CliResult:
        capsys.readouterr()
        code = cli_main(list(argv))
        captured = capsys.readouterr()
        return CliResult(code, captured.out, captured.err)

    return _run


# =============================================================================
# Settings Fixtures
# =============================================================================
@pytest.fixture
def clean_engine_env(monkeypatch: pytest.MonkeyPatch) -> pytest.MonkeyPatch:
    """Removes ENGINE_* variables so settings tests start from the defaults."""
    for name in (
        "ENGINE_DEFAULT_WIDTH",
        "ENGINE_DEFAULT_LEVELS",
        "ENGINE_GRID_COUNT",
        "ENGINE_MAX_WORKERS",
        "ENGINE_FIT_MAX_DEGREE",
    ):
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


# =============================================================================
# Pytest Configuration Hooks
# =============================================================================
def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line("markers", "unit: Unit tests")
    config.addinivalue_line("markers", "integration: Integration tests")
    config.addinivalue_line("markers", "e2e: End-to-end tests")
    config.addinivalue_line("markers", "slow: Full-size property and corpus runs")


def pytest_collection_modifyitems(config, items):
    """Auto-mark tests based on their location."""
    for item in items:
        if "unit" in item.nodeid:
            item.add_marker(pytest.mark.unit)
        elif "integration" in item.nodeid:
            item.add_marker(pytest.mark.integration)
        elif "e2e" in item.nodeid:
            item.add_marker(pytest.mark.e2e)

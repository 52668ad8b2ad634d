import pytest
from loguru import logger

from quotient import build_coset_space
from rootsys import RootSystemType, build_root_system


@pytest.fixture
def caplog(caplog):
    """Route loguru records into pytest's caplog."""
    handler_id = logger.add(
        caplog.handler,
        format="{message}",
        level=0,
        filter=lambda record: record["level"].no >= caplog.handler.level,
        enqueue=False,
    )
    yield caplog
    logger.remove(handler_id)


@pytest.fixture(autouse=True)
def single_thread(monkeypatch):
    """Sweeps run on one worker unless a test asks otherwise."""
    monkeypatch.setenv("PARACERT_THREADS", "1")


def rtype(name: str) -> RootSystemType:
    return RootSystemType.parse(name)


@pytest.fixture(scope="session")
def root_system():
    """Factory for cached root systems by name."""
    return lambda name: build_root_system(rtype(name))


@pytest.fixture(scope="session")
def coset_space():
    """Factory for cached coset spaces by type name and level."""
    return lambda name, k: build_coset_space(rtype(name), k)

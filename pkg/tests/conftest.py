import pytest

from hyperlace import settings


@pytest.fixture(autouse=True)
def verify_every_step():
    # every intermediate construction is checked in tests
    old = settings.VERIFY_STEPS
    settings.VERIFY_STEPS = True
    yield
    settings.VERIFY_STEPS = old

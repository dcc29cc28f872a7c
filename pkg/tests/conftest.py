import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from machines import M5, M5_EXT, M_HALT  # noqa: E402

from atlir.reduction import build_cgs  # noqa: E402


@pytest.fixture(scope="session")
def rc5():
    return build_cgs(M5)


@pytest.fixture(scope="session")
def rc_ext():
    return build_cgs(M5_EXT)


@pytest.fixture(scope="session")
def rc_halt():
    return build_cgs(M_HALT)

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ostrowski import make_alpha


@pytest.fixture(scope="session")
def p1():
    return make_alpha(1)


@pytest.fixture(scope="session")
def p2():
    return make_alpha(2)


@pytest.fixture(scope="session")
def p3():
    return make_alpha(3)

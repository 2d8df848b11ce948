import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from clusterwords import Alphabet, ForbiddenSet


@pytest.fixture
def a1():
    return Alphabet("a")


@pytest.fixture
def ab():
    return Alphabet("ab")


@pytest.fixture
def abc():
    return Alphabet("abc")


@pytest.fixture
def f_a3(a1):
    return ForbiddenSet(a1, ["aaa"])


@pytest.fixture
def f_abc_bcc(abc):
    return ForbiddenSet(abc, ["abc", "bcc"])


@pytest.fixture
def f_aa_aab(ab):
    return ForbiddenSet(ab, ["aa", "aab"])

import pytest

from stackychow import corpus
from stackychow.stackyfan import parse_fan


def weighted_line(a, b):
    return parse_fan({"dim": 1, "rays": [[1], [-1]], "levels": [a, b], "max_cones": [[0], [1]]})


@pytest.fixture
def ex_i():
    return corpus.load("example-2-10-i")


@pytest.fixture
def ex_ii():
    return corpus.load("example-2-10-ii")


@pytest.fixture
def p2():
    return corpus.load("p2")


@pytest.fixture
def p1xp1():
    return corpus.load("p1xp1")


@pytest.fixture
def smooth_cone():
    return corpus.load("a2-smooth-cone")


@pytest.fixture(params=corpus.names())
def corpus_fan(request):
    return corpus.load(request.param)

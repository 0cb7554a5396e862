import pytest

from support import what_tree


@pytest.fixture
def question_tree():
    return what_tree()

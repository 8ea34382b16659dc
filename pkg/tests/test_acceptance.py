"""End-to-end acceptance gate. Each criterion prints one PASS/FAIL line."""

import pytest

from z2z4 import acceptance


@pytest.mark.parametrize("criterion", acceptance.CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion):
    res = criterion()
    print(res.line())
    assert res.passed, res.detail

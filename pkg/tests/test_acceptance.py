"""The ten acceptance criteria at their stated orders and precisions.

One PASS/FAIL line per criterion is printed in the terminal summary.
"""

import pytest

from conftest import ACCEPTANCE_LINES
from hypermod.suite import CRITERIA, run_criterion


@pytest.mark.parametrize("k", range(1, len(CRITERIA) + 1))
def test_criterion(k, request):
    result = run_criterion(k, jobs=1)
    request.config.stash[ACCEPTANCE_LINES].append(result.line())
    print(result.line())
    assert result.ok, result.to_json()["details"]

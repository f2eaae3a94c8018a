import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from _reference import BASE  # noqa: E402

from hyperasym import ProblemParams  # noqa: E402


@pytest.fixture
def base_params():
    """Factory for the reference family ``a = c = 1, b = 3/2, eps = 2``."""

    def make(x, **kw):
        d = dict(BASE)
        d.update(kw)
        return ProblemParams(x=x, **d)

    return make


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(verdicts):
        terminalreporter.write_line(verdicts[n])

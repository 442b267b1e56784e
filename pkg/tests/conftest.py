import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from asch.clique_fission import fission, validate_spread  # noqa: E402
from asch.gold_code import build_gold_code, rm_coset_partition, scheme_from_code  # noqa: E402
from asch.imprimitivity import recognize_cover  # noqa: E402
from asch.scheme_core import verify_axioms  # noqa: E402


class Pipeline:
    def __init__(self, m):
        self.code = build_gold_code(m)
        self.rp = scheme_from_code(self.code)
        self.cert = verify_axioms(self.rp)
        self.profile = recognize_cover(self.cert)
        self.blocks = rm_coset_partition(self.code)
        self.spread = validate_spread(self.profile, self.blocks)
        self.fs = fission(self.profile, self.spread)


@pytest.fixture(scope="session")
def gold3():
    return Pipeline(3)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.LINES):
        terminalreporter.write_line(mod.LINES[n])

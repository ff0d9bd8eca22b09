import math

import pytest
from hypothesis import settings

from supcal import SummaryData, summary_from_ci

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

# filled by test_acceptance, printed once at the end of the run
ACCEPTANCE_LINES = []


@pytest.fixture
def printed_ci_data():
    """RECOVERY 95% CI for the log hazard ratio as printed in the package example."""
    return summary_from_ci(-0.29, -0.07, 0.95)


@pytest.fixture
def trial_data():
    """RECOVERY age-adjusted rate ratio 0.83 (95% CI 0.75 to 0.93), unrounded on the log scale."""
    se = summary_from_ci(math.log(0.75), math.log(0.93), 0.95).se
    return SummaryData(math.log(0.83), se)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

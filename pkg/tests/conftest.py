import pytest

from punsense import defaults, textprep

BANKER = "I used to be a banker, but I lost interest."
CHURCH = (
    "When the church bought gas for their annual barbecue, "
    "proceeds went from the sacred to the propane."
)

BANKER_VECTOR = [
    1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1,
    0, 0, 2, 0, 1, 0, 0, 2, 1, 1, 0, 0, 0, 4, 2, 0, 0,
]

MINI_SOURCE = """\
CLASS I ABSTRACT RELATIONS

SECTION I EXISTENCE
#1 Existence. N. existence, entity. V. exist, be, subsist.
"""

MINI_MANIFEST = ["0\tExistence\tAbstract Relations"]


# one line per acceptance criterion, echoed after the test summary so
# the pass/fail verdicts are visible in plain `pytest -v` output
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def index():
    return defaults.default_index()


@pytest.fixture(scope="session")
def manifest():
    return defaults.default_manifest()


@pytest.fixture(scope="session")
def banker(index):
    return textprep.analyze(BANKER, index)


@pytest.fixture(scope="session")
def church(index):
    return textprep.analyze(CHURCH, index)

import contextlib

import pytest

_ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Record a named acceptance criterion as PASS/FAIL for the terminal summary."""

    @contextlib.contextmanager
    def _criterion(label):
        try:
            yield
        except BaseException:
            _ACCEPTANCE.append(("FAIL", label))
            raise
        _ACCEPTANCE.append(("PASS", label))

    return _criterion


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for status, label in sorted(_ACCEPTANCE, key=lambda r: int(r[1].split(".")[0])):
        terminalreporter.write_line(f"{status}  {label}")

import pytest

from newbasis import kernels


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    old = kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(old)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

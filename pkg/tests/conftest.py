"""
Pytest configuration and fixtures for testing.
"""

import pytest
from click.testing import CliRunner

from hsbratteli.core.settings import get_settings
from hsbratteli.main import app
from hsbratteli.models import Constant, Geometric, class_c

CLASSC_GEOMETRIC_SPEC = """\
# class-C diagram with a_n = 2 * 2**n
[diagram]
support = -1..1
rules = constant(1), geometric(2,2), constant(1)

[order l2r]
kind = left-to-right

[odometer vertical]
offsets = 0

[odometer right]
offsets = 1

[window pair]
base = 0
shifts = 0
width = constant(2)

[kernel uniform]
kind = uniform
"""

CLASSC_UNIT_SPEC = """\
diagram = builtin:classc(constant(1))

[order l2r]
kind = left-to-right

[order r2l]
kind = right-to-left

[odometer vertical]
offsets = 0

[kernel skew]
level = 1/2, 1/4, 1/4
"""

TRIADIC_SPEC = """\
diagram = builtin:triadic

[order l2r]
kind = left-to-right
"""


@pytest.fixture(autouse=True)
def fresh_settings():
    """
    Drop cached settings around every test so environment overrides apply.
    """
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def override_settings(monkeypatch):
    """
    Set HSB_* environment overrides for the duration of a test.
    """

    def apply(**values):
        for key, value in values.items():
            monkeypatch.setenv(f"HSB_{key}", str(value))
        get_settings.cache_clear()

    return apply


@pytest.fixture
def geometric_diagram():
    """Class-C diagram with a_n = 2**(n + 1)."""
    return class_c(Geometric(2, 2))


@pytest.fixture
def unit_diagram():
    """Class-C diagram with a_n = 1."""
    return class_c(Constant(1))


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def spec_file(tmp_path):
    """
    Write spec text to a temporary file and return its path.
    """

    def write(text: str, name: str = "diagram.spec"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write


@pytest.fixture
def invoke(runner, spec_file):
    """
    Run the CLI against spec text; returns the click Result.
    """

    def run(spec_text: str | None, *args: str):
        argv = []
        if spec_text is not None:
            argv += ["--spec", str(spec_file(spec_text))]
        return runner.invoke(app, [*argv, *args])

    return run

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from plde.equation import load_equation  # noqa: E402

EQDIR = ROOT / "equations"


@pytest.fixture(scope="session")
def eqdir():
    return EQDIR


def _loader(name):
    @pytest.fixture(scope="session", name=name)
    def fixture():
        return load_equation(EQDIR / ("%s.json" % name))
    return fixture


ex1 = _loader("ex1")
ex2 = _loader("ex2")
nrm = _loader("nrm")
sys1 = _loader("sys1")
sys2 = _loader("sys2")
skew = _loader("skew")

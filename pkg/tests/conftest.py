import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from cwtmoments.wavelets import MexicanHatWavelet


@pytest.fixture(scope="session")
def mexican_hat():
    return MexicanHatWavelet()

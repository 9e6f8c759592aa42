from pathlib import Path

import pandas as pd
import pytest

from ptfloquet.main import main
from ptfloquet.models.model import LatticeConfig


@pytest.fixture
def topological() -> LatticeConfig:
    return LatticeConfig.from_ratio(0.25, 0.0, 20)


@pytest.fixture
def trivial() -> LatticeConfig:
    return LatticeConfig.from_ratio(0.75, 0.0, 20)


@pytest.fixture
def run_cli():
    def run(*argv) -> int:
        return main([str(arg) for arg in argv])
    return run


def read_table(path: Path) -> pd.DataFrame:
    return pd.read_csv(path, comment="#")


def metadata(path: Path) -> list[str]:
    return [line for line in Path(path).read_text().splitlines() if line.startswith("#")]

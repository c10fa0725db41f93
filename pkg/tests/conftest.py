from __future__ import annotations

import os
import random

import pytest

from orbigw.genus0 import GenusZeroData, ModelConfig
from orbigw.pmatrix import build_pmatrix
from orbigw.potentials import ContributionTables
from orbigw.ring import RingContext

SEED = int(os.environ.get("ORBIGW_TEST_SEED", "20240801"))


@pytest.fixture
def rng() -> random.Random:
    """Seeded RNG for every randomized property test (override via ORBIGW_TEST_SEED)."""
    return random.Random(SEED)


@pytest.fixture(scope="session")
def data3() -> GenusZeroData:
    return GenusZeroData.build(ModelConfig(3))


@pytest.fixture(scope="session")
def data4() -> GenusZeroData:
    return GenusZeroData.build(ModelConfig(4))


@pytest.fixture(scope="session")
def data5() -> GenusZeroData:
    return GenusZeroData.build(ModelConfig(5))


@pytest.fixture(scope="session")
def ctx3() -> RingContext:
    return RingContext(3)


@pytest.fixture(scope="session")
def ctx4() -> RingContext:
    return RingContext(4)


@pytest.fixture(scope="session")
def ctx5() -> RingContext:
    return RingContext(5)


@pytest.fixture(scope="session")
def tables3(ctx3, data3) -> ContributionTables:
    pm = build_pmatrix(ctx3, data3, k_max=4, policy="zero")
    return ContributionTables(pm)

# tests/conftest.py
from pathlib import Path

import numpy as np
import pytest

from lumpgap.model import BlockModelParams, load_model

ROOT = Path(__file__).resolve().parent.parent
MODELS = ROOT / "models"
GOLDEN = Path(__file__).resolve().parent / "golden"


def random_block_model(rng: np.random.Generator) -> BlockModelParams:
    """Valid model with diagonally dominant K, so kappa2 >= kappa3 >= 0."""
    c12, c13, c23 = rng.uniform(0.0, 0.125, size=3)
    mass = (
        1.0 - 2.0 * (c12 + c13),
        1.0 - 2.0 * (c12 + c23),
        1.0 - 2.0 * (c13 + c23),
    )
    b = tuple(float(rng.uniform()) * m for m in mass)
    a = tuple(m - bi for m, bi in zip(mass, b))
    return BlockModelParams(a=a, b=b, c12=float(c12), c13=float(c13), c23=float(c23))


def strongly_coupled_model(rng: np.random.Generator) -> BlockModelParams:
    """Valid model whose diagonal of K sums below 1, so kappa3 < 0 and kappa3^2 > kappa2^2."""
    c = rng.uniform(0.1, 0.25, size=3)
    while c.sum() <= 0.55:
        c = rng.uniform(0.1, 0.25, size=3)
    c12, c13, c23 = (float(x) for x in c)
    mass = (
        1.0 - 2.0 * (c12 + c13),
        1.0 - 2.0 * (c12 + c23),
        1.0 - 2.0 * (c13 + c23),
    )
    b = tuple(float(rng.uniform()) * m for m in mass)
    a = tuple(m - bi for m, bi in zip(mass, b))
    return BlockModelParams(a=a, b=b, c12=c12, c13=c13, c23=c23)


@pytest.fixture
def models_dir() -> Path:
    return MODELS


@pytest.fixture
def example_model_path() -> Path:
    return MODELS / "paper-example"


@pytest.fixture
def example_params(example_model_path) -> BlockModelParams:
    return load_model(example_model_path)


@pytest.fixture
def identity_params() -> BlockModelParams:
    return load_model(MODELS / "identity-chain")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def random_models(rng):
    return [random_block_model(rng) for _ in range(1000)]


@pytest.fixture
def strongly_coupled_models(rng):
    return [strongly_coupled_model(rng) for _ in range(200)]

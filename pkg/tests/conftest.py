import pytest

from models.distribution import Distribution
from models.experiment import ExperimentSpec, ModelKind, ModelSpec
from models.report import DistributionSequence
from services.sampling import run_experiment

TM22 = ModelSpec(kind=ModelKind.TM, symbols=2, states=2)
ECA = ModelSpec(kind=ModelKind.ECA)

# Clases de longitud 4 con probabilidades distintas (suman 1)
REFERENCE_N4 = {
    "0000": 0.30,
    "0001": 0.25,
    "0010": 0.15,
    "0011": 0.12,
    "0101": 0.10,
    "0110": 0.08,
}


def make_distribution(entries: dict[str, float], reduced: bool = False) -> Distribution:
    n = len(next(iter(entries)))
    return Distribution(n=n, entries=dict(entries), reduced=reduced)


def make_sequence(per_n: dict[int, dict[str, float]], model: ModelSpec = TM22) -> DistributionSequence:
    return DistributionSequence(
        model=model,
        per_n={n: make_distribution(entries, reduced=True) for n, entries in per_n.items()},
    )


@pytest.fixture
def reference_sequence():
    return make_sequence({
        2: {"00": 0.7, "01": 0.3},
        3: {"000": 0.5, "001": 0.3, "010": 0.2},
        4: REFERENCE_N4,
    })


@pytest.fixture(scope="session")
def tm22_n3():
    """TM(2,2) completo a n = 3, sin reducir"""
    return run_experiment(ExperimentSpec(model=TM22, n=3))


@pytest.fixture
def registry_url(tmp_path):
    return f"sqlite:///{tmp_path}/runs.db"

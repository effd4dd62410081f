import pytest

from symlog.domains import standard_registry
from symlog.rules import CalculusConfig


@pytest.fixture
def registry():
    return standard_registry()


@pytest.fixture
def config():
    return CalculusConfig(
        left_contexts=True, right_contexts=True, weakening=True, cut=True,
        substitution_domains=frozenset({"D", "Ddown", "Dup"}),
        d_axiom_domains=frozenset({("Dplus", "top"), ("Dminus", "top"),
                                   ("V", "d"), ("Ddown", "neq"),
                                   ("Dup", "neq")}))

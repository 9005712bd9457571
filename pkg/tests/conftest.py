import pytest

from claimorder.builtin_examples import EXAMPLE_TEXT
from claimorder.scenario_io import parse_scenario_text


@pytest.fixture(scope="session")
def example():
    """Parsed bundled scenarios, keyed by number: (scenario, theorem)."""

    def load(n: int):
        return parse_scenario_text(EXAMPLE_TEXT[n])

    return load

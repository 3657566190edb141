from pathlib import Path

import pytest

from culab.corpus import builtin_model, enumerate_corpus

FIXTURES = Path(__file__).parent / "fixtures"

BUILTIN_NAMES = ("T1", "O2", "E2", "N2", "NCAP(3)", "F4", "GAP4", "SPH(1,2)")


@pytest.fixture(scope="session")
def builtins():
    from culab.corpus import builtin_from_spec

    return {name: builtin_from_spec(name) for name in BUILTIN_NAMES}


@pytest.fixture(scope="session")
def corpus4():
    """Algebraic-order corpus up to size 4; the acceptance corpus."""
    return enumerate_corpus(4, "algebraic")


@pytest.fixture(scope="session")
def corpus4_all():
    return enumerate_corpus(4, "all_compatible")


@pytest.fixture(scope="session")
def acceptance_models(corpus4, builtins):
    """Corpus plus the named fixture models, deduplicated by identity."""
    return list(corpus4) + [builtins[name] for name in BUILTIN_NAMES]


@pytest.fixture(scope="session")
def fixture_path():
    return FIXTURES


def model(name):
    return builtin_model(name)

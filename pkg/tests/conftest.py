import importlib.resources

import pytest

from mufahris.analyzer import bundled_lexicon


@pytest.fixture(scope="session")
def lexicon():
    return bundled_lexicon()


def corpus_text(name: str) -> str:
    res = importlib.resources.files("mufahris.data").joinpath(f"corpus/{name}")
    return res.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def rain_text():
    return corpus_text("tahta_al_matar.txt")


@pytest.fixture(scope="session")
def bell_text():
    return corpus_text("dam_al_shahid.txt")

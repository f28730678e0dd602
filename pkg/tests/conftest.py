import pytest

from subloc import FrameWitness, enumerate_sublocales
from subloc.corpus import gen_boolean, gen_chain, gen_diamond, standard_corpus


@pytest.fixture(scope="session")
def corpus():
    return standard_corpus()


@pytest.fixture(scope="session")
def hosts(corpus):
    """Sublocale coframes for every corpus frame, built once."""
    return {cf.name: enumerate_sublocales(cf.frame) for cf in corpus}


@pytest.fixture(scope="session")
def c3():
    return FrameWitness.of(gen_chain(3))


@pytest.fixture(scope="session")
def b2():
    return FrameWitness.of(gen_boolean(2))


@pytest.fixture(scope="session")
def m3():
    return gen_diamond()

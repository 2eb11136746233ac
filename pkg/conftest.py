# sajatiya/conftest.py
import pytest

from core.features import FeatureResources
from core.phonology import load_phonetic_table
from core.synthetic import synthetic_dataset


@pytest.fixture(scope="session")
def phonetic_table():
    return load_phonetic_table()


@pytest.fixture(scope="session")
def small_synthetic():
    """80 pairs, d=4: enough for fast classifier and evaluation tests"""
    return synthetic_dataset(n_pairs=80, dim=4, seed=7)


@pytest.fixture(scope="session")
def full_synthetic():
    return synthetic_dataset(n_pairs=400, dim=8, seed=42)


def resources_for(data, phonetic_table=None, tag="MUSE"):
    return FeatureResources(
        context_src=data.context_src,
        context_tgt=data.context_tgt,
        phonetic_table=phonetic_table,
        embeddings={tag: (data.src_table, data.tgt_table)},
    )


@pytest.fixture(scope="session")
def small_resources(small_synthetic, phonetic_table):
    return resources_for(small_synthetic, phonetic_table)


@pytest.fixture(scope="session")
def make_resources():
    return resources_for

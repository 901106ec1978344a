import math
import os

import compas
import numpy
import pytest

import compas_pbiharmonic


def pytest_ignore_collect(collection_path):
    if "examples" in str(collection_path):
        return True


@pytest.fixture(autouse=True)
def add_compas(doctest_namespace):
    doctest_namespace["compas"] = compas


@pytest.fixture(autouse=True)
def add_compas_pbiharmonic(doctest_namespace):
    doctest_namespace["compas_pbiharmonic"] = compas_pbiharmonic


@pytest.fixture(autouse=True)
def add_math(doctest_namespace):
    doctest_namespace["math"] = math


@pytest.fixture(autouse=True)
def add_np(doctest_namespace):
    doctest_namespace["np"] = numpy


@pytest.fixture(scope="session")
def configs():
    return compas_pbiharmonic.CONFIGS


def _load_golden(name):
    with open(os.path.join(compas_pbiharmonic.GOLDEN, name)) as f:
        return compas.data.json_loads(f.read())


@pytest.fixture(scope="session")
def golden():
    return _load_golden("constant_p2.json")


@pytest.fixture(scope="session")
def cosine_golden():
    return _load_golden("cosine_p2.json")

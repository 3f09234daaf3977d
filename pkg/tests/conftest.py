import os, sys
import numpy as np
import pytest

tests_dir = os.path.dirname(os.path.abspath(__file__))
root_dir = os.path.dirname(tests_dir)
for sub in ["src", "util"]:
    path = os.path.join(root_dir, sub)
    if (not path in sys.path):
        sys.path.insert(0, path)

from imaging import RasterImage
from synthetic_cover import synthetic_scene

data_dir = os.path.join(tests_dir, "data")


def data_path(filename):
    return os.path.join(data_dir, filename)

def read_data(filename):
    with open(os.path.join(data_dir, filename), "r", encoding="utf-8", newline="") as f:
        return f.read()

def flat_cover(width, height, value=128, channels=3):
    """ Cover whose every sample equals value
    """
    return RasterImage(np.full((height, width, channels), value, dtype=np.uint8))


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)

@pytest.fixture(scope="session")
def text1():
    return read_data("text1.txt")

@pytest.fixture(scope="session")
def text2():
    return read_data("text2.txt")

@pytest.fixture(scope="session")
def text3():
    return read_data("text3.txt")

@pytest.fixture(scope="session")
def scene():
    return synthetic_scene(128, 96, seed=7)

@pytest.fixture(scope="session")
def gray_scene():
    return synthetic_scene(96, 64, channels=1, seed=11)

import os
import sys

import numpy as np
import pytest

# Add the src directory to Python path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../src')))

from braidjohnson.braid_core import BraidWord
from braidjohnson.config import AppConfig, global_config
from braidjohnson.logging_config import get_log_level, set_log_level


@pytest.fixture(autouse=True)
def reset_global_config():
    """Reset global_config to default state before and after each test"""
    original_config = global_config._config
    original_path = global_config.config_path
    original_level = get_log_level()
    global_config._config = AppConfig()
    yield
    global_config._config = original_config
    global_config.config_path = original_path
    set_log_level(original_level)


@pytest.fixture
def rng():
    """A fixed-seed generator so randomized tests are reproducible"""
    return np.random.default_rng(20240901)


@pytest.fixture
def reference_word():
    return BraidWord.from_ints(3, (-2, 1, 1, 2, 2, 2, -1, 2))

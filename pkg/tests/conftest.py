import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

import pytest

from crg.catalog import get_group


@pytest.fixture(scope="session")
def groups():
    """Catalog handle; groups enumerate lazily and stay cached for the whole
    session (G29/G30/G31 are expensive to enumerate)."""
    return get_group


@pytest.fixture(scope="session")
def fast_group_names():
    return ["G(1,1,5)", "G(2,2,4)", "G(3,3,4)", "G(4,4,4)", "G(2,1,4)",
            "G(4,2,4)", "G28"]


@pytest.fixture(scope="session")
def all_group_names(fast_group_names):
    return fast_group_names + ["G29", "G30", "G31"]

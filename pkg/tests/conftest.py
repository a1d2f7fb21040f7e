import os

import pytest


def pytest_collection_modifyitems(config, items):
    if os.environ.get("UNIRACK_SLOW"):
        return
    skip = pytest.mark.skip(reason="exhaustive cross-validation; set UNIRACK_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)

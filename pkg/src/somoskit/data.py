"""Access to the JSON fixture tables shipped with the package."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=None)
def load_fixture(name):
    """Parse fixtures/<name>.json into plain Python objects."""
    ref = resources.files(__package__).joinpath("fixtures", name + ".json")
    with ref.open("r", encoding="utf-8") as fh:
        return json.load(fh)


def fixture_names():
    folder = resources.files(__package__).joinpath("fixtures")
    return sorted(
        entry.name[:-5] for entry in folder.iterdir() if entry.name.endswith(".json")
    )

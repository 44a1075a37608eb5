"""Bundled fan documents."""

import json
from importlib import resources

from ..stackyfan import StackyFan, parse_fan


def names():
    return sorted(
        p.name[: -len(".json")]
        for p in resources.files(__name__).iterdir()
        if p.name.endswith(".json")
    )


def document(name: str) -> dict:
    return json.loads(resources.files(__name__).joinpath(f"{name}.json").read_text())


def load(name: str) -> StackyFan:
    return parse_fan(document(name))

"""Keeps the browser's validation fixture in sync with the server.

The frontend tests its config validator against a JSON fixture generated
from the server-side parser. If the parser's rules move, this test fails
until the fixture is regenerated, so client and server can never disagree
silently.

Regenerate with:  python3 frontend/scripts/gen_config_cases.py
"""

import importlib.util
import json
from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parent.parent
GENERATOR = REPO / "frontend" / "scripts" / "gen_config_cases.py"
FIXTURE = REPO / "frontend" / "tests" / "fixtures" / "config-cases.json"


def load_generator():
    spec = importlib.util.spec_from_file_location("gen_config_cases", GENERATOR)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


@pytest.fixture(scope="module")
def records():
    return load_generator().build_records()


def test_fixture_matches_current_validator(records):
    stored = json.loads(FIXTURE.read_text())
    # round-trip through JSON so tuples and floats compare like the file
    assert json.loads(json.dumps(records)) == stored


def test_case_bank_covers_both_outcomes(records):
    accepted = [r for r in records if r["ok"]]
    rejected = [r for r in records if not r["ok"]]
    assert len(accepted) >= 10
    assert len(rejected) >= 20
    names = [r["name"] for r in records]
    assert len(names) == len(set(names))


def test_rejections_name_real_fields(records):
    for record in records:
        if record["ok"]:
            continue
        assert record["fields"], record["name"]
        for field in record["fields"]:
            assert isinstance(field, str) and field

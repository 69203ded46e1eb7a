import csv
import io
import json

import pytest

from emergent.cli import main


@pytest.fixture
def run_cli(tmp_path, monkeypatch):
    """Run the CLI into a file and return (exit code, text)."""
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
    counter = iter(range(10**6))

    def run(*argv):
        out = tmp_path / f"out{next(counter)}"
        code = main([*argv, "--output", str(out)])
        return code, out.read_text() if out.exists() else ""

    return run


def parse_csv(text):
    lines = text.splitlines()
    assert lines[0].startswith("# ")
    meta = json.loads(lines[0][2:])
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
    return meta, rows

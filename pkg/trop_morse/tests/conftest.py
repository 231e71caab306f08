import json
from fractions import Fraction

import pytest

from trop_morse.cli.main import main
from trop_morse.geometry.curve import CurveDivisor, Edge, Profile, TropicalCurve, Vertex


@pytest.fixture
def write_json(tmp_path):
    """Write a payload (or raw text) to a file under tmp_path; returns its path"""

    def _write(name, payload):
        path = tmp_path / name
        path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
        return str(path)

    return _write


@pytest.fixture
def run_cli(capsys):
    """Run the CLI in-process; returns (exit code, stdout, stderr)"""

    def _run(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return _run


@pytest.fixture
def run_json(run_cli):
    """Run with --json and return (exit code, parsed stdout or None)"""

    def _run(*argv):
        code, out, _ = run_cli("--json", *argv)
        return code, (json.loads(out) if out else None)

    return _run


@pytest.fixture
def tripod():
    """Trivalent vertex "o" with three spokes; profiles from the given outgoing slopes"""

    def _build(slopes, ends=None):
        ends = ends or [Fraction(s) + 1 for s in slopes]
        curve = TropicalCurve(
            (Vertex("o"),) + tuple(Vertex(f"x{i}") for i in range(3)),
            tuple(Edge(f"a{i}", "o", f"x{i}", Fraction(1)) for i in range(3)),
        )
        profiles = {
            f"a{i}": Profile.linear(Fraction(1), Fraction(s), Fraction(end))
            for i, (s, end) in enumerate(zip(slopes, ends))
        }
        return curve, CurveDivisor(profiles)

    return _build

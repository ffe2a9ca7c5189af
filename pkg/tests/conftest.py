import json
import pathlib
import sys

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from qalt.diagram import parse_pd  # noqa: E402

CORPUS = ROOT / "corpus"


@pytest.fixture(scope="session")
def corpus():
    """name -> (diagram, manifest row) for every bundled diagram."""
    manifest = json.loads((CORPUS / "manifest.json").read_text())
    out = {}
    for row in manifest:
        d = parse_pd((CORPUS / row["file"]).read_text())
        out[row["name"]] = (d, row)
    return out


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS


@pytest.fixture(scope="session")
def trefoil():
    return parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")

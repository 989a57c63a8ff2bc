"""Tests for the documentation configuration."""

import configparser
import runpy
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
DOCS = ROOT / "docs" / "source"


def test_configuration_reads_package_metadata():
    metadata = configparser.ConfigParser()
    metadata.read(ROOT / "setup.cfg")
    conf = runpy.run_path(str(DOCS / "conf.py"))
    assert conf["project"] == "tvolap"
    assert conf["release"] == f"v{metadata['metadata']['version']}"
    assert set(conf["intersphinx_mapping"]) == {"python", "numpy", "scipy"}


def test_every_module_has_a_page():
    package = ROOT / "tvolap"
    modules = {
        ".".join(path.relative_to(ROOT).with_suffix("").parts).removesuffix(".__init__")
        for path in package.rglob("*.py")
        if path.name != "__main__.py"
    }
    pages = {path.stem for path in DOCS.glob("tvolap.*.rst")}
    assert pages == modules - {"tvolap"}

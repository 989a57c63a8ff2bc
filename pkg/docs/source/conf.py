# Sphinx configuration for the tvolap documentation.

import configparser
import os
import sys
from pathlib import Path

# Document the package from the repository checkout.
ROOT = Path(__file__).resolve().parents[2]
sys.path.insert(0, os.fspath(ROOT))

# Version and summary come from setup.cfg.
_metadata = configparser.ConfigParser()
_metadata.read(ROOT / "setup.cfg")


# -- Project information -----------------------------------------------------

project = _metadata.get("metadata", "name", fallback="tvolap")
version = _metadata.get("metadata", "version", fallback="0.0.0")
release = f"v{version}"
author = "tvolap developers"
copyright = f"2026, {author}"


# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.intersphinx",
    "sphinx.ext.napoleon",
    "sphinx.ext.autodoc",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "sphinx_autodoc_typehints",
]

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable/", None),
    "scipy": ("https://docs.scipy.org/doc/scipy/", None),
}

# Google-style docstrings only.
napoleon_google_docstring = True
napoleon_numpy_docstring = False

autodoc_default_options = {
    "member-order": "bysource",
    "special-members": "__init__",
    "show-inheritance": True,
}

# Array aliases read better than their expanded numpy.typing form.
autodoc_type_aliases = {
    "FloatArray": "tvolap.typeutils.FloatArray",
    "ComplexArray": "tvolap.typeutils.ComplexArray",
}
typehints_defaults = "comma"

source_suffix = [".rst"]
exclude_patterns = ["_build"]


# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"
html_title = f"{project} {release}"

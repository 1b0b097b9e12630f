# Configuration file for the Sphinx documentation builder.
#
# For the full list of built-in configuration values, see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys

project = "torchakh"
copyright = "2024, torchakh developers"
author = "torchakh developers"

sys.path.insert(0, os.path.abspath("../.."))

# -- General configuration ---------------------------------------------------
root_doc = "index"
extensions = [
    "myst_parser",
    "sphinx.ext.autodoc",
    "autoapi.extension",
    "sphinx.ext.napoleon",
]

source_suffix = {
    ".rst": "restructuredtext",
    ".md": "markdown",
}

autoapi_type = "python"
autoapi_dirs = ["../../src/akh"]
autoapi_member_order = "alphabetical"
autodoc_typehints = "description"

exclude_patterns = []

# -- Options for HTML output -------------------------------------------------
html_theme = "sphinx_rtd_theme"
html_theme_options = {
    "collapse_navigation": False,
    "navigation_depth": 4,
}

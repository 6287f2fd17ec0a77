import os

extensions = ["sphinx.ext.doctest", "sphinx.ext.mathjax"]

source_suffix = ".rst"
master_doc = "index"
exclude_patterns = ["_build"]

project = "Sesquifield"
copyright = "2026, The Sesquifield Project"
version = "2026.10"
release = "2026.10.16"

show_authors = True
pygments_style = "sphinx"

on_rtd = os.environ.get("READTHEDOCS", None) == "True"

if not on_rtd:  # readthedocs supplies its own theme
    import sphinx_rtd_theme

    html_theme = "sphinx_rtd_theme"
    html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]

htmlhelp_basename = "SesquifieldDoc"

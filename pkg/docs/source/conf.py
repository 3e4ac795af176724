#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# pir-rssi documentation build configuration file.
#
# All configuration values have a default; values that are commented
# out serve to show the default.

import os
import sys

sys.path.insert(0, os.path.abspath('../../src'))

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'numpydoc',
    'sphinx.ext.coverage',
    'sphinx.ext.doctest',
    'sphinx.ext.autosummary',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'pir-rssi'
copyright = '2026, pir-rssi developers'
author = 'pir-rssi developers'

from pirrssi.version import __version__ as PIRRSSI_VERSION
version = PIRRSSI_VERSION
release = PIRRSSI_VERSION

exclude_patterns = []
pygments_style = 'sphinx'
todo_include_todos = True

# -- Options for HTML output ----------------------------------------------

html_theme = 'alabaster'
numpydoc_show_class_members = False
html_static_path = []
htmlhelp_basename = 'pir-rssidoc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {
}

latex_documents = [
  (master_doc, 'pir-rssi.tex', 'pir-rssi Documentation',
   author, 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'pir-rssi', 'pir-rssi Documentation',
     [author], 1)
]

# -- Options for Texinfo output -------------------------------------------

texinfo_documents = [
  (master_doc, 'pir-rssi', 'pir-rssi Documentation',
   author, 'pir-rssi',
   'Single-server PIR with private and non-private side information.',
   'Miscellaneous'),
]

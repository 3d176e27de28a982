#!/usr/bin/env python
#
# deepe documentation build configuration file.
#
# Only the settings that differ from the sphinx-quickstart defaults are kept here.

import os
import sys
sys.path.insert(0, os.path.abspath('..'))

import deepe

# -- General configuration ---------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode', 'sphinx.ext.napoleon']
autodoc_member_order = 'bysource'

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'deepe'
copyright = "2026, John James"
author = "John James"

version = deepe.__version__
release = deepe.__version__

language = None
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'sphinx'
todo_include_todos = False

# -- Options for HTML output -------------------------------------------

html_theme = 'alabaster'
html_static_path = ['_static']
htmlhelp_basename = 'deepedoc'

# -- Options for LaTeX, manual page and Texinfo output -----------------

latex_documents = [
    (master_doc, 'deepe.tex', 'deepe Documentation', 'John James', 'manual'),
]

man_pages = [
    (master_doc, 'deepe', 'deepe Documentation', [author], 1),
]

texinfo_documents = [
    (master_doc, 'deepe', 'deepe Documentation', author, 'deepe',
     'DeepE knowledge graph embedding with residual feature blocks and manual gradients.',
     'Miscellaneous'),
]

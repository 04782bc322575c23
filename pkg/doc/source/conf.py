#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# InFocus documentation build configuration file.
#
# Only values that differ from the Sphinx defaults are set here.

import sys
import os

# make the package importable without installing it
sys.path.insert(0, os.path.abspath('../..'))

import infocus
import sphinx_bootstrap_theme

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.viewcode',
    'sphinx.ext.mathjax'
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'InFocus'
copyright = '2017, Sean Leavey'
author = 'Sean Leavey'

version = infocus.__version__
release = infocus.__version__

language = None
exclude_patterns = []
pygments_style = 'sphinx'
todo_include_todos = False

# -- Options for HTML output ----------------------------------------------

html_theme = 'bootstrap'
html_theme_path = sphinx_bootstrap_theme.get_html_theme_path()
html_static_path = ['_static']
htmlhelp_basename = 'InFocus'

html_theme_options = {
    # Render the next and previous page links in navbar. (Default: true)
    'navbar_sidebarrel': False,

    # Bootswatch (http://bootswatch.com/) theme
    'bootswatch_theme': "sandstone"
}

# -- Options for other output ---------------------------------------------

latex_elements = {
}

latex_documents = [
  (master_doc, 'infocus.tex', 'InFocus Documentation',
   'Sean Leavey', 'manual'),
]

man_pages = [
    (master_doc, 'infocus', 'InFocus Documentation',
     [author], 1)
]

texinfo_documents = [
  (master_doc, 'InFocus', 'InFocus Documentation',
   author, 'InFocus', 'Wideband near-field beamforming simulator.',
   'Miscellaneous'),
]

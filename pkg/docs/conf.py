# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.
#
# This file does only contain a selection of the most common options. For a
# full list see the documentation:
# http://www.sphinx-doc.org/en/master/config

# -- Path setup --------------------------------------------------------------

# The modules documented with autodoc are in ../src
import os
import sys
sys.path.insert(0, os.path.abspath(os.path.join('..', 'src')))


# -- Project information -----------------------------------------------------

project = 'pmdist'
copyright = '2026, pmdist developers'
author = 'pmdist developers'

# The short X.Y version
version = '1.0'
# The full version, including alpha/beta/rc tags
release = '1.0'


# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
]

templates_path = ['_templates']

source_suffix = '.rst'

# The master toctree document.
master_doc = 'index'

language = None

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

pygments_style = 'sphinx'


# -- Options for HTML output -------------------------------------------------

html_theme = 'classic'

html_static_path = ['_static']


# -- Options for HTMLHelp output ---------------------------------------------

htmlhelp_basename = 'pmdistdoc'


# -- Options for LaTeX output ------------------------------------------------

latex_elements = {}

latex_documents = [
    (master_doc, 'pmdist.tex', 'pmdist Documentation',
     author, 'manual'),
]


# -- Options for manual page output ------------------------------------------

man_pages = [
    (master_doc, 'pmdist', 'pmdist Documentation',
     [author], 1)
]

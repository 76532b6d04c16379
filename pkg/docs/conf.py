# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.

import os
import sys
sys.path.insert(0, os.path.abspath('../'))
import admlab


def run_apidoc(_):
    argv = [
        "-f",
        "-M",
        "-o", ".",
        "../admlab/"
    ]
    from sphinx.ext import apidoc
    apidoc.main(argv)


def setup(app):
    app.connect('builder-inited', run_apidoc)


# -- Project information -----------------------------------------------------

project = u'admlab'
copyright = admlab.__copyright__
author = admlab.__author__
version = admlab.__version__
release = admlab.__version__

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.mathjax',
    'sphinx.ext.todo',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon'
]

# Docstrings are NumPy style
napoleon_google_docstring = False
napoleon_numpy_docstring = True
napoleon_include_init_with_doc = True
napoleon_include_private_with_doc = False
napoleon_use_admonition_for_examples = True
napoleon_use_param = True
napoleon_use_rtype = True

todo_include_todos = True
templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'
exclude_patterns = [u'_build', 'Thumbs.db', '.DS_Store']

# -- Options for HTML output -------------------------------------------------

html_theme = 'default'
html_static_path = ['_static']
htmlhelp_basename = 'admlab'

# -- Options for manual page output ------------------------------------------

man_pages = [
    (master_doc, 'admlab', u'admlab Documentation', [author], 1)
]

#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# lyapunov_da documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import sys
import os

# Insert the project root dir as the first element in the PYTHONPATH so
# that the source package, and its version, is used.
cwd = os.getcwd()
project_root = os.path.dirname(cwd)
sys.path.insert(0, project_root)

import lyapunov_da  # noqa: E402

# -- General configuration ---------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx.ext.napoleon',
    'sphinx.ext.viewcode'
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'Domains of attraction from Lyapunov series'
copyright = u"The lyapunov_da developers"

version = lyapunov_da.__version__
release = lyapunov_da.__version__

exclude_patterns = ['_build']
pygments_style = 'sphinx'

# -- Options for HTML output -------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_show_sphinx = False
html_show_copyright = False
htmlhelp_basename = 'lyapunov_dadoc'

# -- Options for manual page output ------------------------------------

man_pages = [
    ('index', 'lyapunov-da',
     u'Domains of attraction from Lyapunov series',
     [u'The lyapunov_da developers'], 1)
]

#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# Sphinx configuration for ncretx.

import os
import sys
sys.path.insert(0, os.path.abspath('..'))

import ncretx  # noqa: E402

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode']
autodoc_member_order = 'bysource'

source_suffix = '.rst'
master_doc = 'index'

project = u'ncretx'
author = ncretx.__author__
copyright = u"2018, " + author
version = release = ncretx.__version__

exclude_patterns = ['_build']
pygments_style = 'sphinx'
html_theme = 'alabaster'
htmlhelp_basename = 'ncretxdoc'

latex_documents = [
    (master_doc, 'ncretx.tex', u'ncretx Documentation', author, 'manual'),
]
man_pages = [
    (master_doc, 'ncretx', u'ncretx Documentation', [author], 1),
]

# -*- coding: utf-8 -*-
#
# privtopk documentation build configuration file

import sys, os

# make the package importable for autodoc
sys.path.insert(0, os.path.abspath('..'))

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.coverage', 'sphinx.ext.viewcode']
templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'privtopk'
copyright = u'2026, privtopk developers'
version = '0.1'
release = '0.1.0'

exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'default'
html_static_path = ['_static']
htmlhelp_basename = 'privtopkdoc'

latex_documents = [
  ('index', 'privtopk.tex', u'privtopk Documentation', u'privtopk developers', 'manual'),
]
man_pages = [
    ('index', 'privtopk', u'privtopk Documentation', [u'privtopk developers'], 1)
]

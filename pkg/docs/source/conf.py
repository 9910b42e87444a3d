# Configuration file for the Sphinx documentation builder.
#
# For a full list of options see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Project information -----------------------------------------------------

project = 'parallel-msc'
copyright = 'The parallel-msc team.'
author = 'The parallel-msc team'

# The full version, including alpha/beta/rc tags
release = '0.1.0'

# -- General configuration ---------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx_copybutton', 'sphinx_design']

templates_path = ['_templates']

exclude_patterns = []

pygments_style = 'sphinx'

autodoc_typehints = 'description'

# -- Options for HTML output -------------------------------------------------

html_theme = 'pydata_sphinx_theme'
html_theme_options = {
    'use_edit_page_button': False,
}

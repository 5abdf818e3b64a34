# Sphinx configuration for the pomapf manual

import os
import sys

# the version lives in pomapf/const.py
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)),
                                "..", "pomapf"))
from const import VERSION

project = "pomapf"
author = "The pomapf developers"
copyright = "2026, " + author

version = release = ".".join(str(v) for v in VERSION)

master_doc = "index"
source_suffix = ".rst"
exclude_patterns = ["_html", "_build"]

pygments_style = "tango"
html_theme = "pyramid"
html_title = "pomapf %s" % version

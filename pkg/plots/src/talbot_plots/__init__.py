"""Figure rendering for talbot CSV outputs.

Pure views: every number plotted comes from a CSV produced by the talbot
command line; nothing is recomputed here, so a wrong figure implicates
the data producer, not this package.
"""

from .figspec import FigureSpec, SchemaError, load_csv
from .render import compare, render

__all__ = ["FigureSpec", "SchemaError", "load_csv", "render", "compare"]

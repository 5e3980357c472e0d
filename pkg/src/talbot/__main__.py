"""python3 -m talbot dispatches to the command line."""

from .cli import main

main()

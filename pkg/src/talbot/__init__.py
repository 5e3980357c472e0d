"""Finite-field exponential sums, Talbot-effect counterexample data,
slab-set geometry, and the dimension/regularity calculus built on them.
"""

__version__ = "0.1.0"

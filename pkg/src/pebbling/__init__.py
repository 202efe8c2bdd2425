"""Certified bounds on graph pebbling numbers.

Upper bounds come from covering LPs over tree strategies with exact rational
certificates; lower bounds come from unsolvable distributions confirmed by a
forward search and by a flow MILP.
"""

__version__ = "0.1.0"

"""
cutpath

Random walk paths on graphs: cutpoints, cut-times and the electrical
networks that bound them.
"""

__version__ = "0.1.0"

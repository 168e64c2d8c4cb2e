""" Tests for cutpath.

Fast exact checks run by default; desk-scale statistical checks are marked
``slow`` and run with ``pytest --runslow``.
"""
import os

TEST_DIR = os.path.dirname(os.path.realpath(__file__))

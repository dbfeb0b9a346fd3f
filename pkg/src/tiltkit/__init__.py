"""Exact workbench for tilting and cluster-tilting combinatorics."""

__version__ = "0.1.0"

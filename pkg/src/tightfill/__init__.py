"""Exact combinatorics for tight, non-fillable contact structures on Seifert spaces."""

__version__ = "0.1.0"

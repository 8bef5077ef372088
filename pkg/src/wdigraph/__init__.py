"""Exact computation with W-digraphs for Coxeter systems and their
Hecke-algebra modules: construction, classification-based validation with an
independent brute-force oracle, characters, and structural analyses."""

__version__ = "0.1.0"

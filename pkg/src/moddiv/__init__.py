"""Exact divisibility and seeming divisibility of module homomorphisms."""

__version__ = "0.1.0"

"""Armchair tubulene graphs AT(n, p), their automorphisms, and exact Graovac-Pisanski and Wiener indices."""

__version__ = "0.1.0"

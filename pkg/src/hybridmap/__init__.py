"""Fermion-to-qubit mappings for square lattices and their routing cost."""

"""Lie-algebra-level generic stabilizers in special characteristic."""

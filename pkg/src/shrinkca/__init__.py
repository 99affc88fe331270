"""Shrinking-generator cryptanalysis with linear cellular automata."""

"""Simulator for the quantum double anyon model built on the quaternion group.

Subpackages cover the finite-group layer, the anyon spectrum with its
modular data, exact braid generator matrices, gate compilation by braid
words, and a small noisy statevector simulation that factors 15.
"""

__version__ = "0.1.0"

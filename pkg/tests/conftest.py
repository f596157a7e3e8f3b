"""Shared independent oracles used across test modules.

These deliberately avoid the code paths they are checking: fusion
multiplicities come from character theory of the double algebra rather
than the Verlinde sum, and the factoring distribution comes from an
explicit superposition plus the inverse-Fourier matrix rather than the
gate-by-gate simulator.
"""

from __future__ import annotations

import numpy as np
import pytest

from qdouble import group as G
from qdouble import spectrum as sp


def double_character(a: sp.AnyonCharge, h: int, g: int) -> complex:
    """Character of the charge at the basis element P_h g."""
    if h not in a.klass.members or G.conjugate(g, h) != h:
        return 0.0 + 0.0j
    x = sp.section(a.class_label)[h]
    arg = G.multiply(G.multiply(G.inverse(x), g), x)
    return a.irrep.character(arg)


def character_inner(fa, fb) -> complex:
    total = 0.0 + 0.0j
    for h in range(8):
        for g in range(8):
            if G.commute(h, g):
                total += fa(h, g) * np.conj(fb(h, g))
    return total / 8.0


def fusion_oracle(a: sp.AnyonCharge, b: sp.AnyonCharge, c: sp.AnyonCharge) -> int:
    """Multiplicity of c in a (x) b from orthogonality of double characters."""

    def tensor(h, g):
        total = 0.0 + 0.0j
        for h1 in range(8):
            h2 = G.multiply(G.inverse(h1), h)
            total += double_character(a, h1, g) * double_character(b, h2, g)
        return total

    v = character_inner(tensor, lambda h, g: double_character(c, h, g))
    assert abs(v.imag) < 1e-9 and abs(v.real - round(v.real)) < 1e-9
    return round(v.real)


def shor_oracle_distribution() -> np.ndarray:
    """Outcome distribution of the reduced period-finding circuit from an
    explicit modular-exponentiation superposition and the exact inverse
    Fourier matrix (both target branches give the same answer)."""
    from qdouble import shor

    by_value: dict[int, list[int]] = {}
    for x in range(4):
        by_value.setdefault(shor.modular_exponentiation(x), []).append(x)
    outs = []
    for xs in by_value.values():
        psi = np.zeros(4, dtype=complex)
        psi[xs] = 1.0 / np.sqrt(len(xs))
        inv_qft = np.array([[np.exp(-2j * np.pi * x * y / 4) / 2 for x in range(4)]
                            for y in range(4)])
        outs.append(np.abs(inv_qft @ psi) ** 2)
    assert np.allclose(outs[0], outs[1], atol=1e-12)
    return outs[0]


@pytest.fixture(scope="session")
def recoupler():
    from qdouble.recoupling import Recoupler

    return Recoupler()

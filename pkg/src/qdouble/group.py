"""The quaternion group Q8 and its representation theory.

Elements are small integers 0..7 in the fixed order

    e, eb, i, ib, j, jb, k, kb

where ``b`` marks the conjugate (negative) partner.  All group data
(multiplication, inverses, conjugacy classes, centralizers, irreducible
representations of Q8 and of the Z4 centralizers) is tabulated once at
import time and is immutable afterwards, so everything here is safe for
concurrent reads.

Irrep matrices are numpy complex arrays whose entries lie in
{0, +-1, +-1j}; sums and products of these are exact in floating point,
which keeps characters and the modular data downstream exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

ORDER = 8
NAMES = ("e", "eb", "i", "ib", "j", "jb", "k", "kb")
PRETTY = ("e", "ē", "i", "ī", "j", "j̄", "k", "k̄")

E, EBAR = 0, 1

_AXES = {"e": 0, "i": 1, "j": 2, "k": 3}
# (axis, sign): index = 2*axis + (0 if +1 else 1)
_CYCLIC = {(1, 2): 3, (2, 3): 1, (3, 1): 2}


def _decode(n: int) -> tuple[int, int]:
    return n // 2, 1 - 2 * (n % 2)  # axis, sign


def _encode(axis: int, sign: int) -> int:
    return 2 * axis + (0 if sign > 0 else 1)


def _mul(a: int, b: int) -> int:
    ax_a, s_a = _decode(a)
    ax_b, s_b = _decode(b)
    s = s_a * s_b
    if ax_a == 0:
        return _encode(ax_b, s)
    if ax_b == 0:
        return _encode(ax_a, s)
    if ax_a == ax_b:  # i*i = j*j = k*k = eb
        return _encode(0, -s)
    if (ax_a, ax_b) in _CYCLIC:
        return _encode(_CYCLIC[(ax_a, ax_b)], s)
    return _encode(_CYCLIC[(ax_b, ax_a)], -s)


MUL = np.array([[_mul(a, b) for b in range(ORDER)] for a in range(ORDER)], dtype=np.int8)
INV = np.array([next(b for b in range(ORDER) if MUL[a, b] == E) for a in range(ORDER)], dtype=np.int8)


def multiply(a: int, b: int) -> int:
    """Group product a*b from the closed 8x8 lookup table."""
    return int(MUL[a, b])


def inverse(a: int) -> int:
    return int(INV[a])


def conjugate(g: int, h: int) -> int:
    """g h g^-1."""
    return int(MUL[MUL[g, h], INV[g]])


def commute(a: int, b: int) -> bool:
    return MUL[a, b] == MUL[b, a]


@dataclass(frozen=True)
class ConjugacyClass:
    label: str
    representative: int
    members: tuple[int, ...]

    def __contains__(self, g: int) -> bool:
        return g in self.members


def _build_classes() -> tuple[ConjugacyClass, ...]:
    seen: set[int] = set()
    classes = []
    for g in range(ORDER):
        if g in seen:
            continue
        orbit = tuple(sorted({conjugate(x, g) for x in range(ORDER)}))
        seen.update(orbit)
        classes.append(ConjugacyClass(f"C_{NAMES[g]}", g, orbit))
    return tuple(classes)


CLASSES = _build_classes()
CLASS_BY_LABEL = {c.label: c for c in CLASSES}


def conjugacy_class_of(g: int) -> ConjugacyClass:
    for c in CLASSES:
        if g in c.members:
            return c
    raise ValueError(f"not a group element: {g}")


def centralizer(c: ConjugacyClass) -> tuple[int, ...]:
    """All elements commuting with the class representative."""
    return tuple(g for g in range(ORDER) if commute(g, c.representative))


@dataclass(frozen=True)
class Irrep:
    """An irreducible representation given by explicit unitary matrices.

    ``matrices`` maps each element of the carrier group (all of Q8, or a
    Z4 centralizer) to a complex numpy array.  Entries are exact Gaussian
    integers, so characters computed from them are exact.
    """

    group_label: str
    label: str
    dim: int
    matrices: dict[int, np.ndarray] = field(repr=False)

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(sorted(self.matrices))

    def matrix(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def character(self, g: int) -> complex:
        return complex(np.trace(self.matrices[g]))


def _q8_one_dim(label: str, axis: int) -> Irrep:
    mats = {}
    for g in range(ORDER):
        ax, _ = _decode(g)
        val = 1.0 if axis == 0 or ax in (0, axis) else -1.0
        mats[g] = np.array([[val]], dtype=complex)
    return Irrep("Q8", label, 1, mats)


def _q8_two_dim() -> Irrep:
    # Faithful 2-dim irrep fixed by Lambda4(i) = diag(i, -i), Lambda4(j) = [[0,1],[-1,0]].
    m_i = np.array([[1j, 0], [0, -1j]])
    m_j = np.array([[0, 1], [-1, 0]], dtype=complex)
    m_e = np.eye(2, dtype=complex)
    mats = {E: m_e, EBAR: -m_e, 2: m_i, 3: -m_i, 4: m_j, 5: -m_j, 6: m_i @ m_j, 7: -(m_i @ m_j)}
    return Irrep("Q8", "Lambda4", 2, mats)


Q8_IRREPS: tuple[Irrep, ...] = (
    _q8_one_dim("Lambda0", 0),
    _q8_one_dim("Lambda1", 1),
    _q8_one_dim("Lambda2", 2),
    _q8_one_dim("Lambda3", 3),
    _q8_two_dim(),
)


@lru_cache(maxsize=None)
def centralizer_irreps(class_label: str) -> tuple[Irrep, ...]:
    """Irreps of Z(C).  For C_e/C_eb that is all of Q8; for the axis
    classes it is the Z4 generated by the representative, with the
    canonical labeling Pi_a(generator) = i**a."""
    c = CLASS_BY_LABEL[class_label]
    if c.representative in (E, EBAR):
        return Q8_IRREPS
    gen = c.representative
    powers = {E: 0, gen: 1, EBAR: 2, multiply(EBAR, gen): 3}
    out = []
    for a in range(4):
        mats = {g: np.array([[1j ** (a * m)]]) for g, m in powers.items()}
        out.append(Irrep(f"Z4({c.label})", f"Pi{a}", 1, mats))
    return tuple(out)


def irreps(group: str) -> tuple[Irrep, ...]:
    """Irreps of "Q8" or of a centralizer named by its class, e.g. "C_i"."""
    if group == "Q8":
        return Q8_IRREPS
    if group in CLASS_BY_LABEL:
        return centralizer_irreps(group)
    raise ValueError(f"unknown group: {group}")


def character_table(reps: tuple[Irrep, ...], elements: tuple[int, ...]) -> np.ndarray:
    return np.array([[r.character(g) for g in elements] for r in reps])


def cayley_table_names() -> list[list[str]]:
    return [[NAMES[MUL[a, b]] for b in range(ORDER)] for a in range(ORDER)]

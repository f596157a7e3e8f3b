"""Anyon spectrum of the Q8 quantum double and its modular data.

A particle label pairs a conjugacy class with an irrep of that class's
centralizer.  Enumerating all such pairs gives 22 labels including the
vacuum (5 + 5 over the two central classes, 4 over each of the three
axis classes); their squared quantum dimensions sum to 64.

The S-matrix is computed from first principles by the double character
sum over commuting class-member pairs, with exact rational entries
(``fractions.Fraction``).  Fusion multiplicities then come from the
Verlinde sum, which for this model is exactly integral.

The tables printed in the source material are kept as fixtures; where
they disagree with the computed data the computation wins and the
disagreements are enumerated by :func:`s_matrix_discrepancies`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import group as G
from .cyclotomic import Cyclo

AXES = ("x", "y", "z")
AXIS_CLASS = {"x": "C_i", "y": "C_j", "z": "C_k"}
CLASS_AXIS = {v: k for k, v in AXIS_CLASS.items()}


@dataclass(frozen=True)
class AnyonCharge:
    """(conjugacy class, centralizer irrep) with its canonical name."""

    name: str
    pretty: str
    class_label: str
    irrep_label: str

    @property
    def klass(self) -> G.ConjugacyClass:
        return G.CLASS_BY_LABEL[self.class_label]

    @property
    def irrep(self) -> G.Irrep:
        return next(r for r in G.centralizer_irreps(self.class_label) if r.label == self.irrep_label)

    @property
    def dim(self) -> int:
        return len(self.klass.members) * self.irrep.dim

    def __repr__(self):
        return f"AnyonCharge({self.name})"


def _build_spectrum() -> tuple[AnyonCharge, ...]:
    out = [
        AnyonCharge("1", "\U0001d7d9", "C_e", "Lambda0"),
        AnyonCharge("1bar", "\U0001d7d9̄", "C_eb", "Lambda0"),
    ]
    for ax in AXES:
        n = AXES.index(ax) + 1
        out.append(AnyonCharge(f"rho_{ax}", f"ρ_{ax}", "C_e", f"Lambda{n}"))
    for ax in AXES:
        n = AXES.index(ax) + 1
        out.append(AnyonCharge(f"rhobar_{ax}", f"ρ̄_{ax}", "C_eb", f"Lambda{n}"))
    out.append(AnyonCharge("Delta", "Δ", "C_e", "Lambda4"))
    out.append(AnyonCharge("Deltabar", "Δ̄", "C_eb", "Lambda4"))
    for fam, pi in (("Phi", "Pi0"), ("Phitilde", "Pi2"), ("Sigma", "Pi1"), ("Sigmatilde", "Pi3")):
        mark = {"Phi": "Φ", "Phitilde": "Φ̃", "Sigma": "Σ", "Sigmatilde": "Σ̃"}[fam]
        for ax in AXES:
            out.append(AnyonCharge(f"{fam}_{ax}", f"{mark}_{ax}", AXIS_CLASS[ax], pi))
    return tuple(out)


SPECTRUM: tuple[AnyonCharge, ...] = _build_spectrum()
BY_NAME = {a.name: a for a in SPECTRUM}
INDEX = {a.name: i for i, a in enumerate(SPECTRUM)}
VACUUM = BY_NAME["1"]


def spectrum() -> tuple[AnyonCharge, ...]:
    return SPECTRUM


def charge(name: str) -> AnyonCharge:
    return BY_NAME[name]


# -- class sections -------------------------------------------------------

@lru_cache(maxsize=None)
def section(class_label: str, alternate: bool = False) -> dict[int, int]:
    """For each class member h, an element g with g r g^-1 = h (r the
    representative).  The default picks the smallest such g; the alternate
    section picks the largest, for convention-independence checks."""
    c = G.CLASS_BY_LABEL[class_label]
    out = {}
    for h in c.members:
        gs = [g for g in range(G.ORDER) if G.conjugate(g, c.representative) == h]
        out[h] = max(gs) if alternate else min(gs)
    return out


# -- exact characters ------------------------------------------------------

def _char(irrep: G.Irrep, g: int) -> complex:
    v = irrep.character(g)
    # irrep entries are Gaussian integers; round-trip through int keeps this exact
    re, im = round(v.real), round(v.imag)
    assert abs(v.real - re) < 1e-12 and abs(v.imag - im) < 1e-12
    return complex(re, im)


def s_entry(a: AnyonCharge, b: AnyonCharge, alternate_section: bool = False) -> Fraction:
    """One S-matrix entry: (1/8) * sum over commuting pairs (hA, hB) of
    conj(chi_A(gA^-1 hB gA)) * conj(chi_B(gB^-1 hA gB))."""
    sec_a = section(a.class_label, alternate_section)
    sec_b = section(b.class_label, alternate_section)
    rep_a, rep_b = a.irrep, b.irrep
    total = 0 + 0j
    for h_a in a.klass.members:
        ga_inv = G.inverse(sec_a[h_a])
        for h_b in b.klass.members:
            if not G.commute(h_a, h_b):
                continue
            arg_a = G.multiply(G.multiply(ga_inv, h_b), sec_a[h_a])
            gb_inv = G.inverse(sec_b[h_b])
            arg_b = G.multiply(G.multiply(gb_inv, h_a), sec_b[h_b])
            total += _char(rep_a, arg_a).conjugate() * _char(rep_b, arg_b).conjugate()
    if total.imag:
        raise ValueError(f"S[{a.name}][{b.name}] is not real: {total}")
    return Fraction(int(total.real), 8)


@lru_cache(maxsize=None)
def s_matrix(alternate_section: bool = False) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(
        tuple(s_entry(a, b, alternate_section) for b in SPECTRUM) for a in SPECTRUM
    )


def t_entry(a: AnyonCharge) -> Cyclo:
    """Topological phase Tr(Gamma(rep))/d_Gamma at the class representative."""
    r = a.klass.representative
    v = _char(a.irrep, r) / a.irrep.dim
    table = {1: 0, 1j: 2, -1: 4, -1j: 6}
    for val, m in table.items():
        if abs(v - val) < 1e-12:
            return Cyclo.zeta(m)
    raise ValueError(f"unexpected topological phase {v} for {a.name}")


def t_matrix() -> tuple[Cyclo, ...]:
    return tuple(t_entry(a) for a in SPECTRUM)


# -- Verlinde fusion --------------------------------------------------------

class VerlindeError(RuntimeError):
    """Raised when the Verlinde sum is not a non-negative integer."""


@lru_cache(maxsize=None)
def fusion_tensor() -> np.ndarray:
    """N[a][b][c] for all 22^3 label triples, exact."""
    S = s_matrix()
    n = len(SPECTRUM)
    vac_row = S[0]
    N = np.zeros((n, n, n), dtype=np.int8)
    for ia in range(n):
        for ib in range(ia, n):
            for ic in range(n):
                total = Fraction(0)
                for d in range(n):
                    total += S[ia][d] * S[ib][d] * S[ic][d] / vac_row[d]
                if total.denominator != 1 or total < 0:
                    raise VerlindeError(
                        f"N[{SPECTRUM[ia].name}][{SPECTRUM[ib].name}][{SPECTRUM[ic].name}] = {total}"
                    )
                N[ia, ib, ic] = N[ib, ia, ic] = int(total)
    return N


def fusion_multiplicity(a: AnyonCharge, b: AnyonCharge, c: AnyonCharge) -> int:
    return int(fusion_tensor()[INDEX[a.name], INDEX[b.name], INDEX[c.name]])


@lru_cache(maxsize=None)
def fusion_channels(a: AnyonCharge, b: AnyonCharge) -> tuple[AnyonCharge, ...]:
    row = fusion_tensor()[INDEX[a.name], INDEX[b.name]]
    return tuple(SPECTRUM[i] for i in np.nonzero(row)[0])


# -- printed fixtures -------------------------------------------------------

def _eps(i: int, j: int) -> Fraction:
    return Fraction(1 if i == j else -1)


def printed_s_matrix() -> tuple[tuple[Fraction, ...], ...]:
    """The S-matrix exactly as printed (including its typos), expanded
    from the family/axis template with eps_ij = 2*delta_ij - 1."""
    F = Fraction
    n = len(SPECTRUM)
    S = [[F(0)] * n for _ in range(n)]

    def fam(name: str) -> list[tuple[int, int]]:
        # (spectrum index, axis index); axis -1 for singlets
        if name in ("1", "1bar", "Delta", "Deltabar"):
            return [(INDEX[name], -1)]
        return [(INDEX[f"{name}_{ax}"], i) for i, ax in enumerate(AXES)]

    families = ["1", "1bar", "rho", "rhobar", "Delta", "Deltabar",
                "Phi", "Phitilde", "Sigma", "Sigmatilde"]

    def setq(rows, cols, value):
        for ri, i in fam(rows):
            for cj, j in fam(cols):
                S[ri][cj] = value(i, j)

    c = lambda v: (lambda i, j: F(v))  # noqa: E731
    eps = lambda num: (lambda i, j: _eps(i, j) / num)  # noqa: E731
    delta = lambda num: (lambda i, j: F(1, num) if i == j else F(0))  # noqa: E731

    table = {
        "1": ["1/8", "1/8", "1/8", "1/8", "1/8", "1/4", "1/4", "1/4", "1/4", "1/4"],
        "1bar": ["1/8", "1/8", "1/8", "1/8", "-1/4", "-1/4", "1/4", "1/4", "-1/4", "-1/4"],
        "rho": ["1/8", "1/8", "1/8", "1/8", "1/4", "1/4", "e4", "e4", "e4", "e4"],
        "rhobar": ["1/8", "1/8", "1/8", "1/8", "-1/4", "-1/4", "-e4", "-e4", "e4", "e4"],
        "Delta": ["1/4", "-1/4", "1/4", "-1/4", "1/2", "-1/2", "0", "0", "0", "0"],
        "Deltabar": ["1/4", "-1/4", "1/4", "-1/4", "-1/2", "1/2", "0", "0", "0", "0"],
        "Phi": ["1/4", "1/4", "e4", "-e4", "0", "0", "d2", "-d2", "0", "0"],
        "Phitilde": ["1/4", "1/4", "e4", "-e4", "0", "0", "-d4", "d4", "0", "0"],
        "Sigma": ["1/4", "-1/4", "e4", "e4", "0", "0", "0", "0", "d4", "-d4"],
        "Sigmatilde": ["1/4", "-1/4", "e4", "e4", "0", "0", "0", "0", "-d4", "d4"],
    }

    def parse(tok: str):
        neg = tok.startswith("-")
        t = tok.lstrip("-")
        if t == "e4":
            f = eps(4)
        elif t == "d2":
            f = delta(2)
        elif t == "d4":
            f = delta(4)
        elif "/" in t:
            f = c(F(t))
        else:
            f = c(F(t))
        return (lambda i, j: -f(i, j)) if neg else f

    for row_name, row in table.items():
        for col_name, tok in zip(families, row):
            setq(row_name, col_name, parse(tok))
    return tuple(tuple(r) for r in S)


def s_matrix_discrepancies() -> list[dict]:
    """All cells where the printed S-matrix disagrees with the computed
    one.  The computed matrix is authoritative; the printed table is not
    even internally symmetric."""
    S = s_matrix()
    P = printed_s_matrix()
    out = []
    for i, a in enumerate(SPECTRUM):
        for j, b in enumerate(SPECTRUM):
            if S[i][j] != P[i][j]:
                out.append({"row": a.name, "col": b.name,
                            "printed": str(P[i][j]), "computed": str(S[i][j])})
    return out


# -- printed fusion rules ---------------------------------------------------

def _other_axes(x: str) -> tuple[str, str]:
    return tuple(a for a in AXES if a != x)  # type: ignore[return-value]


def printed_fusion_rules() -> list[tuple[str, str, tuple[str, ...]]]:
    """Every fusion rule from the printed complete set, instantiated over
    all axis choices.  Returns (a, b, sorted channel names)."""
    rules: list[tuple[str, str, tuple[str, ...]]] = []

    def add(a, b, outs):
        rules.append((a, b, tuple(sorted(outs))))

    for x in AXES:
        y, z = _other_axes(x)
        # chargeons
        add(f"rho_{x}", f"rho_{x}", ["1"])
        add(f"rho_{x}", f"rho_{y}", [f"rho_{z}"])
        add(f"rho_{x}", "Delta", ["Delta"])
        # fluxons
        add(f"Phi_{x}", f"Phi_{x}", ["1", "1bar", f"rho_{x}", f"rhobar_{x}"])
        add(f"Phi_{x}", f"Phi_{y}", [f"Phi_{z}", f"Phitilde_{z}"])
        add("1bar", f"Phi_{x}", [f"Phi_{x}"])
        # dyons
        add(f"Phitilde_{x}", f"Phitilde_{x}", ["1", "1bar", f"rho_{x}", f"rhobar_{x}"])
        add(f"Phitilde_{x}", f"rhobar_{x}", [f"Phitilde_{x}"])
        add(f"Phitilde_{x}", f"rhobar_{y}", [f"Phi_{x}"])
        add(f"rhobar_{x}", "Deltabar", ["Deltabar"])
        add("Deltabar", f"Phitilde_{x}", [f"Sigma_{x}", f"Sigmatilde_{x}"])
        add("Deltabar", f"Sigma_{x}", [f"Phi_{x}", f"Phitilde_{x}"])
        add(f"Sigma_{x}", f"Sigma_{x}", ["1", f"rho_{x}", f"rhobar_{y}", f"rhobar_{z}"])
        add(f"Sigma_{x}", f"Sigmatilde_{x}", ["1bar", f"rhobar_{x}", f"rho_{y}", f"rho_{z}"])
        add(f"Sigma_{x}", f"Sigma_{y}", [f"Sigma_{z}", f"Sigmatilde_{z}"])
        # mixed
        add(f"rho_{x}", f"Phi_{x}", [f"Phi_{x}"])
        add(f"rho_{x}", f"Phi_{y}", [f"Phitilde_{y}"])
        add("Delta", f"Phi_{x}", [f"Sigma_{x}", f"Sigmatilde_{x}"])
        add(f"Phitilde_{x}", "1bar", [f"Phitilde_{x}"])
        add("1bar", f"Sigma_{x}", [f"Sigmatilde_{x}"])
        add("1bar", f"Sigmatilde_{x}", [f"Sigma_{x}"])
        add(f"rho_{x}", f"Sigma_{x}", [f"Sigma_{x}"])
        add(f"rho_{y}", f"Sigma_{x}", [f"Sigmatilde_{x}"])
        add(f"rhobar_{x}", f"Sigma_{x}", [f"Sigmatilde_{x}"])
        add("Delta", f"Sigma_{x}", [f"Phi_{x}", f"Phitilde_{x}"])
        add("Delta", f"Sigmatilde_{x}", [f"Phi_{x}", f"Phitilde_{x}"])
        add("Delta", "1bar", ["Deltabar"])
        add(f"Phi_{x}", f"Sigma_{x}", ["Delta", "Deltabar"])
        add(f"Phi_{x}", f"Sigma_{y}", [f"Phi_{z}", f"Phitilde_{z}"])
    add("1bar", "1bar", ["1"])
    add("Delta", "Delta", ["1", "rho_x", "rho_y", "rho_z"])
    return rules


def validate_fusion_table() -> list[dict]:
    """Check every printed fusion rule against the Verlinde table.  A rule
    passes when the computed channels (all multiplicities must be 0/1)
    match the printed decomposition exactly."""
    out = []
    for a, b, expected in printed_fusion_rules():
        got = tuple(sorted(ch.name for ch in fusion_channels(BY_NAME[a], BY_NAME[b])))
        out.append({"a": a, "b": b, "expected": expected, "computed": got,
                    "ok": got == expected})
    return out


def quantum_dims() -> dict[str, int]:
    return {a.name: a.dim for a in SPECTRUM}


def charge_parity(a: AnyonCharge) -> int:
    """Eigenvalue of the central gauge transformation (the conjugate of
    the identity) on the charge: chi(eb)/dim.  Multiplicative under
    fusion, so it is a selection rule."""
    v = _char(a.irrep, G.EBAR) / a.irrep.dim
    return int(round(v.real))


def explain_rule_failure(a: str, b: str, printed: tuple[str, ...]) -> str | None:
    """If a printed fusion rule is impossible, name the selection rule it
    violates; None when no obstruction is found."""
    ca, cb = BY_NAME[a], BY_NAME[b]
    par = charge_parity(ca) * charge_parity(cb)
    if any(charge_parity(BY_NAME[c]) != par for c in printed):
        return "central-charge parity"
    flux_prod = {G.multiply(x, y) for x in ca.klass.members for y in cb.klass.members}
    for c in printed:
        if not set(BY_NAME[c].klass.members) <= flux_prod:
            return "flux class"
    return None

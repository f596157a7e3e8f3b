"""Representation theory of the double algebra: Clebsch-Gordan tensors,
F-matrices, R-symbols, and re-derivation of the braid generators.

The algebra has 64 basis elements P_h g (a gauge transformation g
followed by a flux projection P_h) multiplying as

    (P_h g)(P_h' g') = [h == g h' g^-1] * P_h (g g').

A charge (C, Gamma) acts on the span of pairs (class member, irrep row)
via the section x_h that conjugates the class representative to h:

    D(P_f g)|h, v> = [f == g h g^-1] |g h g^-1, Gamma(x_f^-1 g x_h) v>.

Clebsch-Gordan coefficients are extracted from the isotypic projectors

    P^c_{mk,ml} = (d_c/8) * sum_x conj(D^c_{mk,ml}(x)) (D^a x D^b)(Delta x)

whose matrix elements are rank-one products C[:,mk] conj(C[:,ml]) of the
coefficient columns; dividing the anchor column (first nonzero diagonal,
taken real positive) out yields the full tensor.  F-matrices are overlap
matrices between the two fusion-tree isometry bases, R-symbols are the
Schur scalars of the braiding against swapped-order trees, and the braid
generators follow as sigma_1 = R and sigma_2 = F^dagger R F across the
relevant three-anyon trees.

Everything is numerical (complex128) with 1e-9/1e-8 tolerances; the
exact stored matrices downstream make up for the square roots appearing
here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import braids
from . import group as G
from . import spectrum as sp

TOL_ISO = 1e-9
TOL_PENT = 1e-8

# charges spanning the qubit constructions; intermediate labels range
# over the full spectrum as admissibility demands
QUBIT_CHARGES = ("1", "1bar", "rho_x", "rhobar_x", "Delta", "Deltabar",
                 "Phi_x", "Phitilde_x", "Sigma_x", "Sigmatilde_x")

SIGMA_TREES = {
    # pairing -> (a, b); the tree is (a, b, a) with total charge b
    "PhiPhi": ("Phi_x", "Phi_y"),
    "SigmaSigma": ("Sigma_x", "Sigma_y"),
    "SigmaPhi": ("Sigma_x", "Phi_y"),
}


@dataclass(frozen=True)
class DoubleElement:
    """Basis element P_flux gauge of the double algebra."""

    flux: int
    gauge: int

    def __mul__(self, other: "DoubleElement") -> "DoubleElement | None":
        if self.flux != G.conjugate(self.gauge, other.flux):
            return None  # product is the zero element
        return DoubleElement(self.flux, G.multiply(self.gauge, other.gauge))


ALL_DOUBLE_ELEMENTS = tuple(DoubleElement(h, g) for h in range(8) for g in range(8))


class Recoupler:
    """Caches representation matrices, CG tensors, and F/R symbols for one
    choice of class sections."""

    def __init__(self, alternate_section: bool = False):
        self.alternate_section = alternate_section
        self._rep: dict[str, np.ndarray] = {}
        self._cg: dict[tuple[str, str, str], np.ndarray] = {}
        self._gauge_phase: dict[tuple[str, str, str], complex] = {}
        self._tensor: dict[tuple[str, str], np.ndarray] = {}
        self._f: dict[tuple[str, str, str, str], tuple] = {}
        self._r: dict[tuple[str, str, str], complex] = {}

    # -- single-charge action ------------------------------------------

    def basis(self, a: sp.AnyonCharge) -> list[tuple[int, int]]:
        return [(h, r) for h in a.klass.members for r in range(a.irrep.dim)]

    def rep_tensor(self, a: sp.AnyonCharge) -> np.ndarray:
        """Array [flux][gauge] of d x d action matrices."""
        if a.name in self._rep:
            return self._rep[a.name]
        sec = sp.section(a.class_label, self.alternate_section)
        basis = self.basis(a)
        pos = {hr: idx for idx, hr in enumerate(basis)}
        d = len(basis)
        out = np.zeros((8, 8, d, d), dtype=complex)
        for g in range(8):
            for h in a.klass.members:
                h2 = G.conjugate(g, h)
                z = G.multiply(G.multiply(G.inverse(sec[h2]), g), sec[h])
                gam = a.irrep.matrix(z)
                for r in range(a.irrep.dim):
                    for r2 in range(a.irrep.dim):
                        out[h2, g, pos[(h2, r2)], pos[(h, r)]] = gam[r2, r]
        self._rep[a.name] = out
        return out

    def rep_action(self, a: sp.AnyonCharge, x: DoubleElement) -> np.ndarray:
        return self.rep_tensor(a)[x.flux, x.gauge].copy()

    def gauge_action(self, a: sp.AnyonCharge, g: int) -> np.ndarray:
        return self.rep_tensor(a)[:, g].sum(axis=0)

    # -- tensor products -------------------------------------------------

    def tensor_tensor(self, a: sp.AnyonCharge, b: sp.AnyonCharge) -> np.ndarray:
        """Comultiplication action on V_a (x) V_b for all 64 elements."""
        key = (a.name, b.name)
        if key in self._tensor:
            return self._tensor[key]
        da_t, db_t = self.rep_tensor(a), self.rep_tensor(b)
        da, db = da_t.shape[-1], db_t.shape[-1]
        out = np.zeros((8, 8, da * db, da * db), dtype=complex)
        for g in range(8):
            for h in range(8):
                acc = np.zeros((da * db, da * db), dtype=complex)
                for h1 in range(8):
                    h2 = G.multiply(G.inverse(h1), h)
                    m1 = da_t[h1, g]
                    if not m1.any():
                        continue
                    m2 = db_t[h2, g]
                    if not m2.any():
                        continue
                    acc += np.kron(m1, m2)
                out[h, g] = acc
        self._tensor[key] = out
        return out

    # -- Clebsch-Gordan ---------------------------------------------------

    def cg_projectors(self, a: sp.AnyonCharge, b: sp.AnyonCharge, c: sp.AnyonCharge) -> np.ndarray:
        """Isotypic projector family P^c_{mk,ml}, shape (dc, dc, D, D)."""
        dc_t = self.rep_tensor(c)
        t_ab = self.tensor_tensor(a, b)
        dc = dc_t.shape[-1]
        dim = t_ab.shape[-1]
        out = np.zeros((dc, dc, dim, dim), dtype=complex)
        for h in range(8):
            for g in range(8):
                m_c = dc_t[h, g]
                if not m_c.any():
                    continue
                t = t_ab[h, g]
                for mk in range(dc):
                    for ml in range(dc):
                        if m_c[mk, ml]:
                            out[mk, ml] += np.conj(m_c[mk, ml]) * t
        return out * (dc / 8.0)

    def cg_diagonal(self, a: sp.AnyonCharge, b: sp.AnyonCharge, c: sp.AnyonCharge,
                    mi: int, mj: int, mk: int) -> float:
        """Square-root of the aligned-index projector element; the
        coefficient with all indices on the anchor convention's diagonal."""
        if sp.fusion_multiplicity(a, b, c) != 1:
            raise ValueError(f"{c.name} is not a fusion channel of {a.name} x {b.name}")
        pt = self.cg_projectors(a, b, c)
        db = self.rep_tensor(b).shape[-1]
        w = pt[mk, mk][mi * db + mj, mi * db + mj].real
        if w < -TOL_ISO:
            raise ValueError(f"negative radicand {w} for {a.name},{b.name}->{c.name}")
        return float(np.sqrt(max(w, 0.0)))

    def cg(self, a: sp.AnyonCharge, b: sp.AnyonCharge, c: sp.AnyonCharge) -> np.ndarray:
        """Coefficient block K: V_c -> V_a (x) V_b (isometry, D x dc).
        Phases fixed by the first nonzero diagonal anchor taken positive,
        then multiplied by any regauging registered for this triple."""
        key = (a.name, b.name, c.name)
        if key in self._cg:
            return self._cg[key]
        pt = self.cg_projectors(a, b, c)
        dc = pt.shape[0]
        dim = pt.shape[-1]
        anchor = None
        for pair in range(dim):
            for mk in range(dc):
                w = pt[mk, mk][pair, pair].real
                if w > TOL_ISO:
                    anchor = (pair, mk, np.sqrt(w))
                    break
            if anchor:
                break
        if anchor is None:
            raise ValueError(f"no nonzero anchor for {a.name} x {b.name} -> {c.name}")
        pair, mk0, alpha = anchor
        k = np.zeros((dim, dc), dtype=complex)
        for mk in range(dc):
            k[:, mk] = pt[mk, mk0][:, pair] / alpha
        k = k * self._gauge_phase.get(key, 1.0)
        self._cg[key] = k
        return k

    def cg_full(self, a: sp.AnyonCharge, b: sp.AnyonCharge) -> np.ndarray:
        """Unitary from V_a (x) V_b to the direct sum of channel spaces."""
        blocks = [self.cg(a, b, c) for c in sp.fusion_channels(a, b)]
        return np.hstack(blocks)

    def set_gauge(self, a: sp.AnyonCharge, b: sp.AnyonCharge, c: sp.AnyonCharge, phase: complex):
        """Re-phase one CG tensor (multiplies the stored block by phase).
        Downstream symbol caches are dropped wholesale; they are cheap to
        rebuild and stale entries would be silently wrong."""
        key = (a.name, b.name, c.name)
        self._gauge_phase[key] = phase * self._gauge_phase.get(key, 1.0)
        self._cg.pop(key, None)
        self._f.clear()
        self._r.clear()

    # -- braiding ----------------------------------------------------------

    def braid_op(self, a: sp.AnyonCharge, b: sp.AnyonCharge) -> np.ndarray:
        """tau o (sum_g D_a(P_g) (x) U_b(g)) : V_a(x)V_b -> V_b(x)V_a."""
        da_t = self.rep_tensor(a)
        da = da_t.shape[-1]
        db = self.rep_tensor(b).shape[-1]
        acc = np.zeros((da * db, da * db), dtype=complex)
        for g in range(8):
            pg = da_t[g, G.E] if g in a.klass.members else None
            if pg is None or not pg.any():
                continue
            acc += np.kron(pg, self.gauge_action(b, g))
        swap = np.zeros((db * da, da * db))
        for i in range(da):
            for j in range(db):
                swap[j * da + i, i * db + j] = 1.0
        return swap @ acc

    def r_scalar(self, a: sp.AnyonCharge, b: sp.AnyonCharge, c: sp.AnyonCharge) -> complex:
        """Channel phase: dagger(K_ba_c) B_ab K_ab_c = R * identity."""
        key = (a.name, b.name, c.name)
        if key in self._r:
            return self._r[key]
        m = self.cg(b, a, c).conj().T @ self.braid_op(a, b) @ self.cg(a, b, c)
        r = np.trace(m) / m.shape[0]
        if np.linalg.norm(m - r * np.eye(m.shape[0])) > 1e-8:
            raise ValueError(f"braiding not scalar on channel {c.name} of {a.name} x {b.name}")
        self._r[key] = complex(r)
        return self._r[key]

    def r_matrix(self, a: sp.AnyonCharge, b: sp.AnyonCharge) -> tuple[np.ndarray, dict[str, complex]]:
        """Braiding on the fused basis: block diagonal with one phase per
        channel; returns (matrix, channel -> phase)."""
        channels = sp.fusion_channels(a, b)
        m = self.cg_full(b, a).conj().T @ self.braid_op(a, b) @ self.cg_full(a, b)
        phases = {c.name: self.r_scalar(a, b, c) for c in channels}
        return m, phases

    def monodromy(self, a: sp.AnyonCharge, b: sp.AnyonCharge, c: sp.AnyonCharge) -> complex:
        """Gauge-invariant full-exchange phase R^{ab}_c R^{ba}_c."""
        return self.r_scalar(a, b, c) * self.r_scalar(b, a, c)

    # -- fusion trees and F -------------------------------------------------

    def left_tree(self, a, b, c, w, l) -> np.ndarray:
        dc = self.rep_tensor(c).shape[-1]
        return np.kron(self.cg(a, b, l), np.eye(dc)) @ self.cg(l, c, w)

    def right_tree(self, a, b, c, w, p) -> np.ndarray:
        da = self.rep_tensor(a).shape[-1]
        return np.kron(np.eye(da), self.cg(b, c, p)) @ self.cg(a, p, w)

    def f_moves(self, a, b, c, w) -> tuple[list, list]:
        """Admissible intermediates (l for left trees, p for right trees)."""
        ls = [l for l in sp.fusion_channels(a, b) if sp.fusion_multiplicity(l, c, w)]
        ps = [p for p in sp.fusion_channels(b, c) if sp.fusion_multiplicity(a, p, w)]
        return ls, ps

    def f_matrix(self, a, b, c, w) -> tuple[np.ndarray, list, list]:
        """Overlap matrix F[l, p] = <right_p | left_l>; unitary."""
        key = (a.name, b.name, c.name, w.name)
        if key in self._f:
            return self._f[key]
        ls, ps = self.f_moves(a, b, c, w)
        dw = self.rep_tensor(w).shape[-1]
        f = np.zeros((len(ls), len(ps)), dtype=complex)
        rights = [self.right_tree(a, b, c, w, p) for p in ps]
        for i, l in enumerate(ls):
            left = self.left_tree(a, b, c, w, l)
            for j, right in enumerate(rights):
                m = right.conj().T @ left
                f[i, j] = np.trace(m) / dw
                if np.linalg.norm(m - f[i, j] * np.eye(dw)) > 1e-8:
                    raise ValueError(f"tree overlap not scalar for {a.name},{b.name},{c.name};{w.name}")
        self._f[key] = (f, ls, ps)
        return self._f[key]

    def f_symbol(self, a, b, c, w, l, p) -> complex:
        f, ls, ps = self.f_matrix(a, b, c, w)
        return complex(f[[x.name for x in ls].index(l.name), [x.name for x in ps].index(p.name)])

    # -- coherence checks -----------------------------------------------------

    def isometry_defects(self, charges=None) -> list[tuple[str, str, str, float]]:
        """Max deviation of dagger(K) K from identity per admissible triple."""
        charges = charges or [sp.charge(n) for n in QUBIT_CHARGES]
        out = []
        for a, b in product(charges, repeat=2):
            for c in sp.fusion_channels(a, b):
                k = self.cg(a, b, c)
                err = float(np.max(np.abs(k.conj().T @ k - np.eye(k.shape[1]))))
                out.append((a.name, b.name, c.name, err))
                full = self.cg_full(a, b)
                err_full = float(np.max(np.abs(full.conj().T @ full - np.eye(full.shape[1]))))
                out.append((a.name, b.name, "*", err_full))
        return out

    def intertwiner_defect(self, a, b, c) -> float:
        """Max over all 64 double elements of |T(x) K - K D_c(x)|."""
        k = self.cg(a, b, c)
        t_ab = self.tensor_tensor(a, b)
        dc_t = self.rep_tensor(c)
        worst = 0.0
        for h in range(8):
            for g in range(8):
                worst = max(worst, float(np.max(np.abs(t_ab[h, g] @ k - k @ dc_t[h, g]))))
        return worst

    def pentagon_check(self, a, b, c, d, w, oracle: bool = False) -> float:
        """Residual between the two F-move paths from the all-left tree to
        the all-right tree on (a,b,c,d) -> w; optionally also against the
        directly computed overlap of the two tree bases."""
        # enumerate admissible (e, f) and (p, q)
        efs = [(e, f) for e in sp.fusion_channels(a, b) for f in sp.fusion_channels(e, c)
               if sp.fusion_multiplicity(f, d, w)]
        pqs = [(p, q) for q in sp.fusion_channels(c, d) for p in sp.fusion_channels(b, q)
               if sp.fusion_multiplicity(a, p, w)]
        if not efs or not pqs:
            return 0.0
        dw = self.rep_tensor(w).shape[-1]
        worst = 0.0
        path_a = np.zeros((len(efs), len(pqs)), dtype=complex)
        path_b = np.zeros_like(path_a)
        for i, (e, f) in enumerate(efs):
            for j, (p, q) in enumerate(pqs):
                if sp.fusion_multiplicity(e, q, w):
                    path_a[i, j] = (self.f_symbol(e, c, d, w, f, q)
                                    * self.f_symbol(a, b, q, w, e, p))
                acc = 0.0 + 0.0j
                for g_ch in sp.fusion_channels(b, c):
                    if (sp.fusion_multiplicity(a, g_ch, f)
                            and sp.fusion_multiplicity(g_ch, d, p)):
                        acc += (self.f_symbol(a, b, c, f, e, g_ch)
                                * self.f_symbol(a, g_ch, d, w, f, p)
                                * self.f_symbol(b, c, d, p, g_ch, q))
                path_b[i, j] = acc
        worst = float(np.max(np.abs(path_a - path_b)))
        if oracle:
            direct = np.zeros_like(path_a)
            for i, (e, f) in enumerate(efs):
                x1 = np.kron(self.left_tree(a, b, c, f, e),
                             np.eye(self.rep_tensor(d).shape[-1])) @ self.cg(f, d, w)
                for j, (p, q) in enumerate(pqs):
                    da = self.rep_tensor(a).shape[-1]
                    db = self.rep_tensor(b).shape[-1]
                    x5 = np.kron(np.eye(da), np.kron(np.eye(db), self.cg(c, d, q))
                                 @ self.cg(b, q, p)) @ self.cg(a, p, w)
                    direct[i, j] = np.trace(x5.conj().T @ x1) / dw
            worst = max(worst, float(np.max(np.abs(path_a - direct))))
        return worst

    def hexagon_check(self, a, b, c, w, oracle: bool = False) -> float:
        """Residual of the braiding coherence identity

            diag(R^ab) F^{bac} diag(R^ac) dagger(F^{bca}) = F^{abc} diag(R^{a g}_w)

        for total charge w.  With ``oracle`` the left side is additionally
        checked against the directly computed matrix elements of
        (1 (x) B_ac)(B_ab (x) 1) between explicit tree bases."""
        f_abc, es, gs = self.f_matrix(a, b, c, w)
        f_bac, es2, ps = self.f_matrix(b, a, c, w)
        f_bca, gs2, ps2 = self.f_matrix(b, c, a, w)
        if ([e.name for e in es] != [e.name for e in es2]
                or [p.name for p in ps] != [p.name for p in ps2]
                or [g.name for g in gs] != [g.name for g in gs2]):
            raise ValueError("hexagon channel order mismatch")
        r_ab = np.diag([self.r_scalar(a, b, e) for e in es])
        r_ac = np.diag([self.r_scalar(a, c, p) for p in ps])
        lhs = r_ab @ f_bac @ r_ac @ f_bca.conj().T
        rhs = f_abc @ np.diag([self.r_scalar(a, g_ch, w) for g_ch in gs])
        worst = float(np.max(np.abs(lhs - rhs)))
        if oracle:
            op = (np.kron(np.eye(self.rep_tensor(b).shape[-1]), self.braid_op(a, c))
                  @ np.kron(self.braid_op(a, b), np.eye(self.rep_tensor(c).shape[-1])))
            dw = self.rep_tensor(w).shape[-1]
            direct = np.zeros_like(lhs)
            for i, e in enumerate(es):
                t_e = self.left_tree(a, b, c, w, e)
                for j, g_ch in enumerate(gs):
                    t_g = self.left_tree(b, c, a, w, g_ch)
                    direct[i, j] = np.trace(t_g.conj().T @ op @ t_e) / dw
            worst = max(worst, float(np.max(np.abs(direct - rhs))))
        return worst

    # -- braid generator derivation -----------------------------------------

    def crossing_f_matrix(self, pairing: str) -> tuple[np.ndarray, list, list]:
        """The nontrivial 2x2 F-matrix of the (X, Y) qubit sector: the
        basis change on the tree (X, X, Y) -> Y between the two-X channel
        basis and the (X (x) Y) channel basis.  This is the only F in the
        sector mixing channels; re-deriving the exchange generators hinges
        on it being balanced (all moduli 1/sqrt(2))."""
        a = sp.charge(SIGMA_TREES[pairing][0])
        b = sp.charge(SIGMA_TREES[pairing][1])
        return self.f_matrix(a, a, b, b)

    def derive_sigmas(self, pairing: str) -> dict:
        """Re-derive the qubit exchange generator pair for an (X, Y)
        anyon pairing.

        sigma_1 acts diagonally on the two fusion channels of X (x) Y;
        its phases are square roots of the derived monodromies (the
        gauge-invariant full-exchange phases), with the root signs and a
        global phase aligned against the stored generator -- alignment
        fails unless stored^2 is one global phase times the monodromies,
        so the match is a real check.  sigma_2 conjugates sigma_1 by the
        derived sector F-matrix (exchange of the other adjacent pair in
        the tree), mirroring how the spin-half-like generator pair is
        built for Ising anyons.  The derived pair satisfies the braid
        relation and is compared against the stored exact matrices up to
        a diagonal gauge and a global phase."""
        a = sp.charge(SIGMA_TREES[pairing][0])
        b = sp.charge(SIGMA_TREES[pairing][1])
        channels = list(sp.fusion_channels(a, b))
        if len(channels) != 2:
            raise ValueError(f"pairing {pairing} does not give a 2-dim qubit space")
        stored1_exact = braids.sigma_1q(pairing, 1)
        stored_diag = [stored1_exact[i, i].to_complex() for i in range(2)]
        mono = [self.monodromy(a, b, c) for c in channels]
        ratios = [p**2 / m for p, m in zip(stored_diag, mono)]
        if abs(ratios[0] - ratios[1]) > 1e-8:
            channels.reverse()
            mono.reverse()
            ratios = [p**2 / m for p, m in zip(stored_diag, mono)]
            if abs(ratios[0] - ratios[1]) > 1e-8:
                raise ValueError(
                    f"stored sigma_1 for {pairing} is not a global phase times a "
                    f"square root of the derived monodromies {mono}")
        phase = np.sqrt(ratios[0])  # stored sigma_1 = phase * diag(roots)
        roots = np.array([p / phase for p in stored_diag])
        sigma1 = np.diag(roots)

        f, rows, cols = self.crossing_f_matrix(pairing)
        order = [c.name for c in channels]
        f = f[:, [[x.name for x in cols].index(n) for n in order]]
        if f.shape != (2, 2):
            raise ValueError(f"sector F-matrix is {f.shape}, expected 2x2")
        sigma2 = f @ sigma1 @ f.conj().T

        stored2 = np.array([[braids.sigma_1q(pairing, 2)[i, j].to_complex()
                             for j in range(2)] for i in range(2)])
        stored1 = np.array([[stored1_exact[i, j].to_complex() for j in range(2)]
                            for i in range(2)])
        return {
            "pairing": pairing,
            "channels": order,
            "f_rows": [r.name for r in rows],
            "monodromy": mono,
            "f_matrix": f,
            "f_balanced_defect": float(np.max(np.abs(np.abs(f) - 0.5 ** 0.5))),
            "global_phase_vs_stored_sigma1": complex(phase),
            "sigma1": sigma1,
            "sigma2": sigma2,
            "braid_relation_residual": float(np.max(np.abs(
                sigma1 @ sigma2 @ sigma1 - sigma2 @ sigma1 @ sigma2))),
            "sigma1_match_residual": diagonal_gauge_residual(stored1, sigma1),
            "sigma2_match_residual": diagonal_gauge_residual(stored2, sigma2),
        }


def verify_recoupling(pentagon_oracle_every: int = 17) -> dict:
    """Suite behind the CLI: isometry and intertwiner defects over the
    qubit-relevant charges, pentagon and hexagon residuals over the same
    set (with periodic direct-overlap oracle passes), the derived
    generator comparison per pairing, and section independence of the
    gauge-invariant outputs."""
    rec = Recoupler()
    charges = [sp.charge(n) for n in QUBIT_CHARGES]
    report: dict = {}

    iso = rec.isometry_defects(charges)
    report["isometry"] = {"triples": len(iso), "max_defect": max(e for *_, e in iso)}
    inter_worst = 0.0
    for a, b in product(charges, repeat=2):
        for c in sp.fusion_channels(a, b):
            inter_worst = max(inter_worst, rec.intertwiner_defect(a, b, c))
    report["intertwiner"] = {"max_defect": inter_worst}

    pent_worst, pent_n = 0.0, 0
    for a, b, c, d in product(charges, repeat=4):
        for w in sp.SPECTRUM:
            if not any(sp.fusion_multiplicity(f, d, w)
                       for e in sp.fusion_channels(a, b)
                       for f in sp.fusion_channels(e, c)):
                continue
            pent_worst = max(pent_worst, rec.pentagon_check(
                a, b, c, d, w, oracle=(pent_n % pentagon_oracle_every == 0)))
            pent_n += 1
    report["pentagon"] = {"instances": pent_n, "max_residual": pent_worst}

    hex_worst, hex_n = 0.0, 0
    for a, b, c in product(charges, repeat=3):
        for w in sp.SPECTRUM:
            if not any(sp.fusion_multiplicity(e, c, w) for e in sp.fusion_channels(a, b)):
                continue
            hex_worst = max(hex_worst, rec.hexagon_check(
                a, b, c, w, oracle=(hex_n % pentagon_oracle_every == 0)))
            hex_n += 1
    report["hexagon"] = {"instances": hex_n, "max_residual": hex_worst}

    report["sigmas"] = {}
    alt = Recoupler(alternate_section=True)
    for pairing in SIGMA_TREES:
        d1 = rec.derive_sigmas(pairing)
        d2 = alt.derive_sigmas(pairing)
        report["sigmas"][pairing] = {
            "channels": d1["channels"],
            "monodromy": [[m.real, m.imag] for m in d1["monodromy"]],
            "sigma1_match_residual": d1["sigma1_match_residual"],
            "sigma2_match_residual": d1["sigma2_match_residual"],
            "braid_relation_residual": d1["braid_relation_residual"],
            "section_independent": bool(
                np.allclose(d1["monodromy"], d2["monodromy"])
                and d2["sigma1_match_residual"] < TOL_PENT
                and d2["sigma2_match_residual"] < TOL_PENT),
        }

    report["ok"] = (
        report["isometry"]["max_defect"] < TOL_ISO
        and report["intertwiner"]["max_defect"] < TOL_ISO
        and report["pentagon"]["max_residual"] < TOL_PENT
        and report["hexagon"]["max_residual"] < TOL_PENT
        and all(s["sigma1_match_residual"] < TOL_PENT
                and s["sigma2_match_residual"] < TOL_PENT
                and s["braid_relation_residual"] < TOL_PENT
                and s["section_independent"]
                for s in report["sigmas"].values())
    )
    return report


def diagonal_gauge_residual(target: np.ndarray, derived: np.ndarray) -> float:
    """Smallest |u target u^dag - e^{i theta} derived| over diagonal
    unitaries u and phases theta, with the 2x2 structure of the qubit
    generators: theta is anchored on a diagonal cell (or on the product of
    the off-diagonal cells, giving two branches), then the single relative
    phase in u is read off the first usable off-diagonal cell."""
    if target.shape != derived.shape or target.shape[0] != target.shape[1]:
        raise ValueError("need square matrices of equal shape")
    n = target.shape[0]

    thetas = []
    for i in range(n):
        if abs(target[i, i]) > 1e-12 and abs(derived[i, i]) > 1e-12:
            t = target[i, i] / derived[i, i]
            thetas.append(t / abs(t))
            break
    if not thetas and n == 2 and abs(derived[0, 1] * derived[1, 0]) > 1e-12:
        prod = (target[0, 1] * target[1, 0]) / (derived[0, 1] * derived[1, 0])
        root = np.sqrt(prod / abs(prod))
        thetas = [root, -root]
    if not thetas:
        thetas = [1.0 + 0.0j]

    best = np.inf
    for theta in thetas:
        scaled = theta * derived
        u = np.ones(n, dtype=complex)
        for j in range(1, n):
            if abs(target[0, j]) > 1e-12 and abs(scaled[0, j]) > 1e-12:
                # (u target u^dag)[0, j] = conj(u_j) target[0, j]
                r = target[0, j] / scaled[0, j]
                u[j] = r / abs(r)
        trial = np.diag(u) @ target @ np.diag(u.conj())
        best = min(best, float(np.max(np.abs(trial - scaled))))
    return best

from fractions import Fraction

import numpy as np
import pytest

from conftest import fusion_oracle
from qdouble import spectrum as sp

F = Fraction
S = sp.s_matrix()
N_LABELS = len(sp.SPECTRUM)
IX = sp.INDEX


def s(a: str, b: str) -> Fraction:
    return S[IX[a]][IX[b]]


def test_spectrum_enumerates_all_class_irrep_pairs():
    # 5 + 5 irreps over the central classes, 4 over each axis class
    assert N_LABELS == 22
    families = {"fluxon": 0, "chargeon": 0, "dyon": 0}
    for a in sp.SPECTRUM[1:]:
        flux = a.class_label != "C_e"
        charged = a.irrep_label not in ("Lambda0", "Pi0")
        if flux and charged:
            families["dyon"] += 1
        elif flux:
            families["fluxon"] += 1
        else:
            families["chargeon"] += 1
    assert families == {"fluxon": 4, "chargeon": 4, "dyon": 13}
    assert sum(a.dim**2 for a in sp.SPECTRUM) == 64


def test_quantum_dimensions():
    assert sp.VACUUM.dim == 1
    assert sp.charge("Phi_x").dim == 2
    assert sp.charge("Delta").dim == 2
    assert sp.charge("rho_y").dim == 1
    assert all(a.dim in (1, 2) for a in sp.SPECTRUM)


def test_s_entry_examples():
    assert s("1", "1") == F(1, 8)
    assert s("Delta", "Deltabar") == F(-1, 2)
    assert s("Phi_x", "Sigma_y") == 0
    assert s("Phi_x", "Phitilde_x") == F(-1, 2)
    assert s("Sigma_x", "Sigma_x") == F(-1, 2)


def test_vacuum_row_is_quantum_dimensions_over_eight():
    for a in sp.SPECTRUM:
        assert s("1", a.name) == F(a.dim, 8)


def test_s_matrix_symmetric_and_unitary_exactly():
    for i in range(N_LABELS):
        for j in range(N_LABELS):
            assert S[i][j] == S[j][i]
    for i in range(N_LABELS):
        for j in range(N_LABELS):
            acc = sum(S[i][d] * S[j][d] for d in range(N_LABELS))
            assert acc == (1 if i == j else 0)


def test_s_squared_is_charge_conjugation_permutation():
    # every label here is self-dual, so S^2 is the identity permutation
    for i in range(N_LABELS):
        for j in range(N_LABELS):
            acc = sum(S[i][d] * S[d][j] for d in range(N_LABELS))
            assert acc == (1 if i == j else 0)


def test_s_is_section_independent():
    alt = sp.s_matrix(alternate_section=True)
    assert alt == S


def test_t_entries():
    assert sp.t_entry(sp.VACUUM).to_complex() == pytest.approx(1)
    assert sp.t_entry(sp.charge("Phi_x")).to_complex() == pytest.approx(1)
    assert sp.t_entry(sp.charge("Sigma_x")).to_complex() == pytest.approx(1j)
    assert sp.t_entry(sp.charge("Sigmatilde_x")).to_complex() == pytest.approx(-1j)
    assert sp.t_entry(sp.charge("Phitilde_x")).to_complex() == pytest.approx(-1)
    assert sp.t_entry(sp.charge("Deltabar")).to_complex() == pytest.approx(-1)
    for t in sp.t_matrix():
        assert abs(abs(t.to_complex()) - 1) < 1e-12


def test_modular_relation_st_cubed_proportional_to_s_squared():
    sm = np.array([[float(v) for v in row] for row in S])
    tm = np.diag([t.to_complex() for t in sp.t_matrix()])
    st3 = np.linalg.matrix_power(sm @ tm, 3)
    s2 = sm @ sm
    ratios = st3[np.abs(s2) > 1e-9] / s2[np.abs(s2) > 1e-9]
    assert np.allclose(ratios, ratios[0], atol=1e-9)
    assert abs(abs(ratios[0]) - 1) < 1e-9


def test_verlinde_examples():
    ch = sp.charge
    assert sp.fusion_multiplicity(ch("Phi_x"), ch("Phi_x"), ch("1")) == 1
    assert sp.fusion_multiplicity(ch("Delta"), ch("Delta"), ch("rho_x")) == 1
    for a in sp.SPECTRUM:
        assert sp.fusion_multiplicity(sp.VACUUM, a, a) == 1
        for b in sp.SPECTRUM:
            if b.name != a.name:
                assert sp.fusion_multiplicity(sp.VACUUM, a, b) == 0


def test_fusion_tensor_matches_character_theory_oracle():
    n = sp.fusion_tensor()
    rng = np.random.default_rng(11)
    picks = rng.integers(0, N_LABELS, size=(60, 3))
    for i, j, k in picks:
        a, b, c = sp.SPECTRUM[i], sp.SPECTRUM[j], sp.SPECTRUM[k]
        assert n[i, j, k] == fusion_oracle(a, b, c)


def test_fusion_tensor_invariants():
    n = sp.fusion_tensor().astype(np.int64)
    assert set(np.unique(n)) <= {0, 1}
    assert np.array_equal(n, n.transpose(1, 0, 2))  # commutativity
    lhs = np.einsum("abe,ecd->abcd", n, n)
    rhs = np.einsum("bcf,afd->abcd", n, n)
    assert np.array_equal(lhs, rhs)  # associativity
    dims = np.array([a.dim for a in sp.SPECTRUM])
    assert np.array_equal(n @ dims, np.outer(dims, dims))  # dimension count


def test_printed_fusion_rules_validate_with_explained_exceptions():
    report = sp.validate_fusion_table()
    assert len(report) == 89
    failures = [r for r in report if not r["ok"]]
    # exactly the published rules that violate a selection rule
    assert len(failures) == 9
    for f in failures:
        reason = sp.explain_rule_failure(f["a"], f["b"], f["expected"])
        assert reason in ("central-charge parity", "flux class")
    failing_pairs = {(f["a"].split("_")[0], f["b"].split("_")[0]) for f in failures}
    assert failing_pairs == {("Sigma", "Sigma"), ("Phi", "Sigma"), ("rhobar", "Deltabar")}


def test_specific_corrected_fusion_rules():
    ch = sp.charge
    got = {c.name for c in sp.fusion_channels(ch("Sigma_x"), ch("Sigma_y"))}
    assert got == {"Phi_z", "Phitilde_z"}
    got = {c.name for c in sp.fusion_channels(ch("Phi_x"), ch("Sigma_y"))}
    assert got == {"Sigma_z", "Sigmatilde_z"}
    got = {c.name for c in sp.fusion_channels(ch("rhobar_x"), ch("Deltabar"))}
    assert got == {"Delta"}
    got = {c.name for c in sp.fusion_channels(ch("Phi_x"), ch("Sigma_x"))}
    assert got == {"Delta", "Deltabar"}


def _expected_discrepancy_cells() -> set[tuple[str, str]]:
    cells = {("1", "Delta")}
    axes = ("x", "y", "z")
    for i in axes:
        for fam in ("Phi", "Phitilde", "Sigma", "Sigmatilde"):
            for j in axes:
                cells.add((f"rhobar_{i}", f"{fam}_{j}"))
                cells.add((f"{fam}_{j}", f"rhobar_{i}"))
        cells.add((f"Phitilde_{i}", f"Phi_{i}"))
        cells.add((f"Phitilde_{i}", f"Phitilde_{i}"))
        cells.add((f"Sigma_{i}", f"Sigma_{i}"))
        cells.add((f"Sigma_{i}", f"Sigmatilde_{i}"))
        cells.add((f"Sigmatilde_{i}", f"Sigma_{i}"))
        cells.add((f"Sigmatilde_{i}", f"Sigmatilde_{i}"))
    return cells


def test_printed_s_matrix_discrepancy_report():
    disc = sp.s_matrix_discrepancies()
    got = {(d["row"], d["col"]) for d in disc}
    assert got == _expected_discrepancy_cells()
    assert len(disc) == 91
    by_cell = {(d["row"], d["col"]): d for d in disc}
    assert by_cell[("1", "Delta")] == {
        "row": "1", "col": "Delta", "printed": "1/8", "computed": "1/4"}
    assert by_cell[("Phitilde_x", "Phi_x")]["printed"] == "-1/4"
    assert by_cell[("Phitilde_x", "Phi_x")]["computed"] == "-1/2"
    assert by_cell[("Sigma_x", "Sigma_x")]["printed"] == "1/4"
    assert by_cell[("Sigma_x", "Sigma_x")]["computed"] == "-1/2"


def test_printed_table_is_internally_asymmetric_where_computed_is_not():
    printed = sp.printed_s_matrix()
    i, j = IX["Phi_x"], IX["Phitilde_x"]
    assert printed[i][j] != printed[j][i]
    assert S[i][j] == S[j][i]


def test_charge_parity_is_multiplicative_selection_rule():
    for a in sp.SPECTRUM:
        for b in sp.SPECTRUM:
            par = sp.charge_parity(a) * sp.charge_parity(b)
            for c in sp.fusion_channels(a, b):
                assert sp.charge_parity(c) == par

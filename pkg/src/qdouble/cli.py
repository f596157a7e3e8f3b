"""Command-line interface.

Subcommands::

    tables {group|smatrix|tmatrix|fusion|braids}   data dumps (JSON/CSV/text)
    verify {recoupling|braids|gates|all}           consistency suites
    shor {run|sweep}                               the factoring experiment

All output is deterministic for a fixed configuration and seed: floats
are rendered with repr (shortest round-trip), JSON keys are sorted, and
CSV uses "\n" newlines and "." decimals.  Files go to --out-path,
resolved against $QDOUBLE_OUTPUT_DIR when relative; default is stdout.
Verification subcommands exit nonzero when any check fails; usage errors
emit a JSON error object on stderr and exit 2.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys

import numpy as np

from . import __version__, braids, gates, group, recoupling, shor, spectrum

ENV_OUTPUT_DIR = "QDOUBLE_OUTPUT_DIR"


class CliError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _csv(rows: list[dict], columns: list[str]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def _emit(text: str, out_path: str | None):
    if out_path is None:
        sys.stdout.write(text)
        return
    base = os.environ.get(ENV_OUTPUT_DIR)
    if base and not os.path.isabs(out_path):
        out_path = os.path.join(base, out_path)
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_fmt) + "\n"


# -- tables -----------------------------------------------------------------

def cmd_tables_group(args) -> int:
    data = {
        "elements": list(group.NAMES),
        "cayley": group.cayley_table_names(),
        "classes": {c.label: [group.NAMES[m] for m in c.members] for c in group.CLASSES},
        "centralizers": {c.label: [group.NAMES[g] for g in group.centralizer(c)]
                         for c in group.CLASSES},
        "character_tables": {},
    }
    for label in ("Q8", "C_i", "C_j", "C_k"):
        reps = group.irreps(label)
        elements = reps[0].domain
        data["character_tables"][label] = {
            "elements": [group.NAMES[g] for g in elements],
            "characters": {r.label: [[r.character(g).real, r.character(g).imag]
                                     for g in elements] for r in reps},
        }
    if args.format == "json":
        _emit(_json_dump(data), args.out_path)
    else:
        buf = io.StringIO()
        width = 3
        buf.write("Cayley table\n")
        buf.write("    " + " ".join(f"{n:>{width}}" for n in group.NAMES) + "\n")
        for name, row in zip(group.NAMES, data["cayley"]):
            buf.write(f"{name:>3} " + " ".join(f"{v:>{width}}" for v in row) + "\n")
        buf.write("\nClasses / centralizers\n")
        for label, members in data["classes"].items():
            buf.write(f"{label:>5}: {{{', '.join(members)}}}  Z = "
                      f"{{{', '.join(data['centralizers'][label])}}}\n")
        for glabel, tab in data["character_tables"].items():
            buf.write(f"\nCharacters of {glabel} over {tab['elements']}\n")
            for rlabel, chars in tab["characters"].items():
                vals = [complex(re, im) for re, im in chars]
                buf.write(f"{rlabel:>8}: " + " ".join(
                    f"{int(v.real):+d}" if v.imag == 0 else f"{v:+.0f}" for v in vals) + "\n")
        _emit(buf.getvalue(), args.out_path)
    return 0


def cmd_tables_smatrix(args) -> int:
    s = spectrum.s_matrix()
    names = [a.name for a in spectrum.SPECTRUM]
    if args.format == "json":
        data = {
            "labels": names,
            "entries": [[str(v) for v in row] for row in s],
            "discrepancies_vs_printed": spectrum.s_matrix_discrepancies(),
        }
        _emit(_json_dump(data), args.out_path)
    else:
        rows = [{"a": a, "b": b, "s_exact": str(s[i][j]), "s_float": float(s[i][j])}
                for i, a in enumerate(names) for j, b in enumerate(names)]
        _emit(_csv(rows, ["a", "b", "s_exact", "s_float"]), args.out_path)
    return 0


def cmd_tables_tmatrix(args) -> int:
    rows = []
    for a, t in zip(spectrum.SPECTRUM, spectrum.t_matrix()):
        z = t.to_complex()
        rows.append({"a": a.name, "phase_pi_over_4": t.monomial()[0],
                     "t_real": z.real, "t_imag": z.imag})
    if args.format == "json":
        _emit(_json_dump({"entries": rows}), args.out_path)
    else:
        _emit(_csv(rows, ["a", "phase_pi_over_4", "t_real", "t_imag"]), args.out_path)
    return 0


def cmd_tables_fusion(args) -> int:
    n = spectrum.fusion_tensor()
    names = [a.name for a in spectrum.SPECTRUM]
    rows = [{"a": names[i], "b": names[j], "c": names[k], "N": int(n[i, j, k])}
            for i, j, k in zip(*np.nonzero(n))]
    if args.format == "json":
        _emit(_json_dump({"nonzero": rows,
                          "rule_validation": spectrum.validate_fusion_table()}),
              args.out_path)
    else:
        _emit(_csv(rows, ["a", "b", "c", "N"]), args.out_path)
    return 0


def cmd_tables_braids(args) -> int:
    pairing = {"PhiPhi": "PhiPhi", "SigmaSigma": "SigmaSigma", "SigmaPhi": "SigmaPhi",
               "PhiSigma": "PhiSigma"}[args.pairing]
    mats = {}
    indices = (1, 2) if args.arity == 1 else (1, 2, 3, 4, 5)
    for idx in indices:
        if args.arity == 1:
            m = braids.sigma_1q(pairing, idx, as_printed=args.as_printed)
        else:
            x, y = braids._split_pairing(pairing)
            m = braids.sigma_2q(x, y, idx, as_printed=args.as_printed)
        mats[f"sigma_{idx}"] = [[m[i, j].phase_form() for j in range(m.shape[1])]
                                for i in range(m.shape[0])]
    data = {"pairing": pairing, "arity": args.arity, "as_printed": args.as_printed,
            "corrections": braids.printed_corrections(), "matrices": mats}
    _emit(_json_dump(data), args.out_path)
    return 0


# -- verify -----------------------------------------------------------------

def verify_braids_report() -> dict:
    report = {"pairings": {}, "corrections": braids.printed_corrections()}
    ok = True
    for arity in (1, 2):
        pairings = braids.PAIRINGS_1Q if arity == 1 else braids.PAIRINGS_2Q
        for pairing in pairings:
            r = braids.verify_braid_relations(arity, pairing)
            entry = {
                "unitary": {str(k): v for k, v in r.unitary.items()},
                "relations": r.relations,
            }
            report["pairings"][f"{arity}q:{pairing}"] = entry
            ok = ok and r.all_unitary and r.far_commutation_ok
            if arity == 1:
                ok = ok and all(r.relations.values())
    # adjacent 2-qubit failures are recorded, not required
    report["ok"] = ok
    return report


def verify_tables_report() -> dict:
    s = spectrum.s_matrix()
    n = len(spectrum.SPECTRUM)
    sym = all(s[i][j] == s[j][i] for i in range(n) for j in range(n))
    uni = all(sum(s[i][d] * s[j][d] for d in range(n)) == (1 if i == j else 0)
              for i in range(n) for j in range(n))
    fusion = spectrum.validate_fusion_table()
    failures = [f for f in fusion if not f["ok"]]
    explained = all(
        spectrum.explain_rule_failure(f["a"], f["b"], f["expected"]) is not None
        for f in failures)
    dims_ok = all(
        sum(spectrum.fusion_multiplicity(a, b, c) * c.dim for c in spectrum.SPECTRUM)
        == a.dim * b.dim
        for a in spectrum.SPECTRUM for b in spectrum.SPECTRUM)
    return {
        "s_symmetric": sym,
        "s_unitary": uni,
        "s_discrepancies_vs_printed": len(spectrum.s_matrix_discrepancies()),
        "fusion_rules_checked": len(fusion),
        "fusion_rule_mismatches": [
            {**f, "printed_rule_violates": spectrum.explain_rule_failure(
                f["a"], f["b"], f["expected"])} for f in failures],
        "dimension_consistency": dims_ok,
        "ok": sym and uni and dims_ok and explained,
    }


def cmd_verify(args) -> int:
    suites = {}
    if args.suite in ("recoupling", "all"):
        suites["recoupling"] = recoupling.verify_recoupling()
    if args.suite in ("braids", "all"):
        suites["braids"] = verify_braids_report()
    if args.suite in ("gates", "all"):
        suites["gates"] = gates.verify_gates()
    if args.suite == "all":
        suites["tables"] = verify_tables_report()
    ok = all(s["ok"] for s in suites.values())
    out = {"suites": suites, "ok": ok, "version": __version__}
    if args.json:
        _emit(_json_dump(out), args.out_path)
    else:
        lines = []
        for name, s in suites.items():
            lines.append(f"{name}: {'pass' if s['ok'] else 'FAIL'}")
            lines.extend(f"  {sub}" for sub in _suite_summary(name, s))
        _emit("\n".join(lines) + f"\noverall: {'pass' if ok else 'FAIL'}\n", args.out_path)
    return 0 if ok else 1


def _suite_summary(name: str, s: dict) -> list[str]:
    if name == "recoupling":
        out = [
            f"isometry: max defect {s['isometry']['max_defect']:.2e} over {s['isometry']['triples']} checks",
            f"intertwiner: max defect {s['intertwiner']['max_defect']:.2e}",
            f"pentagon: max residual {s['pentagon']['max_residual']:.2e} over {s['pentagon']['instances']} instances",
            f"hexagon: max residual {s['hexagon']['max_residual']:.2e} over {s['hexagon']['instances']} instances",
        ]
        for pairing, info in s["sigmas"].items():
            out.append(
                f"sigma match {pairing}: s1 {info['sigma1_match_residual']:.2e}, "
                f"s2 {info['sigma2_match_residual']:.2e}, braid rel "
                f"{info['braid_relation_residual']:.2e}, section-independent "
                f"{info['section_independent']}")
        return out
    if name == "braids":
        out = []
        for key, entry in s["pairings"].items():
            bad = [k for k, v in entry["relations"].items() if not v]
            out.append(f"{key}: unitary {all(entry['unitary'].values())}, "
                       f"failing relations {bad or 'none'}")
        out.append(f"stored-vs-published corrections: {len(s['corrections'])}")
        return out
    if name == "gates":
        out = [f"{e['gate']}: exact, phase pi/4 x {e['global_phase'].get('phase_pi_over_4')}"
               for e in s["single_qubit"]]
        for e in s["two_qubit"]:
            out.append(f"{e['gate']} on {e['pairing']}: "
                       f"{'exact on ' + str(e['embedding']) if e['exact'] else 'NO EMBEDDING'}")
        return out
    if name == "tables":
        return [
            f"S symmetric {s['s_symmetric']}, unitary {s['s_unitary']}, "
            f"{s['s_discrepancies_vs_printed']} printed cells disagree",
            f"fusion rules: {s['fusion_rules_checked']} checked, "
            f"{len(s['fusion_rule_mismatches'])} impossible-as-printed (reported)",
        ]
    return []


# -- shor ---------------------------------------------------------------------

def _parse_nus(text: str) -> list[float]:
    try:
        nus = [float(tok) for tok in text.split(",") if tok != ""]
    except ValueError as exc:
        raise CliError(f"bad noise list {text!r}") from exc
    if not nus or any(nu < 0 for nu in nus):
        raise CliError("noise levels must be non-negative")
    return nus


def _shor_output(reports: list[shor.EnsembleReport], args) -> int:
    rows = [row for rep in reports for row in rep.rows()]
    if args.out == "json":
        payload = {
            "version": __version__,
            "config": {"nu": [r.nu for r in reports], "realizations": args.realizations,
                       "seed": args.seed, "backend": args.backend,
                       "threads": args.threads},
            "rows": rows,
        }
        _emit(_json_dump(payload), args.out_path)
    else:
        _emit(_csv(rows, ["nu", "y", "mean_prob", "stderr", "discarded"]), args.out_path)
    return 0


def cmd_shor_run(args) -> int:
    rep = shor.run_ensemble(shor.NoiseConfig(args.nu, args.realizations, args.seed),
                            args.backend, args.threads)
    return _shor_output([rep], args)


def cmd_shor_sweep(args) -> int:
    reports = shor.sweep(_parse_nus(args.nu), args.realizations, args.seed,
                         args.backend, args.threads)
    return _shor_output(reports, args)


# -- parser -------------------------------------------------------------------

def build_parser() -> Parser:
    p = Parser(prog="qdouble", description=__doc__,
               formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    tables = sub.add_parser("tables", help="dump model data")
    tsub = tables.add_subparsers(dest="table", required=True)
    tg = tsub.add_parser("group", help="Cayley table, classes, characters")
    tg.add_argument("--format", choices=("json", "text"), default="text")
    tg.set_defaults(func=cmd_tables_group)
    ts = tsub.add_parser("smatrix", help="modular S-matrix")
    ts.add_argument("--format", choices=("json", "csv"), default="csv")
    ts.set_defaults(func=cmd_tables_smatrix)
    tt = tsub.add_parser("tmatrix", help="topological phases")
    tt.add_argument("--format", choices=("json", "csv"), default="csv")
    tt.set_defaults(func=cmd_tables_tmatrix)
    tf = tsub.add_parser("fusion", help="fusion multiplicities (a,b,c,N)")
    tf.add_argument("--format", choices=("json", "csv"), default="csv")
    tf.set_defaults(func=cmd_tables_fusion)
    tb = tsub.add_parser("braids", help="braid generator matrices")
    tb.add_argument("--pairing", choices=braids.PAIRINGS_2Q, required=True)
    tb.add_argument("--arity", type=int, choices=(1, 2), required=True)
    tb.add_argument("--as-printed", action="store_true",
                    help="published parameter values (two are non-unitary)")
    tb.set_defaults(func=cmd_tables_braids)
    for tp in (tg, ts, tt, tf, tb):
        tp.add_argument("--out-path", default=None)

    verify = sub.add_parser("verify", help="consistency suites")
    verify.add_argument("suite", choices=("recoupling", "braids", "gates", "all"))
    verify.add_argument("--json", action="store_true", help="full JSON report")
    verify.add_argument("--out-path", default=None)
    verify.set_defaults(func=cmd_verify)

    shor_p = sub.add_parser("shor", help="factoring experiment")
    ssub = shor_p.add_subparsers(dest="mode", required=True)
    run = ssub.add_parser("run", help="single noise level")
    run.add_argument("--nu", type=float, required=True)
    sweep_p = ssub.add_parser("sweep", help="comma-separated noise levels")
    sweep_p.add_argument("--nu", required=True)
    for sp_ in (run, sweep_p):
        sp_.add_argument("--realizations", type=int, default=1000)
        sp_.add_argument("--seed", type=int, default=0)
        sp_.add_argument("--backend", choices=("ideal", "braided"), default="ideal")
        sp_.add_argument("--out", choices=("csv", "json"), default="csv")
        sp_.add_argument("--out-path", default=None)
        sp_.add_argument("--threads", type=int, default=1,
                         help="worker process cap for the ensemble")
    run.set_defaults(func=cmd_shor_run)
    sweep_p.set_defaults(func=cmd_shor_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "nu", None) is not None and isinstance(args.nu, float) and args.nu < 0:
            raise CliError("noise level must be non-negative")
        threads = getattr(args, "threads", 1)
        if threads is not None and threads < 1:
            raise CliError("--threads must be positive")
        return args.func(args)
    except (CliError, ValueError) as exc:
        sys.stderr.write(_json_dump({"error": {"type": "usage", "message": str(exc)}}))
        return 2
    except OSError as exc:
        sys.stderr.write(_json_dump({"error": {"type": "io", "message": str(exc)}}))
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

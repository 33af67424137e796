"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 hypothesis violation,
4 cross-check failure in `verify`.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from .betti import graded_betti, regularity_from_betti
from .degrees import NEG_INF, ext_str, ext_to_json
from .localcoh import (
    check_assumption,
    lc_coarse_dim,
    lc_coarse_dim_paper,
    multigraded_discrepancies,
    summarize,
)
from .oracle import (
    FreeFactor,
    OracleHypothesisError,
    StanleyReisnerFactor,
    cm_model,
    crosscheck,
    polynomial_ring,
    regularity_oracle,
)
from .profile import (
    ModuleProfile,
    cm_profile,
    profile_from_complex,
    profile_from_json,
    veronese_transform,
)
from .segre import (
    HypothesisError,
    cox_materov,
    regularity_segre,
    regularity_segre_cm,
    regularity_segre_veronese_cm,
    veronese_cm_profiles,
)
from .simplicial import FieldSpec, SimplicialComplex, check_vertex_cap, using_vertex_cap

EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_CROSSCHECK = 0, 2, 3, 4


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input


def load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def load_complex(path: str) -> SimplicialComplex:
    data = load_json(path)
    delta = SimplicialComplex.from_json(data)
    check_vertex_cap(delta.n)
    return delta


def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


@dataclass
class Factor:
    """One Segre factor: the engine profile and, when available, an oracle model."""

    label: str
    profile: ModuleProfile
    oracle: object | None


def factor_from_json(data, field: FieldSpec, label: str) -> Factor:
    if not isinstance(data, dict):
        raise InputError(f"{label}: factor must be a JSON object")
    if "complex" in data:
        data = data["complex"]
    if "n" in data and "facets" in data:
        delta = SimplicialComplex.from_json(data)
        check_vertex_cap(delta.n)
        return Factor(label, profile_from_complex(delta, field), StanleyReisnerFactor(delta, field))
    if "poly" in data:
        d = data["poly"].get("dim")
        twist = data["poly"].get("twist", 0)
        if not isinstance(d, int) or not isinstance(twist, int):
            raise InputError(f'{label}: poly factor needs {{"poly": {{"dim": int, "twist": int}}}}')
        prof = veronese_transform(cm_profile(d, 0, 0), 1, twist)
        return Factor(label, prof, polynomial_ring(d, twist))
    prof = profile_from_json(data)
    model = None
    if "cm" in data and prof.sigma <= prof.reg:
        model = cm_model(prof.dim, prof.reg, prof.sigma)
    return Factor(label, prof, model)


def apply_veronese(f: Factor, n: int, shift: int) -> Factor:
    if n == 1 and shift == 0:
        return f
    oracle = f.oracle
    if isinstance(oracle, (StanleyReisnerFactor, FreeFactor)):
        if oracle.veronese != 1:
            raise InputError(f"{f.label}: nested Veronese transforms are not supported")
        oracle = replace(oracle, veronese=n, shift=oracle.shift + shift)
    return Factor(f.label, veronese_transform(f.profile, n, shift), oracle)


def per_factor(values, count, default, name):
    if values is None:
        return [default] * count
    if len(values) != count:
        raise InputError(f"--{name} has {len(values)} entries but there are {count} factors")
    return values


# ---------------------------------------------------------------------------
# output


def emit(out, fmt: str, payload, table: str, rows: list[list] | None = None):
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in rows or []:
            writer.writerow(row)
        out.write(buf.getvalue())
    else:
        out.write(table.rstrip("\n") + "\n")


def render_cohomology(summary, window: int) -> str:
    lines = [f"depth {summary.depth}, dim {summary.dim}, reg {summary.reg}"]
    for i, s in summary.sets.items():
        if s is None:
            lines.append(f"H^{i}: 0")
            continue
        dims = ", ".join(f"{-j}:{s.dim(j)}" for j in range(window + 1))
        tail = f"nonzero from degree -{s.tail_threshold} down" if s.tail_threshold else "no tail"
        zero = "nonzero in degree 0" if s.zero_degree_present else "zero in degree 0"
        lines.append(f"H^{i}: end {ext_str(s.end)}; {zero}; {tail}; dims {dims}")
    return "\n".join(lines)


def render_report(report) -> str:
    lines = [f"reg = {report.reg} ({report.status})"]
    for v in report.violations:
        lines.append(f"  violation: {v}")
    if any(len(g) > 1 for g in report.groups):
        lines.append("  folded factors: " + "; ".join("+".join(str(k + 1) for k in g) for g in report.groups))
    lines.append("witnesses: " + " ".join(str(list(u)) for u in report.witnesses))
    lines.append("gamma_u over C_2:")
    for u, v in report.gamma.items():
        lines.append(f"  {list(u)}: {v}")
    if report.cohomology is not None:
        lines.append("cohomology of the product:")
        for j, terms in report.cohomology.items():
            body = ", ".join(f"u={list(u)} end {ext_str(e)}" for u, e in terms) or "0"
            lines.append(f"  H^{j}: {body}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommands


def cmd_betti(args, out):
    delta = load_complex(args.file)
    table = graded_betti(delta, args.field)
    reg = regularity_from_betti(table) if table.entries else None
    payload = {**table.to_json(), "reg": reg}
    rows = [["i", "sigma", "rank"]] + [[i, " ".join(map(str, s)), r] for i, s, r in table.sorted_entries()]
    emit(out, args.format, payload, table.render() + f"\nreg = {reg}", rows)
    return EXIT_OK


def cmd_localcoh(args, out):
    delta = load_complex(args.file)
    summary = summarize(delta, args.field)
    report = check_assumption(delta, args.field)
    payload = {
        "cohomology": [
            s.to_json(args.window) if s is not None else {"i": i, "end": NEG_INF, "zero_degree": False, "tail_from": None, "dims": {}}
            for i, s in summary.sets.items()
        ],
        "depth": summary.depth,
        "dim": summary.dim,
        "reg": summary.reg,
        "assumption": report.to_json(),
    }
    for entry in payload["cohomology"]:
        entry["end"] = ext_to_json(entry["end"])
    table = render_cohomology(summary, args.window)
    rows = [["i", "degree", "dim"]] + [
        [i, -j, s.dim(j) if s else 0] for i, s in summary.sets.items() for j in range(args.window + 1)
    ]
    if args.mode == "diagnose":
        diag = diagnose(delta, args.field, summary, args.window)
        payload["diagnostic"] = diag
        table += "\n" + render_diagnostic(diag)
        rows = [["i", "j", "lc_coarse_dim", "lc_coarse_dim_paper", "agree"]] + [
            [c["i"], c["j"], c["lc_coarse_dim"], c["lc_coarse_dim_paper"], c["agree"]] for c in diag["coarse"]
        ]
    emit(out, args.format, payload, table, rows)
    return EXIT_OK


def diagnose(delta, field, summary, window):
    coarse = []
    for i in range(delta.krull_dim + 1):
        for j in range(1, window + 1):
            exact = lc_coarse_dim(delta, field, i, j)
            literal = lc_coarse_dim_paper(delta, field, i, j)
            coarse.append({
                "i": i, "j": j, "lc_coarse_dim": exact, "lc_coarse_dim_paper": literal, "agree": exact == literal,
            })
    mismatches = [c for c in coarse if not c["agree"]]
    return {
        "coarse": coarse,
        "coarse_disagreements": len(mismatches),
        "multigraded_disagreements": multigraded_discrepancies(delta, field),
    }


def render_diagnostic(diag) -> str:
    lines = ["dim H^i in degree -j: lc_coarse_dim (link form) vs lc_coarse_dim_paper (dual-Betti binomial sum)"]
    for c in diag["coarse"]:
        flag = "" if c["agree"] else "   <-- DISAGREE"
        lines.append(
            f"  i={c['i']} j={c['j']}: lc_coarse_dim {c['lc_coarse_dim']}, "
            f"lc_coarse_dim_paper {c['lc_coarse_dim_paper']}{flag}"
        )
    lines.append(f"coarse disagreements: {diag['coarse_disagreements']}")
    for m in diag["multigraded_disagreements"]:
        lines.append(
            f"multigraded support {m['support']} at i={m['i']}: dual-Betti form {m['dual_betti']}, exact {m['exact']}"
        )
    return "\n".join(lines)


def cmd_profile(args, out):
    delta = load_complex(args.file)
    prof = profile_from_complex(delta, args.field)
    n = args.veronese[0] if args.veronese else 1
    shift = args.shift[0] if args.shift else 0
    prof = veronese_transform(prof, n, shift)
    payload = prof.to_json()
    lines = [f"dim {prof.dim}, depth {prof.depth}, sigma {prof.sigma}, reg {prof.reg}"]
    rows = [["j", "end", "no_gaps", "unbounded_below"]]
    for j in prof.nonzero_indices:
        lines.append(
            f"H^{j}: end {ext_str(prof.end(j))}, no gaps {prof.no_gaps.get(j)}, "
            f"unbounded below {prof.unbounded_below.get(j)}"
        )
        rows.append([j, ext_str(prof.end(j)), prof.no_gaps.get(j), prof.unbounded_below.get(j)])
    emit(out, args.format, payload, "\n".join(lines), rows)
    return EXIT_OK


def cmd_check(args, out):
    delta = load_complex(args.file)
    report = check_assumption(delta, args.field)
    payload = report.to_json()
    if report.satisfied:
        table = "Assumption satisfied"
    else:
        table = "Assumption violated:\n" + "\n".join(f"  {v}" for v in report.violations)
    for entry in report.indices:
        table += (
            f"\nH^{entry['i']}: no gaps {entry['no_gaps']}, infinite tail {entry['infinite_tail']}, "
            f"k_i {entry['k']}"
        )
    rows = [["i", "no_gaps", "infinite_tail", "k"]] + [
        [e["i"], e["no_gaps"], e["infinite_tail"], e["k"]] for e in report.indices
    ]
    emit(out, args.format, payload, table, rows)
    if report.satisfied or args.mode in ("bound", "diagnose"):
        return EXIT_OK
    return EXIT_HYPOTHESIS


def cmd_segre(args, out):
    factors = []
    for k, path in enumerate(args.inputs, 1):
        factors.append(factor_from_json(load_json(path), args.field, f"factor {k} ({path})"))
    ns = per_factor(args.veronese, len(factors), 1, "veronese")
    shifts = per_factor(args.shift, len(factors), 0, "shift")
    factors = [apply_veronese(f, n, t) for f, n, t in zip(factors, ns, shifts)]
    report = regularity_segre([f.profile for f in factors])
    payload = report.to_json()
    table = render_report(report)
    rows = [["u", "gamma"]] + [[" ".join(map(str, u)), v] for u, v in report.gamma.items()]
    code = EXIT_OK
    if args.mode == "oracle":
        if any(f.oracle is None for f in factors):
            missing = [f.label for f in factors if f.oracle is None]
            raise InputError("oracle mode needs exact inputs (complexes or cm shorthand): " + ", ".join(missing))
        oracle = regularity_oracle([f.oracle for f in factors])
        match = oracle == report.reg if report.exact else oracle <= report.reg
        payload["oracle"] = {"reg": oracle, "match": match}
        table += f"\noracle reg = {oracle} ({'match' if match else 'MISMATCH'})"
        rows.append(["oracle", oracle])
        if not match:
            code = EXIT_CROSSCHECK
    elif args.mode == "exact" and not report.exact:
        code = EXIT_HYPOTHESIS
    emit(out, args.format, payload, table, rows)
    return code


def _scalar(args, out, name, value, oracle_factors):
    payload = {"reg": value}
    table = f"{name} = {value}"
    rows = [["quantity", "value"], [name, value]]
    code = EXIT_OK
    if args.mode == "oracle":
        oracle = regularity_oracle(oracle_factors())
        payload["oracle"] = {"reg": oracle, "match": oracle == value}
        table += f"\noracle reg = {oracle} ({'match' if oracle == value else 'MISMATCH'})"
        rows.append(["oracle", oracle])
        if oracle != value:
            code = EXIT_CROSSCHECK
    emit(out, args.format, payload, table, rows)
    return code


def cmd_cm_reg(args, out):
    regs = per_factor(args.regs, len(args.dims), 0, "regs")
    value = regularity_segre_cm(list(zip(args.dims, regs)))
    return _scalar(args, out, "reg", value, lambda: [cm_model(d, r) for d, r in zip(args.dims, regs)])


def cmd_veronese_reg(args, out):
    s = len(args.dims)
    regs = per_factor(args.regs, s, 0, "regs")
    shifts = per_factor(args.shift, s, 0, "shift")
    ns = per_factor(args.veronese, s, 1, "veronese")
    tuples = list(zip(args.dims, regs, shifts, ns))
    value = regularity_segre_veronese_cm(tuples)
    return _scalar(
        args, out, "reg", value,
        lambda: [replace(cm_model(d, r), veronese=n, shift=t) for d, r, t, n in tuples],
    )


def cmd_cox_materov(args, out):
    s = len(args.dims)
    twists = per_factor(args.twists, s, 0, "twists")
    ns = per_factor(args.veronese, s, 1, "veronese")
    tuples = list(zip(args.dims, twists, ns))
    value = cox_materov(tuples)
    return _scalar(args, out, "reg", value, lambda: [polynomial_ring(d, m, n) for d, m, n in tuples])


# ---------------------------------------------------------------------------
# verify


def bundled_corpus() -> dict:
    return json.loads(resources.files("segrereg").joinpath("data/corpus.json").read_text())


def verify_corpus(corpus: dict, field: FieldSpec) -> list[dict]:
    records = []
    for entry in corpus.get("complexes", []):
        delta = SimplicialComplex.from_json(entry)
        check_vertex_cap(delta.n)
        rep = crosscheck(delta, field)
        records.append({
            "case": f"crosscheck {entry.get('name', delta)}",
            "engine": {"reg": rep.reg_lc, "depth": rep.depth_lc},
            "oracle": {"reg": rep.reg_betti, "depth": rep.depth_ab},
            "match": rep.passed,
        })
    for entry in corpus.get("segre", []):
        name = entry.get("name", "segre case")
        factors = [factor_from_json(f, field, f"{name} factor {k}") for k, f in enumerate(entry["factors"], 1)]
        ns = per_factor(entry.get("veronese"), len(factors), 1, "veronese")
        shifts = per_factor(entry.get("shift"), len(factors), 0, "shift")
        factors = [apply_veronese(f, n, t) for f, n, t in zip(factors, ns, shifts)]
        report = regularity_segre([f.profile for f in factors])
        oracle = regularity_oracle([f.oracle for f in factors])
        match = (oracle == report.reg) if report.exact else (oracle <= report.reg)
        if "expect" in entry:
            match = match and oracle == entry["expect"]
        records.append({"case": name, "engine": report.reg, "oracle": oracle, "match": match})
    grids = corpus.get("grids", {})
    if "cm_pairs" in grids:
        g = grids["cm_pairs"]
        for d1 in g["dims"]:
            for d2 in g["dims"]:
                if d1 == d2 == 1:
                    continue
                for r1 in g["regs"]:
                    for r2 in g["regs"]:
                        pairs = [(d1, r1), (d2, r2)]
                        closed = regularity_segre_cm(pairs)
                        engine = regularity_segre([cm_profile(d, r) for d, r in pairs]).reg
                        oracle = regularity_oracle([cm_model(d, r) for d, r in pairs])
                        records.append({
                            "case": f"cm {pairs}",
                            "engine": {"gamma_max": engine, "closed_form": closed},
                            "oracle": oracle,
                            "match": closed == engine == oracle,
                        })
    if "cox_materov" in grids:
        g = grids["cox_materov"]
        for d1 in g["dims"]:
            for d2 in g["dims"]:
                for m1 in g["twists"]:
                    for m2 in g["twists"]:
                        for n1 in g["veronese"]:
                            for n2 in g["veronese"]:
                                t = [(d1, m1, n1), (d2, m2, n2)]
                                cm = cox_materov(t)
                                sv = regularity_segre_veronese_cm([(d, 0, m, n) for d, m, n in t])
                                oracle = regularity_oracle([polynomial_ring(d, m, n) for d, m, n in t])
                                records.append({
                                    "case": f"cox-materov {t}",
                                    "engine": {"cox_materov": cm, "segre_veronese": sv},
                                    "oracle": oracle,
                                    "match": cm == sv == oracle,
                                })
    return records


def cmd_verify(args, out):
    corpora = [load_json(p) for p in args.files] if args.files else [bundled_corpus()]
    records = []
    for corpus in corpora:
        if "n" in corpus and "facets" in corpus:
            corpus = {"complexes": [corpus]}
        records.extend(verify_corpus(corpus, args.field))
    failed = [r for r in records if not r["match"]]
    lines = [f"{'PASS' if r['match'] else 'FAIL'}  {r['case']}" for r in records if args.verbose or not r["match"]]
    lines.append(f"{len(records) - len(failed)}/{len(records)} checks passed")
    rows = [["case", "engine", "oracle", "match"]] + [
        [r["case"], json.dumps(r["engine"]), json.dumps(r["oracle"]), r["match"]] for r in records
    ]
    emit(out, args.format, records, "\n".join(lines), rows)
    return EXIT_CROSSCHECK if failed else EXIT_OK


# ---------------------------------------------------------------------------
# parser


def field_spec(text: str) -> FieldSpec:
    try:
        return FieldSpec(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--char", dest="field", type=field_spec, default=FieldSpec(0),
                        help="field characteristic, 0 or a prime (default 0)")
    common.add_argument("--format", choices=["table", "json", "csv"], default="table")
    common.add_argument("--mode", choices=["exact", "bound", "oracle", "diagnose"], default="exact")
    common.add_argument("--max-vertices", type=int, default=None,
                        help="cap on n for exhaustive 2^n computations (env SEGREREG_MAX_VERTICES)")

    parser = argparse.ArgumentParser(
        prog="segrereg",
        description="Castelnuovo-Mumford regularity of Segre-Veronese products.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cx = sub.add_parser("complex", help="Stanley-Reisner ring of a simplicial complex")
    cxsub = cx.add_subparsers(dest="action", required=True)
    p = cxsub.add_parser("betti", parents=[common], help="multigraded Betti table (Hochster)")
    p.add_argument("file")
    p.set_defaults(func=cmd_betti)
    p = cxsub.add_parser("localcoh", parents=[common], help="local cohomology degrees and dimensions")
    p.add_argument("file")
    p.add_argument("--window", type=int, default=5, help="show dimensions in degrees 0..-window")
    p.set_defaults(func=cmd_localcoh)
    p = cxsub.add_parser("profile", parents=[common], help="regularity profile of K[Δ]")
    p.add_argument("file")
    p.add_argument("--veronese", type=int_list)
    p.add_argument("--shift", type=int_list)
    p.set_defaults(func=cmd_profile)
    p = cxsub.add_parser("check", parents=[common], help="check the gap/tail and depth hypotheses")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("segre", parents=[common], help="regularity of a Segre product of factors")
    p.add_argument("--inputs", nargs="+", required=True, help="complex or profile JSON files")
    p.add_argument("--veronese", type=int_list)
    p.add_argument("--shift", type=int_list)
    p.set_defaults(func=cmd_segre)

    p = sub.add_parser("cm-reg", parents=[common], help="closed form for Cohen-Macaulay factors")
    p.add_argument("--dims", type=int_list, required=True)
    p.add_argument("--regs", type=int_list)
    p.set_defaults(func=cmd_cm_reg)

    p = sub.add_parser("veronese-reg", parents=[common], help="closed form for shifted Veronese CM factors")
    p.add_argument("--dims", type=int_list, required=True)
    p.add_argument("--regs", type=int_list)
    p.add_argument("--shift", type=int_list)
    p.add_argument("--veronese", type=int_list)
    p.set_defaults(func=cmd_veronese_reg)

    p = sub.add_parser("cox-materov", parents=[common], help="Segre-Veronese of twisted polynomial rings")
    p.add_argument("--dims", type=int_list, required=True)
    p.add_argument("--twists", type=int_list)
    p.add_argument("--veronese", type=int_list)
    p.set_defaults(func=cmd_cox_materov)

    p = sub.add_parser("verify", parents=[common], help="engine vs oracle over a corpus")
    p.add_argument("files", nargs="*", help="corpus JSON files (default: bundled corpus)")
    p.add_argument("-v", "--verbose", action="store_true", help="list passing checks too")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with using_vertex_cap(args.max_vertices):
            return args.func(args, out)
    except (HypothesisError, OracleHypothesisError) as exc:
        err.write(f"hypothesis violation: {exc}\n")
        return EXIT_HYPOTHESIS
    except (ValueError, KeyError, TypeError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main(argv=None) -> None:
    sys.exit(run(argv))

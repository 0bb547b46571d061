"""Command-line front end: ``rswalk <group> <command> [flags]``.

Every report is JSON (default) or CSV and carries ``schema_version`` plus the
resolved configuration, so identical flags give byte-identical output.
Errors print one JSON line ``{"error": <reason>, "message": ...}`` on stderr
and exit 1 (invalid input), 2 (numerical failure) or 3 (resource limit).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import acceptance, circle, dyadic, halving, rudin_shapiro as rs, su2
from .errors import InvalidArgumentError, RSWalkError

SCHEMA_VERSION = 1


class UsageError(InvalidArgumentError):
    reason = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


@dataclass(frozen=True)
class RunConfig:
    command: str
    options: dict
    fmt: str = "json"
    out: str | None = None

    def echo(self) -> dict:
        return {"command": self.command, **self.options, "format": self.fmt}


def _complex_pairs(arr) -> list:
    arr = np.asarray(arr)
    if arr.ndim == 0:
        return [float(arr.real), float(arr.imag)]
    return [_complex_pairs(a) for a in arr]


def _frac(x) -> str:
    return f"{x.numerator}/{x.denominator}"


# --------------------------------------------------------------------------
# command implementations: each returns (payload dict, csv rows or None)
# --------------------------------------------------------------------------

def _rs_gen(o):
    pair = rs.generate(o["k"])
    rows = [["index", "p", "q"]] + [[i, int(a), int(b)] for i, (a, b) in enumerate(zip(pair.p_coeffs, pair.q_coeffs))]
    return {"k": o["k"], "p": pair.p_coeffs.tolist(), "q": pair.q_coeffs.tolist()}, rows


def _rs_parseval(o):
    ok, residual = rs.parseval_identity_check(o["k"])
    return {"k": o["k"], "holds": ok, "residual_terms": int(residual.coeffs.shape[0])}, None


def _rs_moments(o):
    mom = rs.exact_even_moment(o["k"], o["n"])
    return {"k": o["k"], "n": o["n"], "value": mom.as_string(), "float_value": float(mom)}, None


def _rs_mixed(o):
    mom = rs.exact_mixed_moment(o["k"], o["n"], o["m"])
    return {"k": o["k"], "n": o["n"], "m": o["m"], "value": mom.as_string(), "float_value": float(mom)}, None


def _circle_eval(o):
    grid = circle.eval_at_roots(rs.generate(o["k"]), o["n_points"], o["which"])
    vals = grid.normalized
    rows = [["j", "re", "im", "modulus"]] + [
        [j, repr(float(v.real)), repr(float(v.imag)), repr(float(abs(v)))] for j, v in enumerate(vals)
    ]
    return {"k": o["k"], "n_points": o["n_points"], "normalized_values": _complex_pairs(vals)}, rows


def _histogram_rows(rep):
    return list(csv.reader(io.StringIO(rep.histogram_csv())))


def _circle_saffari(o):
    rep = circle.saffari_report(o["k"], o["n_points"], o["bins"])
    payload = rep.metadata()
    payload["bin_edges"] = [float(v) for v in rep.bin_edges]
    payload["bin_masses"] = [float(v) for v in rep.bin_masses]
    return payload, _histogram_rows(rep)


def _circle_montgomery(o):
    rep = circle.montgomery_report(o["k"], o["n_points"], o["grid_size"])
    payload = rep.metadata()
    payload["cell_frequency"] = rep.disc_grid.tolist()
    payload["cell_expected"] = rep.disc_expected.tolist()
    rows = [["ix", "iy", "frequency", "expected"]]
    g = rep.disc_grid.shape[0]
    for ix in range(g):
        for iy in range(g):
            rows.append([ix, iy, repr(float(rep.disc_grid[ix, iy])), repr(float(rep.disc_expected[ix, iy]))])
    return payload, rows


def _circle_min(o):
    value, where = circle.min_modulus_report(o["k"], o["n_points"])
    return {"k": o["k"], "n_points": o["n_points"], "min_modulus": value, "argmin": _complex_pairs(where)}, None


def _circle_link(o):
    resid, norm_dev = circle.link_check(o["k"], o["samples"], o["seed"], literal=o["literal"])
    return {"k": o["k"], "residual": resid, "norm_deviation": norm_dev, "literal": o["literal"]}, None


def _rep_tau(o):
    rep = su2.tau_matrix(o["two_ell"])
    return {"two_ell": o["two_ell"], "entries": _complex_pairs(rep.entries),
            "unitarity_residual": rep.unitarity_residual()}, None


def _rep_verify(o):
    return su2.verify_propositions(o["two_ell"]).as_dict(), None


def _operator(o):
    if o["lam"] is None:
        return halving.build_S(o["two_ell"])
    return halving.build_S_lambda(o["two_ell"], o["lam"])


def _spec_build(o):
    op = _operator(o)
    return {"two_ell": op.two_ell, "lambda": op.lam, "dim": op.dim, "exponents": list(op.exponents),
            "basis": [list(b) for b in op.index_map], "matrix": _complex_pairs(op.matrix)}, None


def _spec_radius(o):
    op = _operator(o)
    rep = halving.spectral_radius(op)
    payload = {"two_ell": op.two_ell, "lambda": op.lam, "dim": op.dim,
               "spectral_radius": rep.spectral_radius, "margin": rep.margin}
    if o["eigenvalues"]:
        payload["eigenvalues"] = _complex_pairs(rep.eigenvalues)
    rows = list(csv.reader(io.StringIO(halving.spectrum_table_csv([(op, rep)]))))
    return payload, rows


def _matrix_payload(o, mat, **extra):
    return {**extra, "matrix": _complex_pairs(mat), "norm": float(np.linalg.norm(mat, 2))}, None


def _spec_expected(o):
    return _matrix_payload(o, halving.expected_rep(o["two_ell"], o["k"]), two_ell=o["two_ell"], k=o["k"])


def _spec_independence(o):
    mat = halving.independence_moment(o["two_ell"], o["lam"], o["k"])
    return _matrix_payload(o, mat, two_ell=o["two_ell"], **{"lambda": o["lam"]}, k=o["k"])


def _spec_crosscheck(o):
    chk = halving.cross_check_symbolic(o["two_ell"], o["lam"], o["k"])
    return {"two_ell": o["two_ell"], "lambda": o["lam"], "k": o["k"],
            "residual": chk.residual, "support_ok": chk.support_ok}, None


def _instance(o):
    if o["instance"] is not None:
        if o["preset"] is not None:
            raise UsageError("--instance and --preset are mutually exclusive")
        try:
            text = Path(o["instance"]).read_text(encoding="utf-8")
        except OSError as exc:
            raise InvalidArgumentError(f"--instance: cannot read {o['instance']}: {exc.strerror}") from exc
        try:
            return dyadic.load_instance(text)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, RSWalkError):
                raise
            raise InvalidArgumentError(f"--instance: malformed document ({exc})") from exc
    if o["preset"] is None:
        raise UsageError("one of --preset or --instance is required")
    group_name, f = dyadic.PRESETS[o["preset"]]
    if o["group"] is not None and o["group"] != group_name:
        raise UsageError(f"--group {o['group']} does not match preset {o['preset']} (group {group_name})")
    group = dyadic.named_group(group_name)
    f.check_against(group)
    return group, f


def _dist_payload(o, dist):
    rows = [["element", "label", "mass"]] + [
        [i, dist.labels[i], _frac(m)] for i, m in sorted(dist.masses.items())
    ]
    return {"k": o["k"], "distribution": dist.to_dict()}, rows


def _walk_exact(o):
    group, f = _instance(o)
    return _dist_payload(o, dyadic.exact_product_distribution(group, f, o["k"]))


def _walk_brute(o):
    group, f = _instance(o)
    return _dist_payload(o, dyadic.brute_force_distribution(group, f, o["k"]))


def _walk_tv(o):
    group, f = _instance(o)
    dist = dyadic.exact_product_distribution(group, f, o["k"])
    return {"k": o["k"], "tv_distance": _frac(dyadic.tv_distance_to_uniform(dist))}, None


def _walk_mc(o):
    stats = dyadic.monte_carlo_matrix_walk(o["kind"], o["k"], o["samples"], o["seed"])
    payload = stats.as_dict()
    payload["entry_means"] = _complex_pairs(stats.entry_means)
    edges = np.linspace(0.0, 1.0, len(stats.entry_bins) + 1)
    rows = [["bin_low", "bin_high", "mass"]] + [
        [repr(float(a)), repr(float(b)), repr(float(m))] for a, b, m in zip(edges[:-1], edges[1:], stats.entry_bins)
    ]
    return payload, rows


COMMANDS = {
    ("rs", "gen"): (_rs_gen, "coefficients of P_k and Q_k from the doubling recursion"),
    ("rs", "parseval"): (_rs_parseval, "exact check of |P_k|^2 + |Q_k|^2 = 2^(k+1) on the circle"),
    ("rs", "moments"): (_rs_moments, "exact normalized moment E|P_k|^(2n) by constant-term extraction"),
    ("rs", "mixed"): (_rs_mixed, "exact mixed moment E conj(P_k)^n P_k^m"),
    ("circle", "eval"): (_circle_eval, "normalized values of P_k at the N-th roots of unity (FFT)"),
    ("circle", "saffari"): (_circle_saffari, "distribution of |P_k|^2/2^(k+1) against uniform [0,1]"),
    ("circle", "montgomery"): (_circle_montgomery, "distribution of P_k/sqrt(2^(k+1)) against uniform on the disc"),
    ("circle", "min"): (_circle_min, "minimum modulus of P_k over the N-th roots of unity"),
    ("circle", "link"): (_circle_link, "identity linking the g-matrix product to (P_k, Q_k)"),
    ("rep", "tau"): (_rep_tau, "the matrix t^l(g(1)) of the SU(2) representation"),
    ("rep", "verify"): (_rep_verify, "invertibility, corner bounds and trivial-kernel patterns of tau^l"),
    ("spec", "build"): (_spec_build, "halving operator S_l or S_(l,lambda) as a dense matrix"),
    ("spec", "radius"): (_spec_radius, "spectral radius of the halving operator"),
    ("spec", "expected"): (_spec_expected, "expected lacunary product of t^l(g) (Weyl sum)"),
    ("spec", "independence"): (_spec_independence, "Weyl sum twisted by w^lambda (asymptotic independence)"),
    ("spec", "crosscheck"): (_spec_crosscheck, "Weyl sum against a brute-force symbolic product"),
    ("walk", "exact"): (_walk_exact, "exact law of f(2^k t)...f(t) on a finite group"),
    ("walk", "brute"): (_walk_brute, "same law by enumerating dyadic intervals"),
    ("walk", "tv"): (_walk_tv, "total variation distance of that law from uniform"),
    ("walk", "mc"): (_walk_mc, "Monte Carlo sampling of the SU(2)/U(2) lacunary matrix walks"),
}

GROUP_HELP = {
    "rs": "Rudin-Shapiro polynomials: recursion, identities, exact moments",
    "circle": "values of P_k on the circle and their empirical distribution",
    "rep": "SU(2) representation matrices",
    "spec": "halving operators and the Weyl sums they control",
    "walk": "lacunary products on finite groups and matrix walks",
}


def _add_io(p):
    p.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="output path (default: standard output)")


def _add_flags(group: str, name: str, p) -> None:
    if group in ("rs", "circle") or (group == "spec" and name in ("expected", "independence", "crosscheck")) or group == "walk":
        p.add_argument("--k", type=_nonneg, required=True)
    if (group, name) in (("rs", "moments"), ("rs", "mixed")):
        p.add_argument("--n", type=_nonneg, required=True)
    if (group, name) == ("rs", "mixed"):
        p.add_argument("--m", type=_nonneg, required=True)
    if group == "circle" and name in ("eval", "saffari", "montgomery", "min"):
        p.add_argument("--N", dest="n_points", type=_positive, required=True, help="grid size, a power of two")
    if (group, name) == ("circle", "eval"):
        p.add_argument("--which", choices=("p", "q"), default="p")
    if (group, name) == ("circle", "saffari"):
        p.add_argument("--bins", type=_positive, default=16)
    if (group, name) == ("circle", "montgomery"):
        p.add_argument("--grid-size", dest="grid_size", type=_positive, default=8)
    if (group, name) in (("circle", "link"), ("walk", "mc")):
        p.add_argument("--samples", type=_positive, default=1000)
        p.add_argument("--seed", type=_nonneg, default=0)
    if (group, name) == ("circle", "link"):
        p.add_argument("--literal", action="store_true", help="evaluate the uncorrected printed form")
    if group in ("rep", "spec"):
        p.add_argument("--two-ell", dest="two_ell", type=_positive, required=True, help="twice the label l")
    if (group, name) in (("spec", "build"), ("spec", "radius")):
        p.add_argument("--lambda", dest="lam", type=int, default=None)
    if (group, name) in (("spec", "independence"), ("spec", "crosscheck")):
        p.add_argument("--lambda", dest="lam", type=int, required=True)
    if (group, name) == ("spec", "radius"):
        p.add_argument("--eigenvalues", action="store_true", help="include the full spectrum")
    if group == "walk" and name != "mc":
        p.add_argument("--group", default=None, help="group name (z<n>, s1..s4) for a preset")
        p.add_argument("--preset", choices=sorted(dyadic.PRESETS), default=None)
        p.add_argument("--instance", default=None, help="JSON file {order, cayley, identity, labels, resolution, table}")
    if (group, name) == ("walk", "mc"):
        p.add_argument("--kind", choices=sorted(dyadic.WALK_KINDS), default="su2_g")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rswalk", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="cmd_group", required=True, metavar="GROUP")
    subs = {}
    for group, text in GROUP_HELP.items():
        gp = top.add_parser(group, help=text, description=text)
        subs[group] = gp.add_subparsers(dest="cmd_name", required=True, metavar="COMMAND")
    for (group, name), (_, text) in COMMANDS.items():
        p = subs[group].add_parser(name, help=text, description=text)
        _add_flags(group, name, p)
        _add_io(p)
    acc = top.add_parser("acceptance", help="run the acceptance criteria", description="run the acceptance criteria")
    acc.add_argument("--level", choices=acceptance.LEVELS, default="fast")
    acc.add_argument("--inject-failure", action="store_true",
                     help="perturb one tau entry by 1e-3; the unitarity criterion must then fail")
    acc.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    acc.add_argument("--out", default=None)
    return parser


def parse_config(argv) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    group = ns.pop("cmd_group")
    name = ns.pop("cmd_name", None)
    fmt = ns.pop("fmt")
    out = ns.pop("out")
    command = group if name is None else f"{group} {name}"
    return RunConfig(command, ns, fmt, out)


def _csv_text(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _flat_rows(payload: dict) -> list:
    rows = [["key", "value"]]
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        rows.append([key, value])
    return rows


def render(config: RunConfig) -> str:
    if config.command == "acceptance":
        results = acceptance.run_suite(config.options["level"], config.options["inject_failure"])
        if config.fmt == "json":
            report = {"schema_version": SCHEMA_VERSION, "config": config.echo(),
                      "passed": all(r.passed for r in results),
                      "criteria": [{k: v for k, v in r.as_dict().items() if k != "seconds"} for r in results]}
            return json.dumps(report, indent=2) + "\n", results
        return "".join(r.line() + "\n" for r in results), results
    group, name = config.command.split()
    func = COMMANDS[(group, name)][0]
    payload, rows = func(config.options)
    if config.fmt == "csv":
        return _csv_text(rows if rows is not None else _flat_rows(payload)), None
    report = {"schema_version": SCHEMA_VERSION, "config": config.echo(), **payload}
    return json.dumps(report, indent=2, allow_nan=True) + "\n", None


def _fail(exc: Exception, status: int, reason: str) -> int:
    sys.stderr.write(json.dumps({"error": reason, "message": str(exc)}) + "\n")
    return status


def main(argv=None) -> int:
    try:
        config = parse_config(sys.argv[1:] if argv is None else argv)
        text, results = render(config)
        if config.out:
            Path(config.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    except RSWalkError as exc:
        return _fail(exc, exc.exit_status, exc.reason)
    except OSError as exc:
        return _fail(exc, 1, "io_error")
    if results is not None and not all(r.passed for r in results):
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

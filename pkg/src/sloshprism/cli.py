"""Command-line entry point: ``sloshprism <command> [options]``.

Lengths are given as decimals (pi = 3.141592653589793).  Each command
writes its data files plus ``manifest.json`` into ``--out``.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import read_config_file, validate_config
from .errors import ConfigError, NumericalFailure, SloshError

log = logging.getLogger("sloshprism")

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3
KINDS = ("edge", "surface", "pi4exact", "fem")
MANIFEST = "manifest.json"


def _geometry_args(p: argparse.ArgumentParser, sigma_default: float | None = None) -> None:
    p.add_argument("--config", type=Path, help="key = value file with L, M, q, r, sigma_max, out")
    p.add_argument("--q", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--L", type=float)
    p.add_argument("--M", type=float)
    p.add_argument("--sigma-max", type=float, default=sigma_default)
    p.add_argument("--out", type=Path)


def _fem_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--h", type=float, help="element size (default L/100)")
    p.add_argument("--order", type=int, choices=(1, 2), default=2)
    p.add_argument("--grading", type=float, default=4.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sloshprism", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="merged quasi-eigenvalue (and optional exact/FEM) spectrum")
    _geometry_args(p)
    p.add_argument("--kinds", default="edge,surface", help="comma list from " + ",".join(KINDS))
    _fem_args(p)

    p = sub.add_parser("count", help="counting functions and S(sigma)")
    _geometry_args(p)
    p.add_argument("--points", type=int, default=200)

    p = sub.add_parser("equidist", help="Weyl sum, van der Corput bound, fractional parts")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--K", type=int, default=4)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--h", type=int, nargs="+", default=[1])
    p.add_argument("--bins", type=int, default=20)
    p.add_argument("--out", type=Path, default=Path("."))

    p = sub.add_parser("fem-validate", help="finite-element spectrum aligned with quasi-eigenvalues")
    _geometry_args(p)
    _fem_args(p)
    p.add_argument("--tolerance", type=float, default=1e-2)

    p = sub.add_parser("pi4-check", help="exact right-angle-corner spectrum against the quasi list")
    p.add_argument("--L", type=float, default=math.pi)
    p.add_argument("--M", type=float, default=math.pi)
    p.add_argument("--lo", type=float, default=5.0)
    p.add_argument("--sigma-max", type=float, default=30.0)
    p.add_argument("--count-max", type=float, default=200.0, help="sigma range for S(sigma)")
    p.add_argument("--out", type=Path, default=Path("."))
    return parser


def _resolve(args, parser):
    """Merge --config values under explicit flags; returns (cfg, sigma_max, out)."""
    values = read_config_file(args.config) if getattr(args, "config", None) else {}
    for key in ("q", "r", "L", "M"):
        flag = getattr(args, key)
        if flag is not None:
            values[key] = flag
    if args.sigma_max is not None:
        values["sigma_max"] = args.sigma_max
    if args.out is not None:
        values["out"] = args.out
    missing = [k for k in ("q", "r", "sigma_max") if k not in values]
    if missing:
        parser.error("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))
    cfg = validate_config(values.get("L", math.pi), values.get("M", math.pi), values["q"], values["r"])
    return cfg, float(values["sigma_max"]), Path(values.get("out", "."))


def _params(args) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in ("verbose",):
            continue
        out[k] = str(v) if isinstance(v, Path) else v
    return out


def _finish(out: Path, command: str, args, files: list[Path]) -> None:
    from .io import RunManifest

    RunManifest(command, _params(args), __version__, [f.name for f in files]).write(out / MANIFEST)
    for f in files:
        print(f)


# ---------------------------------------------------------------------------


def spectrum_rows(cfg, sigma_max: float, kinds, fem_opts: dict | None = None):
    """Rows for the merged spectrum CSV and the surface detail CSV."""
    from .edge import CornerPairMode, enumerate_edge_quasi
    from .surface import enumerate_surface_quasi

    rows, detail = [], []
    if "edge" in kinds or "surface" in kinds:
        rows.append({"sigma": 0.0, "kind": "constant", "n": 0, "multiplicity": 1})
    if "edge" in kinds:
        for md in enumerate_edge_quasi(cfg, sigma_max):
            if isinstance(md, CornerPairMode):
                rows.append({"sigma": md.sigma, "kind": "edge", "corner": "pair", "n": md.n, "multiplicity": 1})
            else:
                rows.append(
                    {"sigma": md.sigma, "kind": "edge", "corner": md.corner.label, "m": md.m, "n": md.n,
                     "multiplicity": md.multiplicity}
                )
    if "surface" in kinds:
        for md in enumerate_surface_quasi(cfg, sigma_max):
            rows.append({"sigma": md.sigma, "kind": "surface", "m": md.m, "n": md.n, "multiplicity": 1,
                         "residual": md.residual})
            detail.append({"sigma": md.sigma, "kind": "surface", "m": md.m, "n": md.n,
                           "theta_alpha": md.theta_alpha, "theta_beta": md.theta_beta,
                           "quantization_residual": md.residual})
    if "pi4exact" in kinds:
        if not (cfg.q == 2 and cfg.r == 2):
            raise ConfigError("pi4exact needs q = r = 2")
        from .exact import pi4_spectrum

        for rt in pi4_spectrum(cfg.L, cfg.M, sigma_max):
            rows.append({"sigma": rt.sigma, "kind": "pi4exact", "branch": rt.branch.value, "m": rt.m, "n": rt.n,
                         "multiplicity": 1})
    if "fem" in kinds:
        from .fem import fem_spectrum

        spec = fem_spectrum(cfg, sigma_max, **(fem_opts or {}))
        for sigma, n, k in spec.merged:
            rows.append({"sigma": sigma, "kind": "fem", "m": k, "n": n, "multiplicity": 1})
    order = {k: i for i, k in enumerate(("constant",) + KINDS)}
    rows.sort(key=lambda r: (r["sigma"], order[r["kind"]], r.get("n") or 0, r.get("m") or 0, r.get("corner") or ""))
    return rows, detail


def _fem_opts(args) -> dict:
    return {"h": args.h, "order": args.order, "grading": args.grading}


def cmd_spectrum(args, parser) -> int:
    from .io import SPECTRUM_COLUMNS, SURFACE_COLUMNS, write_csv

    cfg, sigma_max, out = _resolve(args, parser)
    kinds = [k.strip() for k in args.kinds.split(",") if k.strip()]
    bad = [k for k in kinds if k not in KINDS]
    if bad:
        parser.error(f"unknown kind(s): {', '.join(bad)}")
    out.mkdir(parents=True, exist_ok=True)
    rows, detail = spectrum_rows(cfg, sigma_max, kinds, _fem_opts(args))
    files = [write_csv(out / "spectrum.csv", SPECTRUM_COLUMNS, rows, MANIFEST)]
    if detail:
        files.append(write_csv(out / "surface.csv", SURFACE_COLUMNS, detail, MANIFEST))
    _finish(out, "spectrum", args, files)
    return EXIT_OK


def cmd_count(args, parser) -> int:
    from .counting import profile_integral, theta_integral, total_counts_and_S
    from .io import write_csv, write_json

    cfg, sigma_max, out = _resolve(args, parser)
    out.mkdir(parents=True, exist_ok=True)
    grid = np.linspace(sigma_max / args.points, sigma_max, args.points)
    rep = total_counts_and_S(cfg, grid)
    cols = ("sigma", "N_edge", "N_surface", "N_total", "asym_edge", "asym_surface", "deficit_exact",
            "deficit_asym", "S")
    rows = [
        dict(zip(cols, vals))
        for vals in zip(rep.sigma_grid, rep.exact_Ne, rep.exact_Ns, rep.exact_total, rep.asym_Ne, rep.asym_Ns,
                        rep.deficit_exact, rep.deficit_asym, rep.S_values)
    ]
    files = [write_csv(out / "count.csv", cols, rows, MANIFEST)]
    s_path = out / "S_sigma.dat"
    lines = ["# sigma S(sigma)"] + [f"{s:.9g} {v:.9g}" for s, v in zip(rep.sigma_grid, rep.S_values)]
    lines.append(f"# manifest: {MANIFEST}")
    s_path.write_text("\n".join(lines) + "\n")
    files.append(s_path)
    summary = {
        "L": cfg.L, "M": cfg.M, "q": cfg.q, "r": cfg.r, "sigma_max": sigma_max,
        "s_limit": rep.s_limit, "S_last": rep.S_values[-1], "theta_integral": theta_integral(cfg),
        "profile_integral": profile_integral(cfg), "manifest": MANIFEST,
    }
    files.append(write_json(out / "count.json", summary))
    _finish(out, "count", args, files)
    return EXIT_OK


def cmd_equidist(args, parser) -> int:
    from .equidist import ExpSumSpec, fractional_part_histogram, vdcorput_bound_check
    from .io import write_json

    out = args.out
    out.mkdir(parents=True, exist_ok=True)
    try:
        hist = fractional_part_histogram(args.sigma, args.K, args.r, args.bins)
        reports = [vdcorput_bound_check(ExpSumSpec(args.sigma, args.K, args.r, h)).to_dict() for h in args.h]
    except ValueError as exc:
        parser.error(str(exc))
    for rep in reports:
        rep["ks"] = hist.ks
    payload = reports[0] if len(reports) == 1 else {"runs": reports}
    payload = dict(payload, manifest=MANIFEST, histogram=hist.counts.tolist(), sample_size=hist.sample_size)
    files = [write_json(out / "equidist.json", payload)]
    _finish(out, "equidist", args, files)
    return EXIT_OK


def cmd_fem_validate(args, parser) -> int:
    from .counting import merged_quasi_values
    from .fem import fem_spectrum, match_spectra
    from .io import write_csv, write_json

    cfg, sigma_max, out = _resolve(args, parser)
    out.mkdir(parents=True, exist_ok=True)
    # compute both lists a little past sigma_max so pairs near the end are not truncated
    top = sigma_max + 1.0
    spec = fem_spectrum(cfg, top, **_fem_opts(args))
    quasi = merged_quasi_values(cfg, top)
    al = match_spectra(spec.values(), quasi, tolerance=args.tolerance, sigma_cap=sigma_max)
    if not al.stable:
        log.warning("no stable offset: median gap %.3g", al.median_gap)
    rows = [{"index": j, "quasi": q, "fem": f, "gap": g} for j, q, f, g in al.pairs]
    files = [write_csv(out / "alignment.csv", ("index", "quasi", "fem", "gap"), rows, MANIFEST)]
    fem_rows = [{"sigma": s, "kind": "fem", "m": k, "n": n, "multiplicity": 1} for s, n, k in spec.merged if s < sigma_max]
    files.append(write_csv(out / "fem.csv", ("sigma", "kind", "m", "n", "multiplicity"), fem_rows, MANIFEST))
    gaps = [g for _, _, _, g in al.pairs]
    summary = {
        "q": cfg.q, "r": cfg.r, "L": cfg.L, "M": cfg.M, "sigma_max": sigma_max,
        "h": spec.mesh_size, "order": spec.order, "offset": al.offset, "median_gap": al.median_gap,
        "max_gap": max(gaps) if gaps else None, "first_matched_index": al.first_matched,
        "tolerance": al.tolerance, "stable": al.stable,
        "friedlander_violations": len(spec.friedlander_violations()), "manifest": MANIFEST,
    }
    files.append(write_json(out / "alignment.json", summary))
    _finish(out, "fem-validate", args, files)
    return EXIT_OK


def cmd_pi4_check(args, parser) -> int:
    from .exact import pi4_counting_check, pi4_cross_check
    from .io import write_csv, write_json

    out = args.out
    out.mkdir(parents=True, exist_ok=True)
    cc = pi4_cross_check(args.L, args.M, args.lo, args.sigma_max)
    rows = [{"exact": a, "quasi": b, "gap": g} for a, b, g in cc.pairs]
    files = [write_csv(out / "pi4_pairs.csv", ("exact", "quasi", "gap"), rows, MANIFEST)]
    grid, S, target = pi4_counting_check(args.L, args.M, args.count_max)
    srows = [{"sigma": s, "S": v} for s, v in zip(grid, S)]
    files.append(write_csv(out / "pi4_S.csv", ("sigma", "S"), srows, MANIFEST))
    summary = {
        "L": args.L, "M": args.M, "max_gap": cc.max_gap, "window_edges": cc.window_edges,
        "window_max_gap": cc.window_max, "decreasing": cc.decreasing, "S_target": target,
        "S_last": float(S[-1]), "manifest": MANIFEST,
    }
    files.append(write_json(out / "pi4_check.json", summary))
    _finish(out, "pi4-check", args, files)
    return EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "count": cmd_count,
    "equidist": cmd_equidist,
    "fem-validate": cmd_fem_validate,
    "pi4-check": cmd_pi4_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args, parser)
    except (ConfigError, ValueError) as exc:
        print(f"sloshprism: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalFailure, SloshError) as exc:
        print(f"sloshprism: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

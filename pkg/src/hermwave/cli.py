"""Command-line front end: construction, verification, transform, rendering.

Subcommands: ``filters``, ``verify``, ``analyze``, ``synthesize``,
``render``, ``compress``.  Every run prints the resolved configuration;
set ``HERMWAVE_LOG`` (debug/info/warning) for verbosity.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from . import annihilator, filterbank, signal as sig_mod, subdivision
from .annihilator import SpaceSpec
from .laurent import DivisionError, MatLaurent
from .signal import read_signal, write_signal

log = logging.getLogger("hermwave")


def _spec_from(args) -> SpaceSpec:
    return SpaceSpec(args.p, args.lam)


def _emit(payload: dict, output: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
        log.info("wrote %s", output)
    else:
        print(text)


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def cmd_filters(args) -> int:
    if args.taylor:
        sym = annihilator.make_taylor(args.d)
        _emit({"taylor": sym.to_json_dict()}, args.output)
        return 0
    spec = _spec_from(args)
    mask = subdivision.make_mask(spec, args.level)
    bank = filterbank.build(mask)
    res = subdivision.interpolatory_residual(mask.symbol)
    print(f"interpolatory residual: {res:.3e}")
    _emit(
        {
            "mask": mask.mask.to_json_dict(),
            "interpolatory_residual": res,
            **bank.to_json_dict(),
        },
        args.output,
    )
    return 0


def _verify_report(spec: SpaceSpec, levels: range, seed: int, perturb: float, tol_override: float | None):
    """Identity-by-identity residual report for one frequency."""
    checks: list[tuple[str, float, float]] = []  # (name, residual, tolerance)

    def add(name, residual, tol):
        checks.append((name, float(residual), tol_override or tol))

    for n in levels:
        mask = subdivision.make_mask(spec, n)
        bank = filterbank.build(mask)
        add(f"interpolatory[n={n}]", subdivision.interpolatory_residual(mask.symbol), 1e-12)
        add(f"biorthogonality[n={n}]", filterbank.check_biorthogonality(bank), 1e-12)
        lam = spec.lam or 0.0
        for name, f in {
            "1": sig_mod.monomial(0),
            "exp+": sig_mod.exponential(lam),
            "exp-": sig_mod.exponential(-lam),
        }.items():
            add(
                f"vanishing_moments[n={n},f={name}]",
                filterbank.check_vanishing_moments(bank, f),
                1e-10,
            )
        spectral = subdivision.check_spectral_condition(
            spec,
            n,
            2,
            functions={
                "1": sig_mod.monomial(0),
                "exp+": sig_mod.exponential(lam),
                "exp-": sig_mod.exponential(-lam),
            },
        )
        add(f"spectral_exponential[n={n}]", max(spectral.values()), 1e-9)
        ann_n = annihilator.make_annihilator(spec, n)
        ann_n1 = annihilator.make_annihilator(spec, n + 1)
        try:
            pair = filterbank.factorization_pair(mask, ann_n, ann_n1)
            add(f"factorization_R[n={n}]", pair.residual_R, 1e-10)
            add(f"factorization_S[n={n}]", pair.residual_S, 1e-10)
        except DivisionError as exc:
            add(f"factorization[n={n}] ({exc})", float("inf"), 1e-10)
        add(f"two_level_identity[n={n}]", annihilator.check_two_level_identity(spec, n), 1e-12)
        if spec.lam:
            add(
                f"eigvec_condition[n={n}]",
                annihilator.check_eigvec_condition(ann_n),
                1e-12,
            )
    if spec.lam:
        add("taylor_limit[n=20]", annihilator.taylor_distance(spec, 20), 1e-6)
    # perfect reconstruction on random periodic data
    rng = np.random.default_rng(seed)
    entry = max(levels) + 3
    data = rng.uniform(-1.0, 1.0, size=(64, 3))
    sig = sig_mod.HermiteSignal(entry, data)
    coarse, details = filterbank.analyze(spec, sig, 3)
    rec = filterbank.synthesize(spec, coarse, details)
    add("perfect_reconstruction[L=3]", np.max(np.abs(rec.data - sig.data)), 1e-10)

    if perturb:
        bank = filterbank.build(subdivision.make_mask(spec, min(levels)))
        taps = bank.A.taps()
        bad = {k: np.array(m) for k, m in taps.items()}
        bad[1][0, 0] += perturb
        bad_bank = filterbank.FilterBank(
            bank.level,
            bank.spec,
            MatLaurent.from_taps(3, bad),
            bank.B,
            bank.A_tilde,
            bank.B_tilde,
        )
        add("perturbed_biorthogonality", filterbank.check_biorthogonality(bad_bank), 1e-12)
    return checks


def cmd_verify(args) -> int:
    spec = _spec_from(args)
    levels = range(0, (args.level if args.level is not None else 4) + 1)
    checks = _verify_report(spec, levels, args.seed, args.perturb, args.tolerance)
    report = {
        name: {"residual": res, "tolerance": tol, "pass": res <= tol}
        for name, res, tol in checks
    }
    failures = [name for name, v in report.items() if not v["pass"]]
    _emit({"checks": report, "failures": failures}, args.output)
    for name, res, tol in checks:
        status = "PASS" if res <= tol else "FAIL"
        log.info("%s %-45s residual %.3e (tol %.0e)", status, name, res, tol)
    print(f"{len(checks) - len(failures)}/{len(checks)} checks passed")
    return 1 if failures else 0


def cmd_analyze(args) -> int:
    spec = _spec_from(args)
    sig = read_signal(args.input)
    coarse, details = filterbank.analyze(spec, sig, args.depth)
    payload = filterbank.transform_to_json_dict(spec, sig.level, coarse, details)
    _emit(payload, args.output)
    max_det = max((float(np.max(np.abs(d.data))) for d in details if len(d)), default=0.0)
    print(f"max detail magnitude: {max_det:.3e}")
    return 0


def cmd_synthesize(args) -> int:
    with open(args.input) as fh:
        payload = json.load(fh)
    spec, _entry, coarse, details = filterbank.transform_from_json_dict(payload)
    rec = filterbank.synthesize(spec, coarse, details)
    if args.output:
        write_signal(rec, args.output)
        log.info("wrote %s", args.output)
    else:
        import tempfile

        with tempfile.NamedTemporaryFile("r", suffix=".csv") as tmp:
            write_signal(rec, tmp.name)
            print(tmp.read(), end="")
    return 0


def cmd_render(args) -> int:
    spec = _spec_from(args)
    table = subdivision.render_basic_limit(spec, args.depth, base_level=args.level)
    lines = ["x,phi0,phi1,phi2"]
    for t, x in enumerate(table.grid):
        vals = ",".join(repr(float(table.values[t, 0, j])) for j in range(3))
        lines.append(f"{float(x)!r},{vals}")
    if args.compare_closed_form:
        devs = subdivision.compare_cascade_closed_form(
            spec, depth=args.depth, base_level=args.level
        )
        lines.append(
            "# max deviation from closed form: "
            + " ".join(f"phi{j}={devs[j]:.3e}" for j in range(3))
        )
        print("closed-form deviation:", {f"phi{j}": devs[j] for j in range(3)})
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        log.info("wrote %s", args.output)
    else:
        print(text, end="")
    return 0


def cmd_compress(args) -> int:
    spec = _spec_from(args)
    sig = read_signal(args.input)
    report = filterbank.compress(spec, sig, args.depth, args.threshold)
    _emit(
        {
            "total_details": report.total_details,
            "kept_details": report.kept_details,
            "dropped_fraction": report.dropped_fraction,
            "max_abs_error": report.max_abs_error,
            "max_relative_error": report.max_relative_error,
        },
        args.output,
    )
    return 0


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hermwave",
        description="Level-dependent Hermite multiwavelet filter banks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, level_default=0):
        p.add_argument("--p", type=int, default=0, help="polynomial degree of the space")
        p.add_argument("--lambda", dest="lam", type=float, default=2.0,
                       help="exponential frequency (0 = stationary limit)")
        p.add_argument("--level", type=int, default=level_default, help="scale level n")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
        p.add_argument("--tolerance", type=float, default=None,
                       help="override per-identity tolerances")
        p.add_argument("--output", default=None, help="output path (default stdout)")

    p = sub.add_parser("filters", help="emit mask and filter-bank symbols as JSON")
    common(p)
    p.add_argument("--taylor", action="store_true", help="emit the Taylor operator instead")
    p.add_argument("--d", type=int, default=2, help="order for --taylor")
    p.set_defaults(func=cmd_filters)

    p = sub.add_parser("verify", help="run the identity verification suite")
    common(p, level_default=None)
    p.add_argument("--perturb", type=float, default=0.0,
                   help="perturb a mask tap to prove detector sensitivity")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="multilevel analysis of a Hermite signal")
    common(p)
    p.add_argument("--depth", type=int, default=3, help="number of transform levels L")
    p.add_argument("--input", required=True, help="input signal CSV")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("synthesize", help="invert a transform coefficient file")
    common(p)
    p.add_argument("--input", required=True, help="transform JSON file")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("render", help="render the limit functions as CSV")
    common(p)
    p.add_argument("--depth", type=int, default=7, help="dyadic rendering depth m")
    p.add_argument("--compare-closed-form", action="store_true",
                   help="append closed-form deviation footer")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("compress", help="threshold compression demo")
    common(p)
    p.add_argument("--depth", type=int, default=3, help="number of transform levels L")
    p.add_argument("--threshold", type=float, default=1e-8, help="detail threshold")
    p.add_argument("--input", required=True, help="input signal CSV")
    p.set_defaults(func=cmd_compress)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        level=os.environ.get("HERMWAVE_LOG", "warning").upper(),
        format="%(levelname)s %(message)s",
    )
    args = _build_parser().parse_args(argv)
    shown = {k: v for k, v in vars(args).items() if k != "func"}
    print(f"config: {shown}")
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

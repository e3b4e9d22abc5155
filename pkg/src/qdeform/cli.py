"""Command-line front end: verify, scan, expand.

Exit status: 0 when the report verdict is pass, 1 on fail, 2 on error
(including usage errors).  Reports are deterministic for fixed inputs
and tool version; only the timestamp field differs between runs.
"""

from __future__ import annotations

import argparse
import cmath
import sys
from typing import Optional, Sequence

from . import clockshift, config, matrixrep, params, weyl
from .rational import I
from .report import Metric, Table, VerificationReport

EXPAND_TARGETS = ("P", "X", "prefactor", "eq8-rhs", "eq9")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdeform",
        description=(
            "Verification lab for the sinh-deformed position/momentum pair: "
            "exact symbolic checks, finite-dimensional residuals, and the "
            "quantum-plane limit."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="config file (fallback: $QDEFORM_CONFIG)")
    common.add_argument("--out", help="also write the output to this file")
    common.add_argument(
        "--format",
        choices=("json", "csv", "text"),
        default="json",
        help="report format (default json; csv needs a table)",
    )

    p_verify = sub.add_parser(
        "verify", parents=[common], help="run one engine's identity checks"
    )
    p_verify.add_argument(
        "--engine", required=True, choices=("symbolic", "matrix", "clock-shift")
    )
    p_verify.add_argument("--degree", type=int, help="symbolic truncation degree")
    p_verify.add_argument("--dim", type=int, help="matrix / pair dimension N")
    p_verify.add_argument("--interior", type=int, help="interior block size M < N")
    p_verify.add_argument("--mu", type=float)
    p_verify.add_argument("--nu", type=float)
    p_verify.add_argument("--level", type=int, help="clock-shift level k")

    p_scan = sub.add_parser(
        "scan", parents=[common], help="tabulate residuals over a grid or path"
    )
    p_scan.add_argument("--engine", choices=("matrix", "clock-shift"))
    p_scan.add_argument("--path", choices=params.PATH_NAMES)
    p_scan.add_argument("--dims", help="dimension grid: '16,32,64' or '2..64'")
    p_scan.add_argument("--mu", type=float)
    p_scan.add_argument("--nu", type=float)
    p_scan.add_argument("--interior", type=int)
    p_scan.add_argument("--alpha", type=float)
    p_scan.add_argument("--beta", type=float)
    p_scan.add_argument("--n", help="index grid: '0..5', '0,2,4' or '7'")

    p_expand = sub.add_parser(
        "expand", parents=[common], help="print a canonical series expansion"
    )
    p_expand.add_argument("--target", required=True, choices=EXPAND_TARGETS)
    p_expand.add_argument("--degree", type=int)

    return parser


def parse_int_list(text: Optional[str], what: str) -> list[int]:
    """Accept 'a..b' (inclusive), 'a,b,c' or a single integer."""
    if text is None or not text.strip():
        raise ValueError(f"empty {what} list")
    text = text.strip()
    if ".." in text:
        lo_txt, hi_txt = text.split("..", 1)
        lo, hi = int(lo_txt), int(hi_txt)
        if hi < lo:
            raise ValueError(f"bad {what} range: {text!r}")
        return list(range(lo, hi + 1))
    return [int(tok) for tok in text.split(",") if tok.strip()]


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _verify_symbolic(degree: int, cfg) -> VerificationReport:
    command = f"verify --engine symbolic --degree {degree}"
    res = weyl.identity_residual(degree)
    exch = weyl.exchange_residual(degree)
    mismatch = 0
    for side in ("momentum", "position"):
        diff = weyl.sqrt_one_plus_square(side, degree) - weyl.cosh_element(side, degree)
        mismatch += len(diff.terms)
    residual9, _ = weyl.leading_order_residual(degree)
    low_terms = sum(
        1
        for poly in residual9.terms.values()
        for (m, n) in poly.terms
        if m + n < 4
    )
    metrics = [
        Metric("residual_terms", len(res.terms), 0),
        Metric("exchange_residual_terms", len(exch.terms), 0),
        Metric("sqrt_cosh_mismatch_terms", mismatch, 0),
        Metric("expansion_low_degree_terms", low_terms, 0),
    ]
    return VerificationReport.build(
        "symbolic", command, {"degree": degree}, metrics
    )


def _verify_matrix(
    dim: int, interior: int, mu: float, nu: float, cfg
) -> VerificationReport:
    command = (
        f"verify --engine matrix --dim {dim} --interior {interior} "
        f"--mu {mu} --nu {nu}"
    )
    parameters = {"dim": dim, "interior": interior, "mu": mu, "nu": nu}
    row = matrixrep.identity_residual(
        dim, interior, mu, nu,
        overflow_guard=config.get_float(cfg, "matrix.overflow_guard"),
    )
    metrics = [
        Metric(
            "res_fro",
            row.residual_frobenius,
            config.get_float(cfg, "matrix.residual_threshold"),
        ),
        Metric("res_spec", row.residual_spectral, None),
        Metric(
            "sqrt_cosh_rel",
            row.sqrt_cosh_xcheck / row.cosh_norm,
            config.get_float(cfg, "matrix.sqrt_cosh_threshold"),
        ),
    ]
    return VerificationReport.build("matrix", command, parameters, metrics)


def _verify_clockshift(dim: int, level: int, cfg) -> VerificationReport:
    import numpy as np

    command = f"verify --engine clock-shift --dim {dim} --level {level}"
    pair = clockshift.build_pair(dim, level)
    eye = np.eye(dim)
    u, v = pair.shift.mat, pair.clock.mat
    unitary_tol = config.get_float(cfg, "clockshift.unitary_threshold")
    power_tol = config.get_float(cfg, "clockshift.power_threshold")
    try:
        q_dev = abs(clockshift.q_from_alpha(pair.alpha) - cmath.exp(-1j * pair.alpha))
    except ValueError:
        q_dev = 0.0  # quotient form undefined at alpha = pi; phase used directly
    metrics = [
        Metric(
            "max_residual",
            clockshift.verify_qplane(pair),
            config.get_float(cfg, "clockshift.residual_threshold"),
        ),
        Metric("u_unitary_defect", float(np.max(np.abs(u @ u.conj().T - eye))), unitary_tol),
        Metric("v_unitary_defect", float(np.max(np.abs(v @ v.conj().T - eye))), unitary_tol),
        Metric(
            "u_power_defect",
            float(np.max(np.abs(np.linalg.matrix_power(u, dim) - eye))),
            power_tol,
        ),
        Metric(
            "v_power_defect",
            float(np.max(np.abs(np.linalg.matrix_power(v, dim) - eye))),
            power_tol,
        ),
        Metric("q_identity_dev", q_dev, 1e-12),
    ]
    parameters = {"dim": dim, "level": level, "alpha": pair.alpha}
    return VerificationReport.build("clock-shift", command, parameters, metrics)


def run_verify(args, cfg) -> VerificationReport:
    if args.engine == "symbolic":
        degree = args.degree if args.degree is not None else config.get_int(
            cfg, "symbolic.degree"
        )
        if degree < 0:
            raise ValueError("degree must be >= 0")
        return _verify_symbolic(degree, cfg)
    if args.engine == "matrix":
        dim = args.dim if args.dim is not None else config.get_int(cfg, "matrix.dim")
        interior = (
            args.interior
            if args.interior is not None
            else matrixrep.default_interior(dim)
        )
        mu = args.mu if args.mu is not None else config.get_float(cfg, "matrix.mu")
        nu = args.nu if args.nu is not None else config.get_float(cfg, "matrix.nu")
        return _verify_matrix(dim, interior, mu, nu, cfg)
    dim = args.dim if args.dim is not None else 16
    level = args.level if args.level is not None else 1
    return _verify_clockshift(dim, level, cfg)


# ---------------------------------------------------------------------------
# scan
# ---------------------------------------------------------------------------


def _scan_matrix(args, cfg) -> VerificationReport:
    dims = parse_int_list(args.dims, "dimension")
    mu = args.mu if args.mu is not None else config.get_float(cfg, "matrix.mu")
    nu = args.nu if args.nu is not None else config.get_float(cfg, "matrix.nu")
    interior = args.interior if args.interior is not None else 8
    threshold = config.get_float(cfg, "matrix.residual_threshold")
    noise_floor = config.get_float(cfg, "matrix.noise_floor")
    command = (
        f"scan --engine matrix --mu {mu} --nu {nu} --interior {interior} "
        f"--dims {args.dims}"
    )
    scan = matrixrep.convergence_scan(
        mu, nu, interior, dims, threshold=threshold, noise_floor=noise_floor
    )
    table = Table(
        columns=matrixrep.RESIDUAL_CSV_COLUMNS,
        rows=tuple(row.csv_row() for row in scan.rows),
    )
    first = scan.rows[0].residual_frobenius
    last = scan.rows[-1].residual_frobenius
    excess = max(0.0, last - max(first, noise_floor))
    metrics = [
        Metric("residual_at_largest_dim", last, threshold),
        Metric("residual_at_smallest_dim", first, None),
        Metric("residual_excess", excess, 0.0),
    ]
    parameters = {
        "mu": mu,
        "nu": nu,
        "interior": interior,
        "dims": dims,
        "noise_floor": noise_floor,
    }
    return VerificationReport.build("matrix", command, parameters, metrics, table)


def _scan_clockshift_periodicity(args, cfg) -> VerificationReport:
    alpha = args.alpha if args.alpha is not None else config.get_float(
        cfg, "params.alpha"
    )
    ns = parse_int_list(args.n if args.n is not None else "0..100", "n")
    threshold = config.get_float(cfg, "clockshift.periodicity_threshold")
    command = f"scan --engine clock-shift --alpha {alpha} --n {args.n or '0..100'}"
    devs = clockshift.tan_half_deviations(alpha, ns, reduced=True)
    table = Table(
        columns=("alpha", "n", "deviation"),
        rows=tuple((alpha, n, d) for n, d in zip(ns, devs)),
    )
    metrics = [Metric("max_deviation", max(devs), threshold)]
    parameters = {"alpha": alpha, "n_count": len(ns)}
    return VerificationReport.build(
        "clock-shift", command, parameters, metrics, table
    )


def _scan_clockshift_grid(args, cfg) -> VerificationReport:
    dims = parse_int_list(args.dims, "dimension")
    threshold = config.get_float(cfg, "clockshift.residual_threshold")
    command = f"scan --engine clock-shift --dims {args.dims}"
    rows = []
    worst = 0.0
    for dim in dims:
        for level in range(1, dim):
            residual = clockshift.verify_qplane(clockshift.build_pair(dim, level))
            worst = max(worst, residual)
            rows.append((dim, level, residual))
    table = Table(columns=("N", "k", "residual"), rows=tuple(rows))
    metrics = [Metric("max_residual", worst, threshold)]
    parameters = {"dims": dims, "pairs": len(rows)}
    return VerificationReport.build(
        "clock-shift", command, parameters, metrics, table
    )


def _scan_path(args, cfg) -> VerificationReport:
    alpha = args.alpha if args.alpha is not None else config.get_float(
        cfg, "params.alpha"
    )
    beta = args.beta if args.beta is not None else config.get_float(cfg, "params.beta")
    mu0 = config.get_float(cfg, "params.mu0")
    nu0 = config.get_float(cfg, "params.nu0")
    endpoint_tol = config.get_float(cfg, "params.endpoint_tol")

    if args.path == "hbar-to-0":
        ntext = args.n if args.n is not None else "0..5"
        ns = parse_int_list(ntext, "n")
        command = f"scan --path hbar-to-0 --alpha {alpha} --beta {beta} --n {ntext}"
        points = [clockshift.ScalingPoint(alpha=alpha, beta=beta, n=n) for n in ns]
        ref = points[0].exchange_phase()
        rows = []
        devs = []
        for pt in points:
            phase = pt.exchange_phase()
            dev = abs(phase - ref)
            devs.append(dev)
            rows.append((pt.n, pt.mu, pt.nu, alpha, phase.real, phase.imag, dev))
        table = Table(
            columns=("n", "mu", "nu", "theta_mod_2pi", "phase_re", "phase_im", "phase_dev"),
            rows=tuple(rows),
        )
        metrics = [
            Metric(
                "max_phase_dev",
                max(devs),
                config.get_float(cfg, "params.phase_threshold"),
            )
        ]
        parameters = {"alpha": alpha, "beta": beta, "n_count": len(ns)}
        return VerificationReport.build("params", command, parameters, metrics, table)

    # ten halvings of t land the endpoint metrics inside params.endpoint_tol
    ntext = args.n if args.n is not None else "0..10"
    steps = parse_int_list(ntext, "step")
    path = params.contraction_path(args.path, mu0=mu0, nu0=nu0, alpha=alpha, beta=beta)
    command = f"scan --path {args.path} --n {ntext}"
    rows = []
    for k in steps:
        t = 2.0 ** (-k)
        pt = path.point(t)
        if args.path == "q-to-1":
            rows.append((k, t, pt["mu"], pt["nu"], pt["q"]))
        else:
            rows.append((k, t, pt["mu"], pt["nu"], pt["omega_ratio"], pt["q"]))
    if args.path == "q-to-1":
        table = Table(columns=("step", "t", "mu", "nu", "q"), rows=tuple(rows))
        metrics = [Metric("final_q_offset", abs(rows[-1][4] - 1.0), endpoint_tol)]
    else:
        table = Table(
            columns=("step", "t", "mu", "nu", "omega_ratio", "q"), rows=tuple(rows)
        )
        metrics = [Metric("final_omega_ratio", rows[-1][4], endpoint_tol)]
    parameters = {"path": args.path, "mu0": mu0, "nu0": nu0, "steps": len(steps)}
    return VerificationReport.build("params", command, parameters, metrics, table)


def run_scan(args, cfg) -> VerificationReport:
    if (args.engine is None) == (args.path is None):
        raise ValueError("scan needs exactly one of --engine or --path")
    if args.path is not None:
        return _scan_path(args, cfg)
    if args.engine == "matrix":
        return _scan_matrix(args, cfg)
    if args.alpha is not None:
        return _scan_clockshift_periodicity(args, cfg)
    if args.dims is not None:
        return _scan_clockshift_grid(args, cfg)
    raise ValueError("clock-shift scan needs --alpha (periodicity) or --dims (grid)")


# ---------------------------------------------------------------------------
# expand
# ---------------------------------------------------------------------------


def expand_text(target: str, degree: int) -> str:
    """Canonical series text for the CLI expansion targets."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    if target == "P":
        return weyl.deformed_momentum(degree).to_text()
    if target == "X":
        return weyl.deformed_position(degree).to_text()
    if target == "prefactor":
        return weyl.prefactor_series(degree).to_text("theta")
    if target == "eq8-rhs":
        return weyl.identity_rhs(degree).to_text()
    if target == "eq9":
        inner = weyl.leading_order_target(degree).scaled(I)
        return f"-i*({inner.to_text()})"
    raise ValueError(f"unknown expand target: {target!r}")


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _emit(text: str, out_path: Optional[str]) -> None:
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        cfg = config.load_config(args.config)
        if args.command == "expand":
            degree = (
                args.degree
                if args.degree is not None
                else config.get_int(cfg, "symbolic.degree")
            )
            _emit(expand_text(args.target, degree) + "\n", args.out)
            return 0
        if args.command == "verify":
            report = run_verify(args, cfg)
        else:
            report = run_scan(args, cfg)
        _emit(report.render(args.format), args.out)
    except Exception as exc:  # noqa: BLE001 - malformed input must not traceback
        engine = getattr(args, "engine", None)
        if engine is None:
            # expand is symbolic-engine work; path scans belong to params
            engine = "symbolic" if args.command == "expand" else "params"
        report = VerificationReport.error(
            engine, args.command, {}, f"{type(exc).__name__}: {exc}"
        )
        try:
            _emit(report.render("json" if args.format == "csv" else args.format),
                  args.out)
        except OSError:
            sys.stderr.write(str(exc) + "\n")
        return 2
    return {"pass": 0, "fail": 1}.get(report.verdict, 2)


if __name__ == "__main__":
    sys.exit(main())

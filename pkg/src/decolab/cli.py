"""Command-line front end: scenario files in, reports out.

Subcommands
-----------
evolve           emit a trajectory (CSV with a ``#`` JSON metadata line,
                 or one JSON document with ``--format json``)
compare          factor-product vs brute-force evolution on one grid,
                 with both long-time asymptotes
spectrum         cubic coefficients, roots, eigenvalues, stability verdict
born-check       Born-rule endpoint of the factor-product limit
zassenhaus-check splitting error order on a seeded random generator pair

Exit codes: 0 success, 2 config/usage error, 3 domain error.  The
environment variable DECOLAB_TOL overrides the default reporting
tolerance 1e-9 used for warning thresholds (diagnostics only; it never
changes any correctness tolerance).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from .asymptotics import born_rates, stationary_approx, stationary_exact
from .core_types import (
    KET0,
    KET1,
    PLUS,
    DensityMatrix2,
    EnergyPair,
    LindbladRates,
    ScenarioConfig,
    dressed_hamiltonian,
    make_amplitudes,
)
from .errors import (
    BracketFailure,
    DecolabError,
    DegenerateAmplitude,
    DegenerateCase,
    DegenerateSpectrum,
    NonPhysical,
    OverflowGuard,
)
from .propagators import PropagatorMethod, evolve_grid, inf_norm
from .spectral import EQUAL_WEIGHT_TOL, characteristic_cubic, solve_cubic
from .superoperator import build_d_hat, build_h_hat
from .zassenhaus import order_check

DEFAULT_REPORT_TOL = 1e-9
BORN_CHECK_TOL = 1e-12

_STANDARD_STATES = {"ket0": KET0, "ket1": KET1, "plus": PLUS}

_KNOWN_KEYS = {
    "alpha",
    "beta",
    "e0",
    "e1",
    "mu",
    "nu",
    "born_scale",
    "t_measure",
    "t_decoherence",
    "t_max",
    "steps",
    "initial",
    "method",
}


class ConfigError(Exception):
    """Scenario file could not be parsed or validated."""


@dataclass(frozen=True)
class TrajectoryRow:
    """One emitted sample of an evolving state."""

    t: float
    a: float
    b_re: float
    b_im: float
    d: float
    trace_err: float
    min_eig: float
    coherence: float

    @classmethod
    def from_state(cls, t: float, rho: DensityMatrix2) -> "TrajectoryRow":
        return cls(
            t=t,
            a=rho.a,
            b_re=rho.b.real,
            b_im=rho.b.imag,
            d=rho.d,
            trace_err=abs(rho.a + rho.d - 1.0),
            min_eig=rho.min_eigenvalue(),
            coherence=rho.coherence,
        )


def report_tolerance() -> float:
    raw = os.environ.get("DECOLAB_TOL")
    if raw is None:
        return DEFAULT_REPORT_TOL
    try:
        value = float(raw)
    except ValueError as exc:
        raise ConfigError(f"DECOLAB_TOL is not a number: {raw!r}") from exc
    if not value > 0.0:
        raise ConfigError(f"DECOLAB_TOL must be positive, got {raw!r}")
    return value


def _fmt(x: float) -> str:
    return f"{x:.12e}"


def _complex_pair(raw, key: str) -> complex:
    if not (isinstance(raw, list) and len(raw) == 2):
        raise ConfigError(f"{key} must be a [real, imag] pair, got {raw!r}")
    try:
        return complex(float(raw[0]), float(raw[1]))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key} entries must be numbers: {raw!r}") from exc


def _number(raw_config: dict, key: str) -> float:
    if key not in raw_config:
        raise ConfigError(f"missing required key {key!r}")
    value = raw_config[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    return float(value)


def _initial_state(raw) -> DensityMatrix2:
    if isinstance(raw, str):
        if raw not in _STANDARD_STATES:
            raise ConfigError(
                f"initial must be one of {sorted(_STANDARD_STATES)} or [a, b_re, b_im, d], got {raw!r}"
            )
        return _STANDARD_STATES[raw]
    if isinstance(raw, list) and len(raw) == 4:
        try:
            a, b_re, b_im, d = (float(v) for v in raw)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"initial entries must be numbers: {raw!r}") from exc
        try:
            return DensityMatrix2(a, complex(b_re, b_im), d)
        except NonPhysical as exc:
            raise ConfigError(f"initial state is not physical: {exc}") from exc
    raise ConfigError(f"initial must be a name or a 4-number list, got {raw!r}")


def load_scenario(path: str) -> tuple[ScenarioConfig, str | None, dict]:
    """Read and validate a scenario file.

    Returns the scenario, the method named in the file (if any), and a
    metadata echo of the resolved parameters.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path} must contain one JSON object")
    unknown = set(raw) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    try:
        amps = make_amplitudes(
            _complex_pair(raw.get("alpha"), "alpha"),
            _complex_pair(raw.get("beta"), "beta"),
        )
        energies = EnergyPair(_number(raw, "e0"), _number(raw, "e1"))
        has_rates = "mu" in raw or "nu" in raw
        has_born = "born_scale" in raw
        if has_rates and has_born:
            raise ConfigError("mu/nu and born_scale are mutually exclusive")
        if has_born:
            born_scale = _number(raw, "born_scale")
            rates = born_rates(amps, born_scale)
        elif has_rates:
            born_scale = None
            rates = LindbladRates(_number(raw, "mu"), _number(raw, "nu"))
        else:
            raise ConfigError("need either mu and nu, or born_scale")
        initial = _initial_state(raw.get("initial", "ket0"))
        steps = raw.get("steps")
        if isinstance(steps, bool) or not isinstance(steps, int):
            raise ConfigError(f"steps must be an integer, got {steps!r}")
        config = ScenarioConfig(
            amps=amps,
            energies=energies,
            rates=rates,
            t_measure=_number(raw, "t_measure"),
            t_max=_number(raw, "t_max"),
            steps=steps,
            initial_state=initial,
            t_decoherence=_number(raw, "t_decoherence") if "t_decoherence" in raw else None,
        )
    except ConfigError:
        raise
    except DegenerateAmplitude:
        raise
    except (DecolabError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc

    method = raw.get("method")
    if method is not None and not isinstance(method, str):
        raise ConfigError(f"method must be a string, got {method!r}")
    meta = {
        "alpha": [amps.alpha.real, amps.alpha.imag],
        "beta": [amps.beta.real, amps.beta.imag],
        "e0": energies.e0,
        "e1": energies.e1,
        "mu": rates.mu,
        "nu": rates.nu,
        "t_measure": config.t_measure,
        "t_max": config.t_max,
        "steps": config.steps,
        "initial": raw.get("initial", "ket0"),
    }
    if born_scale is not None:
        meta["born_scale"] = born_scale
    if config.t_decoherence is not None:
        meta["t_decoherence"] = config.t_decoherence
    return config, method, meta


def _resolve_method(flag_value: str | None, config_value: str | None) -> PropagatorMethod:
    name = flag_value or config_value
    if name is None:
        raise ConfigError("no method given: set 'method' in the config or pass --method")
    try:
        return PropagatorMethod(name)
    except ValueError as exc:
        valid = [m.value for m in PropagatorMethod]
        raise ConfigError(f"unknown method {name!r}; choose from {valid}") from exc


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _metadata_line(meta: dict) -> str:
    return "# " + json.dumps(meta, sort_keys=True, separators=(",", ":"))


def cmd_evolve(args) -> int:
    config, config_method, meta = load_scenario(args.config)
    method = _resolve_method(args.method, config_method)
    tol = report_tolerance()
    times = config.time_grid()
    states = evolve_grid(
        config.initial_state, times, method, config.amps, config.energies, config.rates
    )
    rows = [TrajectoryRow.from_state(float(t), rho) for t, rho in zip(times, states)]

    positivity = [r.t for r in rows if r.min_eig < -tol]
    trace_bad = [r.t for r in rows if r.trace_err > tol]
    meta = dict(meta)
    meta.update(
        {
            "command": "evolve",
            "method": method.value,
            "report_tol": tol,
            "warnings": {
                "positivity_violations": len(positivity),
                "first_positivity_t": positivity[0] if positivity else None,
                "trace_violations": len(trace_bad),
            },
        }
    )

    if args.format == "json":
        doc = {
            "metadata": meta,
            "rows": [
                {
                    "t": r.t,
                    "a": r.a,
                    "b_re": r.b_re,
                    "b_im": r.b_im,
                    "d": r.d,
                    "trace_err": r.trace_err,
                    "min_eig": r.min_eig,
                    "coherence": r.coherence,
                }
                for r in rows
            ],
        }
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", args.out)
        return 0

    lines = [_metadata_line(meta), "t,a,b_re,b_im,d,trace_err,min_eig,coherence"]
    for r in rows:
        lines.append(
            ",".join(
                _fmt(v)
                for v in (r.t, r.a, r.b_re, r.b_im, r.d, r.trace_err, r.min_eig, r.coherence)
            )
        )
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_compare(args) -> int:
    config, _, meta = load_scenario(args.config)
    times = config.time_grid()
    approx = evolve_grid(
        config.initial_state,
        times,
        PropagatorMethod.APPROX_PRODUCT,
        config.amps,
        config.energies,
        config.rates,
    )
    exact = evolve_grid(
        config.initial_state,
        times,
        PropagatorMethod.EXACT_ORACLE,
        config.amps,
        config.energies,
        config.rates,
    )
    deviations = [
        inf_norm(rho_a.matrix() - rho_e.matrix()) for rho_a, rho_e in zip(approx, exact)
    ]

    approx_limit = stationary_approx(config.rates, config.initial_state)
    try:
        exact_report = stationary_exact(
            config.amps, config.energies, config.rates, config.initial_state
        )
        exact_limit = exact_report.rho_limit
        degenerate = False
        asymptote_exact = [exact_limit.a, exact_limit.b.real, exact_limit.b.imag, exact_limit.d]
        asymptote_gap = inf_norm(approx_limit.matrix() - exact_limit.matrix())
        limit_residual = exact_report.residual
    except DegenerateSpectrum:
        degenerate = True
        asymptote_exact = None
        asymptote_gap = None
        limit_residual = None

    before = [dev for t, dev in zip(times, deviations) if t <= config.t_measure]
    meta = dict(meta)
    meta.update(
        {
            "command": "compare",
            "degenerate": degenerate,
            "asymptote_approx": [approx_limit.a, 0.0, 0.0, approx_limit.d],
            "asymptote_exact": asymptote_exact,
            "asymptote_gap": asymptote_gap,
            "exact_limit_residual": limit_residual,
            "max_dev_before_t_measure": max(before) if before else None,
            "dev_at_t_max": deviations[-1],
        }
    )
    lines = [_metadata_line(meta), "t,deviation"]
    for t, dev in zip(times, deviations):
        lines.append(f"{_fmt(float(t))},{_fmt(dev)}")
    _emit("\n".join(lines) + "\n", None)
    return 0


def cmd_spectrum(args) -> int:
    config, _, _ = load_scenario(args.config)
    coeffs = characteristic_cubic(config.amps, config.energies, config.rates)
    degenerate = coeffs.a0 <= EQUAL_WEIGHT_TOL * coeffs.a1 * coeffs.a2
    roots = solve_cubic(coeffs)
    shift = 0.5 * config.rates.total
    lams = [0.0 + 0.0j] + [root - shift for root in roots]
    stable = all(lam.real < 0.0 for lam in lams[1:])

    lines = [
        "command = spectrum",
        f"case = {'DEGENERATE' if degenerate else 'GENERIC'}",
        f"cubic_a2 = {_fmt(coeffs.a2)}",
        f"cubic_a1 = {_fmt(coeffs.a1)}",
        f"cubic_a0 = {_fmt(coeffs.a0)}",
    ]
    for name, root in zip(("root_real", "root_plus", "root_minus"), roots):
        residual = abs(coeffs.value(root))
        lines.append(
            f"{name} = {_fmt(root.real)} {_fmt(root.imag)} residual = {_fmt(residual)}"
        )
    lines.append("lambda_1 = 0.000000000000e+00 0.000000000000e+00")
    for idx, lam in enumerate(lams[1:], start=2):
        lines.append(f"lambda_{idx} = {_fmt(lam.real)} {_fmt(lam.imag)}")
    lines.append(f"decaying_modes_stable = {'true' if stable else 'false'}")
    _emit("\n".join(lines) + "\n", None)
    return 0


def cmd_born_check(args) -> int:
    config, _, meta = load_scenario(args.config)
    scale = args.scale if args.scale is not None else meta.get("born_scale", 1.0)
    if not scale > 0.0:
        raise ConfigError(f"--scale must be positive, got {scale}")
    rates = born_rates(config.amps, scale)
    limit = stationary_approx(rates, KET0)
    expected0 = config.amps.weight0
    expected1 = config.amps.weight1
    deviation = max(abs(limit.a - expected0), abs(limit.d - expected1))
    ok = deviation <= BORN_CHECK_TOL
    lines = [
        "command = born-check",
        f"scale = {_fmt(scale)}",
        f"mu = {_fmt(rates.mu)}",
        f"nu = {_fmt(rates.nu)}",
        f"p0 = {_fmt(limit.a)}",
        f"p1 = {_fmt(limit.d)}",
        f"weight0 = {_fmt(expected0)}",
        f"weight1 = {_fmt(expected1)}",
        f"max_deviation = {_fmt(deviation)}",
        f"verdict = {'PASS' if ok else 'FAIL'}",
    ]
    _emit("\n".join(lines) + "\n", None)
    return 0 if ok else 3


def _draw_generator_pair(seed: int):
    rng = np.random.default_rng(seed)
    weight0 = rng.uniform(0.15, 0.85)
    phase_a, phase_b = rng.uniform(0.0, 2.0 * np.pi, size=2)
    amps = make_amplitudes(
        np.sqrt(weight0) * np.exp(1j * phase_a),
        np.sqrt(1.0 - weight0) * np.exp(1j * phase_b),
        normalize=True,
    )
    e0 = rng.uniform(-1.0, 1.0)
    energies = EnergyPair(e0, e0 + rng.uniform(0.5, 2.0))
    rates = LindbladRates(rng.uniform(0.3, 1.5), rng.uniform(0.3, 1.5))
    h_hat = build_h_hat(dressed_hamiltonian(amps, energies))
    d_hat = build_d_hat(rates)
    return h_hat, d_hat


def cmd_zassenhaus_check(args) -> int:
    h_hat, d_hat = _draw_generator_pair(args.seed)
    t0 = 0.1 / inf_norm(h_hat + d_hat)
    result = order_check(h_hat, d_hat, args.order, t0, halvings=5)
    window = 0.3
    ok = result.slope_ok(window)
    lines = [
        "command = zassenhaus-check",
        f"order = {args.order}",
        f"seed = {args.seed}",
        f"t0 = {_fmt(t0)}",
    ]
    for t, err in zip(result.t_values, result.errors):
        lines.append(f"t = {_fmt(t)} error = {_fmt(err)}")
    lines.append(f"fitted_slope = {_fmt(result.fitted_slope)}")
    lines.append(f"expected_slope = {_fmt(result.expected_slope())}")
    lines.append(f"window = {_fmt(window)}")
    lines.append(f"verdict = {'PASS' if ok else 'FAIL'}")
    _emit("\n".join(lines) + "\n", None)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="decolab",
        description="Driven two-level Lindblad decoherence: trajectories, spectra, asymptotes.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_evolve = sub.add_parser("evolve", help="emit a trajectory for one scenario")
    p_evolve.add_argument("config", help="scenario JSON file")
    p_evolve.add_argument(
        "--method",
        choices=[m.value for m in PropagatorMethod],
        help="override the method named in the config",
    )
    p_evolve.add_argument("--format", choices=["csv", "json"], default="csv")
    p_evolve.add_argument("--out", help="write output to this path instead of stdout")
    p_evolve.set_defaults(func=cmd_evolve)

    p_compare = sub.add_parser(
        "compare", help="factor product vs brute force on the same grid"
    )
    p_compare.add_argument("config", help="scenario JSON file")
    p_compare.set_defaults(func=cmd_compare)

    p_spectrum = sub.add_parser("spectrum", help="cubic roots and eigenvalues of W")
    p_spectrum.add_argument("config", help="scenario JSON file")
    p_spectrum.set_defaults(func=cmd_spectrum)

    p_born = sub.add_parser("born-check", help="Born endpoint of the factor-product limit")
    p_born.add_argument("config", help="scenario JSON file")
    p_born.add_argument("--scale", type=float, default=None, help="overall rate scale (default 1)")
    p_born.set_defaults(func=cmd_born_check)

    p_zass = sub.add_parser(
        "zassenhaus-check", help="splitting error order on a random generator pair"
    )
    p_zass.add_argument("--order", type=int, choices=[2, 3], required=True)
    p_zass.add_argument("--seed", type=int, default=0)
    p_zass.set_defaults(func=cmd_zassenhaus_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"decolab: config error: {exc}", file=sys.stderr)
        return 2
    except (
        DegenerateSpectrum,
        DegenerateAmplitude,
        DegenerateCase,
        OverflowGuard,
        BracketFailure,
        NonPhysical,
    ) as exc:
        print(f"decolab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())

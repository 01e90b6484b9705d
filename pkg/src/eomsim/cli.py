"""Command-line front end: ``eomsim steady|sweep|figure|validate``.

Exit codes: 0 success, 2 configuration error, 3 unstable steady point,
4 numerical or IO failure, 5 validation-suite failure.
"""

import argparse
import json
import os
import sys

from .config import RunConfig, merge_params, parse_config
from .errors import ConfigError, EomsimError, StabilityError
from .report import format_value, write_csv
from .sweeps import evaluate_point, run_sweep

EXIT_VALIDATION = 5


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None


def _parse_override(text):
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise ConfigError(f"override must look like key=value, got {text!r}")
    try:
        return key, json.loads(value)
    except json.JSONDecodeError:
        return key, value


def _jsonable(v):
    if hasattr(v, "tolist"):
        return v.tolist()
    if isinstance(v, float):
        return float(format_value(v))
    return v


def cmd_steady(cfg, out):
    res = evaluate_point(cfg.model, cfg.params)
    doc = {
        "model": cfg.model,
        "params": merge_params(cfg.model, cfg.params),
        "stable": res.stable,
        "observables": {k: _jsonable(v) for k, v in (res.observables or {}).items()},
        "diagnostics": {k: _jsonable(v) for k, v in res.diagnostics.items()},
        "covariance": _jsonable(res.V) if res.V is not None else None,
    }
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text)
    if out:
        os.makedirs(out, exist_ok=True)
        with open(os.path.join(out, "steady.json"), "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if not res.stable:
        raise StabilityError(
            f"steady point is unstable (spectral abscissa {res.diagnostics['abscissa_over_omega_b']:.3e} omega_b)")
    return 0


def _emit(spec, out, svg, stem):
    result = run_sweep(spec)
    out = out or "."
    os.makedirs(out, exist_ok=True)
    csv_path = os.path.join(out, f"{stem}.csv")
    write_csv(result, csv_path)
    print(csv_path)
    if svg:
        from .plotting import save_svg

        svg_path = os.path.join(out, f"{stem}.svg")
        save_svg(result, svg_path)
        print(svg_path)
    n_unstable = sum(not p.stable for p in result.points)
    print(f"{len(result.points)} points, {n_unstable} unstable", file=sys.stderr)
    return 0


def cmd_validate(quick):
    from .validation import run_validation

    failed = 0
    for name, ok, detail in run_validation(quick=quick):
        print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
        failed += not ok
    return EXIT_VALIDATION if failed else 0


def build_parser():
    parser = argparse.ArgumentParser(prog="eomsim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("steady", help="evaluate a single parameter point")
    p.add_argument("--config", required=True)
    p.add_argument("--out")

    p = sub.add_parser("sweep", help="run a sweep described by a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--svg", action="store_true", help="also render the sweep as SVG")

    p = sub.add_parser("figure", help="run a figure preset")
    p.add_argument("--name", required=True)
    p.add_argument("--override", action="append", default=[], metavar="KEY=VALUE",
                   help="parameter or axisN.min|max|count|scale; repeatable")
    p.add_argument("--svg", action="store_true")
    p.add_argument("--out")

    p = sub.add_parser("validate", help="run the invariant and oracle suite")
    p.add_argument("--quick", action="store_true", help="thin grids for a fast run")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            return cmd_validate(args.quick)
        if args.command == "figure":
            overrides = dict(_parse_override(o) for o in args.override)
            cfg = parse_config(json.dumps({"command": "figure", "name": args.name, "overrides": overrides}))
            return _emit(cfg.resolved, args.out, args.svg, cfg.name)
        cfg = parse_config(_read(args.config))
        if cfg.command != args.command:
            raise ConfigError(f"config says command {cfg.command!r} but {args.command!r} was invoked")
        out = args.out or cfg.out
        if args.command == "steady":
            return cmd_steady(cfg, out)
        return _emit(cfg.resolved, out, args.svg or cfg.plot, cfg.resolved.name or "sweep")
    except EomsimError as exc:
        print(f"eomsim: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"eomsim: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())

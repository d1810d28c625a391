"""Command line entry point: ``swmimo {snr,power-cdf,steering,corr-row,validate}``."""

from __future__ import annotations

import argparse
import logging
import sys

from . import experiments as ex
from .circuit import REGIMES
from .config import ConfigError, load_config

log = logging.getLogger("swmimo")

EXIT_OK, EXIT_RUNTIME, EXIT_INVALID = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="swmimo", description=__doc__)
    p.add_argument("--schema", action="store_true", help="print the CSV column contract and exit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="scenario INI file")
    common.add_argument("--seed", type=int, help="master seed (fading.seed)")
    common.add_argument("--trials", type=int, help="Monte Carlo trials (run.trials)")
    common.add_argument("--regime", choices=REGIMES, help="coupling regime")
    common.add_argument("--out", default=".", metavar="DIR", help="output directory")
    common.add_argument("--svg", action="store_true", help="also render an SVG plot")
    common.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE",
                        help="override one configuration value (repeatable)")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command")
    sub.add_parser("snr", parents=[common], help="SIMO eigen-SNR versus frequency")
    pc = sub.add_parser("power-cdf", parents=[common], help="scattered-power CDFs")
    pc.add_argument("--freq", type=float, action="append", help="frequency in Hz (repeatable)")
    st = sub.add_parser("steering", parents=[common], help="LoS steering-vector magnitude profiles")
    st.add_argument("--freq", type=float, default=1e8)
    st.add_argument("--elements", type=int, default=32)
    cr = sub.add_parser("corr-row", parents=[common], help="first row of the effective correlation")
    cr.add_argument("--freq", type=float, action="append")
    cr.add_argument("--elements", type=int, default=32)
    sub.add_parser("validate", parents=[common], help="run the invariant suite")
    return p


def _overrides(args) -> dict:
    ov = {}
    for item in args.set:
        key, sep, val = item.partition("=")
        if not sep or "." not in key:
            raise ConfigError(f"--set expects SECTION.KEY=VALUE, got {item!r}")
        ov[key.strip()] = val.strip()
    if args.seed is not None:
        ov["fading.seed"] = str(args.seed)
    if args.trials is not None:
        ov["run.trials"] = str(args.trials)
    return ov


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.schema:
        print(ex.schema_text())
        return EXIT_OK
    if not args.command:
        _parser().print_help()
        return EXIT_INVALID
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = load_config(args.config, _overrides(args))
    except (ConfigError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        if args.command == "snr":
            path = ex.run_snr(cfg, args.out, regime=args.regime, svg=args.svg)
        elif args.command == "power-cdf":
            path = ex.run_power_cdf(cfg, args.out, args.freq, regime=args.regime, svg=args.svg)
        elif args.command == "steering":
            path = ex.run_steering(cfg, args.out, args.freq, n=args.elements, regime=args.regime, svg=args.svg)
        elif args.command == "corr-row":
            path = ex.run_corr_row(cfg, args.out, args.freq, n=args.elements, regime=args.regime, svg=args.svg)
        else:
            results = ex.validate(cfg, regime=args.regime)
            for r in results:
                print(r.line())
            return EXIT_OK if all(r.passed for r in results) else EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        log.debug("run failed", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

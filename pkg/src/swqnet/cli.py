"""Command-line driver that writes plot-ready tables and validation reports.

Every artifact starts with comment lines recording the toolkit version,
the command and its fully resolved configuration::

    # swqnet 0.1.0 heatmap
    # config: convention = verbatim
    ...

Those ``# config:`` lines are themselves a valid ``--config`` file, so any
artifact can be regenerated byte for byte.
"""

import argparse
import json
import logging
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from ._prob import DomainError
from .average import scp_heatmap, threshold_boundary, threshold_distance, threshold_region
from .entanglement import ChainConvention, scp_bound, scp_chain
from .montecarlo import (
    empirical_clustering,
    empirical_mean_network_distance,
    empirical_path_dist,
    exact_chain_scp,
    general_shortest_path_len,
    sample_graph,
    shortest_path_len,
    simulate_chain_scp,
)
from .pathdist import (
    NetworkParams,
    clustering_coefficient,
    mean_network_distance,
    path_dist,
)

log = logging.getLogger("swqnet")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_ORACLE = 4

# keys that never change an artifact's content
_NON_CONTENT_KEYS = {"out", "config"}

DEFAULTS = {
    "scp-chain": {
        "links": "1:60:1",
        "phi": "0.3,0.4,0.45",
        "convention": "verbatim",
        "format": "csv",
        "out": ".",
    },
    "mean-path": {
        "n": "100,200,500",
        "p": "0:0.5:0.01",
        "directed": "true",
        "format": "csv",
        "out": ".",
    },
    "path-dist": {
        "n": "1000",
        "r": "50",
        "p": "0.01",
        "directed": "false",
        "trials": "0",
        "seed": "0",
        "format": "csv",
        "out": ".",
    },
    "heatmap": {
        "n": "1000",
        "r": "20,80,500",
        "phi": "0.25:0.5:0.0025",
        "m": "0:300:1",
        "convention": "verbatim",
        "format": "csv",
        "out": ".",
    },
    "threshold-region": {
        "n": "1000",
        "phi": "0.45",
        "target": "2/3",
        "r": "1:500:1",
        "m": "0:300:1",
        "convention": "verbatim",
        "format": "csv",
        "out": ".",
    },
    "validate": {
        "seed": "0",
        "trials": "100000",
        "chain_trials": "1000000",
        "tv_tol": "0.02",
        "sigmas": "3",
        "mean_rel_tol": "0.02",
        "out": ".",
    },
}


class ConfigError(Exception):
    """The run configuration is invalid; nothing has been computed."""


class OracleFailure(Exception):
    """At least one Monte Carlo or exact-oracle check failed."""


# -- parsing helpers -----------------------------------------------------


def parse_number(text):
    """Float from ``"0.45"`` or an exact fraction such as ``"2/3"``."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a number: {text!r}") from exc


def parse_int(text, name):
    value = parse_number(text)
    if value != int(value):
        raise ConfigError(f"{name} must be an integer, got {text!r}")
    return int(value)


def parse_axis(text, name):
    """Axis from ``"a,b,c"`` or an inclusive ``"start:stop:step"`` range."""
    text = text.strip()
    if not text:
        raise ConfigError(f"{name} axis is empty")
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"{name} range must be start:stop:step, got {text!r}")
        start, stop, step = (parse_number(x) for x in parts)
        if step <= 0 or stop < start:
            raise ConfigError(f"{name} range {text!r} is empty")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return start + step * np.arange(count)
    values = [parse_number(x) for x in text.split(",") if x.strip()]
    if not values:
        raise ConfigError(f"{name} axis is empty")
    return np.array(values)


def parse_int_axis(text, name):
    axis = parse_axis(text, name)
    if np.any(axis != np.round(axis)):
        raise ConfigError(f"{name} values must be integers")
    return axis.astype(int)


def parse_bool(text, name):
    lowered = text.strip().lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise ConfigError(f"{name} must be true or false, got {text!r}")


def parse_convention(text):
    try:
        return ChainConvention.coerce(text.strip())
    except KeyError as exc:
        raise ConfigError(f"unknown convention {text!r}") from exc


def read_config_file(path):
    """Read a flat ``key = value`` file, ``#`` lines being comments.

    A file containing ``# config:`` lines (an emitted artifact) contributes
    only those lines.
    """
    lines = Path(path).read_text().splitlines()
    embedded = [ln.strip()[len("# config:"):] for ln in lines if ln.strip().startswith("# config:")]
    if embedded:
        lines = embedded
    cfg = {}
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"malformed config line: {raw!r}")
        key, value = line.split("=", 1)
        cfg[key.strip().replace("-", "_")] = value.strip()
    return cfg


# -- emission ------------------------------------------------------------


def fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return "nan"
    return format(value, ".17g")


def _header(command, cfg, meta=None):
    lines = [f"# swqnet {__version__} {command}"]
    for key in sorted(cfg):
        if key not in _NON_CONTENT_KEYS:
            lines.append(f"# config: {key} = {cfg[key]}")
    for key, value in (meta or {}).items():
        lines.append(f"# meta: {key} = {value}")
    return lines


def _content_config(cfg):
    return {k: v for k, v in sorted(cfg.items()) if k not in _NON_CONTENT_KEYS}


def write_table(path, command, cfg, columns, rows, meta=None):
    """Long-form CSV with a commented provenance header, or a JSON record table."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if cfg.get("format", "csv") == "json":
        doc = {
            "toolkit": "swqnet",
            "version": __version__,
            "command": command,
            "config": _content_config(cfg),
            "meta": meta or {},
            "columns": list(columns),
            "rows": [[_json_value(v) for v in row] for row in rows],
        }
        path = path.with_suffix(".json")
        path.write_text(json.dumps(doc, indent=1) + "\n")
        return path
    lines = _header(command, cfg, meta)
    lines.append(",".join(columns))
    lines.extend(",".join(fmt(v) for v in row) for row in rows)
    path = path.with_suffix(".csv")
    path.write_text("\n".join(lines) + "\n")
    return path


def write_grid_json(path, command, cfg, x_name, x_axis, y_name, y_axis, values, meta=None):
    path = Path(path).with_suffix(".json")
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = {
        "toolkit": "swqnet",
        "version": __version__,
        "command": command,
        "config": _content_config(cfg),
        "meta": meta or {},
        "x_name": x_name,
        "x_axis": [_json_value(v) for v in x_axis],
        "y_name": y_name,
        "y_axis": [_json_value(v) for v in y_axis],
        "values": [[_json_value(v) for v in row] for row in values],
    }
    path.write_text(json.dumps(doc, indent=1) + "\n")
    return path


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    v = float(v)
    return None if math.isnan(v) else v


# -- commands ------------------------------------------------------------


def _require_format(cfg):
    if cfg.get("format", "csv") not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {cfg['format']!r}")


def cmd_scp_chain(cfg):
    links = parse_int_axis(cfg["links"], "links")
    phis = parse_axis(cfg["phi"], "phi")
    conv = parse_convention(cfg["convention"])
    _require_format(cfg)
    if links.min() < 1 or phis.min() < 0 or phis.max() > 0.5:
        raise ConfigError("links must be >= 1 and phi within [0, 0.5]")
    rows = [
        (int(n), phi, scp_chain(int(n), phi, conv), scp_bound(int(n), phi))
        for phi in phis
        for n in links
    ]
    out = Path(cfg["out"]) / "scp_chain"
    return [write_table(out, "scp-chain", cfg, ("links", "phi", "scp", "bound"), rows)]


def cmd_mean_path(cfg):
    ns = parse_int_axis(cfg["n"], "n")
    ps = parse_axis(cfg["p"], "p")
    directed = parse_bool(cfg["directed"], "directed")
    _require_format(cfg)
    if ns.min() < 3 or ps.min() < 0 or ps.max() > 1:
        raise ConfigError("n must be >= 3 and p within [0, 1]")
    rows = []
    for n in ns:
        for p in ps:
            log.info("mean-path n=%d p=%g", n, p)
            rows.append((p, int(n), mean_network_distance(NetworkParams(int(n), p, directed))))
    out = Path(cfg["out"]) / "mean_path"
    return [write_table(out, "mean-path", cfg, ("p", "n", "mean_distance"), rows)]


def _resolve_p(cfg, n):
    if cfg.get("m") is not None:
        m = parse_number(cfg["m"])
        if m < 0:
            raise ConfigError("m must be >= 0")
        return min(1.0, m / n)
    p = parse_number(cfg["p"])
    if not 0.0 <= p <= 1.0:
        raise ConfigError("p must lie in [0, 1]")
    return p


def cmd_path_dist(cfg):
    n = parse_int(cfg["n"], "n")
    r = parse_int(cfg["r"], "r")
    p = _resolve_p(cfg, n)
    directed = parse_bool(cfg["directed"], "directed")
    trials = parse_int(cfg["trials"], "trials")
    seed = parse_int(cfg["seed"], "seed")
    _require_format(cfg)
    if n < 3 or trials < 0 or seed < 0:
        raise ConfigError("n must be >= 3, trials and seed non-negative")
    params = NetworkParams(n, p, directed)
    if not 1 <= r <= params.max_distance:
        raise ConfigError(f"r must lie in 1..{params.max_distance}")
    dist = path_dist(r, p, directed)
    columns = ["ell", "analytic", "raw"]
    cols = [dist.lengths, dist.probs, dist.raw]
    if trials:
        columns.append("empirical")
        cols.append(empirical_path_dist(params, r, trials, seed).frequencies)
    meta = {"normalization_deficit": fmt(dist.normalization_deficit)}
    out = Path(cfg["out"]) / "path_dist"
    return [write_table(out, "path-dist", cfg, columns, list(zip(*cols)), meta)]


def cmd_heatmap(cfg):
    n = parse_int(cfg["n"], "n")
    rs = parse_int_axis(cfg["r"], "r")
    phis = parse_axis(cfg["phi"], "phi")
    ms = parse_axis(cfg["m"], "m")
    conv = parse_convention(cfg["convention"])
    _require_format(cfg)
    if n < 3 or rs.min() < 1 or rs.max() > n // 2:
        raise ConfigError(f"r values must lie in 1..{n // 2}")
    if phis.min() < 0 or phis.max() > 0.5 or ms.min() < 0:
        raise ConfigError("phi must lie in [0, 0.5] and m be non-negative")
    written = []
    for r in rs:
        log.info("heatmap r=%d", r)
        grid = scp_heatmap(int(r), n, phis, ms, conv)
        out = Path(cfg["out"]) / f"heatmap_r{int(r)}"
        meta = {"r": str(int(r))}
        if cfg["format"] == "json":
            written.append(
                write_grid_json(out, "heatmap", cfg, "phi", phis, "m", ms, grid.values, meta)
            )
            continue
        rows = [
            (phi, m, grid.values[i, j]) for i, phi in enumerate(phis) for j, m in enumerate(ms)
        ]
        written.append(write_table(out, "heatmap", cfg, ("phi", "m", "scp"), rows, meta))
    return written


def _target_label(text):
    return text.strip().replace("/", "_").replace(".", "p")


def cmd_threshold_region(cfg):
    n = parse_int(cfg["n"], "n")
    phi = parse_number(cfg["phi"])
    targets = [t for t in cfg["target"].split(",") if t.strip()]
    rs = parse_int_axis(cfg["r"], "r")
    ms = parse_axis(cfg["m"], "m")
    conv = parse_convention(cfg["convention"])
    _require_format(cfg)
    if not targets:
        raise ConfigError("target list is empty")
    values = [parse_number(t) for t in targets]
    if not 0 <= phi <= 0.5 or any(not 0 < v <= 1 for v in values):
        raise ConfigError("phi must lie in [0, 0.5] and targets in (0, 1]")
    if n < 3 or rs.min() < 1 or rs.max() > n // 2 or ms.min() < 0:
        raise ConfigError(f"r values must lie in 1..{n // 2} and m be non-negative")
    written = []
    for text, target in zip(targets, values):
        log.info("threshold-region target=%s", text)
        region = threshold_region(phi, target, n, rs, ms, conv)
        boundary = threshold_boundary(region, ms)
        meta = {
            "target": text.strip(),
            "threshold_distance": str(threshold_distance(phi, target, n, conv)),
        }
        label = _target_label(text)
        base = Path(cfg["out"])
        if cfg["format"] == "json":
            written.append(
                write_grid_json(
                    base / f"threshold_region_t{label}", "threshold-region", cfg,
                    "r", rs, "m", ms, region, meta,
                )
            )
        else:
            rows = [
                (int(r), m, bool(region[i, j]))
                for i, r in enumerate(rs)
                for j, m in enumerate(ms)
            ]
            written.append(
                write_table(
                    base / f"threshold_region_t{label}", "threshold-region", cfg,
                    ("r", "m", "reaches_target"), rows, meta,
                )
            )
        written.append(
            write_table(
                base / f"threshold_boundary_t{label}", "threshold-region", cfg,
                ("r", "min_m"), list(zip(rs, boundary)), meta,
            )
        )
    return written


def run_validation(cfg):
    """Run the oracle suite and return the report dictionary."""
    seed = parse_int(cfg["seed"], "seed")
    trials = parse_int(cfg["trials"], "trials")
    chain_trials = parse_int(cfg["chain_trials"], "chain_trials")
    tv_tol = parse_number(cfg["tv_tol"])
    sigmas = parse_number(cfg["sigmas"])
    mean_rel_tol = parse_number(cfg["mean_rel_tol"])
    if seed < 0 or trials < 1 or chain_trials < 1:
        raise ConfigError("seed must be >= 0 and trial counts >= 1")
    if not 0 < tv_tol < 1 or not 0 < mean_rel_tol < 1 or not sigmas > 0:
        raise ConfigError("tolerances must be positive (tv_tol, mean_rel_tol below 1)")

    checks = []

    def record(name, passed, **detail):
        checks.append({"name": name, "passed": bool(passed), **detail})
        log.info("%s %s", "PASS" if passed else "FAIL", name)

    for directed in (False, True):
        params = NetworkParams(1000, 0.01, directed)
        emp = empirical_path_dist(params, 50, trials, seed)
        tv = emp.tv_distance(path_dist(50, 0.01, directed))
        kind = "directed" if directed else "undirected"
        record(f"path_dist_{kind}", tv < tv_tol, tv_distance=tv, tolerance=tv_tol,
               n=1000, p=0.01, r=50, trials=trials, seed=seed)

    for phi in (0.3, 0.4, 0.45):
        for links in range(1, 11):
            exact = exact_chain_scp(links, phi)
            closed = scp_chain(links, phi, ChainConvention.REPEATER_CALIBRATED)
            sim = simulate_chain_scp(links, phi, chain_trials, seed)
            record(
                f"chain_scp_links{links}_phi{phi}",
                sim.within(exact, sigmas) and abs(exact - closed) < 1e-9,
                exact=exact, calibrated_closed_form=closed, simulated=sim.estimate,
                stderr=sim.stderr, trials=chain_trials, seed=seed,
            )

    for p in (0.05, 0.1, 0.3):
        est = empirical_clustering(NetworkParams(1000, p), trials, seed)
        expected = clustering_coefficient(p)
        sd = math.sqrt(expected * (1 - expected) / trials)
        record(f"clustering_p{p}", abs(est - expected) <= sigmas * sd,
               estimate=est, expected=expected, stderr=sd, trials=trials, seed=seed)

    params = NetworkParams(100, 0.05, True)
    per_r = max(1, trials // 100)
    emp_mean = empirical_mean_network_distance(params, per_r, seed)
    ana_mean = mean_network_distance(params)
    rel = abs(emp_mean - ana_mean) / ana_mean
    record("mean_network_distance_n100_p0.05", rel < mean_rel_tol, empirical=emp_mean,
           analytic=ana_mean, relative_error=rel, trials_per_distance=per_r, seed=seed)

    mismatches = 0
    for i in range(200):
        directed = bool(i % 2)
        g = sample_graph(NetworkParams(60, 0.08, directed), seed + i)
        for b in (1, 7, 29, 30, 45):
            if shortest_path_len(g, 0, b) != general_shortest_path_len(g, 0, b):
                mismatches += 1
    record("shortest_path_equivalence", mismatches == 0, mismatches=mismatches,
           graphs=200, seed=seed)

    return {
        "toolkit": "swqnet",
        "version": __version__,
        "command": "validate",
        "config": _content_config(cfg),
        "passed": all(c["passed"] for c in checks),
        "checks": checks,
    }


def cmd_validate(cfg):
    report = run_validation(cfg)
    path = Path(cfg["out"]) / "validation_report.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report, indent=1, sort_keys=True) + "\n")
    if not report["passed"]:
        failed = [c["name"] for c in report["checks"] if not c["passed"]]
        raise OracleFailure("failed checks: " + ", ".join(failed))
    return [path]


COMMANDS = {
    "scp-chain": cmd_scp_chain,
    "mean-path": cmd_mean_path,
    "path-dist": cmd_path_dist,
    "heatmap": cmd_heatmap,
    "threshold-region": cmd_threshold_region,
    "validate": cmd_validate,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="swqnet", description="Entanglement distribution on hub-ring networks."
    )
    parser.add_argument("--version", action="version", version=f"swqnet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, defaults in DEFAULTS.items():
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="flat key = value file; flags override it")
        sp.add_argument("-v", "--verbose", action="store_true")
        for key in defaults:
            if key in ("p", "directed"):
                continue
            flag = "--" + key.replace("_", "-")
            if key == "convention":
                sp.add_argument(flag, choices=["verbatim", "calibrated"])
            elif key == "format":
                sp.add_argument(flag, choices=["csv", "json"])
            else:
                sp.add_argument(flag, dest=key)
        if "p" in defaults:
            group = sp.add_mutually_exclusive_group()
            group.add_argument("--p")
            if name == "path-dist":
                group.add_argument("--m")
        if "directed" in defaults:
            group = sp.add_mutually_exclusive_group()
            group.add_argument("--directed", dest="directed", action="store_const", const="true")
            group.add_argument("--undirected", dest="directed", action="store_const",
                               const="false")
    return parser


def resolve_config(command, args):
    """Merge defaults, config file and explicit flags, in increasing priority."""
    cfg = dict(DEFAULTS[command])
    allowed = set(cfg) | ({"m"} if command == "path-dist" else set())
    layers = []
    if args.config:
        try:
            file_cfg = read_config_file(args.config)
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        unknown = set(file_cfg) - allowed
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        layers.append(file_cfg)
    layers.append({k: v for k, v in vars(args).items() if k in allowed and v is not None})
    for layer in layers:
        # --p and --m name the same quantity; a later layer's choice wins
        if "m" in layer:
            cfg.pop("p", None)
        if "p" in layer:
            cfg.pop("m", None)
        cfg.update(layer)
    if "p" in cfg and "m" in cfg:
        raise ConfigError("p and m are mutually exclusive")
    return cfg


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = resolve_config(args.command, args)
        written = COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"swqnet: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"swqnet: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OracleFailure as exc:
        print(f"swqnet: validation failed: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    for path in written:
        log.info("wrote %s", path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

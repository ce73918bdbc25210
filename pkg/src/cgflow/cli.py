"""Command-line harness: manifests, subcommands, caching, reports.

Subcommands: estimate, calibrate, trace, oracle, validate.  Artifacts
are deterministic: JSONL with sorted keys for records, CSV for plot
data, no timestamps, cache hits noted on stderr only, so reruns are
byte-identical.

Exit codes: 0 success, 1 any instance failure or validation violation,
2 input error (malformed files, config invariant violations, missing
required flags).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from .errors import CGFlowError, DomainError
from .estimator import (
    calibrate,
    default_window,
    estimate,
    greedy_breakpoints,
    sample_window,
    verify_breakpoints,
)
from .origami import Origami
from .toruspair import TorusPair, random_torus_pairs

TRACE_HEADER = "t,upsilon_id,len_xi,len_zeta,systole,breakpoint"


class InputError(Exception):
    """Bad input: reported on stderr, exit code 2."""


def _decimal(text, field):
    """Exact rational from a decimal literal; '0.1' means one tenth."""
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{field} is not a number: {text!r}") from None


class RunConfig:
    """Validated configuration shared by all subcommands."""

    __slots__ = ("delta", "epsilon", "step", "margin", "sc_bound",
                 "budget", "seed", "mode", "cache_dir", "out")

    def __init__(self, args):
        self.delta = _decimal(args.delta, "--delta")
        if self.delta <= 0:
            raise InputError("--delta must be positive")
        if args.epsilon is None:
            self.epsilon = self.delta ** 2 / 4
        else:
            self.epsilon = _decimal(args.epsilon, "--epsilon")
        if not 0 < self.epsilon < self.delta ** 2 / 2:
            raise InputError(
                f"--epsilon must lie in (0, delta^2/2) = (0, {self.delta ** 2 / 2})"
            )
        self.step = _decimal(args.step, "--step")
        if self.step <= 0:
            raise InputError("--step must be positive")
        self.margin = float(args.margin)
        if self.margin < 0:
            raise InputError("--margin must be nonnegative")
        self.sc_bound = None
        if args.sc_bound is not None:
            self.sc_bound = float(args.sc_bound)
            if self.sc_bound <= 0:
                raise InputError("--sc-bound must be positive")
        self.budget = int(args.budget)
        if self.budget <= 0:
            raise InputError("--budget must be positive")
        self.seed = int(args.seed)
        self.mode = "csv" if args.csv else "json"
        self.cache_dir = Path(args.cache_dir) if args.cache_dir else None
        self.out = Path(args.out) if args.out else None

    def doc(self) -> dict:
        """Cache-key fields; seed excluded, pipelines are deterministic."""
        return {
            "delta": str(self.delta),
            "epsilon": str(self.epsilon),
            "step": str(self.step),
            "margin": self.margin,
            "sc_bound": self.sc_bound,
            "budget": self.budget,
        }

    def estimator_kwargs(self) -> dict:
        return {
            "delta": self.delta,
            "epsilon": self.epsilon,
            "step": self.step,
            "margin": self.margin,
            "budget": self.budget,
            "sc_bound": self.sc_bound,
        }


class Instance:
    """One manifest entry: stable id, canonical JSON doc, built object."""

    __slots__ = ("id", "doc", "obj")

    def __init__(self, ident, doc, obj):
        self.id = ident
        self.doc = doc
        self.obj = obj


def _build_instance(item, where) -> tuple[dict, object]:
    if not isinstance(item, dict):
        raise InputError(f"{where}: instance must be a JSON object")
    if item.get("surface") == "T1":
        for field in ("xi", "zeta"):
            v = item.get(field)
            if (not isinstance(v, list) or len(v) != 2
                    or not all(isinstance(c, int) for c in v)):
                raise InputError(f"{where}.{field}: need two integers")
        try:
            pair = TorusPair(tuple(item["xi"]), tuple(item["zeta"]))
        except DomainError as e:
            raise InputError(f"{where}: {e}") from None
        doc = {"surface": "T1", "xi": list(pair.xi), "zeta": list(pair.zeta)}
        return doc, pair
    if "h" in item or "v" in item or "n" in item:
        for field in ("n", "h", "v"):
            if field not in item:
                raise InputError(f"{where}: origami needs n, h and v")
        try:
            surf = Origami.from_cycles(item["h"], item["v"], item["n"])
        except (DomainError, TypeError) as e:
            raise InputError(f"{where}: {e}") from None
        doc = {"n": item["n"], "h": item["h"], "v": item["v"]}
        return doc, surf
    raise InputError(f"{where}: unrecognized instance schema")


def _generate(spec, where, seed_default) -> list[TorusPair]:
    if not isinstance(spec, dict):
        raise InputError(f"{where}: generate must be a JSON object")
    if spec.get("kind") != "torus_random":
        raise InputError(f"{where}.kind: only 'torus_random' is supported")
    count = spec.get("count")
    if not isinstance(count, int) or count < 1:
        raise InputError(f"{where}.count: need a positive integer")
    exclude = ()
    if "exclude" in spec:
        exclude = _generate(spec["exclude"], f"{where}.exclude", seed_default)
    try:
        return random_torus_pairs(
            count,
            low=spec.get("low", 3),
            high=spec.get("high", 15),
            seed=spec.get("seed", seed_default),
            exclude=exclude,
        )
    except DomainError as e:
        raise InputError(f"{where}: {e}") from None


def load_manifest(path, config) -> list[Instance]:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read manifest: {e}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(
            f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: manifest must be a JSON object")

    out: list[Instance] = []
    items = doc.get("instances", [])
    if not isinstance(items, list):
        raise InputError(f"{path}: 'instances' must be a list")
    for i, item in enumerate(items):
        built_doc, obj = _build_instance(item, f"instances[{i}]")
        ident = item.get("id", f"inst-{i:04d}")
        if not isinstance(ident, str) or not ident:
            raise InputError(f"instances[{i}].id: need a nonempty string")
        out.append(Instance(ident, built_doc, obj))
    if "generate" in doc:
        for i, pair in enumerate(_generate(doc["generate"], "generate", config.seed)):
            gdoc = {"surface": "T1", "xi": list(pair.xi), "zeta": list(pair.zeta)}
            out.append(Instance(f"gen-{i:04d}", gdoc, pair))

    if not out:
        raise InputError(f"{path}: manifest has no instances")
    seen = set()
    for inst in out:
        if inst.id in seen:
            raise InputError(f"duplicate instance id {inst.id!r}")
        seen.add(inst.id)
    return out


# -- caching ---------------------------------------------------------------


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cache_key(subcommand: str, instance_doc, config_doc) -> str:
    payload = canonical_json({
        "subcommand": subcommand,
        "instance": instance_doc,
        "config": config_doc,
    })
    return hashlib.sha256(payload.encode()).hexdigest()


def cache_get(cache_dir, key, validate) -> str | None:
    if cache_dir is None:
        return None
    path = cache_dir / f"{key}.json"
    if not path.exists():
        return None
    try:
        text = path.read_text()
        if not validate(text):
            raise ValueError("unexpected cache payload")
        return text
    except (OSError, ValueError, json.JSONDecodeError):
        print(f"cache: corrupted entry {key[:12]} rebuilt", file=sys.stderr)
        return None


def cache_put(cache_dir, key, text) -> None:
    if cache_dir is None:
        return
    cache_dir.mkdir(parents=True, exist_ok=True)
    tmp = cache_dir / f"{key}.tmp"
    tmp.write_text(text)
    tmp.replace(cache_dir / f"{key}.json")


def _valid_record(text: str) -> bool:
    return isinstance(json.loads(text), dict)


def _valid_csv(text: str) -> bool:
    return text.startswith(TRACE_HEADER)


# -- output ----------------------------------------------------------------


def write_artifact(config, text: str) -> None:
    if config.out is None:
        sys.stdout.write(text)
    else:
        config.out.write_text(text)


def _require_mode(config, subcommand, mode):
    if config.mode != mode:
        wanted = "--csv" if mode == "csv" else "--json"
        raise InputError(f"{subcommand} only writes {mode} output; use {wanted}")


# -- subcommands -----------------------------------------------------------


def _constants(args) -> tuple[float, float]:
    if args.calibration:
        try:
            doc = json.loads(Path(args.calibration).read_text())
        except OSError as e:
            raise InputError(f"cannot read calibration: {e}") from None
        except json.JSONDecodeError as e:
            raise InputError(
                f"{args.calibration}: invalid JSON at line {e.lineno}: {e.msg}"
            ) from None
        try:
            return float(doc["kappa"]), float(doc["theta"])
        except (KeyError, TypeError, ValueError):
            raise InputError(
                f"{args.calibration}: needs numeric 'kappa' and 'theta'"
            ) from None
    if args.kappa is None or args.theta is None:
        raise InputError(
            "estimate needs --calibration, or both --kappa and --theta"
        )
    kappa, theta = float(args.kappa), float(args.theta)
    if kappa < 0:
        raise InputError("--kappa must be nonnegative")
    if theta <= 0:
        raise InputError("--theta must be positive")
    return kappa, theta


def _oracle_json(report):
    if report.oracle_distance is not None:
        return report.oracle_distance
    if report.oracle_interval is not None:
        return list(report.oracle_interval)
    return None


def report_record(ident, report) -> dict:
    return {
        "id": ident,
        "n": report.n,
        "kappa": report.kappa_used,
        "theta": report.theta_used,
        "lower": report.lower,
        "upper": report.upper,
        "oracle": _oracle_json(report),
        "achieved_delta_min": report.achieved_delta_min,
        "window": [report.window[0], report.window[1]],
        "step": float(report.step),
        "flags": sorted(report.flags),
        "breakpoint_times": [float(t) for t in report.breakpoints.times],
    }


def run_estimate(args) -> int:
    config = RunConfig(args)
    _require_mode(config, "estimate", "json")
    instances = load_manifest(args.manifest, config)
    kappa, theta = _constants(args)
    config_doc = dict(config.doc(), kappa=kappa, theta=theta)

    lines = []
    failed = False
    for inst in instances:
        key = cache_key("estimate", inst.doc, config_doc)
        line = cache_get(config.cache_dir, key, _valid_record)
        if line is not None:
            print(f"cache: hit {inst.id}", file=sys.stderr)
        else:
            try:
                report = estimate(inst.obj, theta, kappa,
                                  **config.estimator_kwargs())
                line = canonical_json(report_record(inst.id, report))
                cache_put(config.cache_dir, key, line)
            except CGFlowError as e:
                failed = True
                print(f"error: {inst.id}: {e}", file=sys.stderr)
                line = canonical_json({"id": inst.id, "error": str(e)})
        lines.append(line)
    write_artifact(config, "".join(line + "\n" for line in lines))
    return 1 if failed else 0


def run_calibrate(args) -> int:
    config = RunConfig(args)
    _require_mode(config, "calibrate", "json")
    instances = load_manifest(args.manifest, config)
    config_doc = config.doc()
    key = cache_key("calibrate", [inst.doc for inst in instances], config_doc)
    text = cache_get(config.cache_dir, key, _valid_record)
    if text is not None:
        print("cache: hit calibration", file=sys.stderr)
    else:
        try:
            cal = calibrate(
                [(inst.id, inst.obj) for inst in instances],
                **config.estimator_kwargs(),
            )
        except CGFlowError as e:
            print(f"error: calibration failed: {e}", file=sys.stderr)
            return 1
        artifact = {
            "kappa": cal.kappa_hat,
            "theta": cal.theta_hat,
            "components": {
                "pair": cal.kappa.pair_max,
                "triangle": cal.kappa.triangle_max,
                "bracket": cal.kappa.bracket_max,
            },
            "witnesses": {
                "pair": cal.kappa.pair_witness,
                "triangle": cal.kappa.triangle_witness,
                "bracket": cal.kappa.bracket_witness,
                "theta": cal.theta.witness,
            },
            "infeasible": list(cal.kappa.infeasible),
            "instances": len(instances),
            "config": config_doc,
        }
        text = canonical_json(artifact) + "\n"
        cache_put(config.cache_dir, key, text)
    write_artifact(config, text)
    return 0


def run_trace(args) -> int:
    config = RunConfig(args)
    if config.mode != "csv":
        config.mode = "csv"  # trace emits plot CSV; --csv is implied
    instances = load_manifest(args.manifest, config)
    if len(instances) != 1:
        raise InputError(
            f"trace needs exactly one instance, manifest has {len(instances)}"
        )
    inst = instances[0]
    key = cache_key("trace", inst.doc, config.doc())
    text = cache_get(config.cache_dir, key, _valid_csv)
    if text is not None:
        print(f"cache: hit {inst.id}", file=sys.stderr)
    else:
        window = default_window(inst.obj, config.margin)
        trace = sample_window(
            inst.obj, window, config.step, config.delta,
            epsilon=config.epsilon, budget=config.budget,
            sc_bound=config.sc_bound,
        )
        marked = set(greedy_breakpoints(trace).times)
        rows = [TRACE_HEADER]
        for s in trace.samples:
            rows.append(
                f"{float(s.t)!r},{s.mark.id_string()},{s.len_xi!r},"
                f"{s.len_zeta!r},{s.systole!r},{int(s.t in marked)}"
            )
        text = "\n".join(rows) + "\n"
        cache_put(config.cache_dir, key, text)
    write_artifact(config, text)
    return 0


def run_oracle(args) -> int:
    config = RunConfig(args)
    _require_mode(config, "oracle", "json")
    instances = load_manifest(args.manifest, config)
    config_doc = {"budget": config.budget}

    lines = []
    failed = False
    for inst in instances:
        key = cache_key("oracle", inst.doc, config_doc)
        line = cache_get(config.cache_dir, key, _valid_record)
        if line is not None:
            print(f"cache: hit {inst.id}", file=sys.stderr)
        else:
            try:
                from .estimator import as_flow_model
                model = as_flow_model(inst.obj, config.budget, config.sc_bound)
                certain, interval = model.oracle_pair()
                value = certain if certain is not None else list(interval)
                line = canonical_json({"id": inst.id, "oracle": value})
                cache_put(config.cache_dir, key, line)
            except CGFlowError as e:
                failed = True
                print(f"error: {inst.id}: {e}", file=sys.stderr)
                line = canonical_json({"id": inst.id, "error": str(e)})
        lines.append(line)
    write_artifact(config, "".join(line + "\n" for line in lines))
    return 1 if failed else 0


REPORT_FIELDS = (
    "id", "n", "kappa", "theta", "lower", "upper", "oracle",
    "achieved_delta_min", "window", "step", "flags", "breakpoint_times",
)


def _close(a, b, tol=1e-9) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def validate_record(record, inst, config) -> list[str]:
    """Re-check one stored report against a fresh pipeline run."""
    problems = []
    if "error" in record:
        return [f"recorded error: {record['error']}"]
    missing = [f for f in REPORT_FIELDS if f not in record]
    if missing:
        return [f"missing fields: {', '.join(missing)}"]

    window = record["window"]
    expected = default_window(inst.obj, config.margin)
    if not (_close(window[0], expected[0]) and _close(window[1], expected[1])):
        problems.append(
            f"window {window} does not match configured margin "
            f"(expected [{expected[0]!r}, {expected[1]!r}])"
        )
    if not _close(record["step"], float(config.step)):
        problems.append(
            f"step {record['step']!r} does not match configured {float(config.step)!r}"
        )
    if problems:
        return problems

    trace = sample_window(
        inst.obj, (window[0], window[1]), config.step, config.delta,
        epsilon=config.epsilon, budget=config.budget, sc_bound=config.sc_bound,
    )
    times = record["breakpoint_times"]
    problems.extend(verify_breakpoints(trace, times))

    n = record["n"]
    if n != len(times) - 1:
        problems.append(f"n = {n} but report lists {len(times)} breakpoint times")
    kappa, theta = record["kappa"], record["theta"]
    if theta <= 0 or kappa < 0:
        problems.append("constants out of range")
        return problems
    if not _close(record["lower"], max(0.0, n / theta - theta)):
        problems.append(f"lower {record['lower']!r} does not match n and theta")
    if not _close(record["upper"], n * (3 + 2 * kappa) + 3):
        problems.append(f"upper {record['upper']!r} does not match n and kappa")

    certain, interval = trace.model.oracle_pair()
    expected_oracle = certain if certain is not None else (
        list(interval) if interval is not None else None
    )
    if record["oracle"] != expected_oracle:
        problems.append(
            f"oracle {record['oracle']!r} does not recompute to {expected_oracle!r}"
        )
    achieved = min(s.mark.achieved_delta for s in trace.samples)
    if not _close(record["achieved_delta_min"], achieved):
        problems.append("achieved_delta_min does not recompute")
    return problems


def run_validate(args) -> int:
    config = RunConfig(args)
    _require_mode(config, "validate", "json")
    instances = {inst.id: inst for inst in load_manifest(args.manifest, config)}
    if not args.reports:
        raise InputError("validate needs --reports with the estimate JSONL")
    try:
        lines = Path(args.reports).read_text().splitlines()
    except OSError as e:
        raise InputError(f"cannot read reports: {e}") from None

    failures = 0
    checked = 0
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise InputError(
                f"{args.reports}:{lineno}: invalid JSON: {e.msg}"
            ) from None
        ident = record.get("id")
        if ident not in instances:
            raise InputError(f"{args.reports}:{lineno}: unknown instance id {ident!r}")
        checked += 1
        for problem in validate_record(record, instances[ident], config):
            failures += 1
            print(f"invalid: {ident}: {problem}", file=sys.stderr)
    if checked == 0:
        raise InputError(f"{args.reports}: no report records found")
    print(f"validate: {checked} report(s), {failures} violation(s)", file=sys.stderr)
    return 1 if failures else 0


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cgflow",
        description="Coarse curve-graph distance estimation along the "
                    "diagonal flow on square-tiled surfaces.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("manifest", help="corpus manifest JSON")
        p.add_argument("--delta", default="0.1",
                       help="wide-curve width target (default 0.1)")
        p.add_argument("--epsilon", default=None,
                       help="short-curve threshold (default delta^2/4)")
        p.add_argument("--step", default="0.1",
                       help="flow-time grid step (default 0.1)")
        p.add_argument("--margin", default="2.0",
                       help="window margin beyond ln(n)/2 (default 2.0)")
        p.add_argument("--sc-bound", default=None, dest="sc_bound",
                       help="saddle-connection census length budget")
        p.add_argument("--budget", default="24",
                       help="bounded distance search budget (default 24)")
        p.add_argument("--seed", default="0",
                       help="seed for manifest generate blocks (default 0)")
        mode = p.add_mutually_exclusive_group()
        mode.add_argument("--json", action="store_true", default=False,
                          help="JSON/JSONL output (default)")
        mode.add_argument("--csv", action="store_true", default=False,
                          help="CSV output (trace only)")
        p.add_argument("--cache-dir", default=None, dest="cache_dir",
                       help="content-addressed result cache directory")
        p.add_argument("--out", default=None, help="output file (default stdout)")

    p_est = sub.add_parser("estimate", help="two-sided distance brackets")
    common(p_est)
    p_est.add_argument("--kappa", default=None, help="upper-bound constant")
    p_est.add_argument("--theta", default=None, help="lower-bound constant")
    p_est.add_argument("--calibration", default=None,
                       help="calibration JSON with kappa and theta")
    p_est.set_defaults(func=run_estimate)

    p_cal = sub.add_parser("calibrate", help="fit kappa and theta on a corpus")
    common(p_cal)
    p_cal.set_defaults(func=run_calibrate)

    p_tr = sub.add_parser("trace", help="plot-ready CSV for one instance")
    common(p_tr)
    p_tr.set_defaults(func=run_trace)

    p_or = sub.add_parser("oracle", help="exact or bounded endpoint distances")
    common(p_or)
    p_or.set_defaults(func=run_oracle)

    p_val = sub.add_parser("validate", help="re-check stored estimate reports")
    common(p_val)
    p_val.add_argument("--reports", default=None,
                       help="estimate JSONL to validate")
    p_val.set_defaults(func=run_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except DomainError as e:
        # config values that clear parsing but violate an operation's domain
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line experiment harness.

Subcommands: bounds | gen-code | check-list | biased-set | simulate |
coherent | experiment.  Every stochastic command requires --seed (or a seed
config key) and echoes its full parameter set in '#' header comments, so any
output is a pure function of (config, seed).  Exit codes: 1 usage, 2 domain
violation, 3 enumeration cap exceeded.
"""
from __future__ import annotations

import argparse
import math
import random
import sys
from typing import Optional, Sequence

from . import adversary, biased, bounds, coherent, listcode, protocol, stabilizer
from .pauli import EnumerationCapError, PauliOp, DEFAULT_ENUMERATION_CAP

EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_CAP = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise UsageError(message)


def _write_out(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _read_config(path: str) -> dict[str, str]:
    cfg = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"bad config line {raw.strip()!r}")
            key, value = line.split("=", 1)
            cfg[key.strip()] = value.strip()
    return cfg


def _cfg_int(cfg, key, required=True, default=None):
    if key not in cfg:
        if required:
            raise UsageError(f"missing config key {key!r}")
        return default
    try:
        return int(cfg[key])
    except ValueError:
        raise UsageError(f"config key {key!r} must be an integer")


def _cfg_float(cfg, key, required=True, default=None):
    if key not in cfg:
        if required:
            raise UsageError(f"missing config key {key!r}")
        return default
    try:
        return float(cfg[key])
    except ValueError:
        raise UsageError(f"config key {key!r} must be a number")


def _load_code(cfg: dict[str, str]) -> stabilizer.StabilizerCode:
    if "code" not in cfg:
        raise UsageError("missing config key 'code' (a code file path)")
    with open(cfg["code"]) as fh:
        return stabilizer.from_text(fh.read())


def cmd_bounds(args) -> int:
    if args.step <= 0:
        raise UsageError("step must be positive")
    if not 0 <= args.p_min <= args.p_max <= 0.5:
        raise UsageError("need 0 <= p-min <= p-max <= 1/2")
    rows = []
    i = 0
    while (p := args.p_min + i * args.step) <= args.p_max + 1e-12:
        rows.append(min(p, 0.5))
        i += 1
    if not rows:
        raise UsageError("range produced no rows")
    thr = bounds.rains_threshold()
    lines = [
        "# schema: bounds-csv/1",
        f"# p_min={args.p_min} p_max={args.p_max} step={args.step} L={args.L}",
        "p,list_rate_Linf,list_rate_L,gv_rate,rains_flag",
    ]
    for p in rows:
        inf_rate = bounds.list_rate(p, math.inf).value
        l_rate = bounds.list_rate(p, args.L).value
        gv = f"{bounds.gv_rate(p).value:.9f}" if p <= 0.25 else ""
        flag = 1 if p >= thr else 0
        lines.append(f"{p:.6f},{inf_rate:.9f},{l_rate:.9f},{gv},{flag}")
    _write_out(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_gen_code(args) -> int:
    if args.seed is None:
        raise UsageError("--seed is required for gen-code")
    code = stabilizer.random_code(args.n, args.k, random.Random(args.seed))
    _write_out(args.out, stabilizer.to_text(code, include_logicals=args.logicals))
    print(f"# gen-code n={args.n} k={args.k} seed={args.seed}", file=sys.stderr)
    return 0


def cmd_check_list(args) -> int:
    with open(args.code) as fh:
        code = stabilizer.from_text(fh.read())
    cap = args.cap or DEFAULT_ENUMERATION_CAP
    report = listcode.min_list_length(code, args.t, cap=cap)
    print(f"L_min = {report.L_min}")
    print(f"entries = {report.entry_count}")
    print(f"N_E = {report.N_E}")
    print(f"worst_syndrome = {report.worst_syndrome.to_string()}")
    if args.L is not None:
        verdict = "yes" if report.L_min <= args.L else "no"
        print(f"list_decodable_at_L={args.L}: {verdict}")
    if args.export:
        table = listcode.build_table(code, args.t, cap=cap)
        _write_out(args.export, listcode.table_to_text(table))
    return 0


def cmd_biased_set(args) -> int:
    if args.ell is not None:
        aset = biased.aghp(args.m, args.ell)
    else:
        if args.eta is None:
            raise UsageError("give --eta (target bias) or --ell")
        aset = biased.build_for_bias(args.m, args.eta)
    if args.measure:
        aset = biased.measured(aset)
        print(f"measured_bias = {aset.bias_exact}")
    print(f"elements = {len(aset)}")
    print(f"bias_bound = {aset.bias_bound}")
    print(f"key_bits = {aset.key_bits_needed}")
    if args.out:
        _write_out(args.out, biased.to_text(aset))
    return 0


def _simulate_common(cfg):
    code = _load_code(cfg)
    t = _cfg_int(cfg, "t")
    K = _cfg_int(cfg, "K")
    eta = _cfg_float(cfg, "eta")
    trials = _cfg_int(cfg, "trials")
    seed = _cfg_int(cfg, "seed")
    if trials < 1:
        raise UsageError("trials must be >= 1")
    table = listcode.build_table(code, t)
    return code, t, K, eta, trials, seed, table


def _make_strategy(name: str, code, table) -> adversary.Strategy:
    if name == "uniform":
        return adversary.uniform_strategy(code.n, table.t)
    if name == "worst_pair":
        return adversary.worst_pair_strategy(code, table)
    raise UsageError(f"unknown adversary {name!r}")


def cmd_simulate(args) -> int:
    cfg = _read_config(args.config)
    code, t, K, eta, trials, seed, table = _simulate_common(cfg)
    strategy = _make_strategy(cfg.get("adversary", "uniform"), code, table)
    factory = adversary.keyed_factory(code, K, eta)
    lines = [
        "# schema: simulate-csv/1",
        f"# code={cfg['code']} n={code.n} k={code.k} t={t} K={K} eta={eta} "
        f"trials={trials} seed={seed} adversary={strategy.name}",
        "index,key_hex,syndrome_hex,secret_bits,outcome",
    ]
    failures = 0
    for idx in range(trials):
        rng = random.Random(f"{seed}:{idx}")
        kc = factory(rng)
        err = strategy.emit(rng)
        out = protocol.run_trial(kc, table, err)
        if not out.success:
            failures += 1
        lines.append(
            f"{idx},{kc.key_hex()},{out.syndrome_public.to_hex()},"
            f"{out.syndrome_secret.to_string()},{'ok' if out.success else 'fail'}")
    rate = failures / trials
    lo, hi = protocol.wilson_interval(failures, trials)
    sets = protocol.planned_sets(code.k, K, eta)
    eta_eff = max((s.effective_bias for s in sets), default=0.0)
    report = listcode.min_list_length(code, t)
    fb = bounds.failure_bound(report.L_min, eta_eff, K)
    budget = bounds.key_bits(code.n, eta_eff if eta_eff else eta, K,
                             [len(s) for s in sets])
    lines.append(f"# failures={failures} rate={rate:.6f} wilson=[{lo:.6f},{hi:.6f}]")
    lines.append(f"# L_min={report.L_min} eta_eff={eta_eff} failure_bound={fb:.6f} "
                 f"key_bits={budget.key_bits}")
    if fb < 1.0:
        lines.append(f"# bound_check={'PASS' if rate <= fb + 3 * math.sqrt(fb * (1 - fb) / trials) else 'FAIL'}")
    else:
        lines.append("# bound_check=VACUOUS")
    _write_out(cfg.get("out"), "\n".join(lines) + "\n")
    return 0


def _parse_kraus(path: str, n: int) -> coherent.KrausSet:
    groups: list[list[tuple[complex, PauliOp]]] = [[]]
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                if groups[-1]:
                    groups.append([])
                continue
            parts = line.split()
            if len(parts) != 3:
                raise UsageError(f"bad kraus line {raw.strip()!r}")
            re_c, im_c, pstr = parts
            op = PauliOp.from_string(pstr)
            if op.n != n:
                raise UsageError("kraus pauli has wrong qubit count")
            groups[-1].append((complex(float(re_c), float(im_c)), op))
    groups = [g for g in groups if g]
    if not groups:
        raise UsageError("empty kraus file")
    return coherent.kraus_from_terms(groups)


def cmd_coherent(args) -> int:
    cfg = _read_config(args.config)
    code, t, K, eta, trials, seed, table = _simulate_common(cfg)
    if "kraus" not in cfg:
        raise UsageError("missing config key 'kraus'")
    ks = _parse_kraus(cfg["kraus"], code.n)
    logical_index = _cfg_int(cfg, "logical", required=False, default=0)
    factory = adversary.keyed_factory(code, K, eta)
    lines = [
        "# schema: coherent-csv/1",
        f"# code={cfg['code']} n={code.n} k={code.k} t={t} K={K} eta={eta} "
        f"trials={trials} seed={seed} kraus={cfg['kraus']} logical={logical_index}",
        "index,key_hex,fidelity",
    ]
    total = 0.0
    for idx in range(trials):
        rng = random.Random(f"{seed}:{idx}")
        kc = factory(rng)
        logical = coherent.StateVec.basis_state(code.k - K, logical_index)
        fid = coherent.end_to_end(kc, table, ks, logical, rng)
        total += fid
        lines.append(f"{idx},{kc.key_hex()},{fid:.9f}")
    lines.append(f"# mean_fidelity={total / trials:.9f}")
    _write_out(cfg.get("out"), "\n".join(lines) + "\n")
    return 0


def cmd_experiment(args) -> int:
    cfg = _read_config(args.config)
    code, t, K, eta, trials, seed, table = _simulate_common(cfg)
    strategy = _make_strategy(cfg.get("adversary", "worst_pair"), code, table)
    factory = adversary.keyed_factory(code, K, eta)
    est = adversary.estimate_failure(factory, table, strategy, trials, seed)
    report = listcode.min_list_length(code, t)
    sets = protocol.planned_sets(code.k, K, eta)
    eta_eff = max((s.effective_bias for s in sets), default=0.0)
    fb = bounds.failure_bound(report.L_min, eta_eff, K)
    budget = bounds.key_bits(code.n, eta_eff if eta_eff else eta, K,
                             [len(s) for s in sets])
    lines = [
        "# schema: experiment-csv/1",
        f"# code={cfg['code']} n={code.n} k={code.k} t={t} K={K} eta={eta} "
        f"trials={trials} seed={seed} adversary={strategy.name}",
        "index,key_hex,syndrome_hex,secret_bits,outcome",
    ]
    for idx in range(trials):
        rng = random.Random(f"{seed}:{idx}")
        kc = factory(rng)
        err = strategy.emit(rng)
        out = protocol.run_trial(kc, table, err)
        lines.append(
            f"{idx},{kc.key_hex()},{out.syndrome_public.to_hex()},"
            f"{out.syndrome_secret.to_string()},{'ok' if out.success else 'fail'}")
    sigma = math.sqrt(fb * (1 - fb) / trials) if 0 < fb < 1 else 0.0
    verdict = "VACUOUS"
    if fb < 1.0:
        verdict = "PASS" if est.rate <= fb + 3 * sigma else "FAIL"
    lines += [
        "# summary",
        f"# empirical_failure={est.rate:.6f}",
        f"# wilson_ci=[{est.ci[0]:.6f},{est.ci[1]:.6f}]",
        f"# L_min={report.L_min} eta_eff={eta_eff}",
        f"# failure_bound={fb:.6f}",
        f"# key_bits={budget.key_bits}",
        f"# bound_check={verdict}",
    ]
    _write_out(cfg.get("out"), "\n".join(lines) + "\n")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="qlistcode", description=__doc__)
    parser.add_argument("--threads", type=int, default=1,
                        help="reserved; execution is single-threaded and "
                             "results never depend on this")
    parser.add_argument("--cap", type=int, default=None,
                        help="enumeration cap override")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="rate-comparison CSV sweep")
    p.add_argument("--p-min", type=float, default=0.0)
    p.add_argument("--p-max", type=float, default=0.25)
    p.add_argument("--step", type=float, default=0.005)
    p.add_argument("--L", type=int, default=2)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("gen-code", help="sample a random stabilizer code")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--logicals", action="store_true",
                   help="include the logical basis in the file")
    p.set_defaults(func=cmd_gen_code)

    p = sub.add_parser("check-list", help="list-decodability of a code file")
    p.add_argument("--code", required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--L", type=int, default=None)
    p.add_argument("--export", default=None, help="write the full table here")
    p.set_defaults(func=cmd_check_list)

    p = sub.add_parser("biased-set", help="construct a small-bias set")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--measure", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_biased_set)

    p = sub.add_parser("simulate", help="Pauli-level adversary Monte Carlo")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("coherent", help="statevector adversary Monte Carlo")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_coherent)

    p = sub.add_parser("experiment", help="full pipeline plus summary")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationCapError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

"""``verify``: run a scenario file and emit a deterministic report.

Exit codes: 0 all checks pass, 1 some check fails (or its hypotheses are
violated), 2 input error, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

from . import __version__
from .fixtures import random_module
from .groebner import ResourceLimitError, limits
from .homological import DomainError, TheoremViolation, omega
from .lab import (
    CertifiedIdeal, CheckResult, Family, HypothesisViolation, apply_op, check_annihilator, check_collapse,
    check_dimension_bounds, check_family_ideal, check_power_annihilation, check_radical_equal,
    check_sing_equality, check_spectral_bound, check_stable_ann, check_syzygy_chain, check_trace_kills,
    check_trace_shift, check_transpose_swap, close_family, probe_tor_ext_equality,
)
from .modules import FPModule, cyclic_module, ideal_module, make_module
from .oracle import cross_check
from .poly import StructuralError
from .ring import define_ring
from .scenario import Scenario, ScenarioError, ScenarioLimits, parse_scenario

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3
DEFAULTS = ScenarioLimits(max_degree=40, res_length=64, window=None, oracle_degree=8, jobs=1, seed=0)


# --- environment ----------------------------------------------------------------

class Env:
    """Rings, modules and families of a scenario, built on first use."""

    def __init__(self, sc: Scenario, seed: int = 0):
        self.sc = sc
        self.seed = seed
        self.rings = {n: define_ring(r.char, r.vars, r.weights, r.relations, name=n) for n, r in sc.rings.items()}
        self._mods: dict[str, FPModule] = {}
        self._fams: dict[str, Family | HypothesisViolation] = {}

    def module(self, name: str) -> FPModule:
        M = self._mods.get(name)
        if M is not None:
            return M
        md = self.sc.modules[name]
        R = self.rings[md.ring]
        if md.kind == "matrix":
            M = make_module(R, md.degrees, md.columns, name=name)
        elif md.kind == "ideal":
            M = ideal_module(R, md.gens)
        elif md.kind == "quotient":
            M = cyclic_module(R, md.gens)
        elif md.kind == "canonical":
            w = omega(R)
            M = FPModule(R, w.degrees, w.rels)
        else:
            P = apply_op(md.op, self.module(md.arg)).minimalize()
            M = FPModule(R, P.degrees, P.rels)
        M.name = name
        self._mods[name] = M
        return M

    def family(self, name: str) -> Family:
        F = self._fams.get(name)
        if F is None:
            fd = self.sc.families[name]
            seeds = [self.module(s) for s in fd.seeds]
            try:
                F = close_family(seeds, fd.close, fd.depth, fd.seeds, name=name)
                if fd.assert_cm is not None:
                    F.require_cm(fd.assert_cm)
            except HypothesisViolation as e:
                F = e
            self._fams[name] = F
        if isinstance(F, HypothesisViolation):
            raise F
        return F

    def ring_of(self, params: dict):
        return self.rings[params["ring"]] if "ring" in params else None


def _ints(v: str) -> list[int]:
    return [int(x) for x in v.replace(",", " ").split()]


def _polys(R, v: str):
    return [R.parse(g.strip()) for g in v.split(",") if g.strip()]


def _window(p: dict, lim: ScenarioLimits):
    return int(p["window"]) if "window" in p else lim.window


def _certificate(R, p: dict, key: str = "certified") -> CertifiedIdeal | None:
    if key not in p:
        return None
    src = p.get("source", '""').strip('"') or "declared in scenario"
    return CertifiedIdeal(R.ideal(_polys(R, p[key])), src)


def execute(env: Env, index: int, lim: ScenarioLimits) -> CheckResult:
    chk = env.sc.checks[index]
    kind, p = chk.kind, chk.params
    m, f = env.module, env.family
    W = _window(p, lim)
    try:
        if kind == "annihilator":
            M, N = m(p["left"]), m(p["right"])
            return check_annihilator(p["kind"], M, N, _ints(p["indices"]), M.ring.ideal(_polys(M.ring, p["expect"])),
                                     m(p["copies-of"]) if "copies-of" in p else None)
        if kind == "family_ideal":
            X = f(p["x"])
            R = X.ring
            exp = R.ideal(_polys(R, p["expect"])) if "expect" in p else None
            return check_family_ideal(p["kind"], int(p["n"]), X, f(p["y"]), exp,
                                      _certificate(R, p, "radical-of"), W)
        if kind == "collapse":
            return check_collapse(f(p["x"]), f(p["y"]), int(p["n"]), W)
        if kind == "radical_equal":
            return check_radical_equal(f(p["x"]), f(p["y"]), int(p["n"]), W)
        if kind == "transpose_swap":
            return check_transpose_swap(m(p["left"]), m(p["right"]))
        if kind == "stable_ann":
            wit = [m(x) for x in p["witnesses"].replace(",", " ").split()]
            return check_stable_ann(m(p["module"]), wit, int(p.get("imax", 3)))
        if kind == "spectral_bound":
            return check_spectral_bound(m(p["left"]), m(p["right"]), int(p["index"]), int(p["t"]),
                                        p.get("mode", "inclusion"))
        if kind == "trace_shift":
            return check_trace_shift(m(p["left"]), m(p["right"]), int(p["index"]), int(p["r"]))
        if kind == "trace_kills":
            return check_trace_kills(m(p["module"]), int(p.get("lmax", 3)))
        if kind == "syzygy_chain":
            return check_syzygy_chain(f(p["x"]), f(p["y"]), int(p["n"]))
        if kind == "power_annihilation":
            names = p.get("pairs", "").replace(",", " ").split()
            pairs = [(m(a), m(b)) for a, b in zip(names[::2], names[1::2])]
            R = env.ring_of(p) or pairs[0][0].ring
            rng = random.Random(f"{env.seed}:{index}")
            for k in range(int(p.get("random", 0))):
                A, B = random_module(R, rng), random_module(R, rng)
                A.name, B.name = f"random{2 * k}", f"random{2 * k + 1}"
                pairs.append((A, B))
            (a,) = _polys(R, p["element"])
            return check_power_annihilation(a, int(p["n"]), pairs, _certificate(R, p), int(p.get("extra", 2)))
        if kind == "sing_equality":
            X = f(p["x"])
            return check_sing_equality(X, f(p["y"]), int(p["n"]), _certificate(X.ring, p), W)
        if kind == "tor_ext_probe":
            return probe_tor_ext_equality(f(p["family"]), W)
        if kind == "dimension_bounds":
            return check_dimension_bounds(f(p["family"]), int(p["t"]), int(p["n"]), W)
        if kind == "oracle":
            return _oracle_check(m(p["left"]), m(p["right"]), p["kind"], _ints(p["indices"]),
                                 int(p.get("degree", lim.oracle_degree)))
    except HypothesisViolation as e:
        return CheckResult(kind, "", "hypothesis-violation", e.witness)
    except DomainError as e:
        return CheckResult(kind, "", "hypothesis-violation", {"reason": str(e)})
    except ResourceLimitError as e:
        return CheckResult(kind, "", "resource-bound", {"cap": e.cap, "value": e.value, "limit": e.limit})
    except TheoremViolation as e:
        return CheckResult(kind, "", "fail", {"reason": str(e)})
    raise StructuralError(f"unknown check kind {kind!r}")


def _oracle_check(M, N, kind, indices, D) -> CheckResult:
    name, anchor = "oracle", "resolution route = degreewise route"
    fails = []
    ideals = {}
    try:
        for i in indices:
            r = cross_check(M, N, i, kind, D)
            ideals[f"ann_{kind}_{i}"] = r["ann"]
            if not (r["hilbert_ok"] and r["ann_ok"]):
                fails.append({"pair": [M.name, N.name], "index": i, "kind": kind,
                              "engine": r["engine"], "oracle": r["oracle"], "ann_ok": r["ann_ok"]})
    except ResourceLimitError as e:
        return CheckResult(name, anchor, "resource-bound", {"cap": e.cap, "value": e.value, "limit": e.limit})
    if fails:
        return CheckResult(name, anchor, "fail", fails[0], ideals)
    return CheckResult(name, anchor, "pass", None, ideals)


# --- running ------------------------------------------------------------------

@dataclass
class Report:
    scenario: str
    version: str
    results: list = field(default_factory=list)
    ms: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        st = [r.status for r in self.results]
        if "fail" in st:
            return "fail"
        if "hypothesis-violation" in st:
            return "hypothesis-violation"
        if "resource-bound" in st:
            return "resource-bound"
        return "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "hypothesis-violation": EXIT_FAIL,
                "resource-bound": EXIT_RESOURCE}[self.verdict]

    def to_dict(self) -> dict:
        checks = []
        for r, ms in zip(self.results, self.ms):
            d = r.to_dict()
            d["ms"] = ms
            checks.append(d)
        return {"scenario": self.scenario, "version": self.version, "checks": checks, "verdict": self.verdict}


def merge_limits(sc: Scenario, **over) -> ScenarioLimits:
    lim = replace(DEFAULTS)
    for src in (sc.limits, ScenarioLimits(**{k: v for k, v in over.items() if v is not None})):
        for k, v in vars(src).items():
            if v is not None:
                setattr(lim, k, v)
    return lim


def _timed(env: Env, k: int, lim: ScenarioLimits, timings: bool):
    t0 = time.perf_counter()
    with limits(max_degree=lim.max_degree, max_res_length=lim.res_length):
        res = execute(env, k, lim)
    ms = int(round((time.perf_counter() - t0) * 1000)) if timings else 0
    return res, ms


_WORKER: dict = {}


def _worker_init(text: str, name: str, lim: ScenarioLimits, timings: bool):
    sc = parse_scenario(text, name)
    _WORKER.update(env=Env(sc, lim.seed), lim=lim, timings=timings)


def _worker_run(k: int):
    return _timed(_WORKER["env"], k, _WORKER["lim"], _WORKER["timings"])


def run(sc: Scenario, lim: ScenarioLimits | None = None, *, text: str | None = None,
        timings: bool = False) -> Report:
    """Run every check; with ``lim.jobs > 1`` checks fan out to worker processes
    (which re-parse ``text``).  Results are collected in check order."""
    lim = lim or merge_limits(sc)
    rep = Report(sc.name, __version__)
    n = len(sc.checks)
    if lim.jobs and lim.jobs > 1 and text is not None and n > 1:
        with ProcessPoolExecutor(max_workers=lim.jobs, initializer=_worker_init,
                                 initargs=(text, sc.name, lim, timings)) as pool:
            out = list(pool.map(_worker_run, range(n)))
    else:
        env = Env(sc, lim.seed)
        out = [_timed(env, k, lim, timings) for k in range(n)]
    for res, ms in out:
        rep.results.append(res)
        rep.ms.append(ms)
    return rep


def emit_report(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report.to_dict(), indent=2) + "\n").encode()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"scenario {report.scenario} (torext {report.version})", ""]
    rows = [(str(k + 1), r.name, r.status, r.anchor) for k, r in enumerate(report.results)]
    widths = [max(len(x[c]) for x in rows + [("#", "check", "status", "statement")]) for c in range(3)]
    head = ("#", "check", "status", "statement")
    for row in [head] + rows:
        lines.append("  ".join(row[c].ljust(widths[c]) for c in range(3)) + "  " + row[3])
    for k, r in enumerate(report.results):
        if r.status != "pass" and r.witness:
            lines.append(f"  [{k + 1}] witness: {json.dumps(r.witness, sort_keys=True)}")
        for nm, gens in sorted(r.ideals.items()):
            lines.append(f"  [{k + 1}] {nm} = ({', '.join(gens) if gens else '0'})")
    lines.append("")
    lines.append(f"verdict: {report.verdict}")
    return ("\n".join(lines) + "\n").encode()


# --- command line ---------------------------------------------------------------

def bundled_scenarios() -> list[str]:
    root = resources.files("torext") / "scenarios"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".scn"))


def read_scenario_text(arg: str) -> tuple[str, str]:
    path = Path(arg)
    if path.is_file():
        return path.read_text(encoding="utf-8"), path.stem
    name = arg[:-4] if arg.endswith(".scn") else arg
    res = resources.files("torext") / "scenarios" / f"{name}.scn"
    if res.is_file():
        return res.read_text(encoding="utf-8"), name
    raise FileNotFoundError(f"no scenario file or bundled scenario named {arg!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="verify", description="Run a torext scenario and report each check.")
    ap.add_argument("file", nargs="?", help="scenario file, or the name of a bundled scenario")
    ap.add_argument("--max-degree", type=int)
    ap.add_argument("--res-length", type=int)
    ap.add_argument("--window", type=int)
    ap.add_argument("--oracle-degree", type=int)
    ap.add_argument("--jobs", type=int)
    ap.add_argument("--report", help="write the report to this path instead of stdout")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--timings", action="store_true", help="record wall-clock ms per check")
    ap.add_argument("--list", action="store_true", help="list bundled scenarios")
    ap.add_argument("--print", action="store_true", help="print the parsed scenario and exit")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.list:
        print("\n".join(bundled_scenarios()))
        return EXIT_PASS
    if not args.file:
        print("verify: a scenario file is required", file=sys.stderr)
        return EXIT_INPUT
    for key in ("max_degree", "res_length", "window", "oracle_degree", "jobs"):
        v = getattr(args, key)
        if v is not None and v < 1:
            print(f"verify: --{key.replace('_', '-')} must be positive", file=sys.stderr)
            return EXIT_INPUT
    try:
        text, name = read_scenario_text(args.file)
        sc = parse_scenario(text, name)
    except (OSError, UnicodeDecodeError) as e:
        print(f"verify: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ScenarioError as e:
        print(f"verify: {args.file}:{e}", file=sys.stderr)
        return EXIT_INPUT
    if args.print:
        from .scenario import format_scenario

        sys.stdout.write(format_scenario(sc))
        return EXIT_PASS
    lim = merge_limits(sc, max_degree=args.max_degree, res_length=args.res_length, window=args.window,
                       oracle_degree=args.oracle_degree, jobs=args.jobs, seed=args.seed)
    try:
        rep = run(sc, lim, text=text, timings=args.timings)
    except StructuralError as e:
        print(f"verify: {e}", file=sys.stderr)
        return EXIT_INPUT
    data = emit_report(rep, args.format)
    if args.report:
        Path(args.report).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())

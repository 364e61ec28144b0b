"""Command-line front end.

Every command writes its artifacts plus ``<command>.manifest.json`` into the
output directory. The manifest records the arguments, input and output
digests and the tool version; ``causet rerun MANIFEST`` replays it and checks
that every output is reproduced byte for byte.

Exit codes: 0 success, 1 validation failure, 2 I/O error, 3 tolerance failure.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import shutil
import sys
import tempfile
from pathlib import Path

from . import __version__
from .causal import (
    LinkMatrix, build_causal_matrix, build_link_matrix, compare_under_boost, enumerate_chains,
    height,
)
from .kcalculus import sr_sweep, sweep_to_csv
from .schwartz import (
    DEFAULT_H, DEFAULT_R, OpenWindow, SeminormIndex, TestFunction, expectation, gaussian,
    in_preimage, seminorm,
)
from .sprinkling import Mode, Sprinkle, SprinkleConfig, sprinkle
from .svg import sprinkle_svg
from .worldlines import AmplitudeModel, build_ensemble, path_count_matrix

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_TOLERANCE = 0, 1, 2, 3
SR_TOL = 1e-9


class UsageError(Exception):
    pass


class ToleranceFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


class _Run:
    """Collects outputs of one command and writes its manifest."""

    def __init__(self, args, argv):
        self.args = args
        self.argv = argv
        self.out_dir = Path(args.out_dir)
        self.outputs: list[dict] = []
        self.inputs: list[dict] = []
        self.config: dict = {}

    def say(self, text: str) -> None:
        if not self.args.quiet:
            print(text)

    def read_input(self, path: str) -> str:
        p = Path(path)
        try:
            data = p.read_bytes()
        except OSError as exc:
            raise OSError(f"cannot read {p}: {exc.strerror}") from exc
        self.inputs.append({"path": str(p), "sha256": hashlib.sha256(data).hexdigest()})
        return data.decode("utf-8")

    def write(self, name: str, text: str) -> Path:
        path = self.out_dir / name
        try:
            self.out_dir.mkdir(parents=True, exist_ok=True)
            path.write_bytes(text.encode("utf-8"))
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc.strerror}") from exc
        self.outputs.append({"path": name, "sha256": hashlib.sha256(text.encode()).hexdigest()})
        return path

    def finish(self) -> None:
        manifest = {
            "command": self.args.command,
            "argv": self.argv,
            "config": self.config,
            "tool_version": __version__,
            "inputs": self.inputs,
            "outputs": self.outputs,
        }
        self.write(f"{self.args.command}.manifest.json", json.dumps(manifest, indent=2) + "\n")


def _load_events(run: _Run, path: str) -> Sprinkle:
    text = run.read_input(path)
    if not text.strip():
        raise UsageError(f"{path}: empty input")
    try:
        if text.lstrip().startswith("{"):
            return Sprinkle.from_json(text)
        return Sprinkle.from_csv(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{path}: {exc}") from exc


def cmd_sprinkle(run: _Run) -> None:
    a = run.args
    config = SprinkleConfig(n=a.n, S=a.S, seed=a.seed, mode=Mode(a.mode))
    sp = sprinkle(config)
    if a.format == "json":
        run.write(f"{a.prefix}.json", sp.to_json())
    else:
        run.write(f"{a.prefix}.csv", sp.to_csv())
    run.write(f"{a.prefix}.svg", sprinkle_svg(sp.t, sp.x, config.S))
    run.say(f"sprinkled {len(sp)} events into diamond S={config.S} (seed {config.seed})")
    run.config = config.to_dict()


def cmd_relate(run: _Run) -> None:
    sp = _load_events(run, run.args.input)
    C = build_causal_matrix(sp)
    L = build_link_matrix(C)
    run.write("causal.csv", C.to_csv())
    run.write("causal.json", C.to_json())
    run.write("links.csv", L.to_csv())
    run.write("links.json", L.to_json())
    summary = {"n": len(sp), "relations": C.count(), "links": L.count(),
               "longest_chain_links": height(L)}
    run.write("relate.json", json.dumps(summary) + "\n")
    run.say(" ".join(f"{k}={v}" for k, v in summary.items()))
    run.config = {"input": run.args.input}


def _links_for(run: _Run) -> LinkMatrix:
    a = run.args
    sp = _load_events(run, a.input)
    if not (0 <= a.i < len(sp) and 0 <= a.j < len(sp)):
        raise UsageError(f"indices must lie in 0..{len(sp) - 1}")
    if a.j <= a.i:
        raise UsageError(f"need j > i, got i={a.i}, j={a.j}")
    return build_link_matrix(build_causal_matrix(sp))


def cmd_chains(run: _Run) -> None:
    a = run.args
    L = _links_for(run)
    found = enumerate_chains(L, a.i, a.j, a.cap)
    doc = {"source": a.i, "target": a.j, "chains": [list(c.indices) for c in found],
           "truncated": found.truncated}
    run.write("chains.json", json.dumps(doc) + "\n")
    run.say(f"{len(found)} chains from {a.i} to {a.j}" + (" (truncated)" if found.truncated else ""))
    run.config = {"input": a.input, "i": a.i, "j": a.j, "cap": a.cap}


def cmd_pathsum(run: _Run) -> None:
    a = run.args
    L = _links_for(run)
    count = int(path_count_matrix(L)[a.i, a.j])
    model = AmplitudeModel(complex(a.hop_re, a.hop_im))
    ens = build_ensemble(L, model, a.i, a.j, a.cap, a.measure)
    doc = ens.to_dict()
    doc["count"] = count
    run.write("pathsum.json", json.dumps(doc) + "\n")
    if a.format == "json":
        run.say(json.dumps(doc))
    else:
        run.say(f"count={count}")
        run.say(f"total={ens.total.real:.17g}{ens.total.imag:+.17g}j")
        run.say("weights=" + " ".join(f"{w:.17g}" for w in ens.weights))
        if ens.truncated:
            run.say("truncated=true")
    run.config = {"input": a.input, "i": a.i, "j": a.j, "hop": [a.hop_re, a.hop_im],
            "cap": a.cap, "measure": a.measure}


def cmd_srcheck(run: _Run) -> None:
    betas = run.args.betas
    if any(not (0 <= b < 1) for b in betas):
        raise UsageError("every beta must satisfy 0 <= beta < 1")
    run.config = {"betas": betas}
    rows = sr_sweep(betas)
    run.write("srcheck.csv", sweep_to_csv(rows))
    if not run.args.quiet:
        sys.stdout.write(sweep_to_csv(rows))
    bad = [r["beta"] for r in rows
           if abs(r["t1_over_t2"] - r["gamma_closed_form"]) > SR_TOL
           or abs(r["L_over_L0"] * r["gamma_closed_form"] - 1.0) > SR_TOL
           or abs(r["k"] ** 2 - (1 + r["beta"]) / (1 - r["beta"])) > SR_TOL]
    if bad:
        raise ToleranceFailure(f"tolerance violated at beta={bad}")


def cmd_boostcheck(run: _Run) -> None:
    a = run.args
    if any(not abs(b) < 1 for b in a.betas):
        raise UsageError("every beta must satisfy |beta| < 1")
    config = SprinkleConfig(n=a.n, S=a.S, seed=a.seed, mode=Mode(a.mode))
    run.config = {**config.to_dict(), "betas": a.betas}
    sp = sprinkle(config)
    results = [compare_under_boost(sp, b) for b in a.betas]
    doc = {"config": config.to_dict(), "results": [
        {"beta": r.beta, "differing": r.differing, "guarded": r.guarded, "identical": r.identical}
        for r in results]}
    run.write("boostcheck.json", json.dumps(doc) + "\n")
    for r in results:
        run.say(f"beta={r.beta:+.4f} differing={r.differing} guarded={r.guarded} "
                + ("identical" if r.identical else "DIFFERENT"))
    if not all(r.identical for r in results):
        raise ToleranceFailure("causal matrix changed under boost")


def cmd_qexp(run: _Run) -> None:
    a = run.args
    if a.input:
        try:
            f = TestFunction.from_csv(run.read_input(a.input))
        except ValueError as exc:
            raise UsageError(f"{a.input}: {exc}") from exc
    else:
        f = gaussian(a.center, a.width, a.R, a.h)
    try:
        q = expectation(f)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    doc = {
        "alpha": a.alpha, "beta": a.beta,
        "seminorm": seminorm(f, SeminormIndex(a.alpha, a.beta)),
        "expectation": q,
        "window": list(a.window) if a.window else None,
        "in_preimage": in_preimage(f, OpenWindow(*a.window)) if a.window else None,
    }
    run.write("qexp.json", json.dumps(doc) + "\n")
    run.say(" ".join(f"{k}={v}" for k, v in doc.items()))
    run.config = {"input": a.input, "center": a.center, "width": a.width, "R": a.R, "h": a.h,
            "alpha": a.alpha, "beta": a.beta, "window": a.window}


def cmd_rerun(run: _Run) -> None:
    a = run.args
    manifest = json.loads(run.read_input(a.manifest))
    with tempfile.TemporaryDirectory() as tmp:
        code = main(manifest["argv"] + ["--out-dir", tmp, "--quiet"], record=True)
        if code not in (EXIT_OK, EXIT_TOLERANCE):
            raise ToleranceFailure(f"replayed command exited with {code}")
        mismatched = []
        for out in manifest["outputs"]:
            produced = Path(tmp) / out["path"]
            digest = hashlib.sha256(produced.read_bytes()).hexdigest() if produced.exists() else None
            if digest != out["sha256"]:
                mismatched.append(out["path"])
        if a.keep:
            shutil.copytree(tmp, Path(a.out_dir), dirs_exist_ok=True)
    doc = {"manifest": a.manifest, "checked": len(manifest["outputs"]), "mismatched": mismatched}
    run.config = {"manifest": a.manifest}
    run.write("rerun.json", json.dumps(doc) + "\n")
    run.say(f"checked {doc['checked']} outputs, {len(mismatched)} mismatched")
    if mismatched:
        raise ToleranceFailure(f"outputs not reproduced: {mismatched}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out-dir", default=argparse.SUPPRESS)
    common.add_argument("--format", choices=["csv", "json"], default=argparse.SUPPRESS)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)

    p = _Parser(prog="causet", description="Causal-set sprinkling and world-line toolkit.")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--quiet", action="store_true", default=False)
    p.add_argument("--version", action="version", version=f"causet {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sprinkle", parents=[common], help="sprinkle events into a causal diamond")
    s.add_argument("-n", type=int, default=1000)
    s.add_argument("-S", type=float, default=1.0)
    s.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.FIXED_N.value)
    s.add_argument("--prefix", default="sprinkle")
    s.set_defaults(func=cmd_sprinkle)

    s = sub.add_parser("relate", parents=[common], help="build causal and link matrices")
    s.add_argument("input")
    s.set_defaults(func=cmd_relate)

    for name, func, doc in (("chains", cmd_chains, "enumerate chains between two events"),
                            ("pathsum", cmd_pathsum, "amplitude-weighted sum over chains")):
        s = sub.add_parser(name, parents=[common], help=doc)
        s.add_argument("input")
        s.add_argument("i", type=int)
        s.add_argument("j", type=int)
        s.add_argument("--cap", type=int, default=10**6)
        if name == "pathsum":
            s.add_argument("--hop-re", type=float, default=1.0)
            s.add_argument("--hop-im", type=float, default=0.0)
            s.add_argument("--measure", choices=["born", "linear"], default="born")
        s.set_defaults(func=func)

    s = sub.add_parser("srcheck", parents=[common], help="k-calculus dilation/contraction sweep")
    s.add_argument("--betas", type=_float_list,
                   default=[round(0.1 * k, 1) for k in range(10)] + [0.99])
    s.set_defaults(func=cmd_srcheck)

    s = sub.add_parser("boostcheck", parents=[common], help="causal matrix invariance under boosts")
    s.add_argument("-n", type=int, default=500)
    s.add_argument("-S", type=float, default=1.0)
    s.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.FIXED_N.value)
    s.add_argument("--betas", type=_float_list, default=[0.0, 0.3, 0.6, 0.9, -0.6, 0.99])
    s.set_defaults(func=cmd_boostcheck)

    s = sub.add_parser("qexp", parents=[common], help="seminorm and position expectation")
    s.add_argument("family", nargs="?", choices=["gaussian"], default="gaussian")
    s.add_argument("--input", help="CSV with columns x,re,im instead of a built-in family")
    s.add_argument("--center", type=float, default=0.0)
    s.add_argument("--width", type=float, default=1.0)
    s.add_argument("-R", type=float, default=DEFAULT_R)
    s.add_argument("--h", type=float, default=DEFAULT_H)
    s.add_argument("--alpha", type=int, default=0)
    s.add_argument("--beta", type=int, default=0)
    s.add_argument("--window", type=float, nargs=2, metavar=("LO", "HI"), default=None)
    s.set_defaults(func=cmd_qexp)

    s = sub.add_parser("rerun", parents=[common], help="replay a manifest and verify digests")
    s.add_argument("manifest")
    s.add_argument("--keep", action="store_true", help="copy the replayed outputs into --out-dir")
    s.set_defaults(func=cmd_rerun)
    return p


def _replay_argv(argv: list[str]) -> list[str]:
    """Drop --out-dir/--quiet so a manifest's argv can be replayed anywhere."""
    out, skip = [], False
    for tok in argv:
        if skip:
            skip = False
            continue
        if tok == "--out-dir":
            skip = True
            continue
        if tok.startswith("--out-dir=") or tok == "--quiet":
            continue
        out.append(tok)
    return out


def main(argv: list[str] | None = None, record: bool = True) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    run = _Run(args, _replay_argv(argv))
    try:
        args.func(run)
        if record:
            run.finish()
    except ToleranceFailure as exc:
        if record:
            run.finish()
        print(f"causet {args.command}: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except (UsageError, ValueError) as exc:
        print(f"causet {args.command}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"causet {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

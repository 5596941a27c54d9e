"""Command-line interface.

Commands: describe, homology, sing, dstar, check-kan, check-reedy,
fiber-product, solve-lift, verify-suite.  Inputs are "ssx/1" object files;
--out writes the machine-readable report (canonical form, stable across
reruns).  Exit codes: 0 all checks passed, 1 a check failed (the report
carries the witness), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from . import io as ssxio
from .bisset import d_star, sing
from .groupoid import (
    FinGroupoid,
    GpdFunctor,
    classify_gpd_map,
    lax_fiber_product,
    strict_fiber_product,
)
from .homology import homology
from .lifting import LiftingProblem, classify_sset_fibration, solve_strict, solve_weak
from .sgpd import SGpdMap, SimpGroupoid, check_reedy, sgpd_fiber_product
from .sset import (
    FinSSet,
    SSetMap,
    TruncationError,
    ValidationError,
    check_map,
    enumerate_maps,
    simplex,
)
from .suites import DEFAULT_DEPTH, Check, run_suite, suite_ids
from .words import WordError

__all__ = ["Report", "main", "run"]


@dataclass(frozen=True)
class Report:
    """Echo of the command, its checks, and wall time."""

    command: tuple[str, ...]
    checks: tuple[Check, ...]
    seconds: float
    result: dict | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def human(self) -> str:
        lines = [
            f"{' '.join(self.command)}: "
            f"{'pass' if self.passed else 'FAIL'} "
            f"({len(self.checks)} checks, {self.seconds:.2f}s)"
        ]
        for c in self.checks:
            mark = "pass" if c.passed else "FAIL"
            line = f"  [{mark}] {c.name}"
            if c.detail:
                line += f": {c.detail}"
            lines.append(line)
            if c.witness:
                lines.append(f"         witness: {c.witness}")
        return "\n".join(lines)

    def machine(self) -> dict:
        doc = {
            "command": list(self.command),
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                    "witness": c.witness,
                }
                for c in self.checks
            ],
        }
        if self.result is not None:
            doc["result"] = self.result
        return doc


def _load(path, *types):
    obj = ssxio.parse(path)
    if types and not isinstance(obj, types):
        names = ", ".join(t.__name__ for t in types)
        raise ssxio.FormatError(
            f"{path}:$.kind", f"expected one of: {names}; got {type(obj).__name__}"
        )
    return obj


def _describe_checks(obj) -> list[Check]:
    if isinstance(obj, FinSSet):
        return [
            Check(
                "sset",
                True,
                f"nondegenerate counts {obj.counts}, "
                f"dimension {obj.dim}, truncation {obj.truncation}",
            )
        ]
    if isinstance(obj, SSetMap):
        chk = check_map(obj)
        return [
            Check(
                "sset-map",
                True,
                f"{obj.dom.counts} -> {obj.cod.counts}, "
                f"mono {chk.mono}, iso {chk.iso}",
            )
        ]
    if isinstance(obj, FinGroupoid):
        comps = set(obj.component_of())
        return [
            Check(
                "groupoid",
                True,
                f"{obj.n_obj} objects, {obj.n_mor} morphisms, "
                f"{len(comps)} components",
            )
        ]
    if isinstance(obj, GpdFunctor):
        cls = classify_gpd_map(obj)
        return [
            Check(
                "functor",
                True,
                f"{obj.dom.n_obj}/{obj.dom.n_mor} -> "
                f"{obj.cod.n_obj}/{obj.cod.n_mor}; "
                f"isofibration {cls.isofibration}, "
                f"equivalence {cls.equivalence}",
            )
        ]
    if isinstance(obj, SimpGroupoid):
        return [
            Check(
                "sgpd",
                True,
                f"depth {obj.depth}, objects {obj.obj.counts}, "
                f"morphisms {obj.mor.counts}",
            )
        ]
    if isinstance(obj, SGpdMap):
        return [
            Check(
                "sgpd-map",
                True,
                f"depth {obj.dom.depth} -> {obj.cod.depth}; "
                f"objects {obj.dom.obj.counts} -> {obj.cod.obj.counts}",
            )
        ]
    return [
        Check(
            "problem",
            True,
            f"corner A {obj.A.counts}, B {obj.B.counts}, "
            f"X {obj.X.counts}, Y {obj.Y.counts}",
        )
    ]


def _cmd_describe(args) -> Report:
    obj = _load(args.file)
    return _report(args, _describe_checks(obj))


def _cmd_homology(args) -> Report:
    A = _load(args.file, FinSSet)
    top = args.dim if args.dim is not None else DEFAULT_DEPTH
    prof = homology(A, top)
    checks = [
        Check(f"H{n}", True, prof.group(n)) for n in range(top + 1)
    ]
    return _report(args, checks)


def _cmd_sing(args) -> Report:
    X = _load(args.file, SimpGroupoid)
    D = args.dim if args.dim is not None else DEFAULT_DEPTH
    S = sing(X, D)
    counts = tuple(S.counts) + (0,) * (D + 1 - len(S.counts))
    return _report(
        args,
        [Check("sing", True, f"nondegenerate counts {counts} up to dimension {D}")],
    )


def _cmd_dstar(args) -> Report:
    A = _load(args.file, FinSSet)
    gamma = None
    detail = "no ambient embedding"
    if args.ambient is not None:
        for f in enumerate_maps(A, simplex(args.ambient)):
            if check_map(f).mono:
                gamma = f
                break
        if gamma is None:
            raise ValidationError(
                f"no embedding of the input into the {args.ambient}-simplex"
            )
        detail = f"first embedding into the {args.ambient}-simplex"
    bound = max(A.dim, 0)
    ds = d_star(A, gamma, h_bound=bound)
    checks = [Check("ambient", True, detail)]
    for m in range(bound + 1):
        row = ds.view.row(m)
        parts = [f"components {len(ds.components(m))}"]
        parts.append(f"counts {row.counts}")
        if gamma is not None:
            chk = check_map(ds.comparison.row(m))
            parts.append(f"comparison mono {chk.mono}")
        checks.append(Check(f"row {m}", True, ", ".join(parts)))
    return _report(args, checks)


def _cmd_check_kan(args) -> Report:
    p = _load(args.file, SSetMap)
    D = args.dim if args.dim is not None else DEFAULT_DEPTH
    mode = args.mode or "kan"
    rep = classify_sset_fibration(p, mode, D)
    check = Check(
        mode,
        rep.holds,
        f"{rep.squares} squares through dimension {D}",
        None if rep.holds else f"{rep.witness_family}: {rep.witness}",
    )
    return _report(args, [check])


def _cmd_check_reedy(args) -> Report:
    p = _load(args.file, SGpdMap)
    D = args.dim if args.dim is not None else DEFAULT_DEPTH
    rep = check_reedy(p, D)
    checks = []
    for lvl in rep.levels:
        checks.append(
            Check(
                f"level {lvl.n}",
                lvl.fibration,
                f"gap isofibration {lvl.fibration}, "
                f"latching cofibration {lvl.cofibration}",
                None
                if lvl.fibration
                else f"gap at level {lvl.n} is not an isofibration",
            )
        )
    return _report(args, checks)


def _cmd_fiber_product(args) -> Report:
    a = _load(args.left)
    b = _load(args.right)
    mode = args.mode or "strict"
    if mode not in ("strict", "lax"):
        raise ssxio.FormatError("$.mode", f"unknown fiber-product mode {mode!r}")
    if isinstance(a, GpdFunctor) and isinstance(b, GpdFunctor):
        span = (
            strict_fiber_product(a, b)
            if mode == "strict"
            else lax_fiber_product(a, b)
        )
        result = span.gpd
        detail = f"{result.n_obj} objects, {result.n_mor} morphisms"
    elif isinstance(a, SGpdMap) and isinstance(b, SGpdMap):
        span = sgpd_fiber_product(a, b, mode)
        result = span.sgpd
        detail = (
            f"objects {result.obj.counts}, morphisms {result.mor.counts}"
        )
    else:
        raise ssxio.FormatError(
            "$.kind",
            "fiber-product needs two functor files or two sgpd-map files",
        )
    doc = json.loads(ssxio.serialize_data(result))
    check = Check(f"fiber-product[{mode}]", True, detail)
    return _report(args, [check], result=doc)


def _cmd_solve_lift(args) -> Report:
    prob = _load(args.file, LiftingProblem)
    mode = args.mode or "strict"
    result = None
    if mode == "strict":
        search = solve_strict(prob)
        if search.found:
            result = {"h": json.loads(ssxio.serialize_data(search.h))}
            check = Check("solve-lift[strict]", True, "strict lift found")
        else:
            check = Check(
                "solve-lift[strict]",
                False,
                "no strict lift",
                str(search.obstruction),
            )
    elif mode == "weak":
        sol = solve_weak(prob)
        if sol is not None:
            result = {
                "h": json.loads(ssxio.serialize_data(sol.h)),
                "H": json.loads(ssxio.serialize_data(sol.H)),
            }
            check = Check("solve-lift[weak]", True, "weak lift found")
        else:
            check = Check(
                "solve-lift[weak]", False, "no weak lift", "search exhausted"
            )
    else:
        raise ssxio.FormatError("$.mode", f"unknown lift mode {mode!r}")
    return _report(args, [check], result=result)


def _cmd_verify_suite(args) -> Report:
    seeds = []
    if args.seed_corpus:
        import pathlib

        root = pathlib.Path(args.seed_corpus)
        if not root.is_dir():
            raise ssxio.FormatError("$", f"not a directory: {root}")
        for path in sorted(root.glob("*.ssx")):
            seeds.append((path.stem, ssxio.parse(path)))
    checks = run_suite(args.suite, depth=args.dim, seeds=seeds)
    return _report(args, checks)


def _report(args, checks, result=None) -> Report:
    seconds = time.monotonic() - args._t0
    return Report(tuple(args._argv), tuple(checks), seconds, result)


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="ssx",
        description="Finite simplicial sets, groupoids, and their fibration checks.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, **flags):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(_fn=fn)
        if flags.get("file"):
            p.add_argument("file", help="an ssx/1 object file")
        if flags.get("pair"):
            p.add_argument("left", help="an ssx/1 object file")
            p.add_argument("right", help="an ssx/1 object file")
        if flags.get("suite"):
            p.add_argument(
                "suite", choices=suite_ids(), help="suite identifier"
            )
            p.add_argument(
                "--seed-corpus",
                metavar="DIR",
                help="directory of extra .ssx instances to fold in",
            )
        if flags.get("dim"):
            p.add_argument(
                "--dim",
                type=int,
                metavar="D",
                help=f"dimension bound (default {DEFAULT_DEPTH}; "
                "higher values grow the search space quickly)",
            )
        if flags.get("mode"):
            p.add_argument("--mode", help=flags["mode"])
        if flags.get("ambient"):
            p.add_argument(
                "--ambient",
                type=int,
                metavar="N",
                help="embed into the N-simplex and report the comparison",
            )
        p.add_argument(
            "--out", metavar="PATH", help="write the machine report here"
        )
        return p

    add("describe", _cmd_describe, "summarize an object file", file=True)
    add(
        "homology",
        _cmd_homology,
        "integral homology of a simplicial set",
        file=True,
        dim=True,
    )
    add(
        "sing",
        _cmd_sing,
        "diagonal of the levelwise nerve of a simplicial groupoid",
        file=True,
        dim=True,
    )
    add(
        "dstar",
        _cmd_dstar,
        "closed-star rows of d* with the optional ambient comparison",
        file=True,
        ambient=True,
    )
    add(
        "check-kan",
        _cmd_check_kan,
        "classify a simplicial map against a horn family",
        file=True,
        dim=True,
        mode="kan | trivial_kan | weak_kan | weak_trivial_kan",
    )
    add(
        "check-reedy",
        _cmd_check_reedy,
        "per-level Reedy gap verdicts for a simplicial groupoid map",
        file=True,
        dim=True,
    )
    add(
        "fiber-product",
        _cmd_fiber_product,
        "strict or lax fiber product of two maps with common target",
        pair=True,
        mode="strict | lax",
    )
    add(
        "solve-lift",
        _cmd_solve_lift,
        "solve one lifting square strictly or up to fiberwise homotopy",
        file=True,
        mode="strict | weak",
    )
    add(
        "verify-suite",
        _cmd_verify_suite,
        "run a named batch of lemma checks over the built-in corpus",
        suite=True,
        dim=True,
    )
    return top


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _parser()
    args = parser.parse_args(argv)
    args._argv = ["ssx"] + argv
    args._t0 = time.monotonic()
    try:
        report = args._fn(args)
    except (
        ssxio.FormatError,
        ValidationError,
        WordError,
        TruncationError,
        OSError,
        ValueError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    print(report.human())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(ssxio.canonical_json(report.machine()))
    return report.exit_code


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()

"""Command-line front end: verify, orbits, indicators, oracle and reproduce.

Factorization files look like::

    degree 7
    group F
    (1,2,3,4,5)
    (1,2)(6,7)
    group G = AGL1:7

Blank lines and ``#`` comments are ignored.  A block is either a catalog
name after ``=`` or one generator per line in cycle notation.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import catalog
from .cases import CASES, run_case, run_sweep
from .factorization import ExactFactorization, NotExact, build
from .group import ResourceCapError, close
from .hopf import full_report, hopf_oracle
from .orbits import all_orbits
from .perm import Permutation

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class FileFormatError(ValueError):
    """The factorization file could not be parsed."""


def parse_factorization(text: str):
    """Return (n, F, G) from factorization file text."""
    n = None
    blocks: dict[str, list] = {}
    names: dict[str, str] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()
        if head[0] == "degree":
            if len(head) != 2 or not head[1].isdigit():
                raise FileFormatError(f"line {lineno}: expected 'degree n'")
            n = int(head[1])
            continue
        if head[0] == "group":
            rest = line[len("group"):].strip()
            label, _, name = rest.partition("=")
            label = label.strip()
            if label not in ("F", "G"):
                raise FileFormatError(f"line {lineno}: group label must be F or G")
            if label in blocks or label in names:
                raise FileFormatError(f"line {lineno}: group {label} defined twice")
            if name.strip():
                names[label] = name.strip()
                current = None
            else:
                blocks[label] = []
                current = label
            continue
        if current is None:
            raise FileFormatError(f"line {lineno}: generator outside a group block")
        blocks[current].append((lineno, line))
    if n is None:
        raise FileFormatError("missing 'degree n' header")
    groups = {}
    for label in ("F", "G"):
        if label in names:
            try:
                groups[label] = catalog.from_name(names[label], n)
            except (catalog.CatalogError, ValueError) as exc:
                raise FileFormatError(f"group {label}: {exc}") from None
        elif label in blocks:
            gens = []
            for lineno, line in blocks[label]:
                try:
                    gens.append(Permutation.parse(line, n))
                except ValueError as exc:
                    raise FileFormatError(f"line {lineno}: {exc}") from None
            groups[label] = close(gens, n)
        else:
            raise FileFormatError(f"group {label} is missing")
    return n, groups["F"], groups["G"]


def load_factorization(path: str) -> ExactFactorization:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise FileFormatError(str(exc)) from None
    _, F, G = parse_factorization(text)
    return build(F, G, name=path)


# ------------------------------------------------------------------ commands
def cmd_verify(args, out) -> int:
    # exactness is checked here rather than in load_factorization so the
    # failure can be reported as a verdict instead of an error
    with open(args.file) as fh:
        text = fh.read()
    n, F, G = parse_factorization(text)
    print(f"degree: {n}", file=out)
    print(f"|F|: {F.order}", file=out)
    print(f"|G|: {G.order}", file=out)
    try:
        fact = build(F, G, name=args.file)
    except NotExact as exc:
        print("exact: no", file=out)
        print(f"reason: {exc}", file=out)
        if exc.witness is not None:
            print(f"witness: {exc.witness}", file=out)
        return EXIT_FAIL
    print("exact: yes", file=out)
    print(f"|L|: {fact.L_order}", file=out)
    print(f"sharply k-transitive G: {'k = %d' % fact.sharp_k if fact.sharp_k else 'no'}", file=out)
    return EXIT_OK


def cmd_orbits(args, out) -> int:
    fact = load_factorization(args.file)
    rows = []
    for rec in all_orbits(fact):
        mc = rec.member_class
        rows.append({
            "rep": rec.representative.cycle_str(),
            "size": rec.size,
            "stab_order": rec.stabilizer.order,
            "m": mc.m if mc else None,
            "I": sorted(mc.I) if mc else None,
            "D": list(mc.D) if mc else None,
            "mixed": mc.mixed if mc else None,
            "null": rec.null_indicator,
        })
    if args.json:
        json.dump(rows, out, indent=2)
        print(file=out)
        return EXIT_OK
    print(f"{'rep':<32} {'size':>6} {'|F_x|':>6} {'m':>3} {'I':<10} {'D':<14} mixed null",
          file=out)
    for r in rows:
        def show(v):
            return "-" if v is None else ("{" + ",".join(map(str, v)) + "}" if isinstance(v, list)
                                          else str(v))
        I = show(r["I"])
        D = "-" if r["D"] is None else "[" + ",".join(map(str, r["D"])) + "]"
        print(f"{r['rep']:<32} {r['size']:>6} {r['stab_order']:>6} {show(r['m']):>3} {I:<10} "
              f"{D:<14} {show(r['mixed']):<5} {r['null']}", file=out)
    print(f"{len(rows)} orbits, {sum(r['null'] for r in rows)} null", file=out)
    return EXIT_OK


def cmd_indicators(args, out) -> int:
    fact = load_factorization(args.file)
    report = full_report(fact, threads=args.threads)
    if args.json:
        json.dump(report.to_dict(), out, indent=2)
        print(file=out)
    elif args.csv:
        out.write(report.to_csv())
    else:
        print(f"factorization: {report.name}", file=out)
        print(f"orbits: {len(report.orbits)}  simple modules: {len(report.modules)}", file=out)
        print(f"indicator histogram: {report.histogram}", file=out)
        print(f"trace: {report.trace_lhs} = {report.trace_rhs}: {report.trace_ok}", file=out)
        print(f"totally orthogonal: {report.totally_orthogonal}", file=out)
    return EXIT_OK if report.trace_ok else EXIT_FAIL


def cmd_oracle(args, out) -> int:
    fact = load_factorization(args.file)
    rep = hopf_oracle(fact, cap=args.cap, samples=args.samples, seed=args.seed)
    for name, (ok, witness) in rep.checks.items():
        line = f"{'PASS' if ok else 'FAIL'} {name}"
        if not ok and witness is not None:
            line += f" (witness: {witness})"
        print(line, file=out)
    ok = rep.trace_S == rep.i_L
    print(f"{'PASS' if ok else 'FAIL'} Tr(S) = {rep.trace_S}, involutions = {rep.i_L}", file=out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _print_results(name, results, seconds, out, conjecture=False) -> bool:
    good = True
    for r in results:
        tag = "PASS" if r.passed else "FAIL"
        good &= r.passed
        detail = f"{r.actual}" if r.passed else f"expected {r.expected}, got {r.actual}"
        print(f"{tag} [{name}] {r.label}: {detail} ({r.origin})", file=out)
    verdict = "PASS" if good else "FAIL"
    if conjecture and good:
        verdict += " CONJECTURE-CONSISTENT (empirical, not a proof)"
    print(f"{verdict} {name} ({seconds:.1f}s)", file=out)
    return good


def cmd_reproduce(args, out) -> int:
    if args.all:
        names = list(CASES) + ["sweep"]
    elif args.case:
        names = args.case
    else:
        print("reproduce: give --case NAME or --all", file=sys.stderr)
        return EXIT_USAGE
    for name in names:
        if name != "sweep" and name not in CASES:
            print(f"unknown case {name!r}; known: {', '.join(list(CASES) + ['sweep'])}",
                  file=sys.stderr)
            return EXIT_USAGE
    good = True
    for name in names:
        if name == "sweep":
            results, seconds = run_sweep(threads=args.threads)
        else:
            results, seconds, _ = run_case(CASES[name], threads=args.threads)
        good &= _print_results(name, results, seconds, out,
                               name != "sweep" and CASES[name].conjecture)
        out.flush()
    return EXIT_OK if good else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bismash",
                                description="Frobenius-Schur indicators of bismash products")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(sp):
        sp.add_argument("-f", "--file", required=True, help="factorization file")
        return sp

    with_file(sub.add_parser("verify", help="check exactness of a factorization"))
    sp = with_file(sub.add_parser("orbits", help="F-orbits of G and their classification"))
    sp.add_argument("--json", action="store_true")
    sp = with_file(sub.add_parser("indicators", help="indicators of all simple modules"))
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    sp.add_argument("--threads", type=int, default=None, help="worker processes (default: all cores)")
    sp = with_file(sub.add_parser("oracle", help="check the Hopf algebra axioms on small cases"))
    sp.add_argument("--cap", type=int, default=5040, help="largest dim H to materialize")
    sp.add_argument("--samples", type=int, default=300)
    sp.add_argument("--seed", type=int, default=0)
    sp = sub.add_parser("reproduce", help="run the named reproduction cases")
    sp.add_argument("--case", action="append", metavar="NAME")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--threads", type=int, default=None)
    return p


COMMANDS = {"verify": cmd_verify, "orbits": cmd_orbits, "indicators": cmd_indicators,
            "oracle": cmd_oracle, "reproduce": cmd_reproduce}


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except MemoryError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except NotExact as exc:
        print(f"not an exact factorization: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {exc.witness}", file=sys.stderr)
        return EXIT_FAIL
    except (FileFormatError, OSError) as exc:
        print(f"bad factorization file: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line interface: one binary, one subcommand per operation.

Exit codes: 0 success, 1 usage error, 2 domain error (bad ring, bad element,
corrupt checkpoint), 3 verification failure (a check ran and found
violations).  JSON output is schema-stable and versioned; identical
invocations produce byte-identical JSON.  Text output is for humans and is
not parsed by the test suite.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .factoring import factor_element
from .primes import prime_above
from .rings import DomainError, K, format_element, parse_element, pretty_element, ring
from .search import (
    CheckpointError,
    SearchConfig,
    _config_echo,
    run_search,
)
from .theorems import CHECK_IDS, g_map, run_check
from .udf import delta_star, i_star, sigma_star_int, unitary_divisors

SCHEMA_VERSION = 1


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _ring_type(text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        d = None
    if d not in K:
        legal = ", ".join(str(k) for k in sorted(K))
        raise argparse.ArgumentTypeError(f"unknown ring {text!r}; legal values: {legal}")
    return d


def _fraction_type(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _print_json(doc: dict) -> None:
    print(json.dumps(doc, separators=(",", ":")))


def _print_csv(header: list[str], rows: list[list]) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


# ---------------------------------------------------------------------------
# subcommand handlers

def _cmd_classify(args) -> int:
    r = ring(args.ring)
    pc = prime_above(args.prime, r)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "ring": r.d,
        "prime": args.prime,
        "kind": pc.kind,
        "pi": format_element(pc.pi),
        "pi_pretty": pretty_element(pc.pi),
        "pi_bar": None if pc.pi_bar is None else format_element(pc.pi_bar),
        "pi_bar_pretty": None if pc.pi_bar is None else pretty_element(pc.pi_bar),
    }
    if args.format == "json":
        _print_json(doc)
    elif args.format == "csv":
        _print_csv(
            ["prime", "ring", "kind", "pi", "pi_bar"],
            [[args.prime, r.d, pc.kind, doc["pi"], doc["pi_bar"]]],
        )
    else:
        if pc.kind == "inert":
            print(f"{args.prime} is inert in d={r.d}: it stays prime, norm {args.prime ** 2}")
        elif pc.kind == "ramified":
            print(
                f"{args.prime} ramifies in d={r.d}: "
                f"{args.prime} ~ ({pretty_element(pc.pi)})^2"
            )
        else:
            print(
                f"{args.prime} splits in d={r.d}: pi = {pretty_element(pc.pi)}, "
                f"conjugate ~ {pretty_element(pc.pi_bar)}"
            )
    return 0


def _cmd_factor(args) -> int:
    r = ring(args.ring)
    z = parse_element(r, args.element)
    fac = factor_element(z)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "ring": r.d,
        "element": format_element(z),
        "norm": z.norm(),
        "unit": format_element(fac.unit),
        "unit_index": fac.unit_index,
        "factors": [
            {
                "prime": format_element(e.prime),
                "exponent": e.exponent,
                "p": e.p,
                "kind": e.kind,
                "norm": e.prime.norm(),
            }
            for e in fac.entries
        ],
    }
    if args.format == "json":
        _print_json(doc)
    elif args.format == "csv":
        _print_csv(
            ["prime", "exponent", "p", "kind", "norm"],
            [[f["prime"], f["exponent"], f["p"], f["kind"], f["norm"]] for f in doc["factors"]],
        )
    else:
        parts = []
        if fac.unit_index != 0:
            parts.append(format_element(fac.unit))
        for e in fac.entries:
            base = format_element(e.prime)
            if "+" in base or "-" in base[1:]:
                base = f"({base})"
            parts.append(base if e.exponent == 1 else f"{base}^{e.exponent}")
        print(f"{format_element(z)} = {' * '.join(parts) if parts else '1'}")
    return 0


def _value_doc(r, z, n: int, value, label: str) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "ring": r.d,
        "element": format_element(z),
        "power": n,
        label: value.to_json_terms(),
        "rational": value.is_rational,
        "approx": value.approx(),
    }


def _cmd_delta(args) -> int:
    r = ring(args.ring)
    z = parse_element(r, args.element)
    value = delta_star(z, args.power)
    if args.format == "json":
        _print_json(_value_doc(r, z, args.power, value, "delta"))
    elif args.format == "csv":
        _print_csv(
            ["element", "power", "delta", "approx"],
            [[format_element(z), args.power, str(value), value.approx()]],
        )
    else:
        print(f"delta_star({format_element(z)}, {args.power}) = {value}")
    return 0


def _cmd_istar(args) -> int:
    r = ring(args.ring)
    z = parse_element(r, args.element)
    value = i_star(z, args.power)
    if args.format == "json":
        _print_json(_value_doc(r, z, args.power, value, "istar"))
    elif args.format == "csv":
        _print_csv(
            ["element", "power", "istar", "approx"],
            [[format_element(z), args.power, str(value), value.approx()]],
        )
    else:
        print(f"i_star({format_element(z)}, {args.power}) = {value}")
    return 0


def _cmd_divisors(args) -> int:
    r = ring(args.ring)
    z = parse_element(r, args.element)
    divisors = unitary_divisors(z).sorted_list()
    if args.format == "json":
        _print_json(
            {
                "schema_version": SCHEMA_VERSION,
                "ring": r.d,
                "element": format_element(z),
                "count": len(divisors),
                "divisors": [{"z": format_element(w), "norm": w.norm()} for w in divisors],
            }
        )
    elif args.format == "csv":
        _print_csv(["z", "norm"], [[format_element(w), w.norm()] for w in divisors])
    else:
        print(f"{len(divisors)} unitary divisors of {format_element(z)}:")
        for w in divisors:
            print(f"  {format_element(w)}  (norm {w.norm()})")
    return 0


def _cmd_search(args) -> int:
    cfg = SearchConfig(
        ring=ring(args.ring),
        n=args.power,
        t=args.target,
        max_norm=args.max_norm,
        mode=args.mode,
        jobs=args.jobs,
        checkpoint_path=args.checkpoint,
        verbose=args.verbose,
    )
    records = run_search(cfg)
    hits = sum(1 for rec in records if rec.is_hit)
    if args.format == "json":
        header = {
            "schema_version": SCHEMA_VERSION,
            "kind": "search",
            "config": _config_echo(cfg),
            "hits": hits,
        }
        print(json.dumps(header, separators=(",", ":")))
        for rec in records:
            print(json.dumps(rec.to_json_dict(), separators=(",", ":")))
    elif args.format == "csv":
        _print_csv(
            ["z", "norm", "istar", "hit"],
            [[format_element(rec.z), rec.norm, str(rec.value), rec.is_hit] for rec in records],
        )
    else:
        for rec in records:
            tag = "hit " if rec.is_hit else "    "
            print(f"{tag}{format_element(rec.z)}  norm {rec.norm}  i_star = {rec.value}")
        print(f"{hits} hits")
    if not args.quiet and args.format != "text":
        print(
            f"search d={cfg.ring.d} n={cfg.n} t={cfg.t} max_norm={cfg.max_norm} "
            f"mode={cfg.mode}: {hits} hits, {len(records)} records",
            file=sys.stderr,
        )
    return 0


def _cmd_verify(args) -> int:
    report = run_check(
        args.check,
        ring_d=args.ring,
        max_norm=args.max_norm,
        hits_path=args.hits,
        target=args.target,
        jobs=args.jobs,
    )
    if args.format == "json":
        _print_json(report.to_json_dict())
    elif args.format == "csv":
        _print_csv(
            ["check", "ring", "checked", "vacuous", "violations", "passed"],
            [[report.check_id, report.ring_d, report.checked, report.vacuous,
              len(report.violations), report.passed]],
        )
    else:
        print(report.to_text())
    return 0 if report.passed else 3


def _cmd_gmap(args) -> int:
    r = ring(args.ring)
    image = g_map(args.integer, r)
    value = i_star(image, 1)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "ring": r.d,
        "n": args.integer,
        "image": format_element(image),
        "image_pretty": pretty_element(image),
        "norm": image.norm(),
        "istar1": str(value),
    }
    if args.format == "json":
        _print_json(doc)
    elif args.format == "csv":
        _print_csv(
            ["n", "ring", "image", "norm", "istar1"],
            [[args.integer, r.d, doc["image"], doc["norm"], doc["istar1"]]],
        )
    else:
        print(f"g({args.integer}) = {format_element(image)}  (norm {image.norm()}, i_star_1 = {value})")
    return 0


def _cmd_sigma_star(args) -> int:
    value = sigma_star_int(args.integer, args.power)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "n": args.integer,
        "k": args.power,
        "value": value,
    }
    if args.format == "json":
        _print_json(doc)
    elif args.format == "csv":
        _print_csv(["n", "k", "value"], [[args.integer, args.power, value]])
    else:
        print(f"sigma_star_{args.power}({args.integer}) = {value}")
    return 0


# ---------------------------------------------------------------------------
# parser assembly

def _add_common(sub, ring_required: bool = True) -> None:
    if ring_required:
        sub.add_argument(
            "--ring", type=_ring_type, required=True,
            help="ring discriminant d, one of " + ", ".join(str(k) for k in sorted(K)),
        )
    sub.add_argument(
        "--format", choices=("json", "csv", "text"), default="text",
        help="output format (default: text)",
    )
    sub.add_argument("--quiet", action="store_true", help="suppress progress on stderr")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="quadunitary",
        description=(
            "Exact arithmetic for unitary divisor functions in the nine "
            "imaginary quadratic unique factorization domains."
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = subs.add_parser("classify", help="classify an integer prime as inert, ramified, or split")
    _add_common(p)
    p.add_argument("--prime", type=int, required=True, help="integer prime to classify")
    p.set_defaults(func=_cmd_classify)

    p = subs.add_parser("factor", help="factor an element into canonical sector primes")
    _add_common(p)
    p.add_argument("--element", required=True, help="element, e.g. '30', '3+4*w', '1+2i'")
    p.set_defaults(func=_cmd_factor)

    p = subs.add_parser("delta", help="evaluate the unitary divisor power sum delta_star")
    _add_common(p)
    p.add_argument("--element", required=True)
    p.add_argument("--power", type=int, required=True, help="power n (any nonzero integer)")
    p.set_defaults(func=_cmd_delta)

    p = subs.add_parser("istar", help="evaluate the normalized index i_star")
    _add_common(p)
    p.add_argument("--element", required=True)
    p.add_argument("--power", type=int, required=True)
    p.set_defaults(func=_cmd_istar)

    p = subs.add_parser("divisors", help="list the unitary divisors of an element")
    _add_common(p)
    p.add_argument("--element", required=True)
    p.set_defaults(func=_cmd_divisors)

    p = subs.add_parser("search", help="search for elements with i_star(z, n) = t")
    _add_common(p)
    p.add_argument("--power", type=int, required=True, help="power n >= 1")
    p.add_argument("--target", type=_fraction_type, required=True, help="target t > 1, e.g. 2 or 5/2")
    p.add_argument("--max-norm", type=int, default=10_000, help="inclusive norm bound (default 10000)")
    p.add_argument("--mode", choices=("elements", "signatures"), default="elements")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--checkpoint", help="JSON-lines checkpoint path for resumable runs")
    p.add_argument("--verbose", action="store_true", help="emit non-hits too (elements mode)")
    p.set_defaults(func=_cmd_search)

    p = subs.add_parser("verify", help="run one theorem check and report violations")
    p.add_argument("check", choices=CHECK_IDS, help="which check to run")
    p.add_argument(
        "--ring", type=_ring_type, default=None,
        help="ring discriminant d (checks with a fixed or global ring ignore this)",
    )
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--max-norm", type=int, default=None, help="population bound (per-check default)")
    p.add_argument("--hits", help="search checkpoint file to verify instead of re-searching")
    p.add_argument("--target", type=_fraction_type, default=None, help="perfectness ratio b for thm2.6")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_verify)

    p = subs.add_parser("gmap", help="lift a positive integer into the sector, preserving absolute value")
    _add_common(p)
    p.add_argument("--integer", type=int, required=True, help="positive integer n")
    p.set_defaults(func=_cmd_gmap)

    p = subs.add_parser("sigma-star", help="integer unitary divisor power sum sigma_star_k(n)")
    _add_common(p, ring_required=False)
    p.add_argument("--integer", type=int, required=True, help="positive integer n")
    p.add_argument("--power", type=int, default=1, help="power k (default 1)")
    p.set_defaults(func=_cmd_sigma_star)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, CheckpointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

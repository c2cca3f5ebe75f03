"""Command-line interface.

Exit codes: 0 success, 1 negative decision, 2 invalid input, 3 degree window
not certified.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import catalog, homology, surgery
from .exact import format_rat
from .exceptions import CertificateError, ValidationError, WindowError

EXIT_OK, EXIT_NEGATIVE, EXIT_INVALID, EXIT_WINDOW = 0, 1, 2, 3

FAMILIES = ("brieskorn", "ustilovsky", "ustilovsky-perturbed", "sigma-plus", "sigma-minus")


# ---------------------------------------------------------------------------
# rendering


def _cell(value) -> str:
    if isinstance(value, Fraction):
        return format_rat(value)
    if isinstance(value, (list, tuple)):
        return ",".join(_cell(v) for v in value)
    if isinstance(value, dict) and set(value) == {"unknown"}:
        return str(homology.RankInterval.from_json(value))
    if isinstance(value, dict):
        return json.dumps(value, ensure_ascii=False, sort_keys=True)
    if isinstance(value, bool):
        return str(value).lower()
    return str(value)


def render(rows: list[dict], fmt: str, columns: list[str] | None = None) -> str:
    """Render a table. JSON keeps full records; csv and markdown project columns."""
    if fmt == "json":
        return json.dumps(rows, ensure_ascii=False, indent=2, default=_cell)
    columns = columns or (list(rows[0]) if rows else [])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(r.get(c, "")) for c in columns])
        return buf.getvalue().rstrip("\n")
    lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
    for r in rows:
        lines.append("| " + " | ".join(_cell(r.get(c, "")) for c in columns) + " |")
    return "\n".join(lines)


def _emit(rows, args, columns=None):
    text = render(rows, args.format, columns)
    if text:
        print(text)


# ---------------------------------------------------------------------------
# argument helpers


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ValidationError(f"expected comma separated integers, got {text!r}") from None


def _family(args, k: int | None = None):
    name = args.family
    if args.exponents:
        if name not in (None, "brieskorn"):
            raise ValidationError("--exponents only applies to --family brieskorn")
        return catalog.Brieskorn(_int_list(args.exponents))
    if name is None:
        raise ValidationError("give --family or --exponents")
    if name == "brieskorn":
        raise ValidationError("--family brieskorn needs --exponents")
    if name in ("ustilovsky", "ustilovsky-perturbed"):
        if args.p is None or args.n is None:
            raise ValidationError(f"--family {name} needs --p and --n")
        cls = catalog.Ustilovsky if name == "ustilovsky" else catalog.UstilovskyPerturbed
        return cls(args.p, args.n)
    if args.n is None:
        raise ValidationError(f"--family {name} needs --n")
    cls = catalog.SigmaPlus if name == "sigma-plus" else catalog.SigmaMinus
    if args.tail:
        return cls(args.n, _int_list(args.tail))
    if k is None:
        raise ValidationError(f"--family {name} needs --tail (or a degree to size it automatically)")
    return cls.auto(args.n, k)


def _add_family_flags(sp):
    sp.add_argument("--family", choices=FAMILIES)
    sp.add_argument("--p", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--exponents", help="comma separated a_0,...,a_n")
    sp.add_argument("--tail", help="comma separated tail exponents of sigma-plus/minus")


# ---------------------------------------------------------------------------
# commands

GEN_COLUMNS = ["L", "stratum", "cell", "degree", "length", "label"]


def cmd_spectrum(args) -> int:
    fam = _family(args)
    if args.lmax < 2:
        gens = []
    else:
        gens = catalog.spectrum(fam, args.lmax)
    _emit([g.to_dict() for g in gens], args, GEN_COLUMNS)
    return EXIT_OK


def cmd_distinguish(args) -> int:
    left = surgery.ContactDescriptor.parse(args.left)
    right = surgery.ContactDescriptor.parse(args.right)
    result = surgery.distinguish(left, right, args.n)
    if isinstance(result, surgery.EqualParameters):
        print(f"{left} and {right} are the same contact structure", file=sys.stderr)
        _emit([result.to_dict()], args)
        return EXIT_NEGATIVE
    record = result.to_dict()
    if args.verify:
        report = surgery.verify_certificate(result)
        if not report.ok:
            raise CertificateError(f"certificate failed independent verification: {report.checks}")
        record["verification"] = report.to_dict()
    if args.format == "json":
        print(json.dumps(record, ensure_ascii=False, indent=2))
    else:
        _emit([{"field": key, "value": value} for key, value in record.items()], args)
    return EXIT_OK


def cmd_sweep(args) -> int:
    results = surgery.sweep(args.max_q, _int_list(args.ns))
    rows = [{"p": p, "q": q, "n": n, "degree": c.degree, "case": c.case,
             "lower_rank": c.lower_rank, "upper_bound": c.upper_bound, "verified": v.ok}
            for (p, q, n), c, v in results]
    _emit(rows, args)
    return EXIT_OK if all(r["verified"] for r in rows) else EXIT_NEGATIVE


def cmd_euler(args) -> int:
    value = surgery.mean_euler_copies(args.p, args.n, args.copies).value
    _emit([{"p": args.p, "n": args.n, "copies": args.copies, "chi_m": format_rat(value)}], args)
    return EXIT_OK


def cmd_euler_match(args) -> int:
    primes = _int_list(args.primes)
    ls = surgery.cor17_solve(primes, args.n)
    rows = [{"p": p, "copies": l, "chi_m": format_rat(surgery.mean_euler_copies(p, args.n, l).value)}
            for p, l in zip(primes, ls)]
    _emit(rows, args)
    return EXIT_OK


def cmd_afg(args) -> int:
    fam = _family(args, k=args.k)
    _emit([homology.afg_bound(fam, args.k).to_dict()], args, ["degree", "bound", "window_valid_up_to"])
    return EXIT_OK


def cmd_sh_ranks(args) -> int:
    kmax = args.kmax if args.kmax is not None else args.kmin
    fam = _family(args, k=args.kmin)
    rows = []
    for k in range(args.kmin, kmax + 1):
        rows.append(homology.sh_plus_rank(fam, k).to_dict())
    _emit(rows, args)
    return EXIT_OK


def cmd_handle(args) -> int:
    degrees = catalog.handle_spectrum(args.n, args.k, args.count)
    if args.format == "json":
        print(json.dumps(degrees))
    else:
        _emit([{"l": i // 2 + 1, "degree": d} for i, d in enumerate(degrees)], args)
    return EXIT_OK


def cmd_thm13(args) -> int:
    seq = surgery.thm13_sequence(args.b_xi, args.b_xik, args.n0, args.steps)
    _emit([{"l": l, "N_l": N} for l, N in enumerate(seq)], args)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contact-spectra",
        description="Reeb orbit spectra and contact invariants of Brieskorn manifolds.")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "csv", "markdown"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[fmt], help="list generators up to a period bound")
    _add_family_flags(sp)
    sp.add_argument("--lmax", type=int, required=True)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("distinguish", parents=[fmt], help="certify j x Sigma_p != i x Sigma_q")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--left", required=True, help="e.g. 1x7")
    sp.add_argument("--right", required=True, help="e.g. 1x23")
    sp.add_argument("--verify", action="store_true", help="re-check by independent enumeration")
    sp.set_defaults(func=cmd_distinguish)

    sp = sub.add_parser("distinguish-sweep", parents=[fmt], help="certify all pairs p < q <= max-q")
    sp.add_argument("--max-q", type=int, default=49)
    sp.add_argument("--ns", default="5,7,9")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("euler", parents=[fmt], help="mean Euler characteristic of copies x Sigma_p")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--copies", type=int, default=1)
    sp.set_defaults(func=cmd_euler)

    sp = sub.add_parser("euler-match", parents=[fmt], help="copy counts with equal mean Euler characteristic")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--primes", required=True, help="comma separated exponents")
    sp.set_defaults(func=cmd_euler_match)

    sp = sub.add_parser("afg", parents=[fmt], help="generator count bound b_k")
    _add_family_flags(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=cmd_afg)

    sp = sub.add_parser("sh-ranks", parents=[fmt], help="positive symplectic homology ranks")
    _add_family_flags(sp)
    sp.add_argument("--kmin", type=int, required=True)
    sp.add_argument("--kmax", type=int)
    sp.set_defaults(func=cmd_sh_ranks)

    sp = sub.add_parser("handle-spectrum", parents=[fmt], help="degrees of subcritical handle orbits")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--count", type=int, default=3)
    sp.set_defaults(func=cmd_handle)

    sp = sub.add_parser("thm13", parents=[fmt], help="separating sequence N_l = N0 (b+2)^l")
    sp.add_argument("--b-xi", type=int, required=True)
    sp.add_argument("--b-xik", type=int, required=True)
    sp.add_argument("--n0", type=int, default=1)
    sp.add_argument("--steps", type=int, default=5)
    sp.set_defaults(func=cmd_thm13)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except WindowError as exc:
        print(f"window error: {exc}", file=sys.stderr)
        return EXIT_WINDOW
    except (ValidationError, ZeroDivisionError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CertificateError as exc:
        print(f"not certified: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())

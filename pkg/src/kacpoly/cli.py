"""Command-line interface: kac, verify, triple and strata subcommands.

Exit codes are a contract: 0 success, 1 mathematical check failure, 2 input
error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import hua, oracle
from .laurent import NotAPolynomial
from .partitions import format_multipartition
from .quiver import (
    ParseError,
    Quiver,
    canonical_cut,
    jacobi_relations,
    parse_quiver,
    render_relation,
    serialize_quiver,
    shift_constants,
    triple,
)
from .series import box_range, sym

PAIRING_CONVENTION = "min-of-part-pairs"
SYM_CONVENTION = "bosonic:(1-X)^-c fermionic:(1+X)^+c"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET = 3


@dataclass
class RunConfig:
    quiver_path: str
    subcommand: str
    box: tuple[int, ...] = ()
    primes: tuple[int, ...] = ()
    enum_budget: int = oracle.DEFAULT_ENUM_BUDGET
    end_budget: int = oracle.DEFAULT_END_BUDGET
    output_format: str = "text"
    threads: int = 1
    trials: int = 3
    extra: dict = field(default_factory=dict)


class InputError(Exception):
    pass


def _parse_box(spec: str, n_vertices: int) -> tuple[int, ...]:
    parts = [tok.strip() for tok in spec.split(",") if tok.strip()]
    try:
        values = [int(tok) for tok in parts]
    except ValueError:
        raise InputError(f"bad box spec {spec!r}") from None
    if len(values) == 1:
        values = values * n_vertices
    if len(values) != n_vertices:
        raise InputError(
            f"box has {len(values)} entries for {n_vertices} vertices"
        )
    if any(v < 0 for v in values):
        raise InputError("box entries must be nonnegative")
    return tuple(values)


def _parse_primes(spec: str) -> tuple[int, ...]:
    if not spec:
        return ()
    out = []
    for tok in spec.split(","):
        tok = tok.strip()
        try:
            p = int(tok)
        except ValueError:
            raise InputError(f"bad prime {tok!r}") from None
        if p < 2 or p > 97 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
            raise InputError(f"{p} is not a prime <= 97")
        out.append(p)
    return tuple(out)


def _load_quiver(path: str) -> Quiver:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_quiver(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def quiver_hash(q: Quiver) -> str:
    return hashlib.sha256(serialize_quiver(q).encode()).hexdigest()[:16]


def _gamma_key(gamma) -> str:
    return "(" + ",".join(str(c) for c in gamma) + ")"


def _kac_records(q: Quiver, table: hua.KacTable, parity_ok: bool, primes=()):
    dts = hua.dt_invariants(table)
    gens = hua.generator_dims(table)
    records = []
    for gamma in sorted(table.entries):
        records.append(
            {
                "quiver": quiver_hash(q),
                "gamma": _gamma_key(gamma),
                "kac": str(table.entries[gamma]),
                "dt": str(dts[gamma]),
                "generators": {str(m): d for m, d in gens[gamma].items()},
                "flags": {
                    "parity": parity_ok,
                    "positivity": True,
                    "oracle_checked_primes": list(primes),
                },
            }
        )
    return records


def _emit_records(records, fmt: str, header: dict):
    if fmt == "json":
        print(json.dumps({"conventions": header, "records": records}, sort_keys=True))
    elif fmt == "tsv":
        cols = ["gamma", "kac", "dt", "generators", "parity", "positivity"]
        print("\t".join(cols))
        for rec in records:
            gens = ";".join(f"{m}:{d}" for m, d in sorted(rec["generators"].items(), key=lambda kv: int(kv[0])))
            print(
                "\t".join(
                    [
                        rec["gamma"],
                        rec["kac"],
                        rec["dt"],
                        gens,
                        str(rec["flags"]["parity"]).lower(),
                        str(rec["flags"]["positivity"]).lower(),
                    ]
                )
            )
    else:
        print(f"# quiver {records[0]['quiver'] if records else '-'}")
        for key, value in sorted(header.items()):
            print(f"# {key}: {value}")
        for rec in records:
            gens = ", ".join(
                f"m={m}:{d}" for m, d in sorted(rec["generators"].items(), key=lambda kv: int(kv[0]))
            )
            print(f"gamma {rec['gamma']}: a = {rec['kac']} | DT = {rec['dt']} | generators {{{gens}}}")


def cmd_kac(config: RunConfig) -> int:
    q = _load_quiver(config.quiver_path)
    box = _parse_box(config.extra["box_spec"], q.n_vertices)
    if not any(box):
        raise InputError("box must be nonzero for kac")
    try:
        series = hua.coha_char_nilp(q, box, threads=config.threads)
        parity_ok = hua.verify_parity(series)
        table = hua.kac_polynomials(q, box, threads=config.threads)
    except (hua.PositivityViolation, hua.NegativeMultiplicity, NotAPolynomial) as exc:
        print(f"CHECK FAILED: {exc}")
        return EXIT_CHECK_FAILED
    header = {
        "pairing_convention": PAIRING_CONVENTION,
        "sym_convention": SYM_CONVENTION,
    }
    records = _kac_records(q, table, parity_ok)
    _emit_records(records, config.output_format, header)
    if not parity_ok:
        print("CHECK FAILED: parity")
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    q = _load_quiver(config.quiver_path)
    box = _parse_box(config.extra["box_spec"], q.n_vertices)
    if not any(box):
        raise InputError("box must be nonzero for verify")
    checks = []
    failures = []

    def record(name, ok, detail=""):
        checks.append((name, ok, detail))
        if not ok:
            failures.append((name, detail))

    series = hua.coha_char_nilp(q, box, threads=config.threads)
    table = hua.kac_polynomials(q, box, threads=config.threads)
    record("parity", hua.verify_parity(series))
    round_trip = sym(hua.hua_generator_series(table)) == series
    record("hua_round_trip", round_trip)
    full = hua.coha_char_full(q, box, threads=config.threads)
    record("full_parity", hua.verify_parity(full))

    for p in config.primes:
        for gamma in box_range(box):
            if not any(gamma):
                continue
            got = oracle.count_nilpotent_pairs(
                q, gamma, p, config.enum_budget, config.end_budget
            )
            want = series.coefficient(gamma).eval_q(Fraction(p))
            record(
                f"nilpotent_pairs p={p} gamma={_gamma_key(gamma)}",
                got == want,
                f"oracle={got} series={want}",
            )
            got = oracle.count_all_pairs(
                q, gamma, p, config.enum_budget, config.end_budget
            )
            want = full.coefficient(gamma).eval_q(Fraction(p))
            record(
                f"all_pairs p={p} gamma={_gamma_key(gamma)}",
                got == want,
                f"oracle={got} series={want}",
            )
            got = oracle.count_absolutely_indecomposable(
                q, gamma, p, config.enum_budget, config.end_budget
            )
            want = table.entries[gamma].eval_q(Fraction(p))
            record(
                f"kac p={p} gamma={_gamma_key(gamma)}",
                Fraction(got) == want,
                f"oracle={got} polynomial={want}",
            )

    record(
        "orientation_independence",
        hua.verify_orientation_independence(q, box, trials=config.trials),
    )

    header = {
        "pairing_convention": PAIRING_CONVENTION,
        "sym_convention": SYM_CONVENTION,
        "quiver": quiver_hash(q),
    }
    if config.output_format == "json":
        payload = {
            "conventions": header,
            "checks": [
                {"name": name, "ok": ok, "detail": detail}
                for name, ok, detail in checks
            ],
            "ok": not failures,
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for key, value in sorted(header.items()):
            print(f"# {key}: {value}")
        for name, ok, detail in checks:
            suffix = f" ({detail})" if detail and not ok else ""
            print(f"{'PASS' if ok else 'FAIL'} {name}{suffix}")
    return EXIT_CHECK_FAILED if failures else EXIT_OK


def cmd_triple(config: RunConfig) -> int:
    q = _load_quiver(config.quiver_path)
    tripled, pot = triple(q)
    cut = canonical_cut(tripled)
    relations = jacobi_relations(pot, cut)
    sample_gamma = tuple(1 for _ in range(q.n_vertices))
    l, l_prime = shift_constants(q, sample_gamma)
    lines = []
    lines.append(serialize_quiver(tripled).rstrip("\n"))
    if pot.terms:
        rendered = []
        for coeff, word in sorted(pot.terms, key=lambda t: (t[0] < 0, t[1])):
            # Display in application order, rotated to start at the loop letter.
            display = tuple(reversed(word))
            for k, letter in enumerate(display):
                if letter.startswith("w@"):
                    display = display[k:] + display[:k]
                    break
            body = "·".join(display)
            rendered.append(
                (body if coeff > 0 else f"-{body}")
                if not rendered
                else (f"+ {body}" if coeff > 0 else f"- {body}")
            )
        lines.append("potential: " + " ".join(rendered))
    else:
        lines.append("potential: 0")
    lines.append("cut: {" + ", ".join(sorted(cut.arrows)) + "}")
    for name in sorted(relations):
        lines.append(f"relation d/d({name}): {render_relation(relations[name])}")
    lines.append(f"shift constants at gamma={_gamma_key(sample_gamma)}: l={l}, l'={l_prime}")
    if config.output_format == "json":
        payload = {
            "tripled": serialize_quiver(tripled),
            "potential": [
                {"coefficient": c, "word": list(w)} for c, w in pot.terms
            ],
            "cut": sorted(cut.arrows),
            "relations": {
                name: render_relation(rel) for name, rel in relations.items()
            },
            "shift_constants": {"gamma": _gamma_key(sample_gamma), "l": l, "l_prime": l_prime},
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(lines))
    return EXIT_OK


def cmd_strata(config: RunConfig) -> int:
    q = _load_quiver(config.quiver_path)
    gamma = _parse_box(config.extra["box_spec"], q.n_vertices)
    rows = hua.strata_rows(q, gamma)
    if config.output_format == "json":
        payload = {
            "quiver": quiver_hash(q),
            "gamma": _gamma_key(gamma),
            "strata": [
                {
                    "pi": format_multipartition(pi),
                    "arrow_pairing_exponent": exp,
                    "stabilizer_weight": str(weight),
                    "summand": str(term),
                    "running_total": str(total),
                }
                for pi, exp, weight, term, total in rows
            ],
            "total": str(rows[-1][4]) if rows else "1",
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"# quiver {quiver_hash(q)}, gamma {_gamma_key(gamma)}")
        if not rows:
            print("total: 1")
        for pi, exp, weight, term, total in rows:
            print(
                f"{format_multipartition(pi)}: arrow pairing q^{exp}, "
                f"stabilizer weight {weight}, summand {term}, running total {total}"
            )
        if rows:
            print(f"total: {rows[-1][4]}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kacpoly",
        description=(
            "Exact Kac polynomials, DT invariants and nilpotent stack series "
            "for quivers, with finite-field verification."
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in ("kac", "verify", "triple", "strata"):
        p = sub.add_parser(name)
        p.add_argument("--quiver", required=True, help="path to a quiver file")
        p.add_argument(
            "--box",
            default="1",
            help="per-vertex truncation bound, e.g. 2,2; a single integer replicates",
        )
        p.add_argument("--primes", default="", help="comma-separated primes <= 97")
        p.add_argument("--budget-enum", type=int, default=None)
        p.add_argument("--budget-end", type=int, default=None)
        p.add_argument("--format", choices=("text", "json", "tsv"), default="text")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--trials", type=int, default=3)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    env_budget = os.environ.get("KACPOLY_BUDGET")
    try:
        default_budget = int(env_budget) if env_budget else None
    except ValueError:
        print(f"bad KACPOLY_BUDGET {env_budget!r}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    config = RunConfig(
        quiver_path=args.quiver,
        subcommand=args.subcommand,
        enum_budget=(
            args.budget_enum
            if args.budget_enum is not None
            else (default_budget or oracle.DEFAULT_ENUM_BUDGET)
        ),
        end_budget=(
            args.budget_end
            if args.budget_end is not None
            else (default_budget or oracle.DEFAULT_END_BUDGET)
        ),
        output_format=args.format,
        threads=max(1, args.threads),
        trials=args.trials,
        extra={"box_spec": args.box},
    )
    try:
        config.primes = _parse_primes(args.primes)
        handler = {
            "kac": cmd_kac,
            "verify": cmd_verify,
            "triple": cmd_triple,
            "strata": cmd_strata,
        }[args.subcommand]
        return handler(config)
    except (InputError, ParseError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except oracle.BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    ohno-fmzv eval "(1,2)" -p 13            # 5
    ohno-fmzv series "(2,1,2)" -p 101 -N 12
    ohno-fmzv verify --all -N 12 --primes 5

Exit codes: 0 all cells pass, 1 some guaranteed cell is false,
2 usage error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .fmzv import EvalContext, zeta_A
from .indices import format_index, parse_index
from .modmath import check_prime, primes_above
from .series import O_series, TruncSeries, main_rhs_series
from .verify import DEFAULT_CUTOFF, IDENTITY_IDS, run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class Config:
    prime_lo: int | None = None
    prime_count: int = 5
    primes: list[int] = field(default_factory=list)
    cutoff: int = DEFAULT_CUTOFF
    identities: list[str] = field(default_factory=lambda: list(IDENTITY_IDS))
    params: str | None = None
    output: Path | None = None
    format: str = "pretty"
    allow_below_floor: bool = False
    jobs: int = 1

    def validate(self) -> None:
        if self.cutoff < 4:
            raise UsageError("cutoff N must be at least 4")
        unknown = [i for i in self.identities if i not in IDENTITY_IDS]
        if unknown:
            raise UsageError(f"unknown identity id(s): {', '.join(unknown)}")
        floor = 2 * self.cutoff
        if not self.allow_below_floor:
            if self.prime_lo is not None and self.prime_lo <= floor:
                raise UsageError(f"--prime-lo must exceed 2N = {floor} (use --allow-below-floor to override)")
            low = [p for p in self.primes if p <= floor]
            if low:
                raise UsageError(f"primes {low} are not above 2N = {floor} (use --allow-below-floor to override)")
        if self.prime_count < 0:
            raise UsageError("--primes must be nonnegative")

    def resolve_primes(self) -> list[int]:
        if self.primes:
            return sorted(set(self.primes))
        floor = 2 * self.cutoff
        lo = self.prime_lo if self.prime_lo is not None else floor + 1
        if not self.allow_below_floor:
            lo = max(lo, floor + 1)
        return primes_above(max(lo - 1, 2), self.prime_count)


def _prime_arg(text: str) -> int:
    try:
        return check_prime(int(text))
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _bool_arg(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true/false, got {text!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ohno-fmzv", description="Finite multiple zeta(-star) values and Ohno-type sums mod p.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="print zeta_A(k) or zeta_A^star(k) mod p")
    ev.add_argument("index", help='index such as "(2,1,2)", "()" or "ones:3"')
    ev.add_argument("-p", "--prime", type=_prime_arg, required=True)
    ev.add_argument("--star", type=_bool_arg, nargs="?", const=True, default=False)

    se = sub.add_parser("series", help="tabulate O(k) and the depth-3 closed form side by side")
    se.add_argument("index")
    se.add_argument("-p", "--prime", type=_prime_arg, required=True)
    se.add_argument("-N", "--cutoff", type=int, default=DEFAULT_CUTOFF)

    ve = sub.add_parser("verify", help="run identity checks over a batch of primes")
    which = ve.add_mutually_exclusive_group()
    which.add_argument("--all", action="store_true", help="every identity (default)")
    which.add_argument("--id", action="append", dest="ids", metavar="ID", choices=IDENTITY_IDS)
    ve.add_argument("--params", help='grid filter, e.g. "k_sum<=7,m<=2"')
    ve.add_argument("-N", "--cutoff", type=int, default=DEFAULT_CUTOFF)
    ve.add_argument("--primes", type=int, default=5, dest="prime_count", help="number of primes to use")
    ve.add_argument("--prime-lo", type=int)
    ve.add_argument("-p", "--prime", type=_prime_arg, action="append", dest="primes", default=[])
    ve.add_argument("--allow-below-floor", action="store_true")
    ve.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
    ve.add_argument("--out", type=Path)
    ve.add_argument("-j", "--jobs", type=int, default=1, help="worker processes (one prime per task)")
    return parser


def cmd_eval(args) -> int:
    k = parse_index(args.index)
    ctx = EvalContext(args.prime)
    print(zeta_A(k, ctx, star=args.star))
    return EXIT_OK


def _rhs_for(k: tuple[int, ...], ctx: EvalContext, N: int) -> TruncSeries | None:
    if len(k) in (1, 2):
        return TruncSeries.zero(ctx.p, N)
    if len(k) == 3:
        return main_rhs_series(*k, ctx, N)
    return None


def cmd_series(args) -> int:
    k = parse_index(args.index)
    if not k:
        raise UsageError("series needs a nonempty index")
    ctx = EvalContext(args.prime)
    N = args.cutoff
    if N >= ctx.p - 1:
        raise UsageError(f"cutoff {N} too large for p={ctx.p}")
    lhs = O_series(k, ctx, N)
    rhs = _rhs_for(k, ctx, N)
    print(f"# O(k) for k = {format_index(k)}, p = {ctx.p}, N = {N}")
    print(f"{'weight':>6}  {'O(k)':>8}  {'closed form':>11}  match")
    all_match = True
    for w in range(N + 1):
        if rhs is None:
            print(f"{w:>6}  {lhs[w]:>8}  {'-':>11}  -")
            continue
        ok = lhs[w] == rhs[w]
        all_match &= ok
        print(f"{w:>6}  {lhs[w]:>8}  {rhs[w]:>11}  {'yes' if ok else 'NO'}")
    return EXIT_OK if all_match else EXIT_FAIL


def _write_atomic(path: Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent if str(path.parent) else ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_verify(args) -> int:
    cfg = Config(
        prime_lo=args.prime_lo,
        prime_count=args.prime_count,
        primes=list(args.primes),
        cutoff=args.cutoff,
        identities=list(args.ids) if args.ids else list(IDENTITY_IDS),
        params=args.params,
        output=args.out,
        format=args.format,
        allow_below_floor=args.allow_below_floor,
        jobs=args.jobs,
    )
    cfg.validate()
    primes = cfg.resolve_primes()
    try:
        report = run_all(primes, cfg.cutoff, parallel=cfg.jobs, names=cfg.identities, params=cfg.params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = {"json": report.to_jsonl, "csv": report.to_csv, "pretty": report.to_pretty}[cfg.format]()
    if cfg.output is not None:
        try:
            _write_atomic(cfg.output, text)
        except OSError as exc:
            print(f"error writing {cfg.output}: {exc}", file=sys.stderr)
            return EXIT_IO
    elif cfg.format != "pretty":
        sys.stdout.write(text)
    for e in report.failures():
        print(f"FAIL {e.identity} {e.params} p={e.prime} w={e.weight}: {e.lhs} != {e.rhs}", file=sys.stderr)
    print(f"primes: {', '.join(map(str, primes)) or '-'}; N = {cfg.cutoff}")
    print(report.summary())
    return EXIT_OK if report.all_passed else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"eval": cmd_eval, "series": cmd_series, "verify": cmd_verify}[args.command]
    try:
        return handler(args)
    except (UsageError, ValueError) as exc:
        print(f"ohno-fmzv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

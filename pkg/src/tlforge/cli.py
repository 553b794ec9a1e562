"""``tlforge`` command line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or I/O error,
3 violated parameter constraint.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .core import AXIOM_N_CAP, TLSolution, VerificationReport, build_projector, verify_by_criterion, verify_tl_axioms
from .io import DocumentError, ReportDocument, digest, dumps_solution, loads_solution
from .linalg import default_tol, random_unitary
from .permutations import DEFAULT_ENUM_CAP, enumerate_admissible_classes, parse_cycles
from .rank1 import Rank1Params, antidiagonal_involution, build_rank1, rank1_from_u
from .rank2 import (
    S4_CASES,
    DdssData,
    N3pConstraintError,
    OddConditionUnsolvable,
    alphas_from_ratio,
    build_complementary,
    build_ddss,
    build_n3p,
    build_vvn4,
    build_vvn4k,
    n3p_w_ansatz,
    random_n3p_genperm,
    random_n3p_unitary,
    s4_catalog,
    solve_odd_condition,
    vvn4k_zpar,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CONSTRAINT = 0, 1, 2, 3

FAMILIES = (
    "rank1-normal",
    "n3p-unitary",
    "n3p-w",
    "n3p-genperm",
    "ddss",
    "vvn4k-s1",
    "vvn4k-s2",
    "vvn4",
    "vvn4k-zpar-s1",
    "vvn4k-zpar-s2",
    "s4-catalog",
    "complementary",
)

SWEEP_FAMILIES = ("n3p-unitary", "n3p-w", "n3p-genperm", "vvn4k-s1", "vvn4k-s2", "vvn4", "ddss")


class UsageError(Exception):
    pass


class ConstraintError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Accept ``2``, ``-0.5``, ``2+0i``, ``1-2j``, ``i``, ``-i``."""
    s = text.strip().replace(" ", "").replace("i", "j")
    if s in ("j", "+j"):
        return 1j
    if s == "-j":
        return -1j
    if s.endswith("j") and s[-2:-1] in ("+", "-"):
        s = s[:-1] + "1j"
    try:
        return complex(s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _complex_list(text: str) -> list[complex]:
    return [parse_complex(t) for t in text.split(",") if t.strip()]


def _fraction_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a list of rationals: {text!r}") from exc


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a list of reals: {text!r}") from exc


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"family {args.family} needs {', '.join(missing)}")


def _perm(text: str, n: int):
    try:
        return parse_cycles(text, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _build(args, rng: np.random.Generator) -> TLSolution:
    fam = args.family
    if fam == "rank1-normal":
        _need(args, "n")
        sigma = _perm(args.sigma, args.n) if args.sigma else antidiagonal_involution(args.n)
        if (args.z is None) == (args.z_direct is None):
            raise UsageError("rank1-normal needs exactly one of --z, --z-direct")
        if args.z is not None:
            return rank1_from_u(sigma, args.z, args.sign)
        return build_rank1(Rank1Params(sigma, tuple(args.z_direct), args.sign))
    if fam in ("n3p-unitary", "n3p-w", "n3p-genperm"):
        _need(args, "p")
        t = 0.5 if args.t is None else args.t
        if fam == "n3p-unitary":
            return build_n3p(random_n3p_unitary(args.p, rng, t), fam)
        if fam == "n3p-genperm":
            return build_n3p(random_n3p_genperm(args.p, rng, t), fam)
        w = 0j if args.w is None else args.w
        a1, a2 = alphas_from_ratio(args.p, t)
        s = math.sqrt(1 + abs(w) ** 2)
        blocks = [random_unitary(args.p, rng) / (a * s) for a in (a1, a1, a2, a2)]
        return build_n3p(n3p_w_ansatz(*blocks, w, a1, a2), fam, params={"w": w})
    if fam == "ddss":
        _need(args, "n", "sigma1", "sigma2")
        s1, s2 = _perm(args.sigma1, args.n), _perm(args.sigma2, args.n)
        x = args.x if args.x is not None else [0.0] * args.n
        if len(x) == 1 and args.n > 1:
            x = [x[0] if k % 2 == 0 else -x[0] for k in range(args.n)]
        if (args.u_vec is None) != (args.v_vec is None):
            raise UsageError("give both --u-vec and --v-vec or neither")
        if args.u_vec is None:
            u, v = solve_odd_condition(s1, s2)
        else:
            u, v = args.u_vec, args.v_vec
        return build_ddss(DdssData(s1, s2, x, u, v))
    if fam in ("vvn4k-s1", "vvn4k-s2"):
        _need(args, "n", "z1", "z2")
        which = "ssigma1" if fam.endswith("s1") else "ssigma2"
        return build_vvn4k(args.n, which, args.z1, args.z2, args.zeta)
    if fam == "vvn4":
        _need(args, "n", "z1", "z2", "z3")
        return build_vvn4(args.n, args.z1, args.z2, args.z3, args.zeta)
    if fam in ("vvn4k-zpar-s1", "vvn4k-zpar-s2"):
        _need(args, "n", "q")
        which = "ssigma1" if fam.endswith("s1") else "ssigma2"
        return vvn4k_zpar(args.n, which, args.q, args.xi1, args.xi2, args.zeta)
    if fam == "s4-catalog":
        _need(args, "case")
        if args.case not in S4_CASES:
            raise UsageError(f"--case must be one of {', '.join(S4_CASES)}")
        return next(e.solution for e in s4_catalog() if e.label == args.case)
    if fam == "complementary":
        _need(args, "n", "sigma1", "sigma2")
        return build_complementary(_perm(args.sigma1, args.n), _perm(args.sigma2, args.n))
    raise UsageError(f"unknown family {fam!r}; known: {', '.join(FAMILIES)}")


def verify_solution(sol: TLSolution, tol: float, non_hermitian: bool = False) -> VerificationReport:
    """Criterion check (hermitian only) plus the direct relations when n is small enough."""
    rep = VerificationReport()
    hermitian = not non_hermitian
    if not sol.hermitian and hermitian:
        rep.notes.append("document carries dual matrices; pass --non-hermitian to drop the T* = T requirement")
    if sol.hermitian:
        rep.merge(verify_by_criterion(sol, tol))
    else:
        rep.notes.append("non-hermitian solution: unitarity criterion not applicable")
    if sol.n <= AXIOM_N_CAP:
        T = sol.Q * build_projector(sol, tol=tol)
        rep.merge(verify_tl_axioms(T, sol.Q, sol.n, tol, hermitian=hermitian))
    else:
        rep.notes.append(f"direct relations skipped: n={sol.n} exceeds {AXIOM_N_CAP}")
        if not sol.hermitian:
            rep.fail("non-hermitian solution with n above the direct-check cap cannot be verified")
    return rep


def cmd_enumerate(args) -> int:
    if args.n % 2:
        raise UsageError("n must be even")
    cap = 8 if args.allow_large else DEFAULT_ENUM_CAP
    if args.n > cap:
        raise UsageError(f"n={args.n} exceeds the enumeration cap {cap} (use --allow-large for n=8)")
    classes = enumerate_admissible_classes(args.n, cap=cap, workers=args.workers)
    if args.json:
        out = [
            {"sigma1": str(c.canonical.first), "sigma2": str(c.canonical.second), "members": c.members_count}
            for c in classes
        ]
        print(json.dumps({"n": args.n, "classes": out}, indent=1))
    else:
        print(f"n={args.n}: {len(classes)} admissible classes")
        for i, c in enumerate(classes, 1):
            print(f"{i:3d}  {str(c.canonical.first):<20s} {str(c.canonical.second):<20s} members={c.members_count}")
    return EXIT_OK


def cmd_build(args) -> int:
    rng = np.random.default_rng(args.seed)
    try:
        sol = _build(args, rng)
    except (UsageError, DocumentError):
        raise
    except OddConditionUnsolvable as exc:
        raise ConstraintError(f"ABsub: {exc}") from exc
    except (ValueError, N3pConstraintError) as exc:
        raise ConstraintError(str(exc)) from exc
    tol = args.tol if args.tol is not None else default_tol()
    rep = verify_solution(sol, tol, non_hermitian=not sol.hermitian)
    if not rep.passed and not args.force:
        print(rep.table(), file=sys.stderr)
        print("refusing to write an unverified solution (use --force)", file=sys.stderr)
        return EXIT_FAIL
    text = dumps_solution(sol, provenance=f"tlforge {__version__} build --family {args.family} --seed {args.seed}")
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
        Q = sol.Q if sol.hermitian else complex(sol.Q)
        print(f"wrote {args.output}: family={sol.family} n={sol.n} rank={sol.rank} Q={Q!r}")
    else:
        print(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        raw = Path(args.input).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from exc
    sol = loads_solution(raw)
    tol = args.tol if args.tol is not None else default_tol()
    start = time.perf_counter()
    rep = verify_solution(sol, tol, non_hermitian=args.non_hermitian)
    doc = ReportDocument(digest(raw), tol, rep, time.perf_counter() - start, sorted(rep.residuals))
    if args.json:
        print(doc.dumps())
    else:
        print(f"input sha256 {doc.input_digest}")
        print(rep.table())
        print("PASS" if rep.passed else "FAIL")
    return EXIT_OK if rep.passed else EXIT_FAIL


def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(Fraction(x)) for x in v) + ")"


def cmd_catalog(args) -> int:
    tol = args.tol if args.tol is not None else default_tol()
    entries = s4_catalog(tol)
    ok = True
    print(f"{'case':<5s}{'sigma1':<12s}{'sigma2':<14s}{'u':<22s}{'v':<26s}{'Q':<20s}{'path':<12s}residual")
    for e in entries:
        ok &= e.report.passed
        print(
            f"{e.label:<5s}{str(e.pair.first):<12s}{str(e.pair.second):<14s}{_fmt_vec(e.u):<22s}"
            f"{_fmt_vec(e.v):<26s}{e.Q!r:<20s}{e.path:<12s}{e.report.max_residual():.2e}"
            f"{'' if e.report.passed else '  FAIL'}"
        )
    return EXIT_OK if ok else EXIT_FAIL


def _sweep_rows(family: str, n: int, points: int, rng: np.random.Generator, tol: float):
    if family.startswith("n3p"):
        if n % 3:
            raise UsageError("n3p families need n divisible by 3")
        p = n // 3
        factory = {"n3p-unitary": random_n3p_unitary, "n3p-genperm": random_n3p_genperm}.get(family)
        for t in np.linspace(0.5, 0.995, points):
            if factory is None:
                a1, a2 = alphas_from_ratio(p, t)
                w = complex(rng.normal(), rng.normal())
                s = math.sqrt(1 + abs(w) ** 2)
                blocks = n3p_w_ansatz(*[random_unitary(p, rng) / (a * s) for a in (a1, a1, a2, a2)], w, a1, a2)
            else:
                blocks = factory(p, rng, t)
            yield t, build_n3p(blocks, family)
    elif family in ("vvn4k-s1", "vvn4k-s2"):
        which = "ssigma1" if family.endswith("s1") else "ssigma2"
        r = math.sqrt(2 / n)
        for th in np.linspace(math.pi / 4, 0.005, points):
            yield th, build_vvn4k(n, which, r * math.cos(th), r * math.sin(th), 1.0)
    elif family == "vvn4":
        for t in np.linspace(0.5, 0.995, points):
            # t = n |z1|^2 / 2 share of the constraint; z2 = z3
            z1 = math.sqrt(2 * t / n)
            z2 = math.sqrt((4 / n - 2 * z1 * z1) / 2)
            yield t, build_vvn4(n, z1, z2, z2, 1.0)
    elif family == "ddss":
        from .rank2 import alternating_x, ssigma1

        s1, s2 = ssigma1(n)
        u, v = solve_odd_condition(s1, s2)
        for x in np.linspace(0.0, 3.0, points):
            yield x, build_ddss(DdssData(s1, s2, alternating_x(n, float(x)), u, v))
    else:
        raise UsageError(f"sweep supports {', '.join(SWEEP_FAMILIES)}")


def cmd_sweep(args) -> int:
    tol = args.tol if args.tol is not None else default_tol()
    rng = np.random.default_rng(args.seed)
    out = open(args.output, "w", newline="", encoding="utf-8") if args.output else sys.stdout
    ok = True
    try:
        w = csv.writer(out)
        w.writerow(["family", "n", "param", "Q", "residual"])
        try:
            rows = list(_sweep_rows(args.family, args.n, args.points, rng, tol))
        except ValueError as exc:
            raise ConstraintError(str(exc)) from exc
        for param, sol in rows:
            rep = verify_by_criterion(sol, tol)
            ok &= rep.passed
            w.writerow([args.family, sol.n, repr(float(param)), repr(sol.Q), f"{rep.max_residual():.3e}"])
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK if ok else EXIT_FAIL


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tlforge", description="Temperley-Lieb tensor-space solutions: build, verify, enumerate.")
    ap.add_argument("--version", action="version", version=f"tlforge {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
        p.add_argument("--tol", type=float, default=None, help="tolerance (default $TLFORGE_TOL or 1e-10)")

    p = sub.add_parser("enumerate", help="admissible permutation pairs up to equivalence")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--allow-large", action="store_true", help="permit n=8 (about 1.6e9 pairs)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("build", help="construct a solution and write it as JSON")
    common(p)
    p.add_argument("--family", required=True, help=", ".join(FAMILIES))
    p.add_argument("--output", "-o")
    p.add_argument("--force", action="store_true", help="write even if verification fails")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int, help="block size for n = 3p")
    p.add_argument("--sigma", help="involution for rank1-normal, cycle notation")
    p.add_argument("--sigma1")
    p.add_argument("--sigma2")
    p.add_argument(
        "--z",
        type=_complex_list,
        help="rank1-normal: one scale-free value u per 2-cycle, Q = sum(|u|^2 + |u|^-2) (+1 for odd n)",
    )
    p.add_argument(
        "--z-direct",
        type=_complex_list,
        help="rank1-normal: the normalised entries themselves (sum |z|^2 < 1); Q is solved for",
    )
    p.add_argument("--sign", type=int, default=1, choices=(1, -1))
    p.add_argument("--t", type=float, help="share p/alpha1^2 in (0,1) for n3p families")
    p.add_argument("--w", type=parse_complex)
    p.add_argument("--x", type=_float_list, help="ddss x vector, or one value for the alternating pattern")
    p.add_argument("--u-vec", type=_fraction_list)
    p.add_argument("--v-vec", type=_fraction_list)
    p.add_argument("--z1", type=parse_complex)
    p.add_argument("--z2", type=parse_complex)
    p.add_argument("--z3", type=parse_complex)
    p.add_argument("--zeta", type=parse_complex, default=1 + 0j)
    p.add_argument("--q", type=parse_complex)
    p.add_argument("--xi1", type=parse_complex, default=1 + 0j)
    p.add_argument("--xi2", type=parse_complex, default=1 + 0j)
    p.add_argument("--case")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="verify a solution document")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--non-hermitian", action="store_true", help="do not require T* = T")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="the ten admissible classes in S_4 with their solutions")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("sweep", help="sample Q along a family, CSV output")
    common(p)
    p.add_argument("--family", required=True, help=", ".join(SWEEP_FAMILIES))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConstraintError as exc:
        print(f"constraint violated: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

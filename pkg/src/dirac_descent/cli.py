"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a verification fails,
2 for usage or parse errors.  Reports print one check per line, prefixed
``PASS``/``FAIL`` (``INFO`` for informational lines).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable

import numpy as np

from . import clifford as cl
from .adapted import DEFAULT_MAX_DIM, adapted, conjugate_odd, verify_exchange_chiral
from .clifford import GammaSet, NumericGammaSet, VerificationReport
from .descent import descend_chain, drop_last, is_block_structured, split_even
from .dirac import (
    ON_SHELL_TOL,
    Momentum,
    determinant_deviation,
    dirac_operator,
    dispersion_check,
    kernel_basis,
    plane_wave_solutions,
    random_momentum,
    reduced_operator,
    reflection_equivalence_check,
    spawn_generators,
)
from .exact import ExactMatrix
from .render import RenderError, render_grid
from .serialize import DocumentError, dumps, load

USAGE, FAILED, OK = 2, 1, 0


class UsageError(Exception):
    pass


# checks ----------------------------------------------------------------


def _safe(name: str, fn: Callable[[], VerificationReport | bool], detail: str = "") -> VerificationReport:
    try:
        out = fn()
    except Exception as exc:  # a broken set may make later checks raise
        return VerificationReport(name, False, f"{type(exc).__name__}: {exc}")
    if isinstance(out, VerificationReport):
        return out
    return VerificationReport(name, bool(out), detail)


def _chiral_ok(s: GammaSet) -> bool:
    ch = cl.chiral(s)
    one = ExactMatrix.identity(s.order)
    return (ch @ ch == one and ch.adjoint() == ch and not ch.trace()
            and all(ch.anticommutes_with(g) for g in s))


def _kappa_ok(s: GammaSet) -> bool:
    k = cl.kappa(s)
    one = ExactMatrix.identity(s.order)
    last = s.dim - 1
    return (k @ k == one and k.adjoint() == k and not k.trace()
            and all(k.commutes_with(s[mu]) for mu in range(last))
            and k.anticommutes_with(s[last]))


def _commutant_ok(s: GammaSet) -> bool:
    word = cl.kappa_word(s)
    expected = [cl.OrderedProduct(), cl.OrderedProduct(word.indices)]
    if cl.commutant_basis(s, s.dim - 1) != expected:
        return False
    if cl.materialize(s, word) != cl.kappa(s):
        return False
    return cl.commutant_basis(s, s.dim) == [cl.OrderedProduct()]


def run_checks(s: GammaSet, exchange: bool = True) -> list[VerificationReport]:
    """The full verification suite for one exact gamma set."""
    reports = [
        _safe("clifford", lambda: cl.verify_clifford(s)),
        _safe("hermiticity", lambda: cl.verify_hermiticity(s)),
        _safe("traceless", lambda: cl.verify_traceless(s)),
    ]
    if s.is_even:
        reports.append(_safe("chiral", lambda: _chiral_ok(s), "involutive, hermitian, traceless, anticommuting"))
        reports.append(_safe("kappa", lambda: _kappa_ok(s), "involutive, hermitian, traceless, commutes with g^mu'"))
        reports.append(_safe("commutant", lambda: _commutant_ok(s), "span{1, kappa} for d-1 gammas, span{1} for all"))
        if exchange:
            reports.append(_safe("exchange-chiral", lambda: verify_exchange_chiral(s)))
    else:
        def cls_report():
            eps = cl.pseudoscalar_class(s)
            return VerificationReport("pseudoscalar-class", True, f"g^0...g^{s.dim - 1} = {eps:+d} i^{s.half_dim} 1",
                                      value=eps)
        reports.append(_safe("pseudoscalar-class", cls_report))
    return reports


# subcommands -----------------------------------------------------------


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dim(args) -> int:
    if args.dim is None:
        raise UsageError("--dim is required")
    if not 2 <= args.dim <= args.max_dim:
        raise UsageError(f"--dim must be in [2, {args.max_dim}], got {args.dim}")
    return args.dim


_PALETTE_KEYS = {"0": None, "+1": 0, "+i": 1, "-1": 2, "-i": 3}


def _palette(text: str | None) -> dict | None:
    """Parse ``--palette`` such as ``"+1=black,-1=red,0=white"``."""
    if not text:
        return None
    out = {}
    for item in text.split(","):
        key, _, colour = item.partition("=")
        if key.strip() not in _PALETTE_KEYS or not colour.strip():
            raise UsageError(f"bad palette entry {item!r}; keys are {', '.join(_PALETTE_KEYS)}")
        out[_PALETTE_KEYS[key.strip()]] = colour.strip()
    return out


def cmd_build(args) -> int:
    s = adapted(_dim(args), args.max_dim)
    if args.format == "json":
        text = dumps(s, construction=f"adapted({s.dim})")
    else:
        text = render_grid(s, args.format, _palette(args.palette), args.cell_size)
        if args.format == "text":
            text = "\n".join(s.describe()) + "\n" + text
    _emit(text, args.out)
    return OK


def cmd_render(args) -> int:
    if args.format == "json":
        raise UsageError("render supports text and svg")
    s = adapted(_dim(args), args.max_dim)
    _emit(render_grid(s, args.format, _palette(args.palette), args.cell_size), args.out)
    return OK


def cmd_verify(args) -> int:
    exchange = True
    if args.input:
        try:
            s = load(args.input)
        except (DocumentError, OSError, cl.MalformedSetError) as exc:
            raise UsageError(f"cannot read {args.input}: {exc}")
        if isinstance(s, NumericGammaSet):
            raise UsageError("verify needs an exact-encoded document")
        exchange = False
        source = args.input
    else:
        s = adapted(_dim(args), args.max_dim)
        source = f"adapted({s.dim})"
    reports = run_checks(s, exchange)
    lines = [f"# verify {source}: d={s.dim} N={s.order}"] + [r.line() for r in reports]
    _emit("\n".join(lines), args.out)
    return OK if all(reports) else FAILED


def _tree_lines(node, indent=0) -> list[str]:
    gs = node.gamma_set
    mark = {"root": "*", "plus": "+", "minus": "-", "drop": "v"}[node.branch]
    extra = "" if gs.is_even else f" class={node.odd_class():+d}"
    lines = [f"{'  ' * indent}{mark} d={gs.dim} N={gs.order} [{gs.label}]{extra}"]
    for c in node.children:
        lines += _tree_lines(c, indent + 1)
    return lines


def descent_checks(root) -> list[VerificationReport]:
    reports = []
    for node in root.walk():
        gs = node.gamma_set
        if gs.is_even and len(node.children) == 2:
            plus, minus = (c.gamma_set for c in node.children)
            verdict = cl.classify_odd_pair(plus, minus)
            reports.append(VerificationReport(f"inequivalent children at {node.path}", verdict == "inequivalent",
                                              f"classes {cl.pseudoscalar_class(plus):+d} / {cl.pseudoscalar_class(minus):+d}"))
            grand = [c.children[0].gamma_set for c in node.children if c.children]
            if len(grand) == 2:
                same = grand[0] == grand[1]
                reports.append(VerificationReport(f"diamond at {node.path}", same,
                                                  f"both branches drop to the same d={grand[0].dim} set"))
                if gs.label.startswith("adapted(") and gs.dim - 2 >= 2:
                    reports.append(VerificationReport(f"diamond closes to adapted({gs.dim - 2}) at {node.path}",
                                                      grand[0] == adapted(gs.dim - 2)))
    return reports


def cmd_descend(args) -> int:
    d = _dim(args)
    if not 0 <= args.steps <= d - 2:
        raise UsageError(f"--steps must be in [0, {d - 2}] for d={d}")
    try:
        root = descend_chain(adapted(d, args.max_dim), args.steps)
    except (ValueError, cl.StructureError) as exc:
        _emit(f"FAIL descent: {exc}", args.out)
        return FAILED
    reports = descent_checks(root)
    if args.format == "json":
        text = json.dumps({"tree": root.to_dict(), "checks": [
            {"check": r.check, "passed": r.passed, "detail": r.detail} for r in reports]}, indent=1)
    else:
        text = "\n".join(_tree_lines(root) + [r.line() for r in reports])
    _emit(text, args.out)
    return OK if all(reports) else FAILED


def cmd_classify(args) -> int:
    d = _dim(args)
    if d % 2 == 0:
        raise UsageError("classify needs an odd --dim")
    a = adapted(d, args.max_dim)
    b = conjugate_odd(a)
    verdict = cl.classify_odd_pair(a, b)
    lines = [
        f"INFO class(adapted({d})) = {cl.pseudoscalar_class(a):+d}",
        f"INFO class(conjugate) = {cl.pseudoscalar_class(b):+d}",
        VerificationReport("classify", verdict == "inequivalent", verdict).line(),
    ]
    ok = verdict == "inequivalent"
    if args.characters:
        group = cl.direct_sum_closure(a, b)
        cross = cl.character_orthogonality(a, b, group)
        self_pair = cl.character_inner_product(group, 0, 0)
        lines.append(VerificationReport("character orthogonality", not cross, f"sum = {cross}, |G'| = {len(group)}").line())
        lines.append(VerificationReport("character norm", self_pair == len(group), f"sum |chi|^2 = {self_pair}").line())
        ok = ok and not cross and self_pair == len(group)
    _emit("\n".join(lines), args.out)
    return OK if ok else FAILED


def _parse_momentum(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--p must be comma-separated numbers, got {text!r}")


def spectrum_report(s: GammaSet, p: Momentum) -> list[str | VerificationReport]:
    out: list[str | VerificationReport] = []
    n = s.order
    scale = max(p.scale(), 1.0) ** 2
    res = dispersion_check(s, p)
    out.append(VerificationReport("dispersion", res <= 1e-10 * scale, f"residual {res:.3g}", value=res))
    on_shell = p.is_on_shell(ON_SHELL_TOL)
    if on_shell:
        # the relative form is 0/0 here; compare |det D| with the natural scale instead
        det = abs(np.linalg.det(dirac_operator(s, p).matrix))
        bound = 1e-8 * max(p.scale(), 1.0) ** n
        out.append(VerificationReport("determinant", det <= bound, f"on shell, |det D| = {det:.3g}"))
    else:
        dev = determinant_deviation(s, p)
        out.append(VerificationReport("determinant", dev <= 1e-8, f"| |det D| / |p.p - m^2|^(N/2) - 1 | = {dev:.3g}"))
    kdim = kernel_basis(dirac_operator(s, p).matrix).shape[1]
    want = n // 2 if on_shell else 0
    tag = "on shell" if on_shell else "off shell"
    out.append(VerificationReport("kernel", kdim == want, f"{tag}, kernel dimension {kdim} (expected {want})"))
    if s.is_even and s.dim > 2:
        if p.components[-1] != 0.0:
            out.append("INFO descent condition not met; full operator analyzed")
        elif is_block_structured(s, 0.0):
            plus, minus = split_even(s)
            q = p.truncated()
            d_plus, d_minus = reduced_operator(s, p)
            out.append(VerificationReport("decoupling", True, "off-diagonal blocks of D(p) exactly zero"))
            out.append(VerificationReport("plus block", np.array_equal(d_plus, dirac_operator(plus, q).matrix),
                                          f"= D({plus.label}, p')"))
            out.append(VerificationReport("minus block", np.array_equal(d_minus, dirac_operator(minus, q).matrix),
                                          f"= D({minus.label}, p')"))
            k_plus = kernel_basis(d_plus).shape[1]
            k_minus = kernel_basis(d_minus).shape[1]
            out.append(VerificationReport("kernel split", k_plus + k_minus == kdim,
                                          f"{k_plus} + {k_minus} = {kdim}"))
            out.append(reflection_equivalence_check(s, q))
    elif not s.is_even and p.components[-1] == 0.0:
        dropped = drop_last(s)
        same = np.array_equal(dirac_operator(s, p).matrix, dirac_operator(dropped, p.truncated()).matrix)
        out.append(VerificationReport("odd-to-even", same, f"D(p) = D({dropped.label}, p')"))
    return out


def cmd_spectrum(args) -> int:
    d = _dim(args)
    s = adapted(d, args.max_dim)
    if args.p is not None:
        comps = _parse_momentum(args.p)
        if len(comps) != d:
            raise UsageError(f"--p has {len(comps)} components, --dim is {d}")
        if args.mass < 0:
            raise UsageError("--mass must be non-negative")
        momenta = [Momentum(comps, args.mass)]
    else:
        rngs = spawn_generators(args.seed, args.samples)
        momenta = [random_momentum(r, d, on_shell=bool(k % 2), descent=bool(k % 3 == 0)) for k, r in enumerate(rngs)]
    lines, ok = [], True
    for p in momenta:
        lines.append(f"# d={d} N={s.order} p={list(p.components)} m={p.mass} p.p-m^2={p.mass_shell():.6g}")
        for item in spectrum_report(s, p):
            if isinstance(item, VerificationReport):
                ok = ok and item.passed
                lines.append(item.line())
            else:
                lines.append(item)
        if p.is_on_shell() and (p.mass > 0 or any(p.components)):
            basis = plane_wave_solutions(s, p)
            lines.append(f"INFO plane-wave basis: {basis.shape[1]} orthonormal spinors")
    _emit("\n".join(lines), args.out)
    return OK if ok else FAILED


# parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dirac-descent", description="Adapted gamma matrices and Dirac descent.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, help="spacetime dimension d")
    common.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM, help="dimension cap")
    common.add_argument("--out", help="write output to FILE instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for random sweeps")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="emit the adapted set")
    p.add_argument("--format", choices=["json", "text", "svg"], default="json")
    p.add_argument("--cell-size", type=int, default=16)
    p.add_argument("--palette", help="svg colours, e.g. '+1=black,-1=red,+i=blue,-i=yellow,0=white'")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("render", parents=[common], help="draw the adapted set as a colour grid")
    p.add_argument("--format", choices=["text", "svg"], default="svg")
    p.add_argument("--cell-size", type=int, default=16)
    p.add_argument("--palette", help="svg colours, e.g. '+1=black,-1=red,+i=blue,-i=yellow,0=white'")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--input", help="exact-encoded JSON document to verify instead of adapted(--dim)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("descend", parents=[common], help="print the descent tree")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_descend)

    p = sub.add_parser("classify", parents=[common], help="classify the odd adapted set against its conjugate")
    p.add_argument("--characters", action="store_true", help="also run the character-orthogonality witness")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("spectrum", parents=[common], help="dispersion and decoupling of D(p)")
    p.add_argument("--mass", type=float, default=0.0)
    p.add_argument("--p", help="comma-separated covariant momentum p_0,...,p_(d-1)")
    p.add_argument("--samples", type=int, default=10, help="random momenta when --p is omitted")
    p.set_defaults(func=cmd_spectrum)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, RenderError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())

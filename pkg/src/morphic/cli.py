"""Command-line front end.

Exit status is 0 on success, 1 on a domain error (the input is not a
substitution, a seed is invalid, a search gave up, ...) and 2 on a usage
error.  ``--json`` switches every command to machine-readable output.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import mpmath

from .algebraic import AlgebraicReal, algebraic_compare, from_expr
from .construct import build_block_system, build_periodic_system, build_zeta_system, indicator_morphism
from .core import (
    Substitution,
    SubstitutionError,
    apply,
    as_word_over,
    fixed_point_prefix,
    fixed_point_seeds,
    format_substitution,
    parse_substitution,
    word_str,
)
from .decomp import condition_c_exponent, decompose, is_good, letters_infinitely_often
from .density import denselog_search, densite_search, lemmetech_search
from .seqlab import certify_ultimate_periodicity, max_gap, occurrences, return_words, starlike_decomposition
from .spectral import abelianization, growth_types, is_primitive


def _expr(text: str) -> AlgebraicReal:
    try:
        return from_expr(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad number {text!r}: {exc}") from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def _load(path: str) -> Substitution:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SubstitutionError(f"cannot read {path}: {exc.strerror}") from None
    return parse_substitution(text)


def _seed(s: Substitution, seed: str | None) -> str:
    if seed is not None:
        return seed
    seeds = fixed_point_seeds(s)
    if not seeds:
        raise SubstitutionError("no letter starts its own image; pass a power of the substitution")
    return seeds[0]


def _words(w) -> str:
    return word_str(w)


def _digits(args) -> int:
    return args.precision


def _num(x, args) -> str:
    return mpmath.nstr(x, _digits(args))


# commands: each returns (json_payload, human_text)

def cmd_analyze(args):
    s = _load(args.file)
    tol = 10.0 ** -min(_digits(args), 14)
    rep = growth_types(s, tol=tol)
    dec = decompose(s)
    verdict = is_good(s)
    payload = {
        "alphabet": list(s.alphabet),
        "primitive": is_primitive(abelianization(s)),
        "growth": rep.to_json(_digits(args)),
        "decomposition": dec.to_json(condition_c_exponent(s, args.budget_k)),
        "good": verdict.to_json(),
    }
    lines = [f"Theta = {rep.Theta}  (D = {rep.D})", f"A_max = {{{', '.join(rep.A_max)}}}"]
    for a in s.alphabet:
        g = rep.types[a]
        c = rep.c_estimates[a]
        lines.append(f"  {a}: growth ({g.d}, {g.theta})  c = {_num(c.value, args)}"
                     + ("" if c.converged else "  (not converged)"))
    for sub in verdict.subs:
        lines.append(f"{sub.kind} sub-substitution on {{{', '.join(sub.substitution.alphabet)}}}: "
                     f"eigenvalue {sub.eigenvalue}")
    lines.append("good" if verdict.good else "not good")
    return payload, "\n".join(lines)


def cmd_fixpoint(args):
    s = _load(args.file)
    seed = _seed(s, args.seed)
    w = fixed_point_prefix(s, seed, args.length)
    return {"seed": seed, "length": len(w), "prefix": _words(w)}, _words(w)


def cmd_returns(args):
    s = _load(args.file)
    seed = _seed(s, args.seed)
    rw = return_words(s, seed, args.word, args.horizon)
    text = f"return words to {_words(rw.u)}: {', '.join(_words(w) for w in rw.returns)}"
    text += f"\n(horizon {rw.horizon}, {'complete' if rw.complete else 'possibly incomplete'})"
    return rw.to_json(), text


def cmd_gaps(args):
    s = _load(args.file)
    seed = _seed(s, args.seed)
    targets = [args.word] if args.word else sorted(letters_infinitely_often(s, seed), key=s.alphabet.index)
    rows = []
    for t in targets:
        rows.append({"word": t, "max_gap": max_gap(s, seed, t, args.horizon)})
    text = "\n".join(f"{r['word']}: max gap {r['max_gap']}" for r in rows)
    text += f"\n(observed on the first {args.horizon} letters)"
    return {"seed": seed, "horizon": args.horizon, "gaps": rows}, text


def cmd_periodicity(args):
    s = _load(args.file)
    seed = _seed(s, args.seed)
    cert = certify_ultimate_periodicity(s, seed, args.max_pre, args.max_per, args.horizon)
    if cert.witness is None:
        text = f"none found with |u| <= {args.max_pre}, |v| <= {args.max_per} (not a proof of aperiodicity)"
    else:
        text = f"{cert.kind}: u = {_words(cert.witness.preperiod) or '(empty)'}, v = {_words(cert.witness.period)}"
    return cert.to_json(), text


def cmd_decompose(args):
    s = _load(args.file)
    dec = decompose(s)
    k = condition_c_exponent(s, args.budget_k)
    lines = [f"p = {dec.p}, q = {dec.q}, l = {dec.l}, Condition (C) from power {k}"]
    for i, part in enumerate(dec.parts):
        role = "principal" if i >= dec.q else "non-principal"
        lines.append(f"  A_{i + 1} = {{{', '.join(part)}}}  {dec.kinds[i]}, {role}")
    return dec.to_json(k), "\n".join(lines)


def good_summary(verdict) -> str:
    main = verdict.main
    if verdict.good:
        return (f"good: Θ={verdict.Theta} is the eigenvalue of the main sub-substitution on "
                f"{{{', '.join(verdict.witness.substitution.alphabet)}}}")
    if not main:
        return f"not good: Θ={verdict.Theta} but there is no main sub-substitution"
    if len(main) == 1:
        return f"not good: Θ={verdict.Theta} but sole main sub-substitution has eigenvalue {main[0].eigenvalue}"
    vals = ", ".join(str(x.eigenvalue) for x in main)
    return f"not good: Θ={verdict.Theta} but main sub-substitutions have eigenvalues {vals}"


def cmd_good(args):
    verdict = is_good(_load(args.file))
    return verdict.to_json(), good_summary(verdict)


def _write_system(out: str, sub: Substitution, sidecar: dict) -> list[str]:
    base = Path(out)
    sub_path = base.with_suffix(".sub")
    json_path = base.with_suffix(".json")
    sub_path.write_text(format_substitution(sub))
    json_path.write_text(json.dumps(sidecar, indent=2, ensure_ascii=False) + "\n")
    return [str(sub_path), str(json_path)]


def _period_system(args):
    sigma = _load(args.sigma)
    return build_periodic_system(args.period, sigma, args.seed)


def cmd_construct_periodic(args):
    system = _period_system(args)
    payload = system.to_json()
    payload["checks"] = {
        "intertwining": system.intertwines(),
        "matrix_intertwining": system.matrices_intertwine(),
        "prefix_matches": _words(system.coded_prefix(args.horizon)) == _words((system.period * args.horizon)[:args.horizon]),
    }
    text = format_substitution(system.built).rstrip()
    if args.out:
        payload["files"] = _write_system(args.out, system.built, system.to_json())
        text += "\nwrote " + ", ".join(payload["files"])
    return payload, text


def cmd_construct_zeta(args):
    system = build_zeta_system(args.prefix, _period_system(args))
    expected = system.u + (system.v_system.period * args.horizon)
    payload = system.to_json()
    payload["checks"] = {"prefix_matches": system.coded_prefix(args.horizon) == expected[:args.horizon]}
    text = format_substitution(system.zeta).rstrip()
    text += "\nphi: " + ", ".join(f"{g} -> {system.phi[g][0]}" for g in system.G)
    if args.out:
        payload["files"] = _write_system(args.out, system.zeta, system.to_json())
        text += "\nwrote " + ", ".join(payload["files"])
    return payload, text


def cmd_blocks(args):
    s = _load(args.file)
    seed = _seed(s, args.seed)
    bs = build_block_system(s, seed, args.n)
    payload = bs.to_json()
    payload["rules"] = {g: list(img) for g, img in bs.sigma_n.as_dict().items()}
    payload["checks"] = {"intertwining": bs.intertwines()}
    text = format_substitution(bs.sigma_n).rstrip()
    if args.word:
        f = indicator_morphism(bs, args.word)
        bits = "".join(apply(f, bs.block_prefix(args.horizon)))
        payload["indicator"] = {"word": args.word, "prefix": bits[:200], "length": len(bits)}
        x = fixed_point_prefix(s, seed, args.horizon + args.n - 1)
        payload["checks"]["indicator_matches"] = [i for i, c in enumerate(bits) if c == "1"] == occurrences(x, as_word_over(args.word, s.alphabet))
        text += f"\nindicator of {args.word}: {bits[:64]}"
    if args.out:
        payload["files"] = _write_system(args.out, bs.sigma_n, bs.to_json())
        text += "\nwrote " + ", ".join(payload["files"])
    return payload, text


def cmd_density(args):
    if args.mode == "step":
        n, m = lemmetech_search(args.alpha, args.beta, args.eps, args.N, args.budget)
        payload = {"kind": "step", "n": n, "m": m}
        with mpmath.workdps(_digits(args) + 10):
            diff = n * args.alpha.approx(_digits(args) + 10) - m * args.beta.approx(_digits(args) + 10)
        payload["difference"] = _num(diff, args)
        return payload, f"n = {n}, m = {m}, n*alpha - m*beta = {payload['difference']}"
    if args.mode == "log":
        w = denselog_search(args.alpha, args.beta, args.d, args.e, args.target, args.eps, args.budget)
        text = f"n = {w.n}, m = {w.m}: value {_num(w.achieved, args)} (target {_num(w.target, args)}, error {mpmath.nstr(w.error, 6)})"
    else:
        w = densite_search(args.alpha, args.beta, args.d, args.e, args.target, args.eps, args.budget)
        text = f"n = {w.n}, m = {w.m}: ratio {_num(w.achieved, args)} (target {_num(w.target, args)}, relative error {mpmath.nstr(w.error, 6)})"
    return w.to_json(), text


def cmd_star(args):
    s = _load(args.file)
    seed = _seed(s, args.seed)
    dec = starlike_decomposition(s, seed, args.letter)
    j = dec.to_json()
    text = (f"p = {dec.p}, u = {j['u'] or '(empty)'}, v = {j['v'] or '(empty)'}, w = {j['w'] or '(empty)'}, a = {dec.a}"
            f"\nprefix property checked for n <= {dec.verified_up_to}; gamma ~ {j['gamma']['value']}")
    return j, text


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--horizon", type=_positive_int, default=argparse.SUPPRESS,
                        help="prefix length examined (default 10000)")
    common.add_argument("--precision", type=_positive_int, default=argparse.SUPPRESS,
                        help="significant digits for numeric output and tolerances (default 10)")
    common.add_argument("--budget", type=_positive_int, default=argparse.SUPPRESS,
                        help="step budget for searches (default 1000000)")

    parser = argparse.ArgumentParser(prog="morphic", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("analyze", cmd_analyze, "growth types, decomposition and goodness")
    p.add_argument("file")
    p = add("fixpoint", cmd_fixpoint, "prefix of a fixed point")
    p.add_argument("file")
    p.add_argument("--seed")
    p.add_argument("--length", type=_positive_int, required=True)
    p = add("returns", cmd_returns, "return words to a factor")
    p.add_argument("file")
    p.add_argument("--seed")
    p.add_argument("--word", required=True)
    p = add("gaps", cmd_gaps, "observed maximal gaps between occurrences")
    p.add_argument("file")
    p.add_argument("--seed")
    p.add_argument("--word")
    p = add("periodicity", cmd_periodicity, "certify ultimate periodicity of a fixed point")
    p.add_argument("file")
    p.add_argument("--seed")
    p.add_argument("--max-pre", type=int, default=16)
    p.add_argument("--max-per", type=_positive_int, default=16)
    p = add("decompose", cmd_decompose, "primitive component decomposition")
    p.add_argument("file")
    p = add("good", cmd_good, "decide whether the substitution is good")
    p.add_argument("file")
    for name, func, help_text in (("construct-periodic", cmd_construct_periodic, "substitution for period^omega"),
                                  ("construct-zeta", cmd_construct_zeta, "substitution for prefix period^omega")):
        p = add(name, func, help_text)
        p.add_argument("--sigma", required=True, help="primitive substitution file")
        p.add_argument("--period", required=True, help="period word, e.g. 12")
        p.add_argument("--seed")
        p.add_argument("--out", help="output path; writes <out>.sub and <out>.json")
        if name == "construct-zeta":
            p.add_argument("--prefix", required=True, help="preperiod word u")
    p = add("blocks", cmd_blocks, "n-block substitution of a fixed point")
    p.add_argument("file")
    p.add_argument("--seed")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--word", help="also print the indicator sequence of this n-letter word")
    p.add_argument("--out")
    p = add("density", cmd_density, "witnesses for the density statements")
    p.add_argument("--alpha", type=_expr, required=True)
    p.add_argument("--beta", type=_expr, required=True)
    p.add_argument("--d", type=int, default=0)
    p.add_argument("--e", type=int, default=0)
    p.add_argument("--target", type=_expr, default=AlgebraicReal.rational(1))
    p.add_argument("--eps", type=_expr, required=True)
    p.add_argument("--N", type=_positive_int, default=1, help="lower bound on n (step mode)")
    p.add_argument("--mode", choices=("ratio", "log", "step"), default="ratio",
                   help="ratio: n^d a^n / (m^e b^m) near target; log: additive form; step: 0 < n a - m b < eps")
    p = add("star", cmd_star, "starlike prefix decomposition for a letter")
    p.add_argument("file")
    p.add_argument("--seed")
    p.add_argument("--letter", required=True)
    return parser


def _eps_value(args):
    if getattr(args, "eps", None) is not None:
        if algebraic_compare(args.eps, AlgebraicReal.rational(0)) <= 0:
            raise SubstitutionError("eps must be positive")
        args.eps = args.eps.lo if args.eps.is_rational else args.eps


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name, default in (("json", False), ("horizon", 10_000), ("precision", 10), ("budget", 10 ** 6)):
        if not hasattr(args, name):
            setattr(args, name, default)
    args.budget_k = min(args.budget, 4096)
    try:
        _eps_value(args)
        payload, text = args.func(args)
    except ValueError as exc:
        # SubstitutionError is a ValueError; plain ValueErrors are bad numeric inputs
        print(f"error: {exc}", file=stderr)
        return 1
    if args.json:
        json.dump(payload, stdout, indent=2, ensure_ascii=False)
        stdout.write("\n")
    else:
        stdout.write(text + "\n")
    return 0


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "build_parser", "good_summary"]

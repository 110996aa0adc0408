"""Command-line front end.

Exit codes: 0 claim verified, 1 claim refuted, 2 inconclusive, 3 input error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import corpusio
from .algcore import settings, using
from .cellsys import (Report, check_associativity, layer_division_verdicts, layer_realizations, m_iso,
                      order_compat, standard_module, verify_axioms)
from .chains import (Certificate, Claim, certify_qh_from_system, certify_system, decide_qh_bounded, replay,
                     stratification_from_local_system, subject_hash, system_from_heredity_chain)
from .errors import InconclusiveError, InternalConsistencyError, MethodInapplicable, StrataError
from .repthy import (classify_simples, delta_filtration, fullness, hom_delta_check, lambda_irr, projective_cover,
                     standard_dims)

EXIT_OK, EXIT_REFUTED, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    """Bad files or arguments; reported on stderr with exit code 3."""


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("STRATA_BUDGET")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise InputError(f"STRATA_BUDGET must be an integer, not {env!r}") from None
        if value < 1:
            raise InputError("STRATA_BUDGET must be positive")
        return value
    return settings().search_budget


def _load_algebra(path):
    try:
        return corpusio.load_algebra(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    except (StrataError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_with(loader, path, *extra):
    try:
        return loader(path, *extra)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    except (StrataError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _write(text: str, path) -> None:
    if path is None:
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None


def _emit_cert(cert: Certificate, args) -> None:
    _write(corpusio.dump_certificate(cert), getattr(args, "cert", None))


def _print_cert_summary(cert: Certificate, out) -> None:
    print(f"claim: {cert.claim.value}", file=out)
    if cert.chain is not None:
        print("chain dims: " + " ".join(map(str, cert.chain.dims)), file=out)
    for key in sorted(cert.search):
        print(f"search {key}: {cert.search[key]}", file=out)
    for n in cert.notes:
        print(f"note: {n}", file=out)


# ---------------------------------------------------------------- commands


def system_report(S) -> tuple[bool, list[str]]:
    """The axioms, then (if they hold) the structural consequences on each layer."""
    lines = []
    ax = verify_axioms(S)
    lines.append("== " + ax.report.title)
    lines += ax.report.lines()
    if not ax.ok:
        lines.append("witnesses: " + " ".join(repr(w) for w in ax.witnesses))
        return False, lines
    A = S.algebra
    dims = Report("dimensions")
    total = sum(L.dim for L in S.layers.values())
    dims.add("dim A = sum |I||J| dim D", total == A.dim, f"{A.dim} = {total}")
    for lam in S.order:
        L = S.layers[lam]
        got = standard_module(S, lam).dim
        dims.add(f"dim Delta({lam}) = |I| dim D", got == L.I * L.d, f"{got} = {L.I}*{L.d}")
    suite = [dims, order_compat(S)]
    tensor = Report("layer as a tensor product")
    for lam in S.order:
        r = m_iso(S, lam)
        tensor.add(f"m({lam}) bijective", r.bijective)
        tensor.add(f"m({lam}) bimodule map", r.left_linear and r.right_linear)
        tensor.add(f"A^{lam} splits into Delta({lam}) blocks", r.left_blocks)
        tensor.add(f"pairing associativity on {lam}", check_associativity(S, lam))
    suite.append(tensor)
    for lam in S.order:
        suite.append(layer_realizations(S, lam))
    suite.append(hom_delta_check(S))
    info = Report("layer properties")
    verdicts = layer_division_verdicts(S)
    for lam in S.order:
        fv = fullness(S, lam)
        info.add(f"D({lam})", True, verdicts[lam].status)
        info.add(f"layer {lam} full", True, "yes" if fv.full else f"no (pairing image dim {fv.phi_image_dim})")
    ok = True
    for rep in suite + [info]:
        lines.append("== " + rep.title)
        lines += rep.lines()
        ok = ok and rep.ok
    return ok, lines


def cmd_verify_system(args, out) -> int:
    A = _load_algebra(args.algebra)
    S = _load_with(corpusio.load_system, args.system, A)
    ok, lines = system_report(S)
    cert = certify_system(S)
    cert.system_text = corpusio.dump_system(S)
    if ok != (cert.claim is Claim.CELLULAR_SYSTEM_VALID):
        cert.claim = Claim.CELLULAR_SYSTEM_INVALID
        cert.notes.append("a structural consequence of the axioms failed")
    lines.append(f"claim: {cert.claim.value}")
    text = "\n".join(lines) + "\n"
    out.write(text)
    _write(text, args.report)
    _emit_cert(cert, args)
    return cert.exit_code


def cmd_classify(args, out) -> int:
    A = _load_algebra(args.algebra)
    S = _load_with(corpusio.load_system, args.system, A)
    ax = verify_axioms(S)
    if not ax.ok:
        print("system fails the axioms: " + ax.report.failures()[0].name, file=out)
        return EXIT_REFUTED
    verdicts = layer_division_verdicts(S)
    for lam in S.order:
        if verdicts[lam].status != "Division":
            print(f"system not divisible: D({lam}) is {verdicts[lam].status}", file=out)
            return EXIT_INCONCLUSIVE if verdicts[lam].status == "Inconclusive" else EXIT_REFUTED
    irr = lambda_irr(S)
    simples = dict(classify_simples(S))
    deltas = standard_dims(S)
    print("irreducible labels: " + " ".join(irr), file=out)
    print("label  dim L  dim Delta  dim P  Delta-filtration of P", file=out)
    for lam in irr:
        P = projective_cover(S, lam)
        filt = delta_filtration(S, P)
        mults = " ".join(f"{mu}:{m}" for mu, m in filt.sections if m)
        print(f"{lam}  {simples[lam].dim}  {deltas[lam]}  {P.dim}  {mults}", file=out)
    reducible = [lam for lam in S.order if lam not in irr]
    if reducible:
        print("labels with zero pairing: " + " ".join(reducible), file=out)
    return EXIT_OK


def cmd_decide_qh(args, out) -> int:
    A = _load_algebra(args.algebra)
    cert = decide_qh_bounded(A, _budget(args))
    _print_cert_summary(cert, out)
    _emit_cert(cert, args)
    return cert.exit_code


def cmd_from_chain(args, out) -> int:
    A = _load_algebra(args.algebra)
    chain = _load_with(corpusio.load_chain, args.chain, A)
    try:
        S = system_from_heredity_chain(A, chain, name="from-chain")
    except InconclusiveError as exc:
        print(f"claim: {Claim.INCONCLUSIVE.value}\nnote: {exc}", file=out)
        return EXIT_INCONCLUSIVE
    except InternalConsistencyError:
        raise
    except StrataError as exc:
        print(f"claim: {Claim.NOT_CERTIFIED.value}\nnote: {exc}", file=out)
        return EXIT_REFUTED
    system_text = corpusio.dump_system(S)
    if args.system_out is None:
        out.write(system_text)
    _write(system_text, args.system_out)
    cert = certify_qh_from_system(S)
    _print_cert_summary(cert, out)
    _emit_cert(cert, args)
    return cert.exit_code


def cmd_stratify(args, out) -> int:
    A = _load_algebra(args.algebra)
    S = _load_with(corpusio.load_system, args.system, A)
    cert = stratification_from_local_system(S)
    if cert.claim in (Claim.NOT_CERTIFIED, Claim.CELLULAR_SYSTEM_INVALID):
        cert.system_text = corpusio.dump_system(S)
        cert.search["procedure"] = "stratify"
    _print_cert_summary(cert, out)
    _emit_cert(cert, args)
    return cert.exit_code


def cmd_corpus(args, out) -> int:
    if args.action == "list":
        for name in corpusio.CATALOG:
            print(name, file=out)
        return EXIT_OK
    if not args.name or not args.dir:
        raise InputError("corpus emit needs NAME and DIR")
    try:
        entry = corpusio.builtin(args.name)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.seed is not None:
        entry = corpusio.random_basis_change(entry, args.seed)
    try:
        paths = corpusio.emit(entry, args.dir)
    except OSError as exc:
        raise InputError(f"{args.dir}: {exc.strerror or exc}") from None
    for p in paths:
        print(p.name, file=out)
    return EXIT_OK


def cmd_replay(args, out) -> int:
    A = _load_algebra(args.algebra)
    cert = _load_with(corpusio.load_certificate, args.cert_in)
    if cert.subject_hash != subject_hash(A):
        print("claim: " + cert.claim.value, file=out)
        print("replay: FAIL  subject hash does not match the algebra", file=out)
        return EXIT_REFUTED
    try:
        res = replay(cert, A)
    except InternalConsistencyError:
        raise
    except (StrataError, ValueError) as exc:
        raise InputError(f"{args.cert_in}: {exc}") from None
    print("claim: " + cert.claim.value, file=out)
    print(f"replay: {'PASS' if res.ok else 'FAIL'}", file=out)
    for m in res.messages:
        print(f"note: {m}", file=out)
    return EXIT_OK if res.ok else EXIT_REFUTED


# ---------------------------------------------------------------- entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="strata", description="Exact verification of cellular systems, heredity chains "
                                           "and standard stratifications.")
    p.add_argument("--exhaustion-cap", type=int, default=None,
                   help="largest field-size power for exhaustive division tests")
    p.add_argument("--no-char-p-fallback", action="store_true",
                   help="refuse the module-theoretic radical in small characteristic")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("verify-system", help="check the axioms and their structural consequences")
    s.add_argument("-a", "--algebra", required=True)
    s.add_argument("-s", "--system", required=True)
    s.add_argument("--report")
    s.add_argument("--cert")
    s.set_defaults(run=cmd_verify_system)

    s = sub.add_parser("classify", help="simple, standard and projective modules of a divisible system")
    s.add_argument("-a", "--algebra", required=True)
    s.add_argument("-s", "--system", required=True)
    s.set_defaults(run=cmd_classify)

    s = sub.add_parser("decide-qh", help="bounded search for a heredity chain")
    s.add_argument("-a", "--algebra", required=True)
    s.add_argument("--budget", type=int)
    s.add_argument("--cert")
    s.set_defaults(run=cmd_decide_qh)

    s = sub.add_parser("from-chain", help="build a system from a heredity chain")
    s.add_argument("-a", "--algebra", required=True)
    s.add_argument("-c", "--chain", required=True)
    s.add_argument("-o", "--system-out")
    s.add_argument("--cert")
    s.set_defaults(run=cmd_from_chain)

    s = sub.add_parser("stratify", help="standard stratification from a system")
    s.add_argument("-a", "--algebra", required=True)
    s.add_argument("-s", "--system", required=True)
    s.add_argument("--cert")
    s.set_defaults(run=cmd_stratify)

    s = sub.add_parser("corpus", help="list or write built-in examples")
    s.add_argument("action", choices=["list", "emit"])
    s.add_argument("name", nargs="?")
    s.add_argument("dir", nargs="?")
    s.add_argument("--seed", type=int, help="emit the basis-change variant with this seed")
    s.set_defaults(run=cmd_corpus)

    s = sub.add_parser("replay", help="re-verify a certificate")
    s.add_argument("-t", "--cert-in", required=True)
    s.add_argument("-a", "--algebra", required=True)
    s.set_defaults(run=cmd_replay)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise InputError("a command is required")
        budget = getattr(args, "budget", None)
        if budget is not None and budget < 1:
            raise InputError("--budget must be positive")
        overrides = {}
        if args.exhaustion_cap is not None:
            overrides["exhaustion_cap"] = args.exhaustion_cap
        if args.no_char_p_fallback:
            overrides["char_p_fallback"] = False
        with using(**overrides):
            return args.run(args, out)
    except InputError as exc:
        print(f"strata: error: {exc}", file=err)
        return EXIT_INPUT
    except (InconclusiveError, MethodInapplicable) as exc:
        print(f"strata: inconclusive: {exc}", file=err)
        return EXIT_INCONCLUSIVE


def main() -> None:
    sys.exit(run())

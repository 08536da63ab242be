"""Command-line front end.

Matrices are given as a file path, ``-`` for stdin, or an inline string
with ``;`` between rows (``"0 5v; -inf 0"``).  Exit status: 0 on success,
1 on domain or input errors, 2 on verification failures.
"""

import argparse
import json
import os
import sys

from . import classify as cl
from . import determinant as det
from . import elementary as el
from . import monoid as mo
from . import nabla as nb
from . import oracle
from .errors import InternalError, SupertropError
from .matrix import Matrix, format_matrix, matrix_to_json, parse_matrix
from .semiring import format_scalar

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2


def read_matrix(arg: str) -> Matrix:
    if arg == "-":
        return parse_matrix(sys.stdin.read())
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            return parse_matrix(fh.read())
    return parse_matrix(arg)


def _emit(args, text, record):
    if args.json:
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        print(text)


def _section(title, m):
    return f"{title}:\n{format_matrix(m)}"


def _word_text(w):
    return w.to_text().rstrip("\n") or "(empty)"


# -- subcommands ----------------------------------------------------------


def cmd_per(args):
    a = read_matrix(args.matrix)
    p = det.per_assignment(a) if args.assignment else det.per(a)
    _emit(args, format_scalar(p), {"per": format_scalar(p)})


def cmd_bid(args):
    a = read_matrix(args.matrix)
    b = det.bid(a)
    s = det.classify_singularity(a)
    rec = {"per_plus": format_scalar(b.per_plus), "per_minus": format_scalar(b.per_minus), "singularity": s.value}
    _emit(args, f"bid: ({rec['per_plus']}, {rec['per_minus']})\nsingularity: {s.value}", rec)


def cmd_adj(args):
    m = nb.adj(read_matrix(args.matrix))
    _emit(args, format_matrix(m), {"adj": matrix_to_json(m)})


def cmd_nabla(args):
    m = nb.nabla(read_matrix(args.matrix), allow_ghost=args.allow_ghost)
    _emit(args, format_matrix(m), {"nabla": matrix_to_json(m)})


def cmd_classify(args):
    rec = cl.classify(read_matrix(args.matrix)).to_json()
    print(json.dumps(rec, indent=2, sort_keys=True))


def cmd_quasi(args):
    q = nb.quasi_pack(read_matrix(args.matrix), allow_ghost=args.allow_ghost)
    parts = [("nabla", q.nabla), ("left", q.left), ("right", q.right), ("core", q.core), ("core_tilde", q.core_tilde)]
    flag = "true" if q.reversible else "false"
    text = "\n".join(_section(k, m) for k, m in parts) + f"\nreversible: {flag}"
    rec = {k: matrix_to_json(m) for k, m in parts}
    rec["reversible"] = q.reversible
    _emit(args, text, rec)


def cmd_member(args):
    r = mo.semigroup_membership(read_matrix(args.unit), read_matrix(args.candidate))
    rec = {"in_S_left": r.in_S_left, "in_S_right": r.in_S_right, "in_S_A": r.in_S_A, "extended": r.extended}
    _emit(args, "\n".join(f"{k}: {str(v).lower()}" for k, v in rec.items()), rec)


def cmd_conj(args):
    m = mo.conjugate(read_matrix(args.a), read_matrix(args.b))
    _emit(args, format_matrix(m), {"conjugate": matrix_to_json(m)})


def cmd_sns(args):
    r = el.sns_detail(read_matrix(args.matrix))
    p = det.per(r.product)
    text = "\n".join(
        [
            f"gaussian: {r.gen.to_text()}",
            f"on A: {r.conjugated.to_text()}",
            _section("definite", r.definite),
            _section("product", r.product),
            f"per: {format_scalar(p)}",
        ]
    )
    rec = {
        "gaussian": r.gen.to_text(),
        "on_A": r.conjugated.to_text(),
        "definite": matrix_to_json(r.definite),
        "product": matrix_to_json(r.product),
        "per": format_scalar(p),
    }
    _emit(args, text, rec)


def cmd_ed(args):
    f = el.ed_factor(read_matrix(args.matrix))
    text = "\n".join(
        [
            "word on A:",
            _word_text(f.conjugated),
            "word on definite part:",
            _word_text(f.word),
            _section("definite", f.definite),
            _section("nabla2 of definite", f.closure),
        ]
    )
    rec = {
        "word": f.conjugated.to_json(),
        "definite_word": f.word.to_json(),
        "definite": matrix_to_json(f.definite),
        "closure": matrix_to_json(f.closure),
    }
    _emit(args, text, rec)


def cmd_bridge(args):
    r = el.bridge(read_matrix(args.a), read_matrix(args.b))
    text = "\n".join(
        [
            "E1:",
            _word_text(r.e1),
            _section("E2", r.e2),
            _section("E3", r.e3),
            "E4:",
            _word_text(r.e4),
            f"fully_elementary: {str(r.fully_elementary).lower()}",
        ]
    )
    rec = {
        "E1": r.e1.to_json(),
        "E2": matrix_to_json(r.e2),
        "E3": matrix_to_json(r.e3),
        "E4": r.e4.to_json(),
        "E2_word": None if r.e2_word is None else r.e2_word.to_json(),
        "E3_word": None if r.e3_word is None else r.e3_word.to_json(),
        "fully_elementary": r.fully_elementary,
    }
    _emit(args, text, rec)


def cmd_steinberg(args):
    if args.wordfile == "-":
        text = sys.stdin.read()
    else:
        with open(args.wordfile, encoding="utf-8") as fh:
            text = fh.read()
    w = el.parse_word(text)
    n = args.n or max((max(g.i, g.j) + 1 for g in w), default=1)
    w = el.parse_word(text, n)
    t = el.steinberg_rewrite(w, n)
    rec = {"status": t.status, "steps": t.steps}
    lines = [f"status: {t.status}", f"steps: {t.steps}"]
    if t.status == "ok":
        rec.update(lower=t.lower.to_json(), upper=t.upper.to_json())
        lines += ["lower:", _word_text(t.lower), "upper:", _word_text(t.upper)]
    elif t.stuck_at is not None:
        rec["stuck_at"] = [g.to_text() for g in t.stuck_at]
        lines.append("stuck at: " + " , ".join(rec["stuck_at"]))
    _emit(args, "\n".join(lines), rec)


def cmd_check(args):
    if args.all:
        pids = sorted(oracle.PROPERTIES)
    elif args.property:
        pids = args.property
    else:
        raise SystemExit("check needs --property ID or --all")
    reports = [oracle.property_run(pid, args.trials, args.seed) for pid in pids]
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2, sort_keys=True))
    else:
        for r in reports:
            line = f"{r.status.upper():4s} {r.property_id}  trials={r.trials} vacuous={r.vacuous}"
            print(line)
            for f in r.failures:
                print(f"     trial {f.trial} seed {f.seed!r}: {f.message}")
    return EXIT_OK if all(r.status == "pass" for r in reports) else EXIT_VERIFY


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    ap = argparse.ArgumentParser(prog="supertrop", description="Exact supertropical matrix algebra.")
    sub = ap.add_subparsers(dest="command", required=True)

    def one(name, fn, help_, ghost=False):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("matrix", help="file, '-' for stdin, or inline rows separated by ';'")
        if ghost:
            p.add_argument("--allow-ghost", action="store_true", help="invert a ghost permanent as a ghost")
        p.set_defaults(fn=fn)
        return p

    p = one("per", cmd_per, "permanent")
    p.add_argument("--assignment", action="store_true", help="use the assignment solver (any n)")
    one("bid", cmd_bid, "bideterminant and singularity class")
    one("adj", cmd_adj, "adjoint")
    one("nabla", cmd_nabla, "A^nabla = per(A)^-1 adj(A)", ghost=True)
    one("classify", cmd_classify, "full classification record (JSON)")
    one("quasi", cmd_quasi, "quasi-identities and reversibility", ghost=True)
    one("sns", cmd_sns, "singularizing Gaussian for A in SL_n")
    one("ed", cmd_ed, "Gaussian word E with E A = A^nabla-nabla")

    p = sub.add_parser("member", parents=[common], help="membership of B in S_A^l, S_A^r, S_A")
    p.add_argument("--unit", required=True, help="the matrix A")
    p.add_argument("--candidate", required=True, help="the matrix B")
    p.set_defaults(fn=cmd_member)

    for name, fn, help_ in (("conj", cmd_conj, "A^nabla B A"), ("bridge", cmd_bridge, "E1 A E2 = E3 B E4")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("a")
        p.add_argument("b")
        p.set_defaults(fn=fn)

    p = sub.add_parser("steinberg", parents=[common], help="rewrite a Gaussian word into lower-then-upper form")
    p.add_argument("wordfile", help="word file (T i j | D i a | G i j a per line) or '-'")
    p.add_argument("--n", type=int, default=None, help="dimension (default: largest index)")
    p.set_defaults(fn=cmd_steinberg)

    p = sub.add_parser("check", parents=[common], help="run registered properties")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--property", action="append", help="property id (repeatable)")
    g.add_argument("--all", action="store_true")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.fn(args)
    except InternalError as e:
        print(f"verification failure: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except SupertropError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())

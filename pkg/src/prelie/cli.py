"""Command-line interface.

Exit codes: 0 success / true / verified, 1 false / ruled out, 2 undetermined,
3 input error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import catalog
from .algebra import (
    Algebra,
    center,
    is_abelian_lie,
    is_associative,
    is_commutative,
    is_novikov,
    is_prelie,
    left_annihilator,
    require_rational,
    right_annihilator,
)
from .degeneration import (
    DEFAULT_CONFIG,
    RULED_OUT,
    UNDETERMINED,
    VERIFIED,
    act,
    criteria_battery,
    hasse,
    limit,
)
from .derivations import DerivationWeights, generalized_derivations, orbit_dim
from .errors import PrelieError
from .exactmath import Diverges
from .formats import algebra_to_yaml, read_algebra, read_witness, witness_to_yaml
from .identities import identity_basis, words_of_degree
from .traceinv import c_table

EXIT_OK, EXIT_FALSE, EXIT_UNDETERMINED, EXIT_INPUT = 0, 1, 2, 3


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _pair(text: str, name: str) -> tuple[int, int]:
    try:
        i, j = (int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{name} must look like 2,3") from None
    return i, j


def _binding(text: str) -> tuple[str, Fraction]:
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    try:
        return name.strip(), Fraction(value.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rational number: {value!r}") from None


def _instantiate(A: Algebra, params) -> Algebra:
    for name, value in params or ():
        if name == A.param:
            A = A.instantiate(value)
            if A.label and "(" not in A.label:
                A = A.with_label(f"{A.label}({value})")
    return A


def _load(path: str, params) -> Algebra:
    A = read_algebra(path)
    for name, _ in params or ():
        if name != A.param:
            raise PrelieError(f"{path}: no parameter named {name!r}")
    return _instantiate(A, params)


def _load_pair(a_path: str, b_path: str, params) -> tuple[Algebra, Algebra]:
    """Bindings apply to whichever of the two files declares the parameter."""
    A, B = read_algebra(a_path), read_algebra(b_path)
    for name, _ in params or ():
        if name not in (A.param, B.param):
            raise PrelieError(f"neither {a_path} nor {b_path} has a parameter named {name!r}")
    return _instantiate(A, params), _instantiate(B, params)


def _print_matrix(M, indent: str = "  ") -> None:
    for r in M.rows:
        print(indent + "[" + ", ".join(str(x) for x in r) + "]")


def _term(c, k: int) -> str:
    s = str(c)
    if s == "1":
        return f"e{k}"
    if s == "-1":
        return f"-e{k}"
    if any(op in s.lstrip("-") for op in "+-/ "):
        s = f"({s})"
    return f"{s}*e{k}"


def _print_constants(A: Algebra) -> None:
    rows: dict[tuple[int, int], list[str]] = {}
    for i, j, k, c in A.nonzero_products():
        rows.setdefault((i, j), []).append(_term(c, k))
    if not rows:
        print("  (zero product)")
    for (i, j), terms in rows.items():
        rhs = " + ".join(terms).replace("+ -", "- ")
        print(f"  e{i}*e{j} = {rhs}")


# -- commands -------------------------------------------------------------------


def cmd_check(args) -> int:
    A = _load(args.file, args.param)
    flags = {
        "prelie": is_prelie(A),
        "novikov": is_novikov(A),
        "commutative": is_commutative(A),
        "associative": is_associative(A),
    }
    print(" ".join(f"{k}={_yes(v)}" for k, v in flags.items()))
    return EXIT_OK if flags["prelie"] else EXIT_FALSE


def cmd_invariants(args) -> int:
    A = _load(args.file, args.param)
    require_rational(A)
    rows = [
        ("dim Der", generalized_derivations(A, DerivationWeights(1, 1, 1)).dim),
        ("dim L(A)", left_annihilator(A).dim),
        ("dim R(A)", right_annihilator(A).dim),
        ("dim Z(A)", center(A).dim),
        ("orbit dim", orbit_dim(A)),
        ("Lie algebra", "abelian" if is_abelian_lie(A) else "nonabelian"),
    ]
    for name, value in rows:
        print(f"{name:<12} {value}")
    return EXIT_OK


def cmd_derivations(args) -> int:
    A = _load(args.file, args.param)
    space = generalized_derivations(A, DerivationWeights.parse(args.weights))
    print(f"dim Der{space.weights} = {space.dim}")
    for k, D in enumerate(space.basis, 1):
        print(f"D{k}:")
        _print_matrix(D)
    return EXIT_OK


def cmd_identities(args) -> int:
    A = _load(args.file, args.param)
    px, qy = args.degree
    words = words_of_degree(px, qy)
    if not words:
        print("no words of degree (0,0)")
        return EXIT_INPUT
    basis = identity_basis(A, words)
    print(f"degree ({px},{qy}): {len(words)} words, identity space dim {len(basis)}")
    for T in basis:
        print(f"  {T}")
    return EXIT_OK


def cmd_cij(args) -> int:
    A = _load(args.file, args.param)
    I, J = args.max
    table = c_table(A, I, J)
    width = max(len(str(v)) for v in table.values())
    print("i\\j " + " ".join(f"{j:>{width}}" for j in range(1, J + 1)))
    for i in range(1, I + 1):
        print(f"{i:<3} " + " ".join(f"{str(table[i, j]):>{width}}" for j in range(1, J + 1)))
    flagged = sorted(k for k, v in table.items() if v.is_constant and v.denominator_zeros)
    if flagged:
        print("denominator vanishes at some nonzero integer point for: "
              + ", ".join(f"c[{i},{j}]" for i, j in flagged))
    return EXIT_OK


def cmd_verify(args) -> int:
    A, B = _load_pair(args.source, args.target, args.param)
    w = read_witness(args.witness).witness()
    require_rational(A)
    require_rational(B)
    L = limit(act(A, w))
    if L is Diverges:
        print("false")
        print("limit: diverges")
        return EXIT_FALSE
    ok = L.same_constants(B)
    print("true" if ok else "false")
    print("limit:")
    _print_constants(L)
    return EXIT_OK if ok else EXIT_FALSE


def cmd_criteria(args) -> int:
    A, B = _load_pair(args.source, args.target, args.param)
    require_rational(A)
    require_rational(B)
    ws = []
    if args.witness:
        ws.append(read_witness(args.witness).witness())
    la, lb = catalog.identify(A), catalog.identify(B)
    if la and lb:
        ws.extend(catalog.witnesses_for(la, lb))
    v = criteria_battery(A, B, DEFAULT_CONFIG, ws)
    print(f"{A.label or args.source} -> {B.label or args.target}: {v.describe()}")
    return {VERIFIED: EXIT_OK, RULED_OUT: EXIT_FALSE, UNDETERMINED: EXIT_UNDETERMINED}[v.status]


def cmd_hasse(args) -> int:
    algebras, ws = catalog.catalog(args.catalog, novikov=args.novikov)
    H = hasse(algebras, ws)
    dot = H.to_dot()
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot)
    else:
        sys.stdout.write(dot)
    out = sys.stderr if not args.dot else sys.stdout
    for a, b in H.edges:
        print(f"{a} -> {b}", file=out)
    for a, b in H.undetermined():
        print(f"undetermined: {a} -> {b}", file=out)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name, e in catalog.ENTRIES.items():
            suffix = f"({e.param})" if e.param else ""
            print(f"{name}{suffix:<4} dim {e.dim}")
        return EXIT_OK
    if args.action == "export":
        if not args.label:
            raise PrelieError("catalog export needs a label")
        params = dict(args.param or [])
        sys.stdout.write(algebra_to_yaml(catalog.load(args.label[0], params or None)))
        return EXIT_OK
    if args.action == "witness":
        if len(args.label or []) != 2:
            raise PrelieError("catalog witness needs SOURCE and TARGET labels")
        src, tgt = args.label
        src = catalog.identify(catalog.load(src)) or src
        tgt = catalog.identify(catalog.load(tgt)) or tgt
        found = catalog.witnesses_for(src, tgt)
        if not found:
            print(f"no catalog witness for {src} -> {tgt}", file=sys.stderr)
            return EXIT_FALSE
        sys.stdout.write(witness_to_yaml(found[0]))
        return EXIT_OK
    raise PrelieError(f"unknown catalog action {args.action!r}")  # pragma: no cover


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="prelie", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file")
        s.add_argument("--param", type=_binding, action="append", metavar="NAME=VALUE")
        s.set_defaults(func=fn)
        return s

    with_file("check", cmd_check, "pre-Lie, Novikov, commutative and associative flags")
    with_file("invariants", cmd_invariants, "derivation, annihilator and center dimensions")
    s = with_file("derivations", cmd_derivations, "generalized derivations")
    s.add_argument("--weights", default="1,1,1", help="alpha,beta,gamma (default 1,1,1)")
    s = with_file("identities", cmd_identities, "operator identities of a multidegree")
    s.add_argument("--degree", type=lambda x: _pair(x, "--degree"), default=(1, 1))
    s = with_file("cij", cmd_cij, "trace invariants c_ij")
    s.add_argument("--max", type=lambda x: _pair(x, "--max"), default=(4, 4))

    s = sub.add_parser("verify", help="check a witness: limit of g_t . A equals B")
    s.add_argument("source")
    s.add_argument("target")
    s.add_argument("witness")
    s.add_argument("--param", type=_binding, action="append", metavar="NAME=VALUE")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("criteria", help="necessary criteria for A -> B")
    s.add_argument("source")
    s.add_argument("target")
    s.add_argument("--witness")
    s.add_argument("--param", type=_binding, action="append", metavar="NAME=VALUE")
    s.set_defaults(func=cmd_criteria)

    s = sub.add_parser("hasse", help="Hasse diagram of a built-in catalog")
    s.add_argument("--catalog", choices=("dim1", "dim2"), default="dim2")
    s.add_argument("--novikov", action="store_true")
    s.add_argument("--dot", metavar="OUT")
    s.set_defaults(func=cmd_hasse)

    s = sub.add_parser("catalog", help="built-in algebras and witnesses")
    s.add_argument("action", choices=("list", "export", "witness"))
    s.add_argument("label", nargs="*")
    s.add_argument("--param", type=_binding, action="append", metavar="NAME=VALUE")
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PrelieError, OSError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command line front end.

Every command prints one JSON document (sorted keys) on stdout.  Exit
status: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bases, bz, compact, golden, seeds
from .cartan import CartanData, cartan_preset
from . import errors
from .errors import QclawError
from .lattice import ExchangeMatrix, IndexSet
from .signed_words import SignedWord, build_B_matrix, flip, flip_path
from .torus import TorusElement

DEFAULT_RNG_SEED = 20240607


class UsageError(Exception):
    pass


# violated preconditions on user input count as usage errors
PRECONDITION_ERRORS = (
    errors.ContextMismatch,
    errors.EmptyWord,
    errors.Incompatible,
    errors.IndexOutOfRange,
    errors.NegativeOrder,
    errors.NonEssentialViolated,
    errors.NotAShuffle,
    errors.NotReducedPair,
    errors.PermutationMixesFrozen,
    errors.SameSign,
    errors.SingularCartan,
)


# -- input helpers -------------------------------------------------------------

def _load_json(text: str):
    """Inline JSON, or ``@path`` / an existing file path."""
    if text.startswith("@"):
        text = Path(text[1:]).read_text(encoding="utf-8")
    elif not text.lstrip().startswith(("{", "[")) and Path(text).is_file():
        text = Path(text).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from None


def _ints(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _label(text: str):
    try:
        return int(text)
    except ValueError:
        return text


def _cartan(text: str) -> CartanData:
    try:
        if text.lstrip().startswith("{"):
            return CartanData.from_json(_load_json(text))
        return cartan_preset(text)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None


def _word(text: str, cartan: CartanData | None = None) -> SignedWord:
    rank = cartan.rank if cartan is not None else None
    try:
        return SignedWord.parse(text, rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _seed(text: str) -> seeds.QuantumSeed:
    data = _load_json(text)
    if not isinstance(data, dict) or "B" not in data:
        raise UsageError("a seed needs at least 'labels' and 'B'")
    if "labels" not in data:
        data = dict(data, labels=list(range(1, len(data["B"]) + 1)))
    try:
        return seeds.seed_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad seed: {exc}") from None


def _element(text: str, S: seeds.QuantumSeed) -> TorusElement:
    data = _load_json(text)
    try:
        return TorusElement.from_json(S.own_context, data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad element: {exc}") from None


# -- commands -------------------------------------------------------------------

def cmd_seed_build(a):
    labels = [_label(t) for t in a.labels.split(",")] if a.labels else None
    rows = _load_json(a.B)
    labels = labels or list(range(1, len(rows) + 1))
    frozen = [_label(t) for t in a.frozen.split(",")] if a.frozen else []
    idx = IndexSet(labels, frozen)
    B = ExchangeMatrix(idx, tuple(tuple(r) for r in rows))
    L = _load_json(a.Lambda) if a.Lambda else seeds.compatible_lambda(B)
    S = seeds.QuantumSeed.initial(B, L)
    S.dprime()
    return 0, seeds.seed_to_json(S)


def cmd_seed_mutate(a):
    S = _seed(a.seed)
    T = seeds.mutate_path(S, [_label(k) for k in a.at])
    return 0, seeds.seed_to_json(T)


def cmd_seed_path(a):
    Sa, Sb = _seed(a.source), _seed(a.target)
    r = seeds.find_mutation_path(Sa, Sb, a.depth, use_permutations=a.permutations)
    return (0 if r.found else 1), r.to_json()


def cmd_seed_graph(a):
    S = _seed(a.seed)
    g = seeds.enumerate_exchange_graph(S, a.max_seeds, modulo_permutation=not a.labelled)
    return 0, {"seeds": len(g), "truncated": g.truncated, "paths": g.paths}


def cmd_word_bmatrix(a):
    C = _cartan(a.cartan)
    w = _word(a.word, C)
    B = build_B_matrix(w, C, dotted=a.dotted)
    if a.negate:
        B = B.negate()
    return 0, {"labels": list(B.index.labels), "frozen": list(B.index.frozen_list),
               "unfrozen": list(B.index.unfrozen), "B": B.to_json()}


def cmd_word_flip(a):
    w = _word(a.word)
    nw, k = flip(w, a.at)
    return 0, {"word": nw.to_json(), "mutate": k}


def cmd_word_flip_path(a):
    return 0, {"path": flip_path(_word(a.source), _word(a.target))}


def _bz_json(S: bz.BZSeed) -> dict:
    out = seeds.seed_to_json(S.seed)
    out["word"] = S.word.to_json()
    out["weights"] = S.weight_table()
    return out


def cmd_bz_build(a):
    C = _cartan(a.cartan)
    return 0, _bz_json(bz.build_bz_seed(C, _word(a.word, C)))


def cmd_bz_flip(a):
    C = _cartan(a.cartan)
    T, move = bz.flip_bz(bz.build_bz_seed(C, _word(a.word, C)), a.at)
    out = _bz_json(T)
    out["move"] = move
    return 0, out


def cmd_bz_verify(a):
    C = _cartan(a.cartan)
    S = bz.build_bz_seed(C, _word(a.word, C))
    if a.at:
        positions = [a.at]
    else:
        L = S.word.letters
        positions = [k for k in range(1, len(L)) if L[k - 1] > 0 > L[k] and L[k - 1] == -L[k]]
    reports = [bz.verify_flip_qpowers(S, k).to_json() for k in positions]
    ok = all(r["passed"] for r in reports)
    return (0 if ok else 1), {"reports": reports, "passed": ok}


def cmd_bz_connect(a):
    C = _cartan(a.cartan)
    wa, wb = _word(a.source, C), _word(a.target, C)
    words = [SignedWord(C.rank, tuple(wa.positive_subword()) + tuple(-x for x in wa.negative_subword()))]
    words += [w for w in (wa, wb) if w.letters != words[0].letters]
    realized, _ = bz.realize_corpus(C, words)
    if wa.letters not in realized or wb.letters not in realized:
        return 1, {"found": False, "reason": "word could not be placed in a common torus"}
    r = bz.connect(realized[wa.letters], realized[wb.letters], a.depth)
    return (0 if r.found else 1), r.to_json()


def _table(a):
    C = _cartan(a.cartan)
    zeta, eta = _ints(a.zeta), _ints(a.eta)
    S = bz.unshuffled_seed(C, zeta, eta)
    w = bz.unshuffled_word(zeta, eta, C.rank)
    return bases.find_interval_variables(S, w, a.depth)


def cmd_bases_intervals(a):
    return 0, _table(a).to_json()


def cmd_bases_standard(a):
    T = _table(a)
    return 0, {"c": list(_c(a.c, T)), "element": bases.standard_monomial(T, _c(a.c, T)).to_json()}


def cmd_bases_kl(a):
    T = _table(a)
    c = _c(a.c, T)
    exp = bases.kl_expansion(T, c, a.order)
    return 0, {
        "c": list(c),
        "order": a.order,
        "expansion": [{"c": list(cc), "coeff": b.to_json()} for cc, b in sorted(exp.items())],
        "element": bases.synthesize(T, exp).to_json(),
    }


def cmd_bases_straighten(a):
    T = _table(a)
    l = T.length
    pairs = [(a.k, a.j)] if a.k else [(k, j) for k in range(1, l + 1) for j in range(1, k)]
    reports = [bases.verify_straightening(T, k, j).to_json() for k, j in pairs]
    ok = all(r["passed"] for r in reports)
    return (0 if ok else 1), {"reports": reports, "passed": ok}


def _c(text, T):
    c = _ints(text)
    if len(c) != T.length or any(v < 0 for v in c):
        raise UsageError(f"--c needs {T.length} non-negative integers")
    return c


def cmd_compact_check(a):
    S = _seed(a.seed)
    r = compact.check_membership(_element(a.element, S), S, a.max_seeds)
    return 0, r.to_json()


def cmd_compact_pi(a):
    S = _seed(a.seed)
    F = [_label(t) for t in a.freeze.split(",")] if a.freeze else []
    z = _element(a.element, S) if a.element else TorusElement.one(S.own_context)
    out = compact.pi_quotient(S, F, _label(a.drop), z)
    target = compact.delete_vertex(compact.freeze_vertices(S, F), _label(a.drop))
    return 0, {"seed": seeds.seed_to_json(target), "element": out.to_json()}


def cmd_compact_harness(a):
    S = _seed(a.seed)
    graph = seeds.enumerate_exchange_graph(S, a.max_seeds)
    inter = compact.intersection_harness(S, a.samples, a.rng_seed, graph=graph)
    primes = {str(j): compact.frozen_is_prime_witness(S, j, a.samples, a.rng_seed, graph=graph).to_json()
              for j in S.index.frozen_list}
    ok = inter.passed and all(p["passed"] for p in primes.values())
    return (0 if ok else 1), {"intersection": inter.to_json(), "prime": primes, "passed": ok}


def cmd_golden(a):
    checks = golden.RUNNERS[a.example]()
    ok = all(c.passed for c in checks)
    return (0 if ok else 1), {"example": a.example, "checks": [c.to_json() for c in checks], "passed": ok}


# -- parser -------------------------------------------------------------------------

def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qclaw", description="Quantum cluster algebra workbench.")
    p.add_argument("--output", "-o", help="write JSON here instead of stdout")
    p.add_argument("--rng-seed", type=int, default=DEFAULT_RNG_SEED)
    top = p.add_subparsers(dest="group", required=True)

    g = top.add_parser("seed").add_subparsers(dest="cmd", required=True)
    c = g.add_parser("build")
    c.add_argument("--B", required=True, help="exchange matrix rows (JSON), columns = unfrozen")
    c.add_argument("--labels")
    c.add_argument("--frozen")
    c.add_argument("--Lambda")
    c.set_defaults(fn=cmd_seed_build)
    c = g.add_parser("mutate")
    c.add_argument("--seed", required=True)
    c.add_argument("--at", action="append", default=[])
    c.set_defaults(fn=cmd_seed_mutate)
    c = g.add_parser("path")
    c.add_argument("--from", dest="source", required=True)
    c.add_argument("--to", dest="target", required=True)
    c.add_argument("--depth", type=_positive, default=8)
    c.add_argument("--permutations", action="store_true")
    c.set_defaults(fn=cmd_seed_path)
    c = g.add_parser("graph")
    c.add_argument("--seed", required=True)
    c.add_argument("--max-seeds", type=_positive)
    c.add_argument("--labelled", action="store_true")
    c.set_defaults(fn=cmd_seed_graph)

    g = top.add_parser("word").add_subparsers(dest="cmd", required=True)
    c = g.add_parser("bmatrix")
    c.add_argument("--word", required=True)
    c.add_argument("--cartan", default="A2")
    c.add_argument("--dotted", action="store_true")
    c.add_argument("--negate", action="store_true")
    c.set_defaults(fn=cmd_word_bmatrix)
    c = g.add_parser("flip")
    c.add_argument("--word", required=True)
    c.add_argument("--at", type=_positive, required=True)
    c.set_defaults(fn=cmd_word_flip)
    c = g.add_parser("flip-path")
    c.add_argument("--from", dest="source", required=True)
    c.add_argument("--to", dest="target", required=True)
    c.set_defaults(fn=cmd_word_flip_path)

    g = top.add_parser("bz").add_subparsers(dest="cmd", required=True)
    for name, fn in (("build", cmd_bz_build), ("flip", cmd_bz_flip), ("verify-qpowers", cmd_bz_verify)):
        c = g.add_parser(name)
        c.add_argument("--word", required=True)
        c.add_argument("--cartan", default="A2")
        if name == "flip":
            c.add_argument("--at", type=_positive, required=True)
        elif name == "verify-qpowers":
            c.add_argument("--at", type=_positive)
        c.set_defaults(fn=fn)
    c = g.add_parser("connect")
    c.add_argument("--from", dest="source", required=True)
    c.add_argument("--to", dest="target", required=True)
    c.add_argument("--cartan", default="A2")
    c.add_argument("--depth", type=_positive, default=12)
    c.set_defaults(fn=cmd_bz_connect)

    g = top.add_parser("bases").add_subparsers(dest="cmd", required=True)
    for name, fn in (("intervals", cmd_bases_intervals), ("standard", cmd_bases_standard),
                     ("kl", cmd_bases_kl), ("straighten", cmd_bases_straighten)):
        c = g.add_parser(name)
        c.add_argument("--cartan", default="A2")
        c.add_argument("--zeta", default="1,2,1")
        c.add_argument("--eta", default="1,2,1")
        c.add_argument("--depth", type=_positive, default=20)
        if name in ("standard", "kl"):
            c.add_argument("--c", required=True)
        if name == "kl":
            c.add_argument("--order", choices=["lex", "rev"], default="lex")
        if name == "straighten":
            c.add_argument("--k", type=_positive)
            c.add_argument("--j", type=_positive)
        c.set_defaults(fn=fn)

    g = top.add_parser("compact").add_subparsers(dest="cmd", required=True)
    c = g.add_parser("check")
    c.add_argument("--seed", required=True)
    c.add_argument("--element", required=True)
    c.add_argument("--max-seeds", type=_positive)
    c.set_defaults(fn=cmd_compact_check)
    c = g.add_parser("pi")
    c.add_argument("--seed", required=True)
    c.add_argument("--freeze", default="")
    c.add_argument("--drop", required=True)
    c.add_argument("--element")
    c.set_defaults(fn=cmd_compact_pi)
    c = g.add_parser("harness")
    c.add_argument("--seed", required=True)
    c.add_argument("--samples", type=_positive, default=100)
    c.add_argument("--max-seeds", type=_positive)
    c.set_defaults(fn=cmd_compact_harness)

    c = top.add_parser("golden")
    c.add_argument("example", choices=sorted(golden.RUNNERS))
    c.set_defaults(fn=cmd_golden)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.group == "bases" and getattr(args, "cmd", None) == "straighten" and bool(args.k) != bool(args.j):
        print("qclaw: --k and --j go together", file=sys.stderr)
        return 2
    try:
        status, payload = args.fn(args)
    except UsageError as exc:
        print(f"qclaw: {exc}", file=sys.stderr)
        return 2
    except PRECONDITION_ERRORS as exc:
        print(f"qclaw: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except QclawError as exc:
        print(f"qclaw: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError) as exc:
        print(f"qclaw: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(payload, sort_keys=True, indent=2, default=str)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Every subcommand reads one problem (alphabet, forbidden words, length bound)
from flags or from a JSON file given with ``--spec``::

    {"alphabet": ["a", "b"], "forbidden": ["aa"], "max_len": 10, "t_value": -1}

Output is human-readable text unless ``--json`` is given or the environment
variable ``CLUSTERWORDS_FORMAT`` is set to ``json``.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .avoidance import IdentityCheck, Report, avoiding_series, count_avoiding, occurrence_gf, verify_cluster_theorem
from .clusters import NotReduced, cluster_gf, cluster_polynomial, cluster_words, enumerate_clusters, MarkedWord, _trace
from .interval_lattice import IntervalFamily, build_lattice, greene_check, mobius_crosscut, mobius_recursive, mobius_via_cluster, occurrence_family
from .ncseries import invert
from .reciprocal import (
    PathDisagreement,
    RangeViolation,
    check_sign_lemma,
    csv_check,
    m_table,
    path_agreement,
    random_offsets,
    salient_words,
    sign_sequence,
)
from .words import Alphabet, EnumerationTooLarge, ForbiddenSet, check_enumeration_budget
from .words import reduce as reduce_forbidden

DEFAULT_MAX_LEN = 10
FORMAT_ENV = "CLUSTERWORDS_FORMAT"


class UsageError(ValueError):
    pass


@dataclass
class ProblemSpec:
    alphabet: list[str]
    forbidden: list[str]
    max_len: int = DEFAULT_MAX_LEN
    t_value: int | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "ProblemSpec":
        data: dict = {}
        if args.spec:
            try:
                data = json.loads(Path(args.spec).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise UsageError(f"cannot read problem file {args.spec}: {exc}") from exc
        alphabet = data.get("alphabet")
        if args.alphabet is not None:
            alphabet = Alphabet.from_string(args.alphabet).letters
        forbidden = list(data.get("forbidden", []))
        if args.forbid:
            forbidden = [w.strip() for chunk in args.forbid for w in chunk.split(",") if w.strip()]
        if alphabet is None:
            letters = sorted({ch for w in forbidden for ch in w if ch not in ".^" and not ch.isdigit()})
            if not letters:
                raise UsageError("no alphabet given (use --alphabet)")
            alphabet = letters
        max_len = args.max_len if args.max_len is not None else data.get("max_len", DEFAULT_MAX_LEN)
        t_value = getattr(args, "t", None)
        if t_value is None:
            t_value = data.get("t_value")
        if max_len < 0:
            raise UsageError("max length must be >= 0")
        return cls(list(alphabet), forbidden, int(max_len), t_value)

    def build(self) -> tuple[Alphabet, ForbiddenSet]:
        alpha = Alphabet(self.alphabet)
        return alpha, ForbiddenSet(alpha, self.forbidden)


def _emit(args, data, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text)


def cmd_count(args, spec: ProblemSpec) -> int:
    _, F = spec.build()
    counts = count_avoiding(F, spec.max_len)
    text = "\n".join(f"{n}\t{c}" for n, c in enumerate(counts))
    _emit(args, {"forbidden": str(F), "counts": counts}, "# length\tavoiding words\n" + text)
    return 0


def cmd_series(args, spec: ProblemSpec) -> int:
    alpha, F = spec.build()
    L = spec.max_len
    which = args.which
    if which == "avoiding":
        S = avoiding_series(F, L)
    elif which == "reciprocal":
        check_enumeration_budget(alpha, L)
        S = invert(avoiding_series(F, L))
    elif which == "cluster-gf":
        S = cluster_gf(F, L)
    else:
        check_enumeration_budget(alpha, L)
        S = occurrence_gf(F, L)
    if spec.t_value is not None:
        if which not in ("cluster-gf", "occurrence-gf"):
            raise UsageError(f"--t applies to cluster-gf and occurrence-gf, not {which}")
        S = S.eval_t(spec.t_value)
    _emit(args, {"series": which, "max_len": L, "t": spec.t_value, "terms": S.to_json()}, S.render())
    return 0


def cmd_clusters(args, spec: ProblemSpec) -> int:
    alpha, F = spec.build()
    try:
        w = alpha.word(args.word)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    found = enumerate_clusters(w, F)
    subset = cluster_polynomial(w, F, "subset")
    rec = None
    if F.is_reduced:
        rec = cluster_polynomial(w, F, "recurrence")
    blocks = []
    for I in found:
        mw = MarkedWord.from_occurrences(w, F, I)
        blocks.append(f"{mw}\n{mw.render()}")
    lines = [f"{len(found)} cluster(s) on {w} for F={F}"] + blocks
    lines.append(f"P(t) by subsets:    {subset}")
    lines.append(f"P(t) by recurrence: {rec if rec is not None else 'n/a (F not reduced)'}")
    data = {
        "word": str(w),
        "clusters": [[list(o.span.interval) + [str(o.pattern)] for o in I] for I in found],
        "polynomial_subset": list(subset.coeffs),
        "polynomial_recurrence": None if rec is None else list(rec.coeffs),
    }
    _emit(args, data, "\n".join(lines))
    return 0 if rec is None or rec == subset else 1


def cmd_m_table(args, spec: ProblemSpec) -> int:
    alpha, F = spec.build()
    if args.method in ("inversion", "all"):
        check_enumeration_budget(alpha, spec.max_len)
    try:
        tab = m_table(F, spec.max_len, args.method)
    except (PathDisagreement, RangeViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(args, {"forbidden": str(F), "max_len": spec.max_len, "method": args.method, "entries": tab.to_json()},
          tab.render())
    return 0


def cmd_salient(args, spec: ProblemSpec) -> int:
    alpha, F = spec.build()
    recs = salient_words(F, spec.max_len)
    index = {r.word.letters: r for r in recs}
    rows, data = [], []
    for r in recs:
        chain = [str(w) for w in r.chain(index)]
        cands = [str(c) for c in r.candidates]
        rows.append(f"{r.word}\t{r.sign:+d}\t{' <- '.join(chain)}")
        data.append({"word": str(r.word), "M": r.sign, "witness": None if r.witness is None else str(r.witness),
                     "candidates": cands, "chain": chain})
    _emit(args, {"forbidden": str(reduce_forbidden(F)), "max_len": spec.max_len, "salient": data},
          "# word\tM\twitness chain\n" + "\n".join(rows))
    return 0


def cmd_mobius(args) -> int:
    try:
        fam = IntervalFamily.from_json(Path(args.intervals).read_text())
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read interval family {args.intervals}: {exc}") from exc
    if args.all_pairs:
        report = greene_check(fam, all_pairs=True)
        _emit(args, report.to_json(), report.render())
        return 0 if report.passed else 1
    lat = build_lattice(fam)
    values = {}
    if args.method in ("recursive", "all"):
        values["recursive"] = mobius_recursive(lat, lat.bottom, lat.top)
    if args.method in ("crosscut", "all"):
        values["crosscut"] = mobius_crosscut(lat, lat.top)
    if args.method in ("cluster", "all"):
        values["cluster"] = mobius_via_cluster(fam)
    agree = len(set(values.values())) == 1
    text = "\n".join(f"mu(bottom, top) [{k}] = {v}" for k, v in values.items())
    _emit(args, {"intervals": fam.to_json()["intervals"], "elements": len(lat), "mu": values, "agree": agree}, text)
    return 0 if agree else 1


def _sign_sweep(rng: random.Random, count: int = 200, max_m: int = 15) -> IdentityCheck:
    bad = None
    for i in range(count):
        r = random_offsets(rng, rng.randint(1, max_m), weakly_increasing=bool(i % 2))
        if not check_sign_lemma(sign_sequence(r), r):
            bad = str(r)
            break
    return IdentityCheck("sign-sequence lemmas (random)", bad is None, count, bad)


def cmd_verify(args, spec: ProblemSpec) -> int:
    alpha, F = spec.build()
    L = spec.max_len
    check_enumeration_budget(alpha, L)
    reports: list[Report] = [verify_cluster_theorem(F, L)]
    if all(len(p) == 2 for p in F.patterns):
        reports.append(csv_check(F, L))
    G = reduce_forbidden(F)
    paths = Report(f"reciprocal coefficients for F={F}", L)
    paths.checks.append(path_agreement(F, L))
    traces_ok, traced, first_bad = True, 0, None
    for w in cluster_words(G, L):
        tr = _trace(w, G.patterns)
        if tr is None:
            continue
        traced += 1
        u = [p(-1) for p in tr.p]
        if not check_sign_lemma(u, tr.r):
            traces_ok, first_bad = False, alpha.format(w)
            break
    paths.checks.append(IdentityCheck("sign-sequence lemmas (cluster traces)", traces_ok, traced, first_bad))
    paths.checks.append(_sign_sweep(random.Random(args.seed)))
    reports.append(paths)
    for w in cluster_words(G, L)[: args.max_families]:
        fam = occurrence_family(alpha.word(w), G)
        if len(fam) <= 12:
            reports.append(greene_check(fam, all_pairs=True))
    ok = all(r.passed for r in reports)
    text = "\n".join(r.render() for r in reports) + f"\n{'ALL PASS' if ok else 'FAILURES'}"
    _emit(args, {"passed": ok, "reports": [r.to_json() for r in reports]}, text)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    default_json = os.environ.get(FORMAT_ENV, "text").lower() == "json"
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=default_json, help="emit JSON")
    problem = argparse.ArgumentParser(add_help=False)
    problem.add_argument("--alphabet", "-a", help='letters, e.g. "abc" or "x1,x2"')
    problem.add_argument("--forbid", "-f", action="append", help="forbidden words (repeatable, comma-separated)")
    problem.add_argument("--spec", help="JSON problem file")
    problem.add_argument("--max-len", "-L", type=int, default=None, help=f"length bound (default {DEFAULT_MAX_LEN})")

    parser = argparse.ArgumentParser(prog="clusterwords", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("count", parents=[common, problem], help="count avoiding words by length")
    p = sub.add_parser("series", parents=[common, problem], help="print a generating series")
    p.add_argument("--which", choices=["avoiding", "reciprocal", "cluster-gf", "occurrence-gf"], default="avoiding")
    p.add_argument("--t", type=int, default=None, help="evaluate t at this integer")
    p = sub.add_parser("clusters", parents=[common, problem], help="clusters and cluster polynomial of one word")
    p.add_argument("--word", "-w", required=True)
    p = sub.add_parser("m-table", parents=[common, problem], help="reciprocal coefficients M(w)")
    p.add_argument("--method", choices=["inversion", "clusters", "salient", "all"], default="all")
    sub.add_parser("salient", parents=[common, problem], help="salient words with witness chains")
    p = sub.add_parser("mobius", parents=[common], help="Möbius function of a union-of-intervals lattice")
    p.add_argument("--intervals", required=True, help='JSON file {"intervals": [[lo, hi], ...]}')
    p.add_argument("--method", choices=["recursive", "crosscut", "cluster", "all"], default="all")
    p.add_argument("--all-pairs", action="store_true", help="check every comparable pair")
    p = sub.add_parser("verify", parents=[common, problem], help="run every identity check")
    p.add_argument("--seed", type=int, default=0, help="seed for the random sweeps")
    p.add_argument("--max-families", type=int, default=50, help="interval families derived from cluster words")
    return parser


COMMANDS = {
    "count": cmd_count,
    "series": cmd_series,
    "clusters": cmd_clusters,
    "m-table": cmd_m_table,
    "salient": cmd_salient,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "mobius":
            return cmd_mobius(args)
        spec = ProblemSpec.from_args(args)
        return COMMANDS[args.command](args, spec)
    except (UsageError, EnumerationTooLarge, NotReduced, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

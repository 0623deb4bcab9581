"""Executable checks of the concrete results about IFG logic and its algebras.

Each ``verify_*`` function returns a :class:`VerificationReport` listing
claims with a short anchor naming the result they reproduce.  Randomised
suites take a seed and record it in the report.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import algebra as alg
from .algebra import Element
from .enumeration import REFERENCE_TABLE, count_table, dsuit_carrier
from .generators import close_sentence, random_formula, random_schema
from .model import make_structure, space
from .semantics import SentenceStatus, meaning, realize_double_suit, sentence_status, eval_plus
from .syntax import (
    Eq, Exists, Formula, FormulaVar, Iff, Neg, Or, Schema, Var, desugar, instantiate, parse,
    schema_to_term,
)
from .ualg import (
    Congruence, FiniteAlgebra, enumerate_subuniverses, generate_subuniverse, is_congruence,
    is_hereditarily_simple, is_simple, principal_congruence, term_operations,
)

__all__ = [
    "Claim", "VerificationReport", "SUITES", "run_suites",
    "verify_matching_pennies", "verify_table", "verify_carriers", "verify_diagrams",
    "verify_laws", "verify_cs2", "verify_cs3", "verify_iff_props", "verify_schema_lemma",
    "verify_no_iff_schema", "verify_semantics", "iff_term", "HASSE_EDGES_M2", "OMEGA_INTERVAL_EDGES_M3",
    "BGEN_TABLE",
]


@dataclass
class Claim:
    id: str
    anchor: str
    passed: bool
    detail: str


@dataclass
class VerificationReport:
    suite: str
    claims: list[Claim] = field(default_factory=list)
    seed: int | None = None
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def failures(self) -> list[Claim]:
        return [c for c in self.claims if not c.passed]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "seed": self.seed,
            "claims": [asdict(c) for c in self.claims],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        head = f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}"
        if self.seed is not None:
            head += f" (seed {self.seed})"
        lines = [head]
        for c in self.claims:
            lines.append(f"  {'PASS' if c.passed else 'FAIL'}  {c.id}  [{c.anchor}]  {c.detail}")
        return "\n".join(lines)


class _Collector:
    def __init__(self, suite: str, seed: int | None = None):
        self.report = VerificationReport(suite, seed=seed)
        self._t0 = time.perf_counter()

    def check(self, name: str, anchor: str, ok: bool, detail: str = "") -> bool:
        self.report.claims.append(Claim(f"{self.report.suite}.{name}", anchor, bool(ok), detail))
        return bool(ok)

    def done(self) -> VerificationReport:
        self.report.seconds = time.perf_counter() - self._t0
        return self.report


def _label(x: Element) -> str:
    return alg.element_label(x)


def _labels(xs) -> str:
    return "{" + ", ".join(_label(x) for x in xs) + "}"


# -- matching pennies --------------------------------------------------------

def verify_matching_pennies() -> VerificationReport:
    """The first-order and IFG versions of the matching pennies sentence."""
    c = _Collector("matching_pennies")
    two, one_ = make_structure("2"), make_structure("1")
    fo = parse("A v0/{} E v1/{} v0 != v1")
    ifg = parse("A v0/{} E v1/{v0} v0 != v1")
    st = sentence_status(two, fo)
    c.check("fo-true", "first-order sentence true", st is SentenceStatus.TRUE, f"status {st}")
    st = sentence_status(two, ifg)
    c.check("ifg-undetermined", "IFG sentence neither true nor false", st is SentenceStatus.UNDETERMINED,
            f"status {st}")
    mu = meaning(two, ifg)
    c.check("ifg-meaning-omega", "undetermined sentences mean Omega", mu == alg.omega(2, 2), f"meaning {mu}")
    st = sentence_status(one_, ifg)
    c.check("ifg-false-singleton", "IFG sentence false on one element", st is SentenceStatus.FALSE,
            f"status {st}")
    open_phi = parse("E v1/{v0} v0 != v1")
    sp = space(2, 2)
    V = sp.parse_team("{00, 01}")
    ok = eval_plus(two, open_phi, V)
    c.check("open-trump", "winning team for the open formula", ok, f"{sp.format_team(V)} trump: {ok}")
    full = eval_plus(two, open_phi, sp.full)
    c.check("open-full-not-trump", "no uniform strategy on the full team", not full,
            f"{sp.format_team(sp.full)} trump: {full}")
    return c.done()


# -- counting ----------------------------------------------------------------

def verify_table(max_m: int = 5) -> VerificationReport:
    """Suit and double-suit counts against the reference table."""
    c = _Collector("table")
    for m, pow2, f, g in count_table(max_m):
        want = REFERENCE_TABLE[m]
        c.check(f"m{m}", "counting suits and double suits", (f, g) == want,
                f"m={m} 2^m={pow2} f={f} g={g} expected f={want[0]} g={want[1]}")
    return c.done()


def _atomic_meanings(structure, nvars: int) -> list[Element]:
    names = sorted(structure.constants)
    terms = [f"v{i}" for i in range(nvars)] + names
    out = []
    for s in terms:
        for t in terms:
            out.append(meaning(structure, parse(f"{s} = {t}", nvars)))
    return out


def verify_carriers() -> VerificationReport:
    """Full double-suit carriers and their generation by atomic meanings."""
    c = _Collector("carriers")
    for m, want in ((2, 11), (3, 55)):
        carrier = dsuit_carrier(m)
        c.check(f"size-{m}", "DSuit_1 carrier size", len(carrier) == want, f"|DSuit_1({m})| = {len(carrier)}")
        gen = generate_subuniverse(_atomic_meanings(make_structure(str(m)), 1))
        same = set(gen.carrier) == set(carrier)
        c.check(f"generated-{m}", "all double suits are meanings", same,
                f"atomic meanings over {m} generate {len(gen)} elements")
    return c.done()


# -- diagrams ----------------------------------------------------------------

# Hasse diagram of the eleven-element algebra over {0,1}, as (lower, upper).
HASSE_EDGES_M2 = frozenset({
    ("0", "~A"), ("~A", "~C"), ("~A", "~B"),
    ("~C", "[[v0 = c0]]"), ("~C", "Omega"), ("~B", "Omega"), ("~B", "[[v0 = c1]]"),
    ("[[v0 = c0]]", "B"), ("Omega", "B"), ("Omega", "C"), ("[[v0 = c1]]", "C"),
    ("B", "A"), ("C", "A"), ("A", "1"),
})

# Interval above Omega over {0,1,2}: vertices are labelled by their maximal
# trumps, comma separated, each team written as its digits ("" is Omega).
OMEGA_INTERVAL_EDGES_M3 = frozenset({
    ("", "0"), ("", "1"), ("", "2"),
    ("0", "0,1"), ("0", "0,2"), ("1", "0,1"), ("1", "1,2"), ("2", "0,2"), ("2", "1,2"),
    ("0,1", "01"), ("0,1", "0,1,2"), ("0,2", "0,1,2"), ("0,2", "02"), ("1,2", "0,1,2"), ("1,2", "12"),
    ("01", "01,2"), ("0,1,2", "01,2"), ("0,1,2", "02,1"), ("0,1,2", "12,0"),
    ("02", "02,1"), ("12", "12,0"),
    ("01,2", "01,02"), ("01,2", "01,12"), ("02,1", "01,02"), ("02,1", "02,12"),
    ("12,0", "01,12"), ("12,0", "02,12"),
    ("01,02", "01,02,12"), ("01,12", "01,02,12"), ("02,12", "01,02,12"),
    ("01,02,12", "012"),
})


def _trump_label(x: Element) -> frozenset[frozenset[int]]:
    sp = x.space
    return frozenset(frozenset(sp.members(t)) for t in sp.maximal_teams(x.plus) if t)


def _parse_trump_label(text: str) -> frozenset[frozenset[int]]:
    if not text:
        return frozenset()
    return frozenset(frozenset(int(d) for d in part) for part in text.split(","))


def _show_trump_label(lab: frozenset[frozenset[int]]) -> str:
    if not lab:
        return "0"
    return ", ".join("{" + ",".join(map(str, sorted(t))) + "}" for t in sorted(lab, key=sorted))


def _element_from_label(text: str, m: int = 3) -> Element:
    sp = space(m, 1)
    teams = [sp.team(int(d) for d in part) for part in text.split(",")] if text else []
    return Element(m, 1, sp.downward_closure(teams), 1)


def verify_diagrams() -> VerificationReport:
    """Both lattice diagrams rebuilt from the order relation."""
    c = _Collector("diagrams")
    carrier = dsuit_carrier(2)
    got = {(_label(a), _label(b)) for a, b in alg.hasse_edges(carrier)}
    c.check("hasse-m2-edges", "Hasse diagram over {0,1}", got == HASSE_EDGES_M2,
            f"{len(got)} edges; missing {sorted(HASSE_EDGES_M2 - got)}; extra {sorted(got - HASSE_EDGES_M2)}")
    n = alg.named_elements(2, 1)
    covers = {(a, b) for a, b in alg.hasse_edges(carrier)}
    c.check("hasse-m2-A-covers-B-C", "A covers B and C",
            (n["B"], n["A"]) in covers and (n["C"], n["A"]) in covers, "")
    c.check("hasse-m2-omega-covers", "Omega covers ~B and ~C",
            (n["~B"], n["Omega"]) in covers and (n["~C"], n["Omega"]) in covers, "")

    big = dsuit_carrier(3)
    om = alg.omega(3, 1)
    interval = [x for x in big if alg.leq(om, x)]
    want_vertices = {_parse_trump_label(v) for e in OMEGA_INTERVAL_EDGES_M3 for v in e}
    got_vertices = {_trump_label(x) for x in interval}
    c.check("omega-interval-vertices", "interval above Omega over {0,1,2}", got_vertices == want_vertices,
            f"{len(interval)} elements, {len(want_vertices)} drawn vertices")
    c.check("omega-interval-bottom", "bottom vertex is Omega",
            min(interval, key=lambda x: sum(alg.leq(y, x) for y in interval)) == om, "")
    c.check("omega-interval-flat-minus", "every vertex has cotrumps {0}", all(x.minus == 1 for x in interval), "")
    got_e = {(_trump_label(a), _trump_label(b)) for a, b in alg.hasse_edges(interval)}
    want_e = {(_parse_trump_label(a), _parse_trump_label(b)) for a, b in OMEGA_INTERVAL_EDGES_M3}
    c.check("omega-interval-edges", "interval above Omega, covering pairs", got_e == want_e,
            f"{len(got_e)} edges; missing {[tuple(map(_show_trump_label, e)) for e in want_e - got_e]}; "
            f"extra {[tuple(map(_show_trump_label, e)) for e in got_e - want_e]}")
    # the sublattice strictly between Omega and 1 minus the top is generated
    # by the three two-point teams and is the 18-element free distributive lattice
    gens = [_element_from_label(s) for s in ("01", "02", "12")]
    lat = set(gens)
    frontier = list(gens)
    while frontier:
        x = frontier.pop()
        for y in list(lat):
            for z in (alg.join(x, y), alg.meet(x, y)):
                if z not in lat:
                    lat.add(z)
                    frontier.append(z)
    top = _element_from_label("01,02,12")
    segment = {x for x in interval if alg.leq(x, top)}
    c.check("omega-interval-free-lattice", "free distributive lattice on three generators",
            len(lat) == 18 and lat == segment,
            f"{{0,1}}, {{0,2}}, {{1,2}} generate {len(lat)} elements under join and meet")
    return c.done()


# -- algebra laws ------------------------------------------------------------

def _subsets(nvars: int) -> list[frozenset[int]]:
    return [frozenset(i for i in range(nvars) if s >> i & 1) for s in range(1 << nvars)]


def _check_laws(c: _Collector, m: int, nvars: int, carrier: list[Element], pairs: bool = True) -> None:
    tag = f"{m}^{nvars}"
    z, o, om = alg.zero(m, nvars), alg.one(m, nvars), alg.omega(m, nvars)
    Js = _subsets(nvars)
    N = frozenset(range(nvars))
    bad: list[str] = []
    for x in carrier:
        for J in Js:
            if alg.plus(x, z, J) != x:
                bad.append(f"{x} +{sorted(J)} 0")
            if alg.plus(x, o, J) != o:
                bad.append(f"{x} +{sorted(J)} 1")
            if alg.times(x, o, J) != x:
                bad.append(f"{x} *{sorted(J)} 1")
            if alg.times(x, z, J) != z:
                bad.append(f"{x} *{sorted(J)} 0")
    c.check(f"bounds-{tag}", "identities with 0 and 1", not bad, f"violations {bad[:3]}")
    if not pairs:
        return
    bad = []
    absorb = []
    flat = []
    for x in carrier:
        for y in carrier:
            j = alg.plus(x, y, N)
            if j != Element(m, nvars, x.plus | y.plus, x.minus & y.minus):
                bad.append(f"{x} +N {y}")
            if not alg.leq(x, y):
                continue
            yflat = alg.classify(y).is_flat
            for J in Js:
                s = alg.plus(x, y, J)
                if alg.leq(x, om) and s != y:
                    absorb.append(f"{x} +{sorted(J)} {y} = {s}")
                if yflat and s != y:
                    flat.append(f"{x} +{sorted(J)} {y} = {s}")
    c.check(f"join-N-{tag}", "+_N is union of trumps", not bad, f"violations {bad[:3]}")
    c.check(f"omega-absorption-{tag}", "X <= Omega and X <= Y give X +_J Y = Y", not absorb,
            f"violations {absorb[:3]}")
    c.check(f"flat-absorption-{tag}", "X <= Y with Y flat gives X +_J Y = Y", not flat,
            f"violations {flat[:3]}")


def _check_trichotomy(c: _Collector, m: int, nvars: int, carrier: list[Element]) -> None:
    z, o, om = alg.zero(m, nvars), alg.one(m, nvars), alg.omega(m, nvars)
    Js = _subsets(nvars)
    bad = []
    choices = [[]]
    for _ in range(nvars):
        choices = [ch + [J] for ch in choices for J in Js]
    for x in carrier:
        want = z if x == z else (om if alg.leq(x, om) else o)
        for ch in choices:
            got = alg.full_cylindrification(x, ch)
            if got != want:
                bad.append(f"C{[sorted(J) for J in ch]}({x}) = {got}, expected {_label(want)}")
    c.check(f"trichotomy-{m}^{nvars}", "full cylindrification is 0, Omega or 1", not bad,
            f"{len(carrier)} elements x {len(choices)} index choices; violations {bad[:3]}")


def verify_laws() -> VerificationReport:
    """Kleene reduct, identities, absorption and the cylindrification trichotomy."""
    c = _Collector("laws")
    for m in (2, 3):
        carrier = dsuit_carrier(m)
        rep = alg.check_kleene(carrier)
        c.check(f"kleene-{m}", "De Morgan and Kleene axioms", rep.ok,
                f"{len(rep.checked)} axioms over {len(carrier)} elements; {rep.violation or 'no violation'}")
        _check_laws(c, m, 1, carrier)
        _check_trichotomy(c, m, 1, carrier)
    wide = dsuit_carrier(2, 2)
    _check_laws(c, 2, 2, wide, pairs=False)
    _check_trichotomy(c, 2, 2, wide)
    return c.done()


# -- the algebra over {0,1} --------------------------------------------------

_CS2_CATALOGUE = [
    {"0", "1"},
    {"0", "Omega", "1"},
    {"0", "~A", "Omega", "A", "1"},
    {"0", "~B", "Omega", "B", "1"},
    {"0", "~C", "Omega", "C", "1"},
    {"0", "~A", "~B", "Omega", "B", "A", "1"},
    {"0", "~A", "~C", "Omega", "C", "A", "1"},
    {"0", "~A", "~B", "~C", "Omega", "C", "B", "A", "1"},
]


def verify_cs2() -> VerificationReport:
    """Subalgebras of the algebra over {0,1} and its hereditary simplicity."""
    c = _Collector("cs2")
    full = FiniteAlgebra(dsuit_carrier(2))
    labels = full.labels()
    subs = enumerate_subuniverses(full)
    got = [{labels[i] for i in s} for s in subs]
    catalogue = _CS2_CATALOGUE + [set(labels)]
    c.check("subuniverse-count", "subalgebra catalogue", len(subs) == 9, f"{len(subs)} subuniverses")
    c.check("subuniverse-catalogue", "subalgebra catalogue",
            sorted(map(sorted, got)) == sorted(map(sorted, catalogue)),
            "; ".join("{" + ",".join(sorted(s)) + "}" for s in got))
    simple = [bool(is_simple(full.subalgebra(s))) for s in subs]
    c.check("all-simple", "every subalgebra is simple", all(simple), f"simple flags {simple}")
    hs = is_hereditarily_simple(full)
    c.check("hereditarily-simple", "hereditary simplicity over {0,1}", hs.hereditarily_simple,
            f"checked {hs.checked} subalgebras")

    n = alg.named_elements(2, 1)
    for gens, want in ((["A"], _CS2_CATALOGUE[2]), (["B"], _CS2_CATALOGUE[3]),
                       (["A", "B"], _CS2_CATALOGUE[5]), (["B", "C"], _CS2_CATALOGUE[7])):
        g = generate_subuniverse([n[k] for k in gens])
        c.check(f"generated-{''.join(gens)}", "generated subalgebras", set(g.labels()) == want,
                f"<{','.join(gens)}> = {{{', '.join(g.labels())}}}")
    with_v0 = generate_subuniverse([n["[[v0 = c0]]"]])
    c.check("generated-perfect", "a perfect generator gives everything", len(with_v0) == 11,
            f"<[[v0 = c0]]> has {len(with_v0)} elements")

    e, J0, N = frozenset(), frozenset({0}), frozenset({0})
    ids = [
        ("A", "+", e, "A", "1"), ("A", "+", J0, "A", "A"),
        ("A", "+", e, "B", "1"), ("A", "+", J0, "B", "A"),
        ("B", "+", e, "B", "B"),
        ("B", "+", e, "C", "1"), ("B", "+", J0, "C", "A"),
        ("~B", "+", e, "~C", "Omega"), ("~B", "+", J0, "~C", "Omega"),
        ("B", "+", N, "[[v0 = c0]]", "B"), ("C", "+", N, "[[v0 = c0]]", "A"),
        ("A", "*", N, "C", "C"), ("B", "*", N, "C", "Omega"),
    ]
    bad = []
    for x, op, J, y, want in ids:
        f = alg.plus if op == "+" else alg.times
        got_ = _label(f(n[x], n[y], J))
        if got_ != want:
            bad.append(f"{x} {op}{sorted(J)} {y} = {got_}, expected {want}")
    c.check("identities", "computations in the simplicity proof", not bad,
            f"{len(ids)} identities; violations {bad}")
    cg = principal_congruence(full, n["A"], n["B"])
    c.check("cg-AB-total", "Cg(A,B) is total", cg.is_total, cg.format(full))
    merge01 = [[n["0"], n["1"]]] + [[x] for x in full.carrier if x not in (n["0"], n["1"])]
    c.check("merge-0-1-not-congruence", "0 congruent to anything forces totality",
            not is_congruence(full, merge01), "")
    return c.done()


# -- the algebra over {0,1,2} ------------------------------------------------

# (x, y, x +{} y, x +{0} y) in the subalgebra generated by B.
BGEN_TABLE = (
    ("A", "A", "A", "A"), ("A", "B", "A", "A"), ("B", "B", "A", "B"),
    ("A", "~A", "A", "A"), ("A", "~B", "A", "A"), ("B", "~A", "B", "B"),
    ("B", "~B", "B", "B"), ("~A", "~A", "~A", "~A"), ("~A", "~B", "~B", "~B"),
    ("~B", "~B", "~B", "~B"),
)


def verify_cs3(seed: int = 0, realizations: int = 20) -> VerificationReport:
    """Simplicity of the algebra over {0,1,2} and the failure of hereditary simplicity."""
    c = _Collector("cs3", seed)
    full = FiniteAlgebra(dsuit_carrier(3))
    c.check("size", "55 double suits", len(full) == 55, f"{len(full)} elements")
    n = len(full)
    nontotal = []
    orders = [alg.order(x) for x in full.carrier]
    om = full.idx(alg.omega(3, 1))
    for i in range(n):
        for j in range(i + 1, n):
            if not principal_congruence(full, i, j).is_total:
                nontotal.append((i, j))
    pairs = n * (n - 1) // 2
    c.check("simple", "DSuit is simple", not nontotal,
            f"{pairs} principal congruences, {len(nontotal)} not total")
    diff = sum(1 for i in range(n) for j in range(i + 1, n) if orders[i] != orders[j])
    c.check("different-order-total", "elements of different order", not nontotal,
            f"{diff} pairs of different order, all total")
    X = [i for i in range(n) if i != om and alg.leq(full.carrier[i], full.carrier[om])]
    Y = [i for i in range(n) if i != om and alg.leq(full.carrier[om], full.carrier[i])]
    c.check("below-above-omega-total", "X < Omega < Y", not nontotal,
            f"{len(X) * len(Y)} pairs across Omega, all total")
    o3 = alg.order(_element_from_label("0,1,2"))
    o2 = alg.order(_element_from_label("01,2"))
    c.check("orders", "order of an element (copies counted)", (o3, o2) == (3, 2),
            f"order({{0}},{{1}},{{2}}) = {o3}, order({{0,1}},{{2}}) = {o2}")

    names = alg.named_elements(3, 1)
    gB = generate_subuniverse([names["B"]])
    want = {"0", "~A", "~B", "Omega", "B", "A", "1"}
    c.check("gen-B", "subalgebra generated by B", set(gB.labels()) == want and len(gB) == 7,
            f"<B> = {{{', '.join(gB.labels())}}}")
    bad = []
    for x, y, e_, j0 in BGEN_TABLE:
        for J, w in ((frozenset(), e_), (frozenset({0}), j0)):
            got = _label(alg.plus(names[x], names[y], J))
            if got != w:
                bad.append(f"{x} +{sorted(J)} {y} = {got}, expected {w}")
    c.check("table", "the +{} and +{0} table of <B>", not bad, f"20 identities; violations {bad}")
    theta = [[names["A"], names["B"]], [names["~A"], names["~B"]]] + [
        [names[k]] for k in ("0", "Omega", "1")
    ]
    is_cong = is_congruence(gB, theta)
    c.check("theta-congruence", "nontrivial non-total congruence on <B>", is_cong,
            "{A,B} {~A,~B} {0} {Omega} {1}")
    cg = principal_congruence(gB, names["A"], names["B"])
    expect = Congruence.from_blocks([[gB.idx(x) for x in blk] for blk in theta], len(gB))
    c.check("cg-AB", "Cg(A,B) on <B>", cg == expect, cg.format(gB))
    hs = is_hereditarily_simple(full)
    wit = set(hs.witness.labels()) if hs.witness is not None else set()
    c.check("not-hereditarily-simple", "not hereditarily simple", not hs.hereditarily_simple and wit == want,
            f"witness {{{', '.join(sorted(wit))}}} after {hs.checked} subalgebras")

    three = make_structure("3")
    rng = random.Random(seed)
    sample = [names["A"]] + rng.sample(list(full.carrier), realizations)
    bad = []
    for x in sample:
        phi = realize_double_suit(x, three)
        mu = meaning(three, phi)
        if mu != x:
            bad.append(f"{x} realised as {mu}")
    c.check("realize", "every double suit is a meaning", not bad,
            f"{len(sample)} round trips; mismatches {bad[:3]}")
    return c.done()


# -- iff ---------------------------------------------------------------------

def iff_term(x: Element, y: Element, J) -> Element:
    """``(~X +_J Y) ._J (X +_J ~Y)``."""
    return alg.times(alg.plus(alg.neg(x), y, J), alg.plus(x, alg.neg(y), J), J)


def verify_iff_props() -> VerificationReport:
    """When the iff term takes the value 1."""
    c = _Collector("iff_props")
    for m in (2, 3):
        carrier = dsuit_carrier(m)
        one, zero = alg.one(m, 1), alg.zero(m, 1)
        bad_e, bad_n = [], []
        for x in carrier:
            perfect = alg.classify(x).is_perfect
            for y in carrier:
                t_e = iff_term(x, y, ()) == one
                if t_e != (x == y and perfect):
                    bad_e.append(f"({_label(x)}, {_label(y)})")
                t_n = iff_term(x, y, (0,)) == one
                if t_n != (x == y and x in (zero, one)):
                    bad_n.append(f"({_label(x)}, {_label(y)})")
        c.check(f"empty-{m}", "T_{} is 1 iff equal and perfect", not bad_e,
                f"{len(carrier) ** 2} pairs; violations {bad_e[:3]}")
        c.check(f"full-{m}", "T_N is 1 iff equal and in {0,1}", not bad_n,
                f"{len(carrier) ** 2} pairs; violations {bad_n[:3]}")
    perfect2 = [x for x in dsuit_carrier(2) if alg.classify(x).is_perfect]
    c.check("perfect-2", "perfect elements over {0,1}",
            {_label(x) for x in perfect2} == {"0", "1", "[[v0 = c0]]", "[[v0 = c1]]"},
            _labels(perfect2))
    n = alg.named_elements(2, 1)
    c.check("example-eq", "T_{} of [[v0 = c0]] with itself",
            iff_term(n["[[v0 = c0]]"], n["[[v0 = c0]]"], ()) == alg.one(2, 1), "")
    c.check("example-A", "T_{}(A, A) is not 1", iff_term(n["A"], n["A"], ()) != alg.one(2, 1),
            f"T_{{}}(A, A) = {_label(iff_term(n['A'], n['A'], ()))}")
    c.check("example-omega", "T_N(Omega, Omega) is not 1",
            iff_term(n["Omega"], n["Omega"], (0,)) != alg.one(2, 1), "")

    # semantic cross-check: meaning of phi <->J psi equals the term value
    two = make_structure("2")
    carrier = dsuit_carrier(2)
    forms = {x: realize_double_suit(x, two) for x in carrier}
    bad = []
    for x in carrier:
        for y in carrier:
            for J in (frozenset(), frozenset({0})):
                phi = Formula(Iff(forms[x].body, forms[y].body, J), 1)
                mu = meaning(two, phi)
                if mu != iff_term(x, y, J):
                    bad.append(f"({_label(x)}, {_label(y)}, {sorted(J)})")
    c.check("semantic", "semantics of <->_J", not bad,
            f"{2 * len(carrier) ** 2} formula pairs over 2; mismatches {bad[:3]}")
    return c.done()


# -- schemas and terms -------------------------------------------------------

def verify_schema_lemma(trials: int = 100, seed: int = 0) -> VerificationReport:
    """Meaning of an instantiated schema equals its term evaluated on meanings."""
    c = _Collector("schema_lemma", seed)
    two = make_structure("2")

    def agree(xi: Schema, phis) -> tuple[bool, str]:
        lhs = meaning(two, instantiate(xi, phis))
        rhs = alg.eval_term(schema_to_term(desugar(xi)), [meaning(two, p) for p in phis])
        return lhs == rhs, f"{xi}: {lhs} vs {rhs}"

    a0, a1 = FormulaVar(0), FormulaVar(1)
    fixed = [
        Schema(Or(a0, a1, frozenset()), 1, 2),
        Schema(Exists(0, frozenset({0}), Neg(a0)), 1, 2),
        Schema(Or(Eq(Var(0), Var(1)), Exists(1, frozenset({0}), a1), frozenset({1})), 2, 2),
    ]
    for k, xi in enumerate(fixed):
        phis = [parse("v0 = c0", xi.nvars), parse("v0 = c1", xi.nvars)]
        ok, detail = agree(xi, phis)
        c.check(f"fixed-{k}", "schema term lemma", ok, detail)
    rng = random.Random(seed)
    bad = []
    for _ in range(trials):
        nv = rng.choice((1, 2))
        xi = random_schema(rng, 3, nv)
        phis = [random_formula(rng, 3, nv) for _ in range(2)]
        ok, detail = agree(xi, phis)
        if not ok:
            bad.append(detail + " with " + "; ".join(map(str, phis)))
    c.check("random", "schema term lemma", not bad, f"{trials} random trials; failures {bad[:2]}")
    return c.done()


def _equality_detectors(algebra: FiniteAlgebra, ops: np.ndarray) -> np.ndarray:
    n = len(algebra)
    one = algebra.idx(alg.one(algebra.m, algebra.nvars))
    eq = np.eye(n, dtype=bool).ravel()
    return np.nonzero(((ops == one) == eq).all(axis=1))[0]


def verify_no_iff_schema(depth: int = 3) -> VerificationReport:
    """No term detects equality on the subalgebra generated by B."""
    c = _Collector("no_iff_schema")
    names = alg.named_elements(3, 1)
    gB = generate_subuniverse([names["B"]])
    theta = principal_congruence(gB, names["A"], names["B"])
    i1, iA, iB = gB.idx(names["1"]), gB.idx(names["A"]), gB.idx(names["B"])
    cls1 = theta.class_of(i1)
    c.check("class-of-1", "the class of 1 is {1}", cls1 == (i1,), theta.format(gB))
    c.check("A-theta-B", "A and B are congruent but distinct", theta.related(iA, iB) and iA != iB, "")
    c.check("theta-congruence", "theta respects every operation", is_congruence(gB, theta), "")

    levels = term_operations(gB, depth)
    ops = np.concatenate(levels)
    n = len(gB)
    labels = np.empty(n, dtype=int)
    for k, blk in enumerate(theta.blocks):
        labels[list(blk)] = k
    ab, aa = iA * n + iB, iA * n + iA
    compat = (labels[ops[:, ab]] == labels[ops[:, aa]]).all()
    c.check("compatibility", "t(A,B) theta t(A,A) for every term", bool(compat),
            f"{len(ops)} distinct binary term operations of depth <= {depth}")
    det = _equality_detectors(gB, ops)
    c.check("no-detector", "no term has t(X,Y) = 1 exactly when X = Y", len(det) == 0,
            f"{len(det)} equality-detecting operations on <B>")
    # an iff schema would translate into such a term
    iff = desugar(Schema(Iff(FormulaVar(0), FormulaVar(1), frozenset()), 1, 2))
    t = schema_to_term(iff)
    vec = np.array([gB.idx(alg.eval_term(t, [x, y])) for x in gB.carrier for y in gB.carrier])
    hit = any((row == vec).all() for row in ops)
    c.check("iff-schema-term", "an iff schema yields a term", hit and len(_equality_detectors(gB, vec[None])) == 0,
            "the term of @0 <->{} @1 is in the sweep and does not detect equality")

    full2 = FiniteAlgebra(dsuit_carrier(2))
    ops2 = np.concatenate(term_operations(full2, depth))
    one2 = alg.one(2, 1)
    T = np.array([full2.idx(iff_term(x, y, ())) for x in full2.carrier for y in full2.carrier])
    found = any((row == T).all() for row in ops2)
    ones = {(full2.carrier[k // len(full2)], full2.carrier[k % len(full2)])
            for k in np.nonzero(T == full2.idx(one2))[0]}
    perfect_diag = {(x, x) for x in full2.carrier if alg.classify(x).is_perfect}
    c.check("cs2-T-empty", "T_{} over {0,1} detects equality only on perfect pairs",
            found and ones == perfect_diag,
            f"{len(ops2)} term operations over {{0,1}}; T_{{}} is 1 on {len(ones)} pairs")
    return c.done()


# -- semantics invariants ----------------------------------------------------

def verify_semantics(cases: int = 500, seed: int = 0) -> VerificationReport:
    """Structural properties of meanings of random formulas over 2."""
    c = _Collector("semantics", seed)
    two = make_structure("2")
    rng = random.Random(seed)
    fails: dict[str, list[str]] = {k: [] for k in ("downward", "empty-team", "disjoint", "flat", "sentence")}
    trio = {}
    for _ in range(cases):
        nv = rng.choice((1, 2))
        fo = rng.random() < 0.25
        phi = random_formula(rng, 3, nv, first_order=fo)
        mu = meaning(two, phi)
        sp = mu.space
        if not (sp.is_downward_closed(mu.plus) and sp.is_downward_closed(mu.minus)):
            fails["downward"].append(str(phi))
        if not (mu.plus & 1 and mu.minus & 1):
            fails["empty-team"].append(str(phi))
        if mu.plus & mu.minus != 1:
            fails["disjoint"].append(str(phi))
        if fo and not alg.classify(mu).is_perfect:
            fails["flat"].append(str(phi))
        if nv not in trio:
            trio[nv] = {alg.zero(2, nv), alg.omega(2, nv), alg.one(2, nv)}
        sent = close_sentence(rng, phi)
        if meaning(two, sent) not in trio[nv]:
            fails["sentence"].append(str(sent))
    anchors = {
        "downward": "meanings are downward closed",
        "empty-team": "the empty team is a trump and a cotrump",
        "disjoint": "trumps and cotrumps share only the empty team",
        "flat": "first-order meanings are perfect",
        "sentence": "sentences mean 0, Omega or 1",
    }
    for k, bad in fails.items():
        c.check(k, anchors[k], not bad, f"{cases} random formulas; failures {bad[:2]}")
    return c.done()


SUITES: dict[str, Callable[..., VerificationReport]] = {
    "matching_pennies": verify_matching_pennies,
    "table": verify_table,
    "carriers": verify_carriers,
    "diagrams": verify_diagrams,
    "laws": verify_laws,
    "cs2": verify_cs2,
    "cs3": verify_cs3,
    "iff_props": verify_iff_props,
    "schema_lemma": verify_schema_lemma,
    "no_iff_schema": verify_no_iff_schema,
    "semantics": verify_semantics,
}

_SEEDED = {"cs3", "schema_lemma", "semantics"}


def run_suites(names=("all",), seed: int = 0) -> list[VerificationReport]:
    """Run the named suites (``"all"`` for every one) in a fixed order."""
    names = list(names)
    if "all" in names:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)} or 'all'")
    out = []
    for name in names:
        fn = SUITES[name]
        out.append(fn(seed=seed) if name in _SEEDED else fn())
    return out

"""Check every finite claim about H_k and the 46/81 construction and emit a certificate."""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .constructions import (
    PAPER_WEIGHTS,
    Digraph,
    arc_contribution,
    blowup_density,
    build_h_k,
    load_paper_digraph,
    paper_g,
)
from .detect import contains_near_clique, count_cliques, near_clique
from .hypercore import complement_edges, format_fraction, vertices_of
from .search import (
    DEFAULT_MAX_EDGES,
    InfeasibleScaleError,
    averaging_upper_bound,
    brute_force_turan,
    exact_turan,
    freeness_check,
)
from .textio import format_hypergraph, parse_digraph

# Upper bound on the Turán density of K_4^3, as printed (flag algebras).
RAZBOROV_K4_UPPER = Fraction(561666, 1_000_000)
# Turán's conjectured value of the same density.
TURAN_K4_CONJECTURE = Fraction(5, 9)
TARGET_DENSITY = Fraction(46, 81)

STATUSES = ("verified", "failed", "skipped")


@dataclass
class ClaimRecord:
    id: str
    anchor: str
    statement: str
    status: str = "skipped"
    reason: str = ""
    values: dict = field(default_factory=dict)
    witness: dict = field(default_factory=dict)
    duration_s: float = 0.0


@dataclass
class VerificationReport:
    version: str
    digraph_provenance: dict
    constants: dict
    claims: list

    @property
    def failed(self) -> bool:
        return any(c.status == "failed" for c in self.claims)

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        claims = [ClaimRecord(**c) for c in data["claims"]]
        return cls(data["version"], data["digraph_provenance"], data["constants"], claims)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [f"hyperturan {self.version}  digraph: {self.digraph_provenance.get('source')}"]
        for c in self.claims:
            lines.append(f"[{c.status:>8}] {c.id:<28} {c.statement}")
            for key, val in sorted(c.values.items()):
                lines.append(f"{'':12}{key} = {val}")
            if c.reason:
                lines.append(f"{'':12}reason: {c.reason}")
        n_ok = sum(c.status == "verified" for c in self.claims)
        n_bad = sum(c.status == "failed" for c in self.claims)
        lines.append(f"{n_ok} verified, {n_bad} failed, {len(self.claims) - n_ok - n_bad} skipped")
        return "\n".join(lines) + "\n"


@dataclass
class VerifyConfig:
    digraph_path: str | None = None
    turan_max_edges: int = DEFAULT_MAX_EDGES
    finite_sizes: tuple = (9, 18)


class _Failed(Exception):
    pass


def _expect(cond: bool, message: str):
    if not cond:
        raise _Failed(message)


def _labels(masks) -> list:
    return sorted([v + 1 for v in vertices_of(m)] for m in masks)


# ---------------------------------------------------------------------------
# claim bodies: each fills rec.values / rec.witness and raises _Failed on a mismatch


def _h3_structure(rec, ctx):
    H = build_h_k(3)
    missing = _labels(complement_edges(H))
    rec.values.update(vertices=H.n, edges=H.num_edges)
    rec.witness["non_edges"] = missing
    _expect(H.n == 5 and H.num_edges == 8, "H_3 should have 5 vertices and 8 edges")
    _expect(missing == [[1, 2, 3], [1, 4, 5]], f"unexpected non-edges {missing}")


def _h3_one_k4(rec, ctx):
    H = build_h_k(3)
    c = count_cliques(H, 4)
    rec.values["count_cliques(H_3,4)"] = c
    _expect(c == 1, f"expected exactly one K_4^3, found {c}")


def _h3_no_k5minus(rec, ctx):
    res = contains_near_clique(build_h_k(3), 5)
    rec.values["contains_near_clique(H_3,5)"] = res.found
    _expect(not res.found, f"H_3 contains a K_5^3- on {res.witness}")


def _turan_5_4_3(rec, ctx):
    res = exact_turan(5, 3, 4, max_edges=ctx.turan_max_edges)
    oracle = brute_force_turan(5, 3, 4)
    W = res.witness_hypergraphs()[0]
    rec.values.update({"t(5,4,3)": res.value, "oracle": oracle, "|E(H_3)|": 8})
    rec.witness["extremal"] = format_hypergraph(W)
    _expect(res.value == oracle == 7, f"branch-and-bound {res.value}, oracle {oracle}")
    _expect(W.num_edges == 7 and count_cliques(W, 4) == 0, "witness is not K_4^3-free")
    _expect(8 >= res.value + 1, "H_3 is not above the threshold")


def _averaging_bounds(rec, ctx):
    for k in range(3, 9):
        bound = averaging_upper_bound(2 * k - 1, 2 * k - 2, k)
        closed = math.comb(2 * k - 1, k) - Fraction(2 * k - 1, k - 1)
        rec.values[f"k={k}"] = format_fraction(bound)
        _expect(bound == closed, f"k={k}: bound {bound} differs from closed form {closed}")
        _expect(
            math.floor(bound) == math.comb(2 * k - 1, k) - 3,
            f"k={k}: floor {math.floor(bound)} is not C(2k-1,k)-3",
        )


def _base_density(rec, ctx):
    d = blowup_density(build_h_k(3), None, PAPER_WEIGHTS)
    rec.values["density"] = format_fraction(d)
    _expect(d == Fraction(32, 81), f"base density {d}")


def _arc_contributions(rec, ctx):
    got = {
        "out_of_1": arc_contribution(PAPER_WEIGHTS, 0, 1),
        "into_1": arc_contribution(PAPER_WEIGHTS, 1, 0),
        "not_incident": arc_contribution(PAPER_WEIGHTS, 1, 2),
    }
    rec.values.update({k: format_fraction(v) for k, v in got.items()})
    want = {"out_of_1": Fraction(2, 243), "into_1": Fraction(4, 243), "not_incident": Fraction(8, 243)}
    _expect(got == want, "arc contributions differ")


def _digraph_density(rec, ctx):
    D = ctx.digraph()
    H = build_h_k(3)
    d = blowup_density(H, D, PAPER_WEIGHTS)
    rec.values["density"] = format_fraction(d)
    rec.witness["arcs"] = [list(a) for a in D.arc_list()]
    _expect(d == TARGET_DENSITY, f"digraph density {d}, expected 46/81")
    F = near_clique(5, 3)
    free5 = freeness_check(H, D, F)
    rec.values["free_at_multiplicity_5"] = free5
    _expect(free5, "multiplicity-5 blow-up contains a K_5^3-")
    free6 = freeness_check(H, D, F, 6)
    rec.values["free_at_multiplicity_6"] = free6
    _expect(free6, "multiplicity-6 blow-up contains a K_5^3-")


def _exceeds_razborov(rec, ctx):
    a, b = TARGET_DENSITY, RAZBOROV_K4_UPPER
    lhs, rhs = a.numerator * b.denominator, b.numerator * a.denominator
    rec.values.update(lhs=str(lhs), rhs=str(rhs), comparison="46*1000000 > 561666*81")
    _expect(lhs > rhs, "46/81 does not exceed the K_4^3 upper bound")


def _finite_g(rec, ctx):
    D = ctx.digraph()
    for n in ctx.finite_sizes:
        G = paper_g(n, D)
        res = contains_near_clique(G, 5)
        rec.values[f"G({n}).edges"] = G.num_edges
        rec.values[f"G({n}).k5minus_free"] = not res.found
        _expect(not res.found, f"G({n}) contains a K_5^3- on {res.witness}")


def _h4(rec, ctx):
    H = build_h_k(4)
    floor_bound = math.floor(averaging_upper_bound(7, 6, 4))
    c = count_cliques(H, 6)
    rec.values.update(edges=H.num_edges, floor_bound=floor_bound, **{"count_cliques(H_4,6)": c})
    _expect(H.num_edges == 33 and floor_bound == 32, "H_4 edge count or bound mismatch")
    _expect(H.num_edges > floor_bound and c <= 1, "H_4 is not a counterexample")


CATALOG = [
    ("h3-structure", "H_k definition", "H_3 has 5 vertices, 8 edges, non-edges {1,2,3} and {1,4,5}", _h3_structure),
    ("h3-at-most-one-k4", "H_k has no two K_{2k-2}^k", "count_cliques(H_3, 4) = 1 < 2", _h3_one_k4),
    ("h3-no-k5minus", "H_3 answers both questions negatively", "H_3 contains no K_5^3-", _h3_no_k5minus),
    ("turan-5-4-3", "Turán number t(5,4,3)", "t(5,4,3) = 7 (branch-and-bound and oracle) and |E(H_3)| = t + 1", _turan_5_4_3),
    ("averaging-bound", "averaging inequality", "floor of the averaging bound is C(2k-1,k) - 3 for k = 3..8", _averaging_bounds),
    ("base-blowup-density", "blow-up H_3(n)", "blow-up of H_3 with weights (1/9, 2/9, ...) has density 32/81", _base_density),
    ("arc-contributions", "digraph layer G_0(n)", "single arcs add 2/243 (out of 1), 4/243 (into 1), 8/243 (other)", _arc_contributions),
    ("digraph-46-81", "combined construction G(n)", "the configured digraph gives density 46/81 and a K_5^3--free blow-up", _digraph_density),
    ("exceeds-k4-upper-bound", "46/81 against the K_4^3 density bound", "46/81 > 561666/1000000 by exact cross-multiplication", _exceeds_razborov),
    ("finite-g-free", "G(n) for n divisible by 9", "G(9) and G(18) contain no K_5^3-", _finite_g),
    ("h4-counterexample", "H_4 case of the construction", "|E(H_4)| = 33 > 32 = floor(bound) and count_cliques(H_4, 6) <= 1", _h4),
]

REFERENCES = [
    ("ref-two-cliques-large-n", "conjecture: two K_s^3 for n >= n_0(s)", "open problem; not machine-checkable here"),
    ("ref-density-gap-s56", "conjecture: pi(K_s^3) < pi(K_{s+1}^3-) for s = 5, 6", "open problem; not machine-checkable here"),
    ("ref-k7-k8minus", "question: pi(K_7^3) = pi(K_8^3-)?", "open problem; not machine-checkable here"),
    (
        "ref-large-n-negative",
        "negative answer for all sufficiently large n",
        "asymptotic statement; not machine-checkable here, finite surrogate is claim exceeds-k4-upper-bound",
    ),
]


class _Context:
    def __init__(self, config: VerifyConfig):
        self.turan_max_edges = config.turan_max_edges
        self.finite_sizes = tuple(config.finite_sizes)
        self.path = config.digraph_path
        self._digraph: Digraph | None = None
        self._error: Exception | None = None

    def provenance(self) -> dict:
        if self.path is None:
            return {"source": "bundled data/paper_digraph.dig", "origin": "search_digraphs, first representative"}
        try:
            digest = hashlib.sha256(Path(self.path).read_bytes()).hexdigest()
        except OSError as exc:
            digest = f"unreadable: {exc}"
        return {"source": str(self.path), "sha256": digest}

    def digraph(self) -> Digraph:
        if self._digraph is None:
            if self.path is None:
                self._digraph = load_paper_digraph()
            else:
                self._digraph = parse_digraph(Path(self.path).read_text(encoding="utf-8"))
        if self._digraph.n != 5:
            raise _Failed(f"digraph has {self._digraph.n} vertices, H_3 has 5")
        return self._digraph


def verify_paper(config: VerifyConfig | None = None) -> VerificationReport:
    """Run the fixed claim catalog in order; a claim never aborts the run."""
    config = config or VerifyConfig()
    ctx = _Context(config)
    claims = []
    for cid, anchor, statement, body in CATALOG:
        rec = ClaimRecord(cid, anchor, statement)
        start = time.perf_counter()
        try:
            body(rec, ctx)
            rec.status = "verified"
        except InfeasibleScaleError as exc:
            rec.status, rec.reason = "skipped", f"beyond configured cap: {exc}"
        except _Failed as exc:
            rec.status, rec.reason = "failed", str(exc)
        except Exception as exc:  # a broken input must fail the claim, not the run
            rec.status, rec.reason = "failed", f"{type(exc).__name__}: {exc}"
        rec.duration_s = round(time.perf_counter() - start, 6)
        claims.append(rec)
    for cid, anchor, reason in REFERENCES:
        claims.append(ClaimRecord(cid, anchor, anchor, "skipped", reason))
    constants = {
        "k4_density_upper_bound": {
            "value": format_fraction(RAZBOROV_K4_UPPER),
            "label": "upper bound as printed (Razborov, flag algebras)",
        },
        "k4_density_conjecture": {
            "value": format_fraction(TURAN_K4_CONJECTURE),
            "label": "Turán's conjectured value",
        },
        "construction_density": {"value": format_fraction(TARGET_DENSITY), "label": "lower bound for K_5^3-"},
    }
    return VerificationReport(__version__, ctx.provenance(), constants, claims)

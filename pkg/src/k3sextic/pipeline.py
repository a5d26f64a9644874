"""Per-sextic verification reports and a reproducible search for new examples."""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .arith.fields import GF, QQ, ZZ
from .arith.unipoly import DEFAULT_SEED
from .groebner import DEFAULT_BUDGET, GroebnerInconclusive, strong_gb_Z
from .k3 import (
    BudgetExceeded,
    WeilData,
    branch_smoothness,
    irreducibility_sieve,
    lattice_discriminant,
    lefschetz_check,
    unity_root_part,
    weil_bound_ok,
)
from .mpoly import Ideal, MPoly, PolyRing
from .realcert import DEFAULT_EPS, DEFAULT_MAX_DEPTH, certify_negative
from .tritangent import RUN_VARIANTS, MethodInapplicable, candidate_primes, detect_tritangent, tritangent_ideal

log = logging.getLogger(__name__)

PASS, FAIL, INCONCLUSIVE, SKIPPED = "pass", "fail", "inconclusive", "skipped"
DEPTHS = ("fast", "full")
HYPOTHESES = (
    "real_empty",
    "branch_smooth_Q",
    "no_tritangent_char2",
    "no_tritangent_Qbar",
    "tritangent_primes",
    "weil_consistency",
    "unity_root_degree",
    "irreducibility_verdict",
    "lattice_discriminant",
)


@dataclass
class Entry:
    status: str
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"status": self.status, "evidence": self.evidence}


@dataclass
class SurfaceReport:
    sextic: str
    depth: str
    entries: dict[str, Entry]
    info: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    @property
    def overall(self) -> dict:
        failed = [k for k, e in self.entries.items() if e.status == FAIL]
        # a skipped entry is not a pass: it only disappears behind a failure
        pending = [k for k, e in self.entries.items() if e.status in (INCONCLUSIVE, SKIPPED)]
        if failed:
            return {"verdict": "failed", "hypotheses": failed}
        if pending:
            return {"verdict": "inconclusive", "hypotheses": pending}
        return {"verdict": "all_hypotheses_hold", "hypotheses": []}

    def to_json(self) -> dict:
        return {
            "sextic": self.sextic,
            "depth": self.depth,
            "overall": self.overall,
            "entries": {k: self.entries[k].to_json() for k in HYPOTHESES if k in self.entries},
            "info": self.info,
            "provenance": self.provenance,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, default=_json_default)

    def exit_code(self) -> int:
        verdict = self.overall["verdict"]
        return {"all_hypotheses_hold": 0, "failed": 1, "inconclusive": 2}[verdict]


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _check_input(f: MPoly):
    if f.ring.nvars != 3 or f.is_zero() or not f.is_homogeneous() or f.total_degree() != 6:
        raise ValueError("verify_sextic expects a nonzero homogeneous sextic in three variables")
    if any(Fraction(c).denominator != 1 for _, c in f.items()):
        raise ValueError("verify_sextic expects integer coefficients")


def _lines_evidence(result) -> list[dict]:
    return [line.to_json() for line in result.lines]


def _prime_entry(f: MPoly, p: int, bound: int) -> tuple[str, dict]:
    """Condition (c) at one prime: every tritangent line over F_q (q odd) is split."""
    res = detect_tritangent(f, p, bound=bound)
    ev = {"p": str(p), "lines": _lines_evidence(res), "beyond_bound": res.beyond_bound,
          "degenerate": res.degenerate}
    if res.degenerate:
        return FAIL, ev
    if any(line.split_type != "split" for line in res.lines):
        return FAIL, ev
    if res.beyond_bound:
        return INCONCLUSIVE, ev
    return PASS, ev


def verify_sextic(f: MPoly, depth: str = "fast", weil: WeilData | None = None, bound: int = 3,
                  eps: float = DEFAULT_EPS, max_depth: int = DEFAULT_MAX_DEPTH, budget: int = DEFAULT_BUDGET,
                  count_ext: int | None = None, exhaustive: bool = False, factor_hints=()) -> SurfaceReport:
    """Run the hypothesis checklist on f and assemble a SurfaceReport.

    Stages run cheapest first. After a failure the expensive Groebner stages
    are recorded as skipped (with the reason) unless ``exhaustive`` is set.
    ``factor_hints`` are known divisors used to split unresolved candidates.
    """
    if depth not in DEPTHS:
        raise ValueError(f"depth must be one of {DEPTHS}")
    _check_input(f)
    entries: dict[str, Entry] = {}
    info: dict = {}

    def failed_so_far():
        return [k for k, e in entries.items() if e.status == FAIL]

    def skip(name):
        entries[name] = Entry(SKIPPED, {"reason": f"earlier failure: {', '.join(failed_so_far())}"})

    # S(R) empty
    cert = certify_negative(f, eps=eps, max_depth=max_depth)
    status = {"certified_negative": PASS, "counterexample": FAIL}.get(cert.verdict, INCONCLUSIVE)
    entries["real_empty"] = Entry(status, cert.to_json())

    # smooth branch curve over Q
    smooth = branch_smoothness(f, QQ, budget=budget)
    status = {"smooth": PASS, "singular": FAIL}.get(smooth.status, INCONCLUSIVE)
    entries["branch_smooth_Q"] = Entry(status, smooth.to_json())

    # no tritangents over the closure of F_2
    try:
        res2 = detect_tritangent(f, 2, bound=bound, budget=budget)
        if res2.none_over_closure:
            status = PASS
        elif res2.lines or res2.degenerate:
            status = FAIL
        else:
            status = FAIL  # only lines of degree > bound, but they exist
        entries["no_tritangent_char2"] = Entry(status, res2.to_json())
    except GroebnerInconclusive as exc:
        entries["no_tritangent_char2"] = Entry(INCONCLUSIVE, {"error": str(exc)})
    except ValueError as exc:  # f vanishes mod 2
        entries["no_tritangent_char2"] = Entry(FAIL, {"error": str(exc)})

    # no tritangents over the closure of Q, and the candidate primes
    cands = None
    if failed_so_far() and not exhaustive:
        skip("no_tritangent_Qbar")
        skip("tritangent_primes")
    else:
        try:
            cands = candidate_primes(f, budget=budget)
            if factor_hints:
                cands = cands.refine(factor_hints)
            entries["no_tritangent_Qbar"] = Entry(PASS, {"method": "rational Groebner runs reach the unit ideal",
                                                         "runs": cands.runs})
        except MethodInapplicable as exc:
            entries["no_tritangent_Qbar"] = Entry(FAIL, {"error": str(exc)})
        except GroebnerInconclusive as exc:
            entries["no_tritangent_Qbar"] = Entry(INCONCLUSIVE, {"error": str(exc)})
        if cands is None:
            entries["tritangent_primes"] = Entry(SKIPPED, {"reason": "no candidate primes"})
        else:
            entries["tritangent_primes"] = _tritangent_primes_entry(f, cands, bound, budget)

    # Weil polynomial, Picard lattice
    if weil is None:
        reason = {"reason": "no Weil polynomial supplied"}
        for name in ("weil_consistency", "unity_root_degree", "irreducibility_verdict", "lattice_discriminant"):
            entries[name] = Entry(SKIPPED, dict(reason))
    else:
        K = count_ext if count_ext is not None else (1 if depth == "fast" else 2)
        try:
            checks = lefschetz_check(f, weil, K)
            ok = all(c.match for c in checks)
            bound_ok = all(weil_bound_ok(c.count, c.q) for c in checks)
            entries["weil_consistency"] = Entry(PASS if ok else FAIL,
                                                {"p": weil.p, "checks": [c.to_json() for c in checks],
                                                 "weil_bound": bound_ok})
        except BudgetExceeded as exc:
            entries["weil_consistency"] = Entry(INCONCLUSIVE, {"error": str(exc)})
        deg, part = unity_root_part(weil)
        entries["unity_root_degree"] = Entry(PASS if deg == 2 else FAIL,
                                             {"degree": deg, "factor": part.to_str(),
                                              "picard_rank_bound_over_closure": deg})
        cof = weil.poly() // part
        irr = irreducibility_sieve(cof)
        status = {"irreducible": PASS, "reducible": FAIL}.get(irr.status, INCONCLUSIVE)
        entries["irreducibility_verdict"] = Entry(status, dict(irr.to_json(), degree=cof.degree))
        entries["lattice_discriminant"] = _lattice_entry(f, weil, bound)

    if depth == "full":
        info["z_groebner_confirmation"] = _z_confirmation(f)
    provenance = {"factor_seed": DEFAULT_SEED, "groebner_budget": budget, "extension_bound": bound,
                  "realcert": {"eps": eps, "max_depth": max_depth},
                  "candidate_runs": {chart: [[",".join(order), strategy] for order, strategy in runs]
                                     for chart, runs in RUN_VARIANTS.items()},
                  "factor_hints": [str(h) for h in factor_hints],
                  "primality": "probable (Miller-Rabin, 40 rounds) above 10^6"}
    return SurfaceReport(f.to_str(), depth, entries, info, provenance)


def _tritangent_primes_entry(f: MPoly, cands, bound: int, budget: int) -> Entry:
    primes = [p for p in cands.small if p != 2] + list(cands.large)
    found, statuses = [], []
    for p in primes:
        try:
            status, ev = _prime_entry(f, p, bound)
        except GroebnerInconclusive as exc:
            status, ev = INCONCLUSIVE, {"p": str(p), "error": str(exc)}
        if ev.get("lines") or status != PASS:
            found.append(dict(ev, status=status))
        statuses.append(status)
    if cands.unresolved:
        statuses.append(INCONCLUSIVE)
    status = FAIL if FAIL in statuses else (INCONCLUSIVE if INCONCLUSIVE in statuses else PASS)
    evidence = {
        "candidates_checked": len(primes),
        "small_candidates": cands.small,
        "large_candidates": [str(n) for n in cands.large],
        "unresolved_composites": [str(n) for n in cands.unresolved],
        "primes_with_lines": found,
    }
    return Entry(status, evidence)


def _lattice_entry(f: MPoly, weil: WeilData, bound: int) -> Entry:
    res = detect_tritangent(f, weil.p, bound=1)
    split = [line for line in res.lines if line.split_type == "split"]
    if not split:
        return Entry(FAIL, {"reason": f"no split tritangent line over F_{weil.p}"})
    lat = lattice_discriminant()
    return Entry(PASS if lat.squarefree else FAIL, dict(lat.to_json(), line=split[0].equation()))


def _z_confirmation(f: MPoly, budget: int = 2000, max_bits: int = 4096, max_basis: int = 400) -> dict:
    """Strong Groebner basis over ZZ of the chart-A ideal (informational only)."""
    try:
        ideal = tritangent_ideal(f, "A", QQ)
        zring = PolyRing(ideal.ring.variables, ZZ, ideal.ring.order)
        gens = [g.change_ring(zring) for g in ideal.generators]
        basis = strong_gb_Z(Ideal(gens, zring), budget=budget, max_bits=max_bits, max_basis=max_basis)
        constants = [int(g.lc) for g in basis if g.is_constant()]
        return {"status": "complete", "constant": str(constants[0]) if constants else None,
                "basis_size": len(basis)}
    except GroebnerInconclusive as exc:
        return {"status": "inconclusive", "error": str(exc)}


# --- search -----------------------------------------------------------------------


MONOMIALS = tuple((i, j, 6 - i - j) for i in range(6, -1, -1) for j in range(6 - i, -1, -1))
STAGES = ("real_empty", "smooth_mod31", "no_tritangent_char2", "candidate_primes")


@dataclass
class SearchConfig:
    pool: tuple[int, ...] = (-1, 0, 1)
    weights: tuple[float, ...] | None = (6.0, 3.0, 1.0)
    terms: tuple[int, int] = (10, 18)
    seed: int = 0
    budget: int = 100
    stages: tuple[str, ...] = STAGES[:3]
    groebner_budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if not self.pool:
            raise ValueError("empty coefficient pool")
        if self.weights is not None and len(self.weights) != len(self.pool):
            self.weights = None
        lo, hi = self.terms
        if not 1 <= lo <= hi <= len(MONOMIALS):
            raise ValueError(f"term range must lie in 1..{len(MONOMIALS)}")
        unknown = [s for s in self.stages if s not in STAGES]
        if unknown:
            raise ValueError(f"unknown stages {unknown}")

    @classmethod
    def from_text(cls, text: str) -> "SearchConfig":
        """key=value lines: pool, weights, terms (lo-hi), seed, budget, stages, groebner_budget."""
        kw: dict = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"malformed config line {raw!r}")
            key, value = key.strip(), value.strip()
            if key == "pool":
                kw["pool"] = tuple(int(v) for v in value.split(","))
            elif key == "weights":
                kw["weights"] = tuple(float(v) for v in value.split(","))
            elif key == "terms":
                lo, _, hi = value.partition("-")
                kw["terms"] = (int(lo), int(hi or lo))
            elif key in ("seed", "budget", "groebner_budget"):
                kw[key] = int(value)
            elif key == "stages":
                kw["stages"] = tuple(v.strip() for v in value.split(",") if v.strip())
            else:
                raise ValueError(f"unknown config key {key!r}")
        return cls(**kw)


def random_sextic(rng: random.Random, config: SearchConfig, ring: PolyRing) -> MPoly | None:
    """A sextic with a random support size in the term range; None if it came out zero."""
    n = rng.randint(*config.terms)
    support = rng.sample(MONOMIALS, n)
    coeffs = rng.choices(config.pool, weights=config.weights, k=n)
    terms = [(m, c) for m, c in zip(support, coeffs) if c]
    if not terms:
        return None
    return ring.from_terms(terms)


def search_sextics(config: SearchConfig):
    """Yield (sextic, partial report) for candidates passing all configured stages.

    The final item is ``(None, stats)`` with per-stage pass counts.
    """
    rng = random.Random(config.seed)
    ring = PolyRing(("x", "y", "z"), ZZ)
    stats = {"generated": 0, "rejected_at_generation": 0}
    for s in config.stages:
        stats[s] = {"tested": 0, "passed": 0}
    for _ in range(config.budget):
        f = random_sextic(rng, config, ring)
        stats["generated"] += 1
        if f is None:
            stats["rejected_at_generation"] += 1
            continue
        report: dict = {}
        ok = True
        for stage in config.stages:
            stats[stage]["tested"] += 1
            ok, evidence = _run_stage(stage, f, config)
            report[stage] = evidence
            if not ok:
                break
            stats[stage]["passed"] += 1
        if ok:
            yield f, report
    yield None, stats


def _run_stage(stage: str, f: MPoly, config: SearchConfig):
    if stage == "real_empty":
        cert = certify_negative(f, max_depth=20)
        return cert.verdict == "certified_negative", cert.to_json()
    if stage == "smooth_mod31":
        v = branch_smoothness(f, GF(31), budget=config.groebner_budget)
        return v.smooth, v.to_json()
    if stage == "no_tritangent_char2":
        try:
            res = detect_tritangent(f, 2, budget=config.groebner_budget)
        except (ValueError, GroebnerInconclusive) as exc:
            return False, {"error": str(exc)}
        return res.none_over_closure, res.to_json()
    try:
        cands = candidate_primes(f, budget=config.groebner_budget)
    except (MethodInapplicable, GroebnerInconclusive) as exc:
        return False, {"error": str(exc)}
    return True, cands.to_json()

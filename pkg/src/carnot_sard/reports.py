"""Analysis reports as plain dicts with every rational serialized as "p/q".

Reports depend only on their inputs and the master seed, never on timing or
iteration order of unordered containers, so the JSON rendering (sorted keys)
is byte-identical across runs.
"""

from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction
from typing import Sequence

from . import __version__, endpoint, filiform, linalg, step2
from .endpoint import PiecewiseConstantControl
from .formats import GroupDefinition
from .membership import MembershipResult, RealRoot
from .multivec import Subspace, TwoVector, support
from .rational import derived_rng, format_rational, random_rational
from .sampling import random_durations, random_staircase

TOOL = "carnot-sard"


class VerdictDisagreement(RuntimeError):
    """The structural fast path and the general rank test disagree."""

    def __init__(self, report: dict):
        super().__init__("structural and general singularity verdicts disagree")
        self.report = report


def jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, TwoVector):
        return two_vector_terms(x)
    if isinstance(x, RealRoot):
        return x.describe()
    return x


def two_vector_terms(omega: TwoVector) -> list:
    """[[i, j, "c"], ...] with 1-based indices i < j."""
    return [[i + 1, j + 1, format_rational(c)] for (i, j), c in sorted(omega.terms().items())]


def _header(defn: GroupDefinition, seed: int, command: str) -> dict:
    alg = defn.algebra
    return {
        "tool": {"name": TOOL, "version": __version__},
        "seed": seed,
        "command": command,
        "group": {
            "name": defn.name,
            "presentation": defn.presentation,
            "dim_G": alg.dim,
            "layer_dims": [len(alg.layer_indices(k)) for k in range(1, alg.step + 1)],
            "step": alg.step,
        },
    }


# ---------------------------------------------------------------- coordinates

def to_quotient(defn: GroupDefinition, g: Sequence) -> tuple:
    """Source coordinates of a step-2 group to those of its quotient presentation."""
    q = defn.quotient
    if q.source_map is None:
        return tuple(g)
    x2 = linalg.solve_in_span(linalg.transpose(q.source_map), g[q.r:])
    return tuple(g[:q.r]) + tuple(x2)


def from_quotient(defn: GroupDefinition, g: Sequence) -> tuple:
    q = defn.quotient
    if q.source_map is None:
        return tuple(g)
    return tuple(g[:q.r]) + tuple(linalg.matvec(q.source_map, g[q.r:]))


# ---------------------------------------------------------------- analyze

def _step2_section(defn: GroupDefinition, budget: step2.SearchBudget) -> dict:
    q = defn.quotient
    out: dict = {"r": q.r, "n": q.n, "dim_Wperp2": q.d}
    if q.d == 0:
        out["note"] = "the second layer is zero"
        return out
    prof = step2.min_rank_ktilde(q, budget)
    bound = step2.codimension_bound(q, prof)
    out["ktilde"] = {
        "value": prof.ktilde,
        "lower": prof.lower,
        "certified": prof.certified,
        "method": prof.method,
        "witness": two_vector_terms(prof.witness) if prof.witness is not None else None,
        "pencil_point": prof.point.describe() if prof.point is not None else None,
    }
    out["codimension_bound"] = bound
    out["dimension_table"] = [
        {"k": rep.k, "m": rep.m, "dim_B": rep.dim_B, "stratum": rep.stratum, "total": rep.total}
        for rep in step2.ekw_table(q)
    ]
    desc = step2.abnormal_set_description(q)
    if desc is None:
        out["abnormal_set"] = None
        out["note"] = f"codimension of the abnormal set is at least {bound}"
        return out
    pieces = []
    for p in desc.pieces:
        basis = [from_quotient(defn, v) for v in p.basis] if p.basis is not None else None
        pieces.append({"label": p.label, "rank": p.rank, "dim": p.dim, "basis": basis})
    lo, hi = desc.codimension
    out["abnormal_set"] = {"pieces": pieces, "dimension": list(desc.dimension), "codimension": [lo, hi],
                           "exact": desc.exact}
    if desc.exact and all(p.dim == 0 for p in desc.pieces):
        out["note"] = f"Abn = {{0}}, codimension {lo} (bound {bound})"
    elif desc.exact:
        out["note"] = f"exact abnormal-set codimension {lo} (bound {bound})"
    else:
        out["note"] = f"abnormal-set codimension between {lo} and {hi} (bound {bound})"
    return out


def _filiform_section(defn: GroupDefinition) -> dict:
    spec = defn.filiform
    return {
        "family": spec.family,
        "step": spec.step,
        "abnormal_dimension": spec.abnormal_dimension,
        "abnormal_codimension": spec.abnormal_codimension,
        "abnormal_set": spec.abnormal_set_text(),
    }


def analyze(defn: GroupDefinition, seed: int = 0, budget: step2.SearchBudget | None = None) -> dict:
    rep = _header(defn, seed, "analyze")
    budget = budget or step2.SearchBudget(seed=seed)
    if defn.filiform is not None:
        rep["filiform"] = _filiform_section(defn)
    elif defn.quotient is not None:
        rep["step2"] = _step2_section(defn, budget)
    else:
        rep["note"] = "abnormal-set analysis covers step-2 and filiform presentations; use classify for controls"
    return jsonable(rep)


# ---------------------------------------------------------------- classify

def _membership(res: MembershipResult, r: int | None = None) -> dict:
    out = {"status": res.status, "certified": res.certified, "detail": res.detail}
    w = res.witness
    if isinstance(w, step2.AbnormalWitness):
        rational = all(isinstance(c, Fraction) for c in w.omega)
        out["witness_omega"] = two_vector_terms(TwoVector.from_coords(w.omega, r)) if rational else None
        if w.point is not None:
            out["pencil_point"] = w.point.describe()
    elif w is not None:
        out["witness"] = list(w)
    return out


def _control(u: PiecewiseConstantControl) -> list:
    return [{"duration": d, "value": list(v)} for d, v in u.segments]


def classify(defn: GroupDefinition, u: PiecewiseConstantControl, seed: int = 0,
             budget: step2.SearchBudget | None = None) -> dict:
    alg = defn.algebra
    if u.rank != alg.rank:
        raise ValueError(f"control has {u.rank} components but the group has rank {alg.rank}")
    rep = _header(defn, seed, "classify")
    rep["control"] = _control(u)
    general = endpoint.is_singular(u, alg)
    end = endpoint.flow_endpoint(u, alg)
    rep["endpoint"] = list(end)
    rep["general"] = {
        "singular": general.singular,
        "image_dimension": general.image.span.dim,
        "image_is_g1": general.image.span == Subspace(alg.dim, [alg.basis(i) for i in range(alg.rank)]),
        "witness_covector": list(general.witness) if general.witness else None,
    }
    fast = None
    if defn.filiform is not None:
        spec = defn.filiform
        if spec.family == "I":
            fast = filiform.classify_type1(u)
            rep["structural"] = {"method": "filiform type I: u_1 = 0", "singular": fast}
        else:
            fast, a = filiform.classify_type2(u)
            rep["structural"] = {"method": "filiform type II: staircase at a common height", "singular": fast,
                                 "a": a}
    elif defn.quotient is not None and defn.quotient.d:
        fast = step2.abnormality_criterion(u, defn.quotient)
        rep["structural"] = {"method": "step 2: [P_gamma, g_1] != g_2", "singular": fast}
    else:
        rep["structural"] = None
    rep["singular"] = general.singular
    if fast is not None and fast != general.singular:
        rep["agreement"] = False
        raise VerdictDisagreement(jsonable(rep))
    rep["agreement"] = True if fast is not None else None
    if general.singular:
        rep["endpoint_membership"] = _endpoint_membership(defn, u, end, budget or step2.SearchBudget(seed=seed))
    return jsonable(rep)


def _endpoint_membership(defn: GroupDefinition, u: PiecewiseConstantControl, end: tuple,
                         budget: step2.SearchBudget) -> dict | None:
    spec = defn.filiform
    if spec is not None and spec.family == "I":
        ok = filiform.abnormal_membership_type1(end)
        return {"status": "witness" if ok else "certified-none", "certified": True,
                "detail": "horizontal line exp(t X2)"}
    if spec is not None:
        cert = filiform.certificate_covector(u, spec)
        out = _membership(filiform.abnormal_membership_type2(end))
        out["certificate_covector"] = list(cert.lam)
        return out
    if defn.quotient is not None:
        q = defn.quotient
        return _membership(step2.abnormal_membership(to_quotient(defn, end), q, budget), q.r)
    return None


# ---------------------------------------------------------------- sample

def _sample_step2(defn: GroupDefinition, count: int, seed: int, height: int) -> dict:
    q = defn.quotient
    samples = step2.sample_abnormal_points(q, count, seed=seed, height=height)
    points, supports, ranks = [], set(), Counter()
    for s in samples:
        _require_verified(step2.verify_abnormal_witness(s.point, q, s.omega.coords()) is not None, s.point)
        points.append({"point": from_quotient(defn, s.point), "omega": s.omega, "rank": s.rank})
        supports.add(support(s.omega).basis)
        ranks[s.rank] += 1
    span = Subspace(q.dim, [from_quotient(defn, s.point) for s in samples])
    return {
        "samples": points,
        "summary": {
            "count": len(samples),
            "distinct_supports": len(supports),
            "rank_histogram": {str(k): ranks[k] for k in sorted(ranks)},
            "span_dimension": span.dim,
            "span_basis": [list(v) for v in span.basis],
            "all_zero": not any(any(s.point) for s in samples),
        },
    }


def _require_verified(ok: bool, point) -> None:
    if not ok:
        raise AssertionError(f"sampled point {point} failed witness verification")


def _singular_filiform_control(rng: random.Random, spec) -> PiecewiseConstantControl:
    if spec.family == "II" and rng.random() < 0.75:
        return random_staircase(rng)
    m = rng.randint(1, 5)
    return PiecewiseConstantControl([(d, (0, random_rational(rng))) for d in random_durations(rng, m)])


def _sample_filiform(defn: GroupDefinition, count: int, seed: int) -> dict:
    spec = defn.filiform
    alg = defn.algebra
    out, passed = [], 0
    for i in range(count):
        u = _singular_filiform_control(derived_rng(seed, i), spec)
        end = endpoint.flow_endpoint(u, alg)
        entry: dict = {"endpoint": end, "control": _control(u)}
        if spec.family == "I":
            ok = filiform.abnormal_membership_type1(end)
            entry["certificate_covector"] = endpoint.is_singular(u, alg).witness
        else:
            ok = filiform.abnormal_membership_type2(end).member is True
            entry["certificate_covector"] = filiform.certificate_covector(u, spec).lam
        entry["membership"] = ok
        passed += ok
        out.append(entry)
    return {"samples": out, "summary": {"count": count, "membership_passed": passed,
                                        "abnormal_set": spec.abnormal_set_text()}}


def sample(defn: GroupDefinition, count: int, seed: int = 0, height: int = 10) -> dict:
    rep = _header(defn, seed, "sample")
    if defn.filiform is not None:
        rep.update(_sample_filiform(defn, count, seed))
    elif defn.quotient is not None and defn.quotient.d:
        rep.update(_sample_step2(defn, count, seed, height))
    else:
        raise ValueError("sampling needs a step-2 or filiform presentation")
    return jsonable(rep)

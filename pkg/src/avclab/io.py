"""JSON documents for bodies, datasets, hypotheses, relations and results.

Every rational is written as a ``"num/den"`` string so documents round-trip
bit-exactly. Readers also accept plain integers and decimal strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .aerm import ErmResult
from .corruption import TabularRelation
from .errors import PreconditionError
from .exact import fmt, rational, vector
from .geometry import INF, ConstraintSet
from .hypotheses import Halfspace, LabeledDataset
from .shattering import NullspaceCertificate, FeasibilityCertificate


def _vec(v) -> list[str]:
    return [fmt(c) for c in v]


def _p_out(p):
    return "inf" if p == INF else int(p)


# constraint sets


def body_to_json(B: ConstraintSet) -> dict:
    body: dict = {"kind": B.kind}
    if B.kind == "lp":
        body.update(p=_p_out(B.p), eps=fmt(B.eps))
    elif B.kind == "polytope":
        body["vertices"] = [_vec(v) for v in B.vertex_list]
    return {"dim": B.dimension, "body": body, "lineality": [_vec(u) for u in B.lineality_basis]}


def body_from_json(doc: dict) -> ConstraintSet:
    try:
        d = int(doc["dim"])
        body = doc["body"]
        kind = body["kind"]
    except (KeyError, TypeError) as e:
        raise PreconditionError(f"constraint-set document is missing {e}") from None
    lin = [vector(u) for u in doc.get("lineality", [])]
    if kind == "lp":
        return ConstraintSet.lp_ball(d, body["p"], body["eps"], lin)
    if kind == "polytope":
        B = ConstraintSet.polytope(body["vertices"], lin)
        if B.dimension != d:
            raise PreconditionError("polytope vertices disagree with dim")
        return B
    if kind == "identity":
        return ConstraintSet.identity(d, lin)
    raise PreconditionError(f"unknown body kind {kind!r}")


# datasets and hypotheses


def dataset_to_json(data: LabeledDataset) -> dict:
    return {"points": [_vec(x) for x in data.points], "labels": list(data.labels)}


def dataset_from_json(doc: dict) -> LabeledDataset:
    try:
        return LabeledDataset(tuple(vector(x) for x in doc["points"]), tuple(int(c) for c in doc["labels"]))
    except KeyError as e:
        raise PreconditionError(f"dataset document is missing {e}") from None


def halfspace_to_json(h: Halfspace) -> dict:
    return {"a": _vec(h.a), "b": fmt(h.b)}


def halfspace_from_json(doc: dict) -> Halfspace:
    try:
        return Halfspace(vector(doc["a"]), rational(doc.get("b", 0)))
    except KeyError as e:
        raise PreconditionError(f"halfspace document is missing {e}") from None


# relations


def _point_out(p):
    if isinstance(p, tuple):
        return _vec(p)
    return p


def _point_in(p):
    if isinstance(p, list):
        return vector(p)
    return p


def relation_to_json(R: TabularRelation) -> dict:
    """Points are listed once; neighbourhoods refer to them by index."""
    pts = sorted(R.support(), key=repr)
    index = {p: i for i, p in enumerate(pts)}
    nb = {str(index[x]): sorted(index[y] for y in ys) for x, ys in R.neighbors.items()}
    return {"points": [_point_out(p) for p in pts], "neighbors": nb}


def relation_from_json(doc: dict) -> TabularRelation:
    pts = [_point_in(p) for p in doc["points"]]
    try:
        return TabularRelation({pts[int(i)]: frozenset(pts[j] for j in js) for i, js in doc["neighbors"].items()})
    except (IndexError, ValueError) as e:
        raise PreconditionError(f"relation document has a bad index: {e}") from None


# results


def appendix_to_json(cert: NullspaceCertificate) -> dict:
    return {
        "a": _vec(cert.coefficients),
        "J": list(cert.J),
        "K": list(cert.K),
        "eta": list(cert.eta),
        "alphas": {k: fmt(v) for k, v in sorted(cert.alphas.items())},
        "flipped": cert.flipped,
    }


def certificate_to_json(cert: FeasibilityCertificate) -> dict:
    out: dict = {"status": cert.status, "pattern": list(cert.pattern)}
    if cert.witness is not None:
        w = halfspace_to_json(cert.witness)
        w["vertex"] = None if cert.vertex is None else _vec(cert.vertex)
        w["family"] = cert.family
        w["slack"] = None if cert.slack is None else fmt(cert.slack)
        out["witness"] = w
    if cert.appendix is not None:
        out["appendix_cert"] = appendix_to_json(cert.appendix)
    out["lps_solved"] = cert.lps_solved
    return out


def erm_to_json(res: ErmResult) -> dict:
    h = res.hypothesis
    out: dict = {"status": "feasible", "risk": fmt(res.risk), "pattern": list(res.pattern)}
    if isinstance(h, Halfspace):
        out["witness"] = halfspace_to_json(h)
    else:
        out["witness"] = {"name": _point_out(h), "index": res.index}
    s = res.stats
    out["stats"] = {"patterns_tested": s.patterns_tested, "lps_solved": s.lps_solved, "cores": s.cores, "pruned": s.pruned}
    return out


def risk_from_json(doc: dict) -> Fraction:
    return rational(doc["risk"])


# files


def load(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise PreconditionError(f"{path}: not valid JSON ({e})") from None


def dump(doc, path=None, pretty: bool = False) -> str:
    text = json.dumps(doc, indent=2 if pretty else None, sort_keys=True)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text

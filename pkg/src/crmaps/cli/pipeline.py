"""Verification pipeline behind the command line."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Sequence

from ..ahlfors import ahlfors_explicit_hyperquadric, ahlfors_via_logQ, rank_report
from ..errors import CRMapsError
from ..hypersurface import Kind
from ..kahler import isometry_check
from ..maps import HoloMap, Side, check_maps_into, transversal_at
from .mapfile import MapDefinition

STAGES = ("check", "ahlfors", "rank", "isometry")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class Report:
    name: str
    data: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)
    quotient: Any = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.passed else EXIT_FAIL

    def to_json(self, *, timing: bool = True) -> str:
        doc = {"name": self.name, **self.data, "failures": list(self.failures), "passed": self.passed}
        if timing:
            doc["timing_seconds"] = {k: round(v, 4) for k, v in self.timing.items()}
        return json.dumps(doc, indent=2, sort_keys=True)

    def summary(self) -> str:
        d = self.data
        lines = [f"map {self.name}: {d.get('source')} -> {d.get('target')} ({d.get('mode')})"]
        if "maps_into" in d:
            lines.append(f"  maps into target: {d['maps_into']}   side: {d.get('side')}   Q = {d.get('Q')}")
        if "ahlfors" in d:
            a = d["ahlfors"]
            lines.append(f"  Ahlfors ({a['method']}): {a['entries']}")
            if "methods_agree" in a:
                lines.append(f"  explicit formula agrees: {a['methods_agree']}")
        if "rank" in d:
            lines.append(f"  generic rank: {d['rank']['generic']}   at points: {d['rank']['at_points']}")
        if "isometry" in d:
            lines.append(f"  isometric extension: {d['isometry']}")
        for f in self.failures:
            lines.append(f"  FAIL {f}")
        lines.append("  PASS" if self.passed else "  FAILED")
        return "\n".join(lines)


def _point_label(p) -> str:
    return "(" + ", ".join(_s(c) for c in p.coords) + ")"


def _s(x) -> str:
    from ..algebra.scalars import fmt_scalar

    return fmt_scalar(x)


def run_pipeline(defn: MapDefinition, stages: Sequence[str] = STAGES, *, points: Sequence[dict] = (),
                 order: int | None = None) -> Report:
    """Run the requested stages; stage errors are recorded as failures named after the stage."""
    rep = Report(defn.name)
    unknown = set(stages) - set(STAGES)
    if unknown:
        raise ValueError(f"unknown stages {sorted(unknown)}")
    t0 = time.perf_counter()
    H: HoloMap = defn.build(order)
    rep.timing["build"] = time.perf_counter() - t0
    S = H.source
    rep.data.update({"source": S.label(), "target": H.target.label(), "mode": H.mode,
                     "components": [str(c) for c in H.components]})
    if H.is_series:
        rep.data["order"] = H.order
    sample = [S.lift_point(p["coords"], p["t"]) for p in points]

    def stage(name, fn):
        t = time.perf_counter()
        try:
            return fn()
        except CRMapsError as e:
            rep.failures.append(f"{name}: {type(e).__name__}: {e}")
            return None
        finally:
            rep.timing[name] = time.perf_counter() - t

    # the quotient is needed by every later stage
    res = stage("check", lambda: check_maps_into(H, strict=False))
    if res is None:
        return rep
    rep.data["maps_into"] = res.maps_into
    rep.data["side"] = res.side.value
    rep.data["Q"] = str(res.Q)
    rep.quotient = res.Q if not H.is_series else None
    if not res.maps_into:
        rep.failures.append("check: the map does not satisfy the mapping equation")
        return _expectations(defn, rep)
    if res.side is Side.DEGENERATE:
        rep.data["transversal"] = "nowhere"
        rep.failures.append("check: Q vanishes identically (nowhere transversal)")
        return _expectations(defn, rep)
    trans = {_point_label(p): transversal_at(H, p, res) for p in sample}
    rep.data["transversal"] = {"base_point": res.side in (Side.PRESERVING, Side.REVERSING), "at_points": trans}

    A = None
    if "ahlfors" in stages or "rank" in stages:
        A = stage("ahlfors", lambda: ahlfors_via_logQ(H, res))
        if A is not None:
            entry = {"method": A.method, "entries": [[str(x) for x in row] for row in A.entries],
                     "vanishes": A.vanishes()}
            if A.is_series:
                entry["valid_order"] = A.valid_order
            if H.target.kind is Kind.HYPERQUADRIC and not H.is_series:
                B = stage("ahlfors", lambda: ahlfors_explicit_hyperquadric(H, res))
                if B is not None:
                    entry["methods_agree"] = A.equals(B)
                    if not entry["methods_agree"]:
                        rep.failures.append("ahlfors: explicit formula disagrees with the log Q route")
            rep.data["ahlfors"] = entry
    if "rank" in stages and A is not None:
        rr = stage("rank", lambda: rank_report(A, [p for p in sample if trans.get(_point_label(p))]))
        if rr is not None:
            rep.data["rank"] = {"generic": rr.generic_rank,
                                "at_points": {_point_label(p): r for p, r in rr.rank_at.items()}}
    if "isometry" in stages and not H.is_series:
        iso = stage("isometry", lambda: isometry_check(H, res))
        if iso is not None:
            rep.data["isometry"] = iso
    return _expectations(defn, rep)


def _expectations(defn: MapDefinition, rep: Report) -> Report:
    """Compare against the optional ``[expect]`` table of the definition."""
    d = rep.data
    actual = {
        "maps_into": d.get("maps_into"),
        "side": d.get("side"),
        "degenerate": d.get("side") == Side.DEGENERATE.value if "side" in d else None,
        "Q": d.get("Q"),
        "rank": d.get("rank", {}).get("generic"),
        "isometry": d.get("isometry"),
        "ahlfors_vanishes": d.get("ahlfors", {}).get("vanishes"),
    }
    checked = {}
    for key, want in defn.expect:
        got = actual.get(key)
        if got is None:
            continue
        if key == "Q" and rep.quotient is not None:
            # compare as functions, not as strings
            from ..expr import parse_function

            got = rep.quotient
            want_fn = parse_function(str(want), got.space)
            checked[key] = got == want_fn
            if not checked[key]:
                rep.failures.append(f"expect: Q = {want}, got {got}")
            continue
        checked[key] = got == want
        if got != want:
            rep.failures.append(f"expect: {key} = {want!r}, got {got!r}")
    if checked:
        d["expectations"] = checked
    return rep


__all__ = ["EXIT_FAIL", "EXIT_INPUT", "EXIT_OK", "Report", "STAGES", "run_pipeline"]

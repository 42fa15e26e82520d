#!/usr/bin/env python3
"""Recompute the headline quantities and run every bundled map definition.

    python3 scripts/reproduce.py [--json out.json] [--series-order 10]
"""
from __future__ import annotations

import argparse
import json
import random
import time
from dataclasses import asdict, dataclass, field

from crmaps.ahlfors import ahlfors_via_logQ, rank_report
from crmaps.algebra.rational import RationalFn
from crmaps.automorphisms import homothety_check, wink_H, wink_R, wink_S
from crmaps.cli.mapfile import bundled_files, load_mapfile
from crmaps.cli.pipeline import run_pipeline
from crmaps.errors import CRMapsError
from crmaps.hypersurface import hyperquadric, winkelmann
from crmaps.kahler import einstein_constant, metric_matrix
from crmaps.library import map_I, map_R_eps
from crmaps.maps import check_maps_into
from crmaps.mobius import CandidateU, ModelCRStructure, mobius_report


@dataclass
class ReproduceConfig:
    eps_values: tuple[str, ...] = ("0", "1/2", "1", "-1", "2")
    einstein_dims: tuple[int, ...] = (1, 2)
    mobius_dims: tuple[int, ...] = (1, 2)
    mobius_samples: int = 25
    series_order: int = 10
    seed: int = 0
    json_path: str | None = None


@dataclass
class Results:
    ahlfors_R_eps: dict = field(default_factory=dict)
    einstein: dict = field(default_factory=dict)
    mobius: dict = field(default_factory=dict)
    automorphisms: dict = field(default_factory=dict)
    series_I: dict = field(default_factory=dict)
    bundled: dict = field(default_factory=dict)
    seconds: float = 0.0


def ahlfors_table(cfg: ReproduceConfig) -> dict:
    out = {}
    for e in cfg.eps_values:
        H = map_R_eps(e)
        A = ahlfors_via_logQ(H)
        Q = H.source.restrict(check_maps_into(H).Q)
        ratio = A[0, 0] * Q * Q
        out[e] = {"entry": str(A[0, 0]), "entry_times_Q2": str(ratio), "rank": rank_report(A).generic_rank}
    return out


def einstein_table(cfg: ReproduceConfig) -> dict:
    out = {}
    for n in cfg.einstein_dims:
        for S in (hyperquadric(n), winkelmann(n)):
            c = einstein_constant(metric_matrix(S))
            out[S.label()] = {"ambient_dim": S.ambient_dim, "einstein_constant": str(c)}
    return out


def mobius_table(cfg: ReproduceConfig) -> dict:
    rng = random.Random(cfg.seed)
    out = {}
    for n in cfg.mobius_dims:
        model = ModelCRStructure(winkelmann(n))
        passed = with_w = 0
        for _ in range(cfg.mobius_samples):
            c = CandidateU.random(n, rng)
            passed += mobius_report(model, c).ok
            with_w += bool(c.cw)
        leftover = mobius_report(model, CandidateU(0, (0,) * n, 1)).failing
        out[f"n={n}"] = {"christoffel_agrees": model.christoffel_agrees(), "passed": passed,
                         "samples": cfg.mobius_samples, "samples_with_w": with_w,
                         "hessian_of_w": [list(x) for x in leftover]}
    return out


def automorphism_table() -> dict:
    W, W2 = winkelmann(3, 1), winkelmann(3, 2)
    specs = {"WinkH(lam=3/2)": wink_H(W, "3/2"), "WinkS": wink_S(W, [1, 0], "1/2"),
             "WinkR(sigma=+1)": wink_R(W, [[0, 1], [1, 0]]), "WinkR(sigma=-1)": wink_R(W2, [[0, 1], [1, 0]])}
    out = {}
    for name, spec in specs.items():
        try:
            out[name] = str(homothety_check(spec))
        except CRMapsError as e:
            out[name] = f"{type(e).__name__}: {e}"
    return out


def series_table(cfg: ReproduceConfig) -> dict:
    H = map_I(1, 0, cfg.series_order)
    res = check_maps_into(H)
    A = ahlfors_via_logQ(H, res)
    return {"order": cfg.series_order, "remainder_zero": res.remainder.is_zero, "ahlfors_vanishes": A.vanishes(),
            "valid_order": A.valid_order}


def run(cfg: ReproduceConfig) -> Results:
    t0 = time.perf_counter()
    r = Results()
    r.ahlfors_R_eps = ahlfors_table(cfg)
    r.einstein = einstein_table(cfg)
    r.mobius = mobius_table(cfg)
    r.automorphisms = automorphism_table()
    r.series_I = series_table(cfg)
    for f in bundled_files():
        rep = run_pipeline(load_mapfile(f))
        r.bundled[f.stem] = {"passed": rep.passed, "Q": rep.data.get("Q"),
                             "rank": rep.data.get("rank", {}).get("generic"),
                             "isometry": rep.data.get("isometry"), "failures": rep.failures}
    r.seconds = round(time.perf_counter() - t0, 2)
    return r


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", dest="json_path")
    ap.add_argument("--series-order", type=int, default=ReproduceConfig.series_order)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    cfg = ReproduceConfig(series_order=args.series_order, seed=args.seed, json_path=args.json_path)
    res = run(cfg)
    print("R_eps Ahlfors entry (times Q^2) and rank:")
    for e, row in res.ahlfors_R_eps.items():
        print(f"  eps={e:>4}: {row['entry_times_Q2']:>8}   rank {row['rank']}")
    print("Einstein constants of -ddbar log rho:")
    for k, v in res.einstein.items():
        print(f"  {k}: {v['einstein_constant']}  (ambient dim {v['ambient_dim']})")
    print("Moebius candidates:")
    for k, v in res.mobius.items():
        print(f"  {k}: {v['passed']}/{v['samples']} pass ({v['samples_with_w']} with a w term); "
              f"Hessian of w: {v['hessian_of_w']}")
    print("Automorphism constants:")
    for k, v in res.automorphisms.items():
        print(f"  {k}: {v}")
    print(f"Series map I: {res.series_I}")
    print("Bundled definitions:")
    for k, v in res.bundled.items():
        print(f"  {'ok ' if v['passed'] else 'FAIL'} {k}: Q = {v['Q']}, rank {v['rank']}, isometry {v['isometry']}")
    print(f"total {res.seconds}s")
    if cfg.json_path:
        with open(cfg.json_path, "w") as fh:
            json.dump({"config": asdict(cfg), "results": asdict(res)}, fh, indent=2, sort_keys=True)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

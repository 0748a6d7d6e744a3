"""Minimal hyperbolic norm of theta-products on A_m and of the critical-weight kappa forms."""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from thetajac import forms
from thetajac.series import classify, ord_


@dataclass
class Config:
    prec: int = 120
    a_ranks: list[int] = field(default_factory=lambda: [1, 2, 3, 4, 5, 6])
    include_kappa: bool = True


def run(cfg: Config) -> list[dict]:
    rows = []
    for m in cfg.a_ranks:
        phi = forms.thetaA(m, cfg.prec)
        rows.append({"form": f"thetaA({m})", "ord": str(ord_(phi).value), "class": classify(phi).value,
                     "predicted": str(Fraction(1, 4 * (m + 1))) if m % 2 == 0 else None})
    if cfg.include_kappa:
        for name, want in (("kappa2A4", Fraction(1, 60)), ("kappaA4A6", Fraction(1, 420))):
            phi = forms.build(name, (), cfg.prec)
            rows.append({"form": name, "ord": str(ord_(phi).value), "class": classify(phi).value, "predicted": str(want)})
    return rows


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--prec", type=int, default=Config.prec)
    p.add_argument("--no-kappa", action="store_true")
    a = p.parse_args(argv)
    cfg = Config(prec=a.prec, include_kappa=not a.no_kappa)
    t0 = time.perf_counter()
    rows = run(cfg)
    print(json.dumps({"config": asdict(cfg), "rows": rows, "seconds": round(time.perf_counter() - t0, 2)}, indent=1))


if __name__ == "__main__":
    main()

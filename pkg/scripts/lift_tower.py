"""Additive-lift coefficient tables for the tower inputs, with symmetry checks."""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass, field

from thetajac.formlang import eval_form
from thetajac.hecke import conductor, lift_table


@dataclass
class Config:
    inputs: list[str] = field(default_factory=lambda: ["theta*eta^9", "k4in", "tower3in", "phi2in", "delta1in", "nabla3in"])
    bound: int = 12
    mu: int = 1


def run(cfg: Config) -> list[dict]:
    out = []
    for expr in cfg.inputs:
        De, _ = conductor(eval_form(expr, 0).shape.D)
        phi = eval_form(expr, cfg.bound * De)
        table = lift_table(phi, cfg.mu, cfg.bound)
        ok, witness = table.symmetric()
        out.append({"input": expr, "Q": table.Q, "entries": len(table.entries), "symmetric": ok,
                    "witness": list(map(str, witness)) if witness else None})
    return out


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--bound", type=int, default=Config.bound)
    a = p.parse_args(argv)
    cfg = Config(bound=a.bound)
    print(json.dumps({"config": asdict(cfg), "results": run(cfg)}, indent=1))


if __name__ == "__main__":
    main()

"""Joint eigenspaces of the Weil representation over a family of root lattices."""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass, field

from thetajac.lattice import build_root
from thetajac.weil import joint_eigenvectors, weil_matrices


@dataclass
class Config:
    d_ranks: list[int] = field(default_factory=lambda: list(range(1, 17)))
    others: list[tuple[str, int]] = field(default_factory=lambda: [("A", 1), ("A", 2), ("E", 6), ("E", 7), ("E", 8)])


def scan(cfg: Config) -> list[dict]:
    out = []
    for kind, m in [("D", m) for m in cfg.d_ranks] + list(cfg.others):
        W = weil_matrices(build_root(kind, m))
        spaces = joint_eigenvectors(W)
        out.append({
            "lattice": f"{kind}{m}",
            "order": W.order,
            "spaces": [{"lambda_T": f"{s.lambda_T}/{s.M}", "lambda_S": f"{s.lambda_S}/{s.M}", "dim": s.dim} for s in spaces],
        })
    return out


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-d", type=int, default=16)
    a = p.parse_args(argv)
    cfg = Config(d_ranks=list(range(1, a.max_d + 1)))
    print(json.dumps({"config": asdict(cfg), "results": scan(cfg)}, indent=1))


if __name__ == "__main__":
    main()

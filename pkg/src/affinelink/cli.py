"""Command-line front end.

Exit codes: 0 success (found / linked / agreement), 1 verify-kk or selftest
disagreement, 2 usage error (bad input, critical level), 3 nothing found
within the search bounds.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Optional, Sequence

from . import charge, linkage
from .level import CriticalLevelError, Level
from .rootsys import RootSystem, RootSystemError, Weight, root_system

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_NOT_FOUND = 3

RELATIONS = ("linked", "coarse", "rational")

# options whose value may legitimately start with "-"
_VALUE_FLAGS = ("--from", "--to", "--weight", "--hw", "--weights", "--level")
_NEGATIVE_VALUE = re.compile(r"^-[0-9./,; ]")


class UsageError(ValueError):
    pass


@dataclass
class JobConfig:
    """A fully parsed command invocation; round-trips through :meth:`to_dict`."""
    command: str
    root_system: str
    level: str = "generic"
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        for key in ("max_chain", "depth", "height"):
            v = self.params.get(key)
            if v is not None and v < 0:
                raise UsageError(f"{key} must be nonnegative")
        v = self.params.get("max_m")
        if v is not None and v < 0:
            raise UsageError("max_m must be nonnegative")
        v = self.params.get("box")
        if v is not None and Fraction(v) < 0:
            raise UsageError("box must be nonnegative")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "JobConfig":
        return cls(data["command"], data["root_system"], data.get("level", "generic"),
                   dict(data.get("params", {})))

    def rs(self) -> RootSystem:
        return root_system(self.root_system)

    def parsed_level(self) -> Level:
        return Level.parse(self.level)

    def weight(self, key: str) -> Weight:
        text = self.params.get(key)
        if text is None:
            raise UsageError(f"--{key.replace('_', '-')} is required")
        return Weight.parse(text)

    def query(self, rs: RootSystem, level: Level) -> linkage.BlockQuery:
        p = self.params
        box = p.get("box")
        return linkage.BlockQuery(
            rs, level,
            max_chain_len=p.get("max_chain", 4),
            max_m=p.get("max_m", 2),
            weight_box=None if box is None else Fraction(box),
            max_depth=p.get("depth"),
            allow_empty=p.get("allow_empty", False),
            convention=p.get("convention", "affine"),
        )


# -- output ------------------------------------------------------------------------------

def _header(cfg: JobConfig, with_level: bool = True) -> dict:
    out = {"command": cfg.command, "rs": cfg.rs().code}
    if with_level:
        out["level"] = cfg.parsed_level().to_json()
    return out


def _emit(payload: dict, text: str, cfg: JobConfig, as_json: bool) -> None:
    out = cfg.params.get("out")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, ensure_ascii=False)
            fh.write("\n")
    if as_json:
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def _w(w: Weight) -> str:
    return str(w)


# -- commands --------------------------------------------------------------------------

def cmd_check_star(cfg: JobConfig, as_json: bool = False) -> int:
    rs, level = cfg.rs(), cfg.parsed_level()
    lam, mu = cfg.weight("from"), cfg.weight("to")
    q = cfg.query(rs, level)
    chain = linkage.satisfies_star(rs, level, lam, mu, q)
    payload = {**_header(cfg), "found": chain is not None,
               "chain": None if chain is None else chain.to_json(),
               "bounds": {"max_chain": q.max_chain_len, "max_m": q.max_m,
                          "box": None if q.weight_box is None else str(q.weight_box)}}
    if chain is None:
        text = "no chain within bounds"
    else:
        lines = [f"chain of length {len(chain)} from {_w(lam)} to {_w(mu)}:"]
        for s in chain.steps:
            lines.append(f"  beta={_w(s.beta)} m={s.m} n={s.n} -> {_w(s.end)}")
        text = "\n".join(lines)
    _emit(payload, text, cfg, as_json)
    return EXIT_OK if chain is not None else EXIT_NOT_FOUND


def cmd_linked(cfg: JobConfig, as_json: bool = False) -> int:
    rs, level = cfg.rs(), cfg.parsed_level()
    lam, mu = cfg.weight("from"), cfg.weight("to")
    res = linkage.linked(rs, level, lam, mu, cfg.query(rs, level))
    payload = {**_header(cfg), "linked": res.linked,
               "trail": [m.to_json() for m in res.trail], "exhausted": res.exhausted}
    if res.linked:
        text = "linked:\n" + "\n".join(f"  {m.kind}: {_w(m.start)} -> {_w(m.end)}"
                                       for m in res.trail) if res.trail else "linked (equal)"
    else:
        text = "not linked within bounds" + (" (search exhausted)" if res.exhausted else "")
    _emit(payload, text, cfg, as_json)
    return EXIT_OK if res.linked else EXIT_NOT_FOUND


def cmd_linkage_class(cfg: JobConfig, as_json: bool = False) -> int:
    rs, level = cfg.rs(), cfg.parsed_level()
    lam = cfg.weight("weight")
    cls = linkage.linkage_class(rs, level, lam, cfg.query(rs, level))
    members = cls.sorted()
    payload = {**_header(cfg), "members": [w.to_json() for w in members],
               "truncated": cls.truncated, "clipped": cls.clipped}
    text = "{" + ", ".join(_w(w) for w in members) + "}"
    if cls.truncated:
        text += "  (truncated)"
    _emit(payload, text, cfg, as_json)
    return EXIT_OK


def _box_weights(rs: RootSystem, box) -> list[Weight]:
    n = int(Fraction(box))
    return [Weight(c) for c in product(range(-n, n + 1), repeat=rs.rank)]


def _partition(items: list[Weight], same: Callable[[Weight, Weight], bool]) -> list[list[Weight]]:
    parent = list(range(len(items)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if find(i) != find(j) and same(items[i], items[j]):
                parent[find(j)] = find(i)
    groups: dict[int, list[Weight]] = {}
    for i, w in enumerate(items):
        groups.setdefault(find(i), []).append(w)
    blocks = [sorted(g) for g in groups.values()]
    blocks.sort(key=lambda b: b[0])
    return blocks


def cmd_blocks(cfg: JobConfig, as_json: bool = False) -> int:
    rs, level = cfg.rs(), cfg.parsed_level()
    relation = cfg.params.get("relation", "rational")
    if relation not in RELATIONS:
        raise UsageError(f"unknown relation {relation!r}")
    if cfg.params.get("weights"):
        items = sorted({Weight.parse(t) for t in cfg.params["weights"].split(";") if t.strip()})
    elif cfg.params.get("box") is not None:
        items = _box_weights(rs, cfg.params["box"])
    else:
        raise UsageError("blocks needs --weights or --box")
    rs._check(*items)
    if relation == "rational":
        if level.is_generic:
            raise UsageError("the rational relation needs a rational level p/q")
        if not all(w.is_integral() for w in items):
            raise UsageError("the rational relation is defined for integral weights only")
        p, q = level.value.numerator, level.value.denominator

        def same(a, b):
            return linkage.rational_block_equal(rs, p, q, a, b)
    elif relation == "coarse":
        scale = Fraction(cfg.params.get("scale", 1))

        def same(a, b):
            return linkage.coarse_block_equal(rs, a, b, scale)
    else:
        query = cfg.query(rs, level)

        def same(a, b):
            return linkage.linked(rs, level, a, b, query).linked
    blocks = _partition(items, same)
    payload = {**_header(cfg), "relation": relation,
               "blocks": [{"representative": b[0].to_json(), "members": [w.to_json() for w in b]}
                          for b in blocks]}
    text = "\n".join("{" + ", ".join(_w(w) for w in b) + "}" for b in blocks)
    _emit(payload, text, cfg, as_json)
    return EXIT_OK


def cmd_subquotients(cfg: JobConfig, as_json: bool = False) -> int:
    rs, level = cfg.rs(), cfg.parsed_level()
    lam = cfg.weight("weight")
    cands = linkage.subquotient_candidates(rs, level, lam, cfg.query(rs, level))
    payload = {**_header(cfg), "weight": lam.to_json(),
               "candidates": [{"weight": c.weight.to_json(), "depth": c.depth,
                               "chain": c.chain.to_json()} for c in cands]}
    text = "\n".join(f"{_w(c.weight)}  depth {c.depth}  chain length {len(c.chain)}"
                     for c in cands) or "no candidates within bounds"
    _emit(payload, text, cfg, as_json)
    return EXIT_OK


def cmd_phi(cfg: JobConfig, as_json: bool = False) -> int:
    rs, level = cfg.rs(), cfg.parsed_level()
    lam = cfg.weight("weight")
    value = str(charge.phi(rs, level, lam))
    _emit({**_header(cfg), "weight": lam.to_json(), "value": value}, value, cfg, as_json)
    return EXIT_OK


def cmd_casimir(cfg: JobConfig, as_json: bool = False) -> int:
    rs = cfg.rs()
    lam = cfg.weight("weight")
    value = str(charge.casimir_eigenvalue(rs, lam))
    _emit({**_header(cfg, with_level=False), "weight": lam.to_json(), "value": value},
          value, cfg, as_json)
    return EXIT_OK


def cmd_affine_weight(cfg: JobConfig, as_json: bool = False) -> int:
    rs, level = cfg.rs(), cfg.parsed_level()
    lam = cfg.weight("weight")
    aw = charge.affine_highest_weight(rs, level, lam)
    data = aw.to_json()
    text = f"finite {_w(lam)}; Lambda_0 coefficient {data['level']}; delta coefficient {data['delta']}"
    _emit({**_header(cfg), "weight": lam.to_json(), "affine_weight": data}, text, cfg, as_json)
    return EXIT_OK


def cmd_l0(cfg: JobConfig, as_json: bool = False) -> int:
    rs, level = cfg.rs(), cfg.parsed_level()
    chi = cfg.weight("weight")
    depth = cfg.params.get("depth") or 0
    conv = cfg.params.get("l0_convention", charge.L0_CONVENTION)
    value = str(charge.l0_eigenvalue_prediction(rs, level, chi, depth, conv))
    _emit({**_header(cfg), "weight": chi.to_json(), "depth": depth, "convention": conv,
           "value": value}, value, cfg, as_json)
    return EXIT_OK


def cmd_verify_kk(cfg: JobConfig, as_json: bool = False) -> int:
    from .shapovalov import verify_kk

    rs, level = cfg.rs(), cfg.parsed_level()
    lam = cfg.weight("hw")
    depth = cfg.params.get("depth")
    depth = 4 if depth is None else depth
    report = verify_kk(rs, level, lam, depth, height_cap=cfg.params.get("height"))
    payload = {**_header(cfg), **report.to_json(), "ok": report.ok}
    lines = [f"horizon: depth <= {report.horizon['depth']}, height <= {report.horizon['height']}",
             "singular: " + ", ".join(f"({s.depth}, {_w(s.weight)})" for s in report.singular),
             "predicted: " + ", ".join(f"({d}, {_w(w)})" for d, w, _ in report.predicted),
             f"missing: {len(report.missing)}  extra: {len(report.extra)}",
             "agreement" if report.ok else "DISAGREEMENT"]
    _emit(payload, "\n".join(lines), cfg, as_json)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def selftest_checks() -> list[tuple[str, bool]]:
    """Small end-to-end checks that exercise every module."""
    from .shapovalov import arbitrate_l0, verify_kk

    a1 = root_system("A1")
    gen = Level.generic()
    m2 = Level.rational(-2)
    w = lambda *c: Weight(c)  # noqa: E731
    checks = []
    steps = linkage.star_step_candidates(a1, gen, w(3))
    checks.append(("generic step from 3w", [(s.n, s.end) for s in steps] == [(3, w(-3))]))
    steps = linkage.star_step_candidates(a1, m2, w(5), max_m=2)
    checks.append(("loop step at kappa=-2", any(s.m == 2 and s.n == 1 and s.end == w(3)
                                                for s in steps)))
    q = linkage.BlockQuery(a1, m2, max_chain_len=3, max_m=3)
    chain = linkage.satisfies_star(a1, m2, w(5), w(3), q)
    checks.append(("certificate re-verifies",
                   chain is not None and linkage.chain_is_valid(a1, m2, chain)))
    checks.append(("rational blocks", linkage.rational_block_equal(a1, 2, 1, w(0), w(4))
                   and not linkage.rational_block_equal(a1, 2, 1, w(0), w(2))))
    checks.append(("phi at rho vanishes", charge.phi(a1, gen, w(1)) == 0))
    arb = arbitrate_l0(a1, [Level.rational(k) for k in (-1, -2, 3)], [w(0), w(1), w(2)])
    checks.append(("Sugawara L0 convention is pinned",
                   arb.convention == charge.L0_CONVENTION))
    checks.append(("oracle agrees at kappa=-2, hw 4w", verify_kk(a1, m2, w(4), 3).ok))
    checks.append(("oracle agrees at generic level, hw 2w", verify_kk(a1, gen, w(2), 1).ok))
    return checks


def cmd_selftest(cfg: JobConfig, as_json: bool = False) -> int:
    checks = selftest_checks()
    ok = all(p for _, p in checks)
    payload = {"command": "selftest", "rs": cfg.root_system,
               "checks": [{"name": n, "passed": p} for n, p in checks], "ok": ok}
    text = "\n".join(f"{'PASS' if p else 'FAIL'}  {n}" for n, p in checks)
    _emit(payload, text, cfg, as_json)
    return EXIT_OK if ok else EXIT_MISMATCH


COMMANDS: dict[str, Callable[[JobConfig, bool], int]] = {
    "check-star": cmd_check_star,
    "linked": cmd_linked,
    "linkage-class": cmd_linkage_class,
    "blocks": cmd_blocks,
    "subquotients": cmd_subquotients,
    "phi": cmd_phi,
    "casimir": cmd_casimir,
    "affine-weight": cmd_affine_weight,
    "l0": cmd_l0,
    "verify-kk": cmd_verify_kk,
    "selftest": cmd_selftest,
}


# -- argument parsing --------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser, level: bool = True) -> None:
    p.add_argument("--rs", required=True, help="root system code, e.g. A2")
    if level:
        p.add_argument("--level", default="generic", help='"p/q" or "generic"')
    p.add_argument("--json", action="store_true", help="print JSON only")
    p.add_argument("--out", help="also write the JSON result to this file")


def _bounds(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-chain", type=int, default=4)
    p.add_argument("--max-m", type=int, default=2)
    p.add_argument("--box", help="coordinate bound for weights visited")
    p.add_argument("--depth", type=int, help="bound on the accumulated loop depth")
    p.add_argument("--allow-empty", action="store_true", help="accept the empty chain")
    p.add_argument("--convention", choices=linkage.CONVENTIONS, default="affine")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="affinelink", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("check-star", "linked"):
        p = sub.add_parser(name)
        _common(p)
        _bounds(p)
        p.add_argument("--from", dest="from_", required=True)
        p.add_argument("--to", required=True)
    for name in ("linkage-class", "subquotients"):
        p = sub.add_parser(name)
        _common(p)
        _bounds(p)
        p.add_argument("--weight", required=True)
    p = sub.add_parser("blocks")
    _common(p)
    _bounds(p)
    p.add_argument("--weights", help='semicolon-separated weights, e.g. "0;2;-2"')
    p.add_argument("--relation", choices=RELATIONS, default="rational")
    p.add_argument("--scale", default="1", help="lattice scale for the coarse relation")
    for name in ("phi", "affine-weight"):
        p = sub.add_parser(name)
        _common(p)
        p.add_argument("--weight", required=True)
    p = sub.add_parser("casimir")
    _common(p, level=False)
    p.add_argument("--weight", required=True)
    p = sub.add_parser("l0")
    _common(p)
    p.add_argument("--weight", required=True, help="rho-shifted parameter of the module")
    p.add_argument("--depth", type=int, default=0)
    p.add_argument("--l0-convention", choices=charge.L0_CONVENTIONS,
                   default=charge.L0_CONVENTION)
    p = sub.add_parser("verify-kk")
    _common(p)
    p.add_argument("--hw", required=True, help="highest weight of the Verma module")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--height", type=int, help="height cap (default: from the predictions)")
    p = sub.add_parser("selftest")
    p.add_argument("--rs", default="A1")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    return parser


def normalize_argv(argv: Sequence[str]) -> list[str]:
    """Glue negative values to their option (``--to -3`` becomes ``--to=-3``)."""
    out: list[str] = []
    i = 0
    argv = list(argv)
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and _NEGATIVE_VALUE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def config_from_args(ns: argparse.Namespace) -> JobConfig:
    params = {}
    mapping = {"from_": "from", "to": "to", "weight": "weight", "hw": "hw", "weights": "weights",
               "max_chain": "max_chain", "max_m": "max_m", "box": "box", "depth": "depth",
               "allow_empty": "allow_empty", "convention": "convention", "relation": "relation",
               "scale": "scale", "height": "height", "l0_convention": "l0_convention",
               "out": "out"}
    for attr, key in mapping.items():
        if hasattr(ns, attr) and getattr(ns, attr) is not None:
            params[key] = getattr(ns, attr)
    return JobConfig(ns.command, ns.rs, getattr(ns, "level", "generic"), params)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = normalize_argv(sys.argv[1:] if argv is None else argv)
    try:
        ns = build_parser().parse_args(argv)
        cfg = config_from_args(ns)
        if "level" in ns:
            cfg.parsed_level()  # reject a critical or malformed level before any work
        return COMMANDS[cfg.command](cfg, bool(getattr(ns, "json", False)))
    except (UsageError, CriticalLevelError, RootSystemError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

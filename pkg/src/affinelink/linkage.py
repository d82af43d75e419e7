"""Kac-Kazhdan chains, the linkage relation and block tests.

A single step from a weight ``x`` uses a root ``beta`` and a loop index
``m >= 0`` (``beta`` positive when ``m == 0``).  It is admissible when

    n = (x, beta^vee) + 2 kappa m / |beta|^2

is a positive integer.  Under the default ``"affine"`` convention the step
lands on ``x - n beta = r_beta(x) - kappa m beta^vee``, the reflection of
``x`` in the affine root ``beta + m delta`` (shifted by rho).  This is the
orientation confirmed by the Shapovalov oracle in
:mod:`affinelink.shapovalov`.  The ``"literal"`` convention keeps the sign
``r_beta(x) + kappa m beta^vee`` and exists so the disagreement can be
reproduced; the two agree whenever ``m == 0``.

Every search is bounded (chain length, ``m``, optional coordinate box and
loop depth); a negative answer means "not found within bounds".
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional

from .level import Level
from .rootsys import RootSystem, Weight

CONVENTIONS = ("affine", "literal")


class ChainError(ValueError):
    """A certificate failed re-verification."""


@dataclass(frozen=True)
class StarStep:
    beta: Weight
    m: int
    n: int
    start: Weight
    end: Weight

    @property
    def depth(self) -> int:
        """Loop depth added by the step (the delta-coefficient drop n*m)."""
        return self.n * self.m

    def to_json(self) -> dict:
        return {"beta": self.beta.to_json(), "m": self.m, "n": self.n, "to": self.end.to_json()}


@dataclass(frozen=True)
class StarChain:
    source: Weight
    steps: tuple[StarStep, ...] = ()

    @property
    def target(self) -> Weight:
        return self.steps[-1].end if self.steps else self.source

    @property
    def depth(self) -> int:
        return sum(s.depth for s in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> dict:
        return {"source": self.source.to_json(), "steps": [s.to_json() for s in self.steps]}

    @classmethod
    def from_json(cls, data: dict) -> "StarChain":
        cur = Weight.from_json(data["source"])
        steps = []
        for s in data["steps"]:
            end = Weight.from_json(s["to"])
            steps.append(StarStep(Weight.from_json(s["beta"]), int(s["m"]), int(s["n"]), cur, end))
            cur = end
        return cls(Weight.from_json(data["source"]), tuple(steps))


@dataclass(frozen=True)
class BlockQuery:
    rs: RootSystem
    level: Level
    max_chain_len: int = 4
    max_m: Optional[int] = 2
    weight_box: Optional[Fraction] = None
    max_depth: Optional[int] = None
    allow_empty: bool = False
    convention: str = "affine"

    def __post_init__(self):
        if self.max_chain_len < 0:
            raise ValueError("max_chain_len must be nonnegative")
        if self.max_m is not None and self.max_m < 0:
            raise ValueError("max_m must be nonnegative")
        if self.weight_box is not None:
            object.__setattr__(self, "weight_box", Fraction(self.weight_box))
            if self.weight_box < 0:
                raise ValueError("weight_box must be nonnegative")
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError("max_depth must be nonnegative")
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}")

    def in_box(self, w: Weight) -> bool:
        return self.weight_box is None or all(abs(c) <= self.weight_box for c in w.coords)


# -- single steps ---------------------------------------------------------------

def _kappa_term(level: Level, m: int) -> Fraction:
    return Fraction(0) if m == 0 else level.value * m


def _step(rs: RootSystem, level: Level, start: Weight, beta: Weight, m: int,
          convention: str = "affine") -> Optional[StarStep]:
    if m == 0 and not rs.is_positive_root(beta):
        return None
    if m > 0 and level.is_generic:
        return None
    nb = rs.norm2(beta)
    n = level.integer_part(rs.pairing(start, beta), Fraction(2 * m) / nb)
    if n is None or n <= 0:
        return None
    if convention == "affine":
        end = start - beta * n
    else:
        end = rs.reflect(start, beta) + rs.coroot(beta) * _kappa_term(level, m)
    return StarStep(beta, m, n, start, end)


def _step_map(rs: RootSystem, level: Level, x: Weight, beta: Weight, m: int,
              convention: str) -> Weight:
    # both conventions are involutions in x, so this also inverts a step
    shift = rs.coroot(beta) * _kappa_term(level, m)
    r = rs.reflect(x, beta)
    return r - shift if convention == "affine" else r + shift


def complete_max_m(rs: RootSystem, level: Level, lam: Weight) -> int:
    """Largest m that can still give an admissible step from ``lam``.

    Only defined for negative rational levels, where the admissibility
    integer decreases with m.
    """
    if level.is_generic:
        return 0
    k = level.value
    if k > 0:
        raise ValueError("step lists are infinite for kappa > 0; pass max_m explicitly")
    best = 0
    for beta in rs.roots:
        bound = rs.pairing(lam, beta) * rs.norm2(beta) / (2 * abs(k))
        best = max(best, math.floor(bound))
    return best


def star_step_candidates(rs: RootSystem, level: Level, lam: Weight,
                         max_m: Optional[int] = None,
                         convention: str = "affine") -> list[StarStep]:
    """All admissible single steps from ``lam`` with ``m <= max_m``.

    For ``kappa < 0`` and ``max_m=None`` the list is complete.  At a generic
    level only ``m == 0`` steps exist.
    """
    rs._check(lam)
    if level.is_generic:
        max_m = 0
    elif max_m is None:
        max_m = complete_max_m(rs, level, lam)
    out = []
    for beta in rs.roots:
        for m in range(max_m + 1):
            s = _step(rs, level, lam, beta, m, convention)
            if s is not None:
                out.append(s)
    return out


def _reverse_steps(rs: RootSystem, level: Level, nu: Weight, max_m: int,
                   convention: str) -> Iterator[StarStep]:
    """Steps (read forwards) whose endpoint is ``nu``."""
    top = 0 if level.is_generic else max_m
    for beta in rs.roots:
        for m in range(top + 1):
            if m == 0 and not rs.is_positive_root(beta):
                continue
            start = _step_map(rs, level, nu, beta, m, convention)
            s = _step(rs, level, start, beta, m, convention)
            if s is not None and s.end == nu:
                yield s


# -- chain verification (deliberately independent of _step) ---------------------

def verify_chain(rs: RootSystem, level: Level, chain: StarChain,
                 convention: str = "affine") -> None:
    """Re-check every step of ``chain`` from the defining formulas.

    Raises :class:`ChainError` on the first violation.
    """
    cur = chain.source
    for i, st in enumerate(chain.steps):
        if st.start != cur:
            raise ChainError(f"step {i}: does not start where the previous one ended")
        if not rs.is_root(st.beta):
            raise ChainError(f"step {i}: {st.beta} is not a root")
        if st.m < 0:
            raise ChainError(f"step {i}: negative m")
        simple = rs.simple_coords(st.beta)
        if st.m == 0 and not all(c >= 0 for c in simple):
            raise ChainError(f"step {i}: m = 0 requires a positive root")
        if st.m > 0 and level.is_generic:
            raise ChainError(f"step {i}: m > 0 is never admissible at a generic level")
        beta_norm = rs.inner(st.beta, st.beta)
        kappa = Fraction(0) if st.m == 0 else level.value
        value = 2 * rs.inner(cur, st.beta) / beta_norm + 2 * kappa * st.m / beta_norm
        if value != st.n or st.n <= 0:
            raise ChainError(f"step {i}: integer condition gives {value}, certificate says {st.n}")
        coroot = st.beta * (2 / beta_norm)
        reflected = cur - st.beta * (2 * rs.inner(cur, st.beta) / beta_norm)
        sign = -1 if convention == "affine" else 1
        expected = reflected + coroot * (sign * kappa * st.m)
        if expected != st.end:
            raise ChainError(f"step {i}: endpoint {st.end} but formula gives {expected}")
        if convention == "affine" and cur.is_integral() and not rs.in_root_lattice(st.end - cur):
            raise ChainError(f"step {i}: displacement leaves the root lattice")
        cur = st.end
    if cur != chain.target:
        raise ChainError("chain target mismatch")


def chain_is_valid(rs: RootSystem, level: Level, chain: StarChain,
                   convention: str = "affine") -> bool:
    try:
        verify_chain(rs, level, chain, convention)
    except ChainError:
        return False
    return True


# -- forward search ---------------------------------------------------------------

class _State(NamedTuple):
    weight: Weight
    depth: int


def _chain_to(parents: dict, state: _State, source: Weight) -> StarChain:
    steps = []
    while parents[state] is not None:
        prev, step = parents[state]
        steps.append(step)
        state = prev
    return StarChain(source, tuple(reversed(steps)))


def _forward_expand(query: BlockQuery, state: _State) -> Iterator[tuple[StarStep, _State]]:
    rs, level = query.rs, query.level
    max_m = query.max_m
    if max_m is None:
        if level.is_generic:
            max_m = 0
        elif level.value < 0:
            max_m = complete_max_m(rs, level, state.weight)
        else:
            raise ValueError("max_m is required for kappa > 0")
    for st in star_step_candidates(rs, level, state.weight, max_m, query.convention):
        new = _State(st.end, state.depth + st.depth)
        if query.max_depth is not None and new.depth > query.max_depth:
            continue
        if not query.in_box(st.end):
            continue
        yield st, new


def _generic_allowed(rs: RootSystem, lam: Weight) -> frozenset[Weight]:
    return frozenset(w for w in rs.weyl_orbit(lam) if rs.in_root_lattice(w - lam))


def satisfies_star(rs: RootSystem, level: Level, lam: Weight, mu: Weight,
                   query: BlockQuery) -> Optional[StarChain]:
    """Search for a chain from ``lam`` to ``mu``; shortest first, then by (root index, m)."""
    rs._check(lam, mu)
    if lam == mu and query.allow_empty:
        return StarChain(lam)
    if query.convention == "affine" and not rs.in_root_lattice(mu - lam):
        return None
    allowed = None
    if level.is_generic:
        allowed = _generic_allowed(rs, lam)
        if mu not in allowed:
            return None
    src = _State(lam, 0)
    parents: dict[_State, Optional[tuple]] = {src: None}
    layer = [src]
    for _ in range(query.max_chain_len):
        nxt = []
        for state in layer:
            for st, new in _forward_expand(query, state):
                if allowed is not None and new.weight not in allowed:
                    continue
                if new.weight == mu:
                    chain = _chain_to(parents, state, lam)
                    return StarChain(lam, chain.steps + (st,))
                if new in parents:
                    continue
                parents[new] = (state, st)
                nxt.append(new)
        layer = nxt
        if not layer:
            break
    return None


class Candidate(NamedTuple):
    weight: Weight
    chain: StarChain

    @property
    def depth(self) -> int:
        return self.chain.depth


def subquotient_candidates(rs: RootSystem, level: Level, lam: Weight,
                           query: BlockQuery) -> list[Candidate]:
    """Weights mu with [lam + rho, mu + rho] linked by a nonempty chain.

    ``lam`` is the highest weight of the inducing Verma module.  Distinct loop
    depths of the same finite weight are reported separately.
    """
    rs._check(lam)
    start = lam + rs.rho
    allowed = _generic_allowed(rs, start) if level.is_generic else None
    src = _State(start, 0)
    parents: dict[_State, Optional[tuple]] = {src: None}
    found: list[_State] = []
    layer = [src]
    for _ in range(query.max_chain_len):
        nxt = []
        for state in layer:
            for st, new in _forward_expand(query, state):
                if allowed is not None and new.weight not in allowed:
                    continue
                if new in parents:
                    continue
                parents[new] = (state, st)
                nxt.append(new)
                found.append(new)
        layer = nxt
        if not layer:
            break
    out = [Candidate(s.weight - rs.rho, _chain_to(parents, s, start)) for s in found]
    out.sort(key=lambda c: (c.depth, c.weight.coords))
    return out


# -- the equivalence relation generated by W-orbits and chains ---------------------

@dataclass(frozen=True)
class Move:
    kind: str  # "weyl" | "star" | "star-reverse"
    start: Weight
    end: Weight
    step: Optional[StarStep] = None

    def to_json(self) -> dict:
        d = {"kind": self.kind, "from": self.start.to_json(), "to": self.end.to_json()}
        if self.step is not None:
            d["beta"] = self.step.beta.to_json()
            d["m"] = self.step.m
            d["n"] = self.step.n
        return d


@dataclass(frozen=True)
class LinkResult:
    linked: bool
    trail: tuple[Move, ...] = ()
    exhausted: bool = False  # search space ran out before the length bound

    def __bool__(self) -> bool:
        return self.linked


def _moves(query: BlockQuery, nu: Weight) -> Iterator[Move]:
    rs, level = query.rs, query.level
    for w in sorted(rs.weyl_orbit(nu)):
        if w != nu:
            yield Move("weyl", nu, w)
    max_m = 0 if level.is_generic else query.max_m
    if max_m is None:
        raise ValueError("linkage searches need an explicit max_m at rational levels")
    for st in star_step_candidates(rs, level, nu, max_m, query.convention):
        yield Move("star", nu, st.end, st)
    for st in _reverse_steps(rs, level, nu, max_m, query.convention):
        yield Move("star-reverse", nu, st.start, st)


def _closure(query: BlockQuery, lam: Weight, target: Optional[Weight] = None):
    parents: dict[Weight, Optional[Move]] = {lam: None}
    layer = [lam]
    clipped = False
    for _ in range(query.max_chain_len):
        nxt = []
        for nu in layer:
            for mv in _moves(query, nu):
                if not query.in_box(mv.end):
                    clipped = True
                    continue
                if mv.end in parents:
                    continue
                parents[mv.end] = mv
                nxt.append(mv.end)
                if target is not None and mv.end == target:
                    return parents, nxt, clipped, True
        layer = nxt
        if not layer:
            break
    return parents, layer, clipped, False


def _trail(parents: dict, w: Weight) -> tuple[Move, ...]:
    out = []
    while parents[w] is not None:
        mv = parents[w]
        out.append(mv)
        w = mv.start
    return tuple(reversed(out))


def linked(rs: RootSystem, level: Level, lam: Weight, mu: Weight,
           query: BlockQuery) -> LinkResult:
    """Bounded decision of lam ~ mu, with a trail of elementary moves when found."""
    rs._check(lam, mu)
    if lam == mu:
        return LinkResult(True, ())
    parents, layer, _, hit = _closure(query, lam, mu)
    if hit:
        return LinkResult(True, _trail(parents, mu))
    exhausted = not layer or not any(
        mv.end not in parents for nu in layer for mv in _moves(query, nu) if query.in_box(mv.end))
    return LinkResult(False, (), exhausted)


@dataclass(frozen=True)
class LinkageClass:
    members: frozenset[Weight]
    truncated: bool  # unexplored in-box neighbours remain at the length bound
    clipped: bool = False  # some move left the weight box

    def sorted(self) -> list[Weight]:
        return sorted(self.members)


def linkage_class(rs: RootSystem, level: Level, lam: Weight, query: BlockQuery) -> LinkageClass:
    rs._check(lam)
    parents, layer, clipped, _ = _closure(query, lam)
    truncated = any(mv.end not in parents
                    for nu in layer for mv in _moves(query, nu) if query.in_box(mv.end))
    return LinkageClass(frozenset(parents), truncated, clipped)


# -- coarse and rational-level blocks ---------------------------------------------

def coarse_block_equal(rs: RootSystem, lam: Weight, mu: Weight, scale=1) -> bool:
    """mu in W lam + scale*Q^vee and mu - lam in Q."""
    rs._check(lam, mu)
    if not rs.in_root_lattice(mu - lam):
        return False
    return any(rs.in_coroot_lattice(mu - w, scale) for w in rs.weyl_orbit(lam))


def rational_block_equal(rs: RootSystem, p: int, q: int, lam: Weight, mu: Weight) -> bool:
    """Same orbit of W semidirect p*Q^vee, for kappa = p/q and integral weights."""
    if p == 0 or q == 0:
        raise ValueError("p and q must be nonzero")
    if math.gcd(p, q) != 1:
        raise ValueError(f"p = {p} and q = {q} are not coprime")
    rs._check(lam, mu)
    if not (lam.is_integral() and mu.is_integral()):
        raise ValueError("rational-level blocks are defined for integral weights only")
    return any(rs.in_coroot_lattice(mu - w, p) for w in rs.weyl_orbit(lam))


def with_bounds(query: BlockQuery, **changes) -> BlockQuery:
    return replace(query, **changes)

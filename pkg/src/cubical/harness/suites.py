"""Property suites, sharded execution and the report reducer."""

from __future__ import annotations

import json
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

from ..opsem import DEFAULT_FUEL, Stepped, Stuck, Value, evaluate, is_val, notf, step
from ..surface import show
from ..substitution import instantiate_dbind
from ..syntax import (
    BOOL, CIRCLE, FALSE, ONE, SBOOL, TRUE, ZERO, App, CElim, Coe, DApp, DBind, DName, Fst, Hcom,
    If, IaIn, IaOut, IaTy, Lam, NotEl, NotTy, Snd, TBind, Term,
)
from . import oracle
from .canonicity import Canon, FuelExhausted, check_canonicity, obs_equal_bool
from .generators import (
    BOOL_TO_BOOL, BOOL_X_BOOL, NOT_ISO, GenConfig, GrammarGen, TypedGen, ia_bool_line,
)
from .shrink import shrink

SUITES = (
    "determinacy", "stability", "canonicity", "circle-canonicity", "kan-laws", "not-involution",
    "ia-roundtrip", "sbool-collapse", "obs-congruence",
)

DEFAULT_COUNTS = {
    "determinacy": 100_000, "stability": 20_000, "canonicity": 10_000,
    "circle-canonicity": 2_000, "kan-laws": 1_000, "not-involution": 1_000,
    "ia-roundtrip": 1_000, "sbool-collapse": 1_000, "obs-congruence": 500,
}


@dataclass
class SuiteConfig:
    count: Optional[int] = None
    seed: int = 0
    depth: Optional[int] = None
    fuel: int = DEFAULT_FUEL
    shards: int = 1
    workers: int = 1
    shrink: bool = True
    # steps examined per grammar-random term
    step_budget: int = 200
    max_trace_len: int = 64

    def depth_for(self, suite: str) -> int:
        if self.depth is not None:
            return self.depth
        return 4 if suite in ("determinacy", "stability", "kan-laws") else 6


@dataclass
class SuiteReport:
    suite: str
    seed: int
    count: int = 0
    failures: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    shards: int = 1
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        head = (f"{self.suite}: {self.count} instances, {len(self.failures)} failures "
                f"(seed {self.seed}, {self.shards} shard(s), {self.elapsed:.1f}s)")
        lines = [head]
        for k, v in sorted(self.stats.items()):
            lines.append(f"  {k}: {v}")
        for f in self.failures[:10]:
            lines.append(f"  FAIL {f['detail']}")
            lines.append(f"    term: {f['term']}")
            if f.get("shrunk") and f["shrunk"] != f["term"]:
                lines.append(f"    shrunk: {f['shrunk']}")
        if len(self.failures) > 10:
            lines.append(f"  ... {len(self.failures) - 10} more")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        d = asdict(self)
        # wall time would make structured reports differ between identical runs
        del d["elapsed"]
        d["passed"] = self.passed
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False, sort_keys=True)


def merge(suite: str, seed: int, parts: list) -> SuiteReport:
    """The single reducer: shard reports in shard order."""
    out = SuiteReport(suite, seed, shards=len(parts))
    stats: Counter = Counter()
    for p in parts:
        out.count += p.count
        out.failures.extend(p.failures)
        stats.update(p.stats)
    out.stats = dict(sorted(stats.items()))
    return out


# ----------------------------------------------------------------------------
# Failure records


def _failure(cfg: SuiteConfig, detail: str, terms: list, fails: Optional[Callable] = None) -> dict:
    t = terms[0]
    rec = {"detail": detail, "term": show(t)}
    if len(terms) > 1:
        rec["other"] = [show(u) for u in terms[1:]]
    small = t
    if cfg.shrink and fails is not None:
        small = shrink(t, fails, fuel=min(cfg.fuel, 10_000))
    rec["shrunk"] = show(small)
    tr = evaluate(small, min(cfg.fuel, 10_000), max_len=cfg.max_trace_len)
    rec["trace"] = tr.lines()
    return rec


# ----------------------------------------------------------------------------
# Determinacy and stability over grammar-random terms


def determinacy_problem(t: Term, budget: int, coverage: Optional[Counter] = None) -> Optional[str]:
    """First determinacy or value-exclusivity violation along ``t``'s trace."""
    cur = t
    for _ in range(budget):
        want = oracle.expected_step(cur)
        out = step(cur)
        again = step(cur)
        if out != again:
            return "step is not reproducible"
        if is_val(cur) != oracle.value(cur):
            return f"value predicate disagrees with the rule table at {show(cur)}"
        if want[0] == "overlap":
            return f"rules overlap: {', '.join(want[1])}"
        if isinstance(out, Value):
            if want[0] != "value":
                return f"reported a value but the rule table expects {want[0]}"
            return None
        if is_val(cur):
            return "a value takes a step"
        if isinstance(out, Stuck):
            if want[0] != "stuck":
                return f"stuck but the rule table expects {want}"
            return None
        assert isinstance(out, Stepped)
        if want != ("step", out.path, out.rule):
            return f"stepped by {out.label} but the rule table expects {want}"
        if coverage is not None:
            coverage.update(out.path + (out.rule,))
        cur = out.next
    return None


def stability_problem(t: Term, budget: int) -> Optional[str]:
    cur = t
    for _ in range(budget):
        out = step(cur)
        if not isinstance(out, Stepped):
            return None
        grown = out.next.fd - cur.fd
        if grown:
            return f"{out.label} introduced free names {sorted(grown)}"
        cur = out.next
    return None


def _grammar_shard(suite, cfg, seed, count, depth):
    g = GrammarGen(seed, depth)
    rep = SuiteReport(suite, seed)
    cov: Counter = Counter()
    for _ in range(count):
        t = g.term()
        rep.count += 1
        if suite == "determinacy":
            msg = determinacy_problem(t, cfg.step_budget, cov)
            fails = lambda u: determinacy_problem(u, cfg.step_budget) is not None  # noqa: E731
        else:
            msg = stability_problem(t, cfg.step_budget)
            fails = lambda u: stability_problem(u, cfg.step_budget) is not None  # noqa: E731
        if msg:
            rep.failures.append(_failure(cfg, msg, [t], fails))
    if suite == "stability":
        # the traces of well-typed closed terms too
        tg = TypedGen(GenConfig(depth=6, seed=seed))
        for _ in range(count):
            t, _ = tg.bool_term()
            rep.count += 1
            msg = stability_problem(t, cfg.fuel)
            if msg:
                rep.failures.append(_failure(cfg, msg, [t], lambda u: stability_problem(u, cfg.fuel) is not None))
    rep.stats = {f"rule {k}": v for k, v in cov.items()}
    return rep


# ----------------------------------------------------------------------------
# Canonicity


def _canon_shard(suite, cfg, seed, count, depth):
    g = TypedGen(GenConfig(depth=depth, seed=seed))
    rep = SuiteReport(suite, seed)
    verdicts: Counter = Counter()
    for _ in range(count):
        if suite == "canonicity":
            t, _ = g.bool_term()
            ok = ("True", "False")
        elif suite == "circle-canonicity":
            t, _ = g.circle_term()
            ok = ("Base",)
        else:
            t, _ = g.sbool_term(depth, (), ())
            ok = ("True", "False")
        rep.count += 1
        v = check_canonicity(t, cfg.fuel)
        verdicts[str(v) if isinstance(v, Canon) else type(v).__name__] += 1
        if not (isinstance(v, Canon) and v.value in ok):
            def fails(u, ok=ok):
                w = check_canonicity(u, cfg.fuel)
                return not (isinstance(w, Canon) and w.value in ok)
            rep.failures.append(_failure(cfg, f"verdict {v}", [t], fails))
        if suite == "circle-canonicity":
            # eliminated into bool the term is still canonical
            p = g.rng.choice((TRUE, FALSE))
            z = "z"
            e = CElim(TBind("_", BOOL), t, p, DBind(z, g.variant(p, (z,), z)))
            rep.count += 1
            w = check_canonicity(e, cfg.fuel)
            if not (isinstance(w, Canon) and w == Canon("True" if p is TRUE else "False")):
                rep.failures.append(_failure(cfg, f"eliminated to bool: {w}", [e]))
        if suite == "sbool-collapse":
            extents, r, _, cap, tubes = g._box(t, SBOOL, ())
            h = Hcom(extents, SBOOL, r, g._dim(()), cap, tubes)
            lhs = If(TBind("_", BOOL), h, TRUE, FALSE)
            rhs = If(TBind("_", BOOL), cap, TRUE, FALSE)
            rep.count += 1
            _law(rep, cfg, "hcom at sbool is its cap", lhs, rhs)
    rep.stats = dict(verdicts)
    return rep


def _law(rep: SuiteReport, cfg: SuiteConfig, label: str, lhs: Term, rhs: Term) -> None:
    try:
        same = obs_equal_bool(lhs, rhs, fuel=cfg.fuel)
    except FuelExhausted as e:
        rep.failures.append(_failure(cfg, f"{label}: {e}", [lhs, rhs]))
        return
    if not same:
        rep.failures.append(_failure(cfg, f"{label}: sides differ", [lhs, rhs]))


# ----------------------------------------------------------------------------
# Kan laws


KINDS = ("bool", "sbool", "circle", "pi", "sigma", "id", "not", "ia")
PSI = ("i", "j")


class _Kan:
    def __init__(self, seed: int, depth: int):
        self.g = TypedGen(GenConfig(depth=depth, seed=seed, dim_budget=len(PSI) + 2))
        self.rng = self.g.rng
        self.depth = depth

    def dim(self):
        return self.g._dim(PSI)

    def typed_element(self, kind: str):
        """``(type, element, observer)``; the observer maps elements to bool."""
        g, d, rng = self.g, self.depth, self.rng
        if kind == "bool":
            return BOOL, g.bool_term(d, (), PSI)[0], lambda t: t
        if kind == "sbool":
            return SBOOL, g.sbool_term(d, (), PSI)[0], lambda t: If(TBind("_", BOOL), t, TRUE, FALSE)
        if kind == "circle":
            p = g.bool_term(d - 1, (), PSI)[0]
            z = g._fresh_dim(PSI)
            loop = g.variant(p, PSI + (z,), z)
            obs = lambda t: CElim(TBind("_", BOOL), t, p, DBind(z, loop))  # noqa: E731
            return CIRCLE, g.circle_term(d, (), PSI)[0], obs
        if kind == "pi":
            arg = g.bool_term(d - 1, (), PSI)[0]
            return BOOL_TO_BOOL, g.fun_term(d, (), PSI)[0], lambda t: App(t, arg)
        if kind == "sigma":
            proj = rng.choice((Fst, Snd))
            return BOOL_X_BOOL, g.pair_term(d, (), PSI)[0], proj
        if kind == "id":
            path, ty, _ = g.path_term(d, (), PSI)
            r = self.dim()
            return ty, path, lambda t: DApp(t, r)
        w = self.dim()
        return self.element_at(kind, w)

    def element_at(self, kind: str, w):
        """An element of ``not(w)`` or ``ia(w; bool, bool, not, not)``."""
        g, d, rng = self.g, self.depth, self.rng
        m = g.bool_term(d - 1, (), PSI)[0]
        if kind == "not":
            if isinstance(w, DName):
                m = rng.choice((NotEl(w, m), Coe(DBind("x", NotTy(DName("x"))), ZERO, w, m)))
            return NotTy(w), m, lambda t: Coe(DBind("x", NotTy(DName("x"))), w, ONE, t)
        if isinstance(w, DName):
            m = IaIn(w, m, NOT_ISO)
        return IaTy(w, BOOL, BOOL, NOT_ISO, NOT_ISO), m, lambda t: IaOut(w, t, NOT_ISO)

    def instance(self):
        """``(law, lhs, rhs)``: two bool terms the law says are equal."""
        g, rng = self.g, self.rng
        kind = rng.choice(KINDS)
        law = rng.choice(("cap", "tube", "coe"))
        if law == "coe":
            r = self.dim()
            if kind in ("not", "ia") and rng.random() < 0.5:
                line = DBind("x", NotTy(DName("x"))) if kind == "not" else ia_bool_line("x")
                _, m, obs = self.element_at(kind, r)
                return f"coe-identity/{kind}-line", obs(Coe(line, r, r, m)), obs(m)
            ty, m, obs = self.typed_element(kind)
            return f"coe-identity/{kind}", obs(Coe(DBind("x", ty), r, r, m)), obs(m)
        ty, k, obs = self.typed_element(kind)
        extents, r, r2, cap, tubes = g._box(k, ty, PSI)
        if law == "cap":
            h = Hcom(extents, ty, r, r, cap, tubes)
            return f"hcom-cap/{kind}", obs(h), obs(cap)
        i = rng.randrange(len(extents))
        e = rng.choice((0, 1))
        extents = extents[:i] + ((ZERO, ONE)[e],) + extents[i + 1:]
        h = Hcom(extents, ty, r, r2, cap, tubes)
        return f"hcom-tube/{kind}", obs(h), obs(instantiate_dbind(tubes[i][e], r2))


def _kan_shard(suite, cfg, seed, count, depth):
    k = _Kan(seed, depth)
    rep = SuiteReport(suite, seed)
    laws: Counter = Counter()
    for _ in range(count):
        law, lhs, rhs = k.instance()
        laws[law.split("/")[0]] += 1
        rep.count += 1
        _law(rep, cfg, law, lhs, rhs)
    rep.stats = dict(laws)
    return rep


# ----------------------------------------------------------------------------
# not involution, ia round trips


def _not_shard(suite, cfg, seed, count, depth):
    g = TypedGen(GenConfig(depth=depth, seed=seed, dim_budget=3))
    rep = SuiteReport(suite, seed)
    nline = DBind("x", NotTy(DName("x")))
    for _ in range(count):
        dims = g.rng.choice(((), ("i",)))
        m, _ = g.bool_term(None, (), dims)
        rep.count += 2
        _law(rep, cfg, "notf twice", notf(notf(m)), m)
        e = g._eps()
        other = ONE if e == ZERO else ZERO
        back = Coe(nline, other, e, Coe(nline, e, other, m))
        _law(rep, cfg, "coe along not and back", back, m)
    return rep


def _ia_shard(suite, cfg, seed, count, depth):
    g = TypedGen(GenConfig(depth=depth, seed=seed, dim_budget=3))
    rep = SuiteReport(suite, seed)
    line = ia_bool_line("x")
    for _ in range(count):
        m, _ = g.bool_term(None, (), ("i",))
        r = g._dim(("i",))
        rep.count += 3
        _law(rep, cfg, "ia-out of ia-in", IaOut(r, IaIn(r, m, NOT_ISO), NOT_ISO), m)
        n = IaIn(r, m, NOT_ISO) if isinstance(r, DName) else m
        eta = IaIn(r, IaOut(r, n, NOT_ISO), NOT_ISO)
        _law(rep, cfg, "ia-in of ia-out", IaOut(r, eta, NOT_ISO), IaOut(r, n, NOT_ISO))
        e = g._eps()
        other = ONE if e == ZERO else ZERO
        _law(rep, cfg, "coe along ia and back", Coe(line, other, e, Coe(line, e, other, m)), m)
    return rep


# ----------------------------------------------------------------------------
# Observational equality is an equivalence and a congruence


def _obs_shard(suite, cfg, seed, count, depth):
    g = TypedGen(GenConfig(depth=depth, seed=seed))
    rng = g.rng
    rep = SuiteReport(suite, seed)
    corpus = [g.bool_term()[0] for _ in range(max(3, count))]
    ctx = Counter()

    def eq(a, b):
        return obs_equal_bool(a, b, fuel=cfg.fuel)

    for _ in range(count):
        a, b, c = (rng.choice(corpus) for _ in range(3))
        rep.count += 1
        try:
            if not eq(a, a):
                rep.failures.append(_failure(cfg, "not reflexive", [a]))
            ab, ba, bc, ac = eq(a, b), eq(b, a), eq(b, c), eq(a, c)
            ctx["related pairs"] += ab
            if ab != ba:
                rep.failures.append(_failure(cfg, "not symmetric", [a, b]))
            if ab and bc and not ac:
                rep.failures.append(_failure(cfg, "not transitive", [a, b, c]))
            if ab:
                t, f = rng.choice(corpus), rng.choice(corpus)
                v = "v"
                body = g.bool_term(3, (v,), ())[0]
                for name, wrap in (
                    ("notf", notf),
                    ("if", lambda x: If(TBind("_", BOOL), x, t, f)),
                    ("app", lambda x: App(Lam(TBind(v, body)), x)),
                ):
                    if not eq(wrap(a), wrap(b)):
                        rep.failures.append(_failure(cfg, f"not a congruence under {name}", [a, b]))
        except FuelExhausted as e:
            rep.failures.append(_failure(cfg, str(e), [a, b, c]))
    rep.stats = dict(ctx)
    return rep


# ----------------------------------------------------------------------------
# Dispatch


_SHARD = {
    "determinacy": _grammar_shard, "stability": _grammar_shard, "canonicity": _canon_shard,
    "circle-canonicity": _canon_shard, "sbool-collapse": _canon_shard, "kan-laws": _kan_shard,
    "not-involution": _not_shard, "ia-roundtrip": _ia_shard, "obs-congruence": _obs_shard,
}


def shard_seed(seed: int, k: int) -> int:
    """Seed of shard ``k``; shard 0 of a single-shard run uses ``seed`` itself."""
    return seed if k == 0 else random.Random(seed * 1_000_003 + k).getrandbits(48)


def _run_shard(args):
    suite, cfg, k, count = args
    return _SHARD[suite](suite, cfg, shard_seed(cfg.seed, k), count, cfg.depth_for(suite))


def run_suite(name: str, cfg: Optional[SuiteConfig] = None) -> SuiteReport:
    if name not in _SHARD:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    cfg = cfg or SuiteConfig()
    total = DEFAULT_COUNTS[name] if cfg.count is None else cfg.count
    n = max(1, cfg.shards)
    counts = [total // n + (1 if k < total % n else 0) for k in range(n)]
    jobs = [(name, cfg, k, c) for k, c in enumerate(counts)]
    t0 = time.perf_counter()
    if cfg.workers > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.workers, n)) as ex:
            parts = list(ex.map(_run_shard, jobs))
    else:
        parts = [_run_shard(j) for j in jobs]
    rep = merge(name, cfg.seed, parts)
    rep.elapsed = time.perf_counter() - t0
    return rep

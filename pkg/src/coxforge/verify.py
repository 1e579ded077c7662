"""Reproducibility suite: the frozen counts, dimensions, decompositions
and invariance identities the toolkit must regenerate exactly.

Every check is exact (integer or rational equality, no tolerances) and
cheap enough for commodity hardware.  The quick profile keeps ambient
dimension at most 3 and r at most 7; the full profile extends the same
checks to dimension 5 where the underlying objects stay desk-sized.
Each criterion draws its samples from its own seeded generator, so a
fixed (profile, seed) pair determines the entire run.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, product

from .blowup_divisors import (
    BlowupContext,
    eff_membership,
    effective_decompose,
    enumerate_minimal,
    minimal_class,
    minimal_parameters,
    mult_lower_bound,
)
from .linalg import rank
from .multipoly import MultiPoly
from .nagata_invariants import NagataParams, build_F, divisor_class_of, is_invariant
from .picard_lattice import DivisorClass, LatticeContext, anticanonical, degree
from .root_system import is_minuscule, reflect, simple_roots, weyl_orbit
from .section_spaces import (
    PointConfig,
    form_space,
    generation_test,
    h0,
    mult_along_curve,
    mult_at_point,
    section_of,
)


@dataclass(frozen=True)
class CheckResult:
    criterion: int
    name: str
    expected: str
    computed: str
    passed: bool
    seconds: float

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion,
            "name": self.name,
            "expected": self.expected,
            "computed": self.computed,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
        }


class _Suite:
    def __init__(self, criterion: int):
        self.criterion = criterion
        self.results = []
        self._mark = time.monotonic()

    def check(self, name: str, expected, computed):
        now = time.monotonic()
        self.results.append(CheckResult(
            self.criterion, name, str(expected), str(computed),
            expected == computed, now - self._mark))
        self._mark = now


def _fraction_line(good: int, total: int) -> str:
    return f"{good}/{total}"


# 1. orbit sizes of the last exceptional class

_ORBIT_COUNTS = (
    ((2, 2, 3), 16), ((2, 2, 4), 32), ((2, 2, 5), 64),
    ((2, 3, 3), 27), ((3, 1, 4), 35),
)


def _orbit_counts(s: _Suite, profile: str, rng: random.Random):
    for (a, b, c), want in _ORBIT_COUNTS:
        ctx = LatticeContext(a, b, c)
        orbit = weyl_orbit(DivisorClass.exceptional(ctx, ctx.r), simple_roots(ctx))
        s.check(f"orbit size ({a},{b},{c})", want, len(orbit))


# 2. minuscule verdicts context by context

_MINUSCULE_TRUE = (
    (2, 2, 3), (2, 2, 4), (2, 2, 5), (2, 2, 6),
    (3, 1, 3), (3, 1, 4), (4, 1, 3),
    (2, 1, 3), (2, 3, 3), (2, 4, 3),
)
_MINUSCULE_FALSE = ((2, 3, 4), (2, 3, 5))


def _minuscule_quick_ok(t) -> bool:
    a, b, c = t
    if b + c > 7:
        return False
    return not (a == 2 and b == 2 and c > 4)


def _minuscule_verdicts(s: _Suite, profile: str, rng: random.Random):
    for want, group in ((True, _MINUSCULE_TRUE), (False, _MINUSCULE_FALSE)):
        for t in group:
            if profile == "quick" and not _minuscule_quick_ok(t):
                continue
            s.check(f"minuscule {t}", want, is_minuscule(LatticeContext(*t)))


# 3. minimal-divisor counts

_MINIMAL_COUNTS = (((2, 5), 11), ((3, 6), 26), ((4, 7), 57))


def _minimal_counts(s: _Suite, profile: str, rng: random.Random):
    for (n, r), want in _MINIMAL_COUNTS:
        if profile == "quick" and n > 3:
            continue
        bc = BlowupContext(n, r)
        found = len(enumerate_minimal(bc))
        s.check(f"minimal count ({n},{r})", want, found)
        s.check(f"minimal+exceptional ({n},{r})", 2 ** (n + 2), found + r)


# 4. section-space dimensions

_H0_GRID_FULL = ((2, 5), (2, 6), (2, 7), (2, 8), (3, 6), (3, 7), (3, 8), (4, 7), (4, 8))
_H0_GRID_QUICK = ((2, 5), (2, 6), (2, 7), (3, 6), (3, 7))
_CONES_GRID_FULL = ((2, 6), (2, 7), (3, 7), (4, 8))
_CONES_GRID_QUICK = ((2, 6), (2, 7), (3, 7))


def _coeff_vector(f: MultiPoly, monomials, n: int):
    table = {}
    for e, c in f.terms.items():
        full = [0] * (n + 1)
        for name, exp in zip(f.vars, e):
            full[int(name.partition("_")[2])] = exp
        table[tuple(full)] = c
    return [table.get(g, 0) for g in monomials]


def _h0_suite(s: _Suite, profile: str, rng: random.Random):
    grid = _H0_GRID_QUICK if profile == "quick" else _H0_GRID_FULL
    for n, r in grid:
        cfg = PointConfig.default(n, r)
        ctx = cfg.lattice_context()
        mins = enumerate_minimal(cfg.blowup_context())
        ones = sum(1 for e in mins if h0(e, cfg) == 1)
        s.check(f"h0(E)=1 for every minimal E ({n},{r})",
                _fraction_line(len(mins), len(mins)), _fraction_line(ones, len(mins)))
        gone = sum(1 for e in mins
                   if all(h0(e - DivisorClass.exceptional(ctx, i), cfg) == 0
                          for i in range(1, r + 1)))
        s.check(f"h0(E-E_i)=0 for every minimal E ({n},{r})",
                _fraction_line(len(mins), len(mins)), _fraction_line(gone, len(mins)))

    grid = _CONES_GRID_QUICK if profile == "quick" else _CONES_GRID_FULL
    for n, r in grid:
        cfg = PointConfig.default(n, r)
        ctx = cfg.lattice_context()
        total = good = 0
        for k in range(1, (n + 1) // 2 + 1):
            for idx in combinations(range(1, r + 1), n + 1 - 2 * k):
                total += 1
                m = tuple(k if i in idx else k - 1 for i in range(1, r + 1))
                d = DivisorClass(ctx, (k,), m)
                if h0(d, cfg) != k + 1:
                    continue
                fs = form_space(d, cfg)
                comp = set(range(1, r + 1)) - set(idx)
                vecs = {i: _coeff_vector(
                    section_of(d - DivisorClass.exceptional(ctx, i), cfg),
                    fs.monomials, n) for i in comp}
                if all(rank([vecs[i] for i in pick]) == k + 1
                       for pick in combinations(sorted(comp), k + 1)):
                    good += 1
        s.check(f"cone classes h0=k+1 with spanning sub-sections ({n},{r})",
                _fraction_line(total, total), _fraction_line(good, total))


# 5. multiplicities at points and along the curve

_MULT_GRID_FULL = ((2, 5), (2, 6), (2, 7), (2, 8), (3, 6), (3, 7), (3, 8))
_MULT_GRID_QUICK = ((2, 5), (2, 6), (2, 7), (3, 6), (3, 7))


def _kernel_form(d: DivisorClass, cfg: PointConfig) -> MultiPoly:
    fs = form_space(d, cfg)
    names = tuple(f"z_{t}" for t in range(cfg.n + 1))
    return MultiPoly(names, {g: c for g, c in zip(fs.monomials, fs.kernel[0]) if c})


def _mult_suite(s: _Suite, profile: str, rng: random.Random):
    grid = _MULT_GRID_QUICK if profile == "quick" else _MULT_GRID_FULL
    for n, r in grid:
        cfg = PointConfig.default(n, r)
        bc = cfg.blowup_context()
        points = cfg.points()
        mins = enumerate_minimal(bc)
        good = 0
        for e in mins:
            k, idx = minimal_parameters(e, bc)
            f = section_of(e, cfg)
            if (all(mult_at_point(f, points[i - 1]) == (k if i in idx else k - 1)
                    for i in range(1, r + 1))
                    and mult_along_curve(f, cfg) == k - 1):
                good += 1
        s.check(f"multiplicity pattern k/k-1 and curve order k-1 ({n},{r})",
                _fraction_line(len(mins), len(mins)), _fraction_line(good, len(mins)))

    want = 30 if profile == "quick" else 100
    found = ok = 0
    attempts = 0
    while found < want and attempts < 40 * want:
        attempts += 1
        n, r = rng.choice(_MULT_GRID_QUICK)
        cfg = PointConfig.default(n, r)
        d = rng.randint(1, 4)
        m = tuple(rng.randint(0, d) for _ in range(r))
        dd = DivisorClass(cfg.lattice_context(), (d,), m)
        if h0(dd, cfg) == 0:
            continue
        found += 1
        bound = mult_lower_bound(dd, cfg.blowup_context())
        if mult_along_curve(_kernel_form(dd, cfg), cfg) >= bound:
            ok += 1
    s.check(f"curve order >= multiplicity bound on {want} sampled classes",
            _fraction_line(want, want), _fraction_line(ok, found))


# 6. table decompositions

_TABLE_EXAMPLE_COLUMNS = ((1, 2, 4), (1, 3, 4), (1, 3, 4), (2, 4, 5), (2, 4))


def _decompose_checks(ds, parts) -> bool:
    if sum(parts, DivisorClass.zero(ds.ctx)) != ds:
        return False
    return all(p.h == (1,) and all(v in (0, 1) for v in p.m) for p in parts)


def _table_decomposition(s: _Suite, profile: str, rng: random.Random):
    ctx = LatticeContext(2, 1, 4)
    d = DivisorClass(ctx, (5,), (3, 3, 2, 5, 1))
    parts = effective_decompose(d)
    got = tuple(tuple(i for i, v in enumerate(p.m, start=1) if v) for p in parts)
    s.check("five-part example columns", _TABLE_EXAMPLE_COLUMNS, got)
    s.check("five-part example re-sums", True, _decompose_checks(d, parts))

    total = 500
    good = 0
    for _ in range(total):
        n = rng.randint(2, 4)
        r = rng.randint(n + 3, 8)
        deg = rng.randint(0, 6)
        while True:
            m = tuple(rng.randint(0, deg) if deg else 0 for _ in range(r))
            if sum(m) <= n * deg:
                break
        ctx = LatticeContext(2, r - n - 1, n + 1)
        dd = DivisorClass(ctx, (deg,), m)
        if _decompose_checks(dd, effective_decompose(dd)):
            good += 1
    s.check(f"{total} random decompositions valid and re-sum",
            _fraction_line(total, total), _fraction_line(good, total))


# 7. invariance of the determinants

def _odd_subsets(r: int):
    for size in range(1, r + 1, 2):
        yield from combinations(range(1, r + 1), size)


def _invariance(s: _Suite, profile: str, rng: random.Random):
    top = 3 if profile == "quick" else 5
    seeds = [rng.randrange(10 ** 6) for _ in range(3)]
    for n in range(2, top + 1):
        r = n + 3
        for label, np in [("default", NagataParams.default(r))] + [
                (f"seed {sd}", NagataParams.random(r, sd)) for sd in seeds]:
            good = sum(1 for idx in _odd_subsets(r) if is_invariant(build_F(idx, np), np))
            s.check(f"invariance of all 2^{n + 2} determinants (n={n}, {label})",
                    _fraction_line(2 ** (n + 2), 2 ** (n + 2)),
                    _fraction_line(good, 2 ** (n + 2)))


# 8. determinant classes match the minimal divisors

def _class_correspondence(s: _Suite, profile: str, rng: random.Random):
    top = 3 if profile == "quick" else 5
    for n in range(2, top + 1):
        r = n + 3
        np = NagataParams.default(r)
        bc = BlowupContext(n, r)
        ctx = bc.lattice_context()
        everyone = set(range(1, r + 1))
        total = good = deg_ok = 0
        for size in range((n + 2) % 2, n + 3, 2):
            k = (r - size - 1) // 2
            for idx in combinations(range(1, r + 1), size):
                total += 1
                comp = tuple(sorted(everyone - set(idx)))
                cls = divisor_class_of(build_F(comp, np), n)
                want = (minimal_class(bc, k, idx) if k
                        else DivisorClass.exceptional(ctx, comp[0]))
                if cls == want:
                    good += 1
                if degree(cls) == 1:
                    deg_ok += 1
        s.check(f"determinant classes hit all minimal divisors (n={n})",
                _fraction_line(2 ** (n + 2), 2 ** (n + 2)), _fraction_line(good, total))
        s.check(f"determinant classes have degree 1 (n={n})",
                _fraction_line(2 ** (n + 2), 2 ** (n + 2)), _fraction_line(deg_ok, total))


# 9. span of generator products inside every section space

def _all_mults(r: int, d: int):
    yield from product(range(d + 1), repeat=r)


def _sorted_mults(r: int, d: int):
    yield from combinations_with_replacement(range(d, -1, -1), r)


_GENERATION_GRID_FULL = (
    (2, 5, 4, "all"), (2, 6, 4, "all"), (2, 7, 4, "sorted"),
    (3, 6, 3, "all"), (3, 7, 3, "sorted"), (4, 7, 2, "sorted"),
)
_GENERATION_GRID_QUICK = (
    (2, 5, 3, "all"), (2, 6, 3, "sorted"), (2, 7, 3, "sorted"),
    (3, 6, 2, "sorted"), (3, 7, 2, "sorted"),
)


def _generation(s: _Suite, profile: str, rng: random.Random):
    grid = _GENERATION_GRID_QUICK if profile == "quick" else _GENERATION_GRID_FULL
    for n, r, dmax, mode in grid:
        cfg = PointConfig.default(n, r)
        ctx = cfg.lattice_context()
        mults = _all_mults if mode == "all" else _sorted_mults
        total = good = 0
        for deg in range(dmax + 1):
            for m in mults(r, deg):
                dd = DivisorClass(ctx, (deg,), m)
                if h0(dd, cfg) == 0:
                    continue
                total += 1
                report = generation_test(dd, cfg)
                if report.generated and report.span_dim == report.h0:
                    good += 1
        s.check(f"products span every section space ({n},{r},d<={dmax},{mode} m)",
                _fraction_line(total, total), _fraction_line(good, total))


# 10. anticanonical degree

def _anticanonical_degree(s: _Suite, profile: str, rng: random.Random):
    for t, want in (((2, 3, 3), 3), ((2, 2, 3), 4)):
        s.check(f"degree(-K) {t}", want, degree(anticanonical(LatticeContext(*t))))


# 11. membership agrees with h0 and with reflections

_MEMBERSHIP_CONTEXTS_FULL = ((2, 2, 3), (2, 2, 4), (2, 2, 5))
_MEMBERSHIP_CONTEXTS_QUICK = ((2, 2, 3), (2, 2, 4))


def _membership_coherence(s: _Suite, profile: str, rng: random.Random):
    contexts = (_MEMBERSHIP_CONTEXTS_QUICK if profile == "quick"
                else _MEMBERSHIP_CONTEXTS_FULL)
    want = 100 if profile == "quick" else 200
    for t in contexts:
        ctx = LatticeContext(*t)
        n = ctx.c - 1
        cfg = PointConfig.default(n, ctx.r)
        rs = simple_roots(ctx)
        implied = mirrored = positive = 0
        for _ in range(want):
            deg = rng.randint(0, 4)
            m = tuple(rng.randint(-2, deg) for _ in range(ctx.r))
            dd = DivisorClass(ctx, (deg,), m)
            member = bool(eff_membership(dd))
            if h0(dd, cfg) > 0:
                positive += 1
                if member:
                    implied += 1
            if all(bool(eff_membership(reflect(alpha, dd))) == member
                   for alpha in rs.simple_roots):
                mirrored += 1
        s.check(f"h0>0 implies membership {t}",
                _fraction_line(positive, positive), _fraction_line(implied, positive))
        s.check(f"reflections preserve membership {t}",
                _fraction_line(want, want), _fraction_line(mirrored, want))


CRITERIA = {
    1: ("orbit counts", _orbit_counts),
    2: ("minuscule verdicts", _minuscule_verdicts),
    3: ("minimal-divisor counts", _minimal_counts),
    4: ("section-space dimensions", _h0_suite),
    5: ("multiplicity patterns and bounds", _mult_suite),
    6: ("table decompositions", _table_decomposition),
    7: ("determinant invariance", _invariance),
    8: ("determinant class correspondence", _class_correspondence),
    9: ("generator products span", _generation),
    10: ("anticanonical degree", _anticanonical_degree),
    11: ("membership coherence", _membership_coherence),
}


def run_criterion(k: int, profile: str = "full", seed: int = 0):
    """All checks of one criterion; an exception becomes a failed record."""
    if k not in CRITERIA:
        raise KeyError(f"unknown criterion {k}")
    if profile not in ("quick", "full"):
        raise ValueError(f"unknown profile {profile!r}")
    name, func = CRITERIA[k]
    suite = _Suite(k)
    rng = random.Random(f"{seed}:{k}")
    try:
        func(suite, profile, rng)
    except Exception as exc:
        suite.results.append(CheckResult(
            k, f"{name} aborted", "completion", f"{type(exc).__name__}: {exc}",
            False, 0.0))
    return tuple(suite.results)


@dataclass(frozen=True)
class Report:
    profile: str
    seed: int
    results: tuple
    seconds: float

    @property
    def passed(self) -> bool:
        return all(res.passed for res in self.results)

    def to_json(self) -> dict:
        return {
            "profile": self.profile,
            "seed": self.seed,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "results": [res.to_json() for res in self.results],
        }


def run_all(profile: str = "full", seed: int = 0) -> Report:
    start = time.monotonic()
    results = []
    for k in sorted(CRITERIA):
        results.extend(run_criterion(k, profile, seed))
    return Report(profile, seed, tuple(results), time.monotonic() - start)


def render_report(report: Report) -> str:
    lines = []
    for res in report.results:
        mark = "PASS" if res.passed else "FAIL"
        lines.append(f"[{mark}] {res.criterion:2d} {res.name}: "
                     f"expected {res.expected}, computed {res.computed} "
                     f"({res.seconds:.2f}s)")
    verdict = "all checks passed" if report.passed else "FAILURES PRESENT"
    lines.append(f"{verdict}: {len(report.results)} checks, "
                 f"profile {report.profile}, seed {report.seed}, "
                 f"{report.seconds:.1f}s")
    return "\n".join(lines)

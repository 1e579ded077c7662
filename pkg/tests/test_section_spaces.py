"""Section spaces, point/curve multiplicities, and the generation test."""

import random
from fractions import Fraction
from itertools import combinations
from math import comb, inf

import pytest
import sympy

from coxforge.blowup_divisors import mult_lower_bound
from coxforge.errors import CapExceeded, PreconditionError
from coxforge.multipoly import MultiPoly
from coxforge.picard_lattice import DivisorClass, anticanonical, hdeg
from coxforge.section_spaces import (
    GenerationReport,
    PointConfig,
    form_space,
    generation_test,
    h0,
    initial_form_at_point,
    monomial_exponents,
    mult_along_curve,
    mult_at_point,
    section_of,
)

CFG25 = PointConfig.default(2, 5)
CFG36 = PointConfig.default(3, 6)


def conic_class(cfg):
    return DivisorClass(cfg.lattice_context(), (2,), (1,) * cfg.r)


def oracle_rows(deg, mults, cfg):
    """Vanishing conditions built independently: dehomogenize each monomial
    to the z_0 = 1 chart and differentiate with sympy at the curve points."""
    us = sympy.symbols(f"u1:{cfg.n + 1}")
    monos = [sympy.prod([u ** e for u, e in zip(us, g[1:])])
             for g in monomial_exponents(cfg.n, deg)]
    rows = []
    for a, m in zip(cfg.params, mults):
        point = {u: sympy.Rational(a) ** (j + 1) for j, u in enumerate(us)}
        for order in range(min(max(m, 0), deg + 1)):
            for beta in monomial_exponents(cfg.n - 1, order):
                row = []
                for mono in monos:
                    expr = mono
                    for u, b in zip(us, beta):
                        if b:
                            expr = sympy.diff(expr, u, b)
                    row.append(expr.subs(point))
                rows.append(row)
    return rows, len(monos)


def oracle_h0(d, cfg):
    deg = hdeg(d)
    if deg < 0:
        return 0
    rows, ncols = oracle_rows(deg, d.m, cfg)
    if not rows:
        return ncols
    return ncols - sympy.Matrix(rows).rank()


def coeff_vector(f, monos, n):
    full = {}
    for e, c in f.terms.items():
        key = [0] * (n + 1)
        for name, exp in zip(f.vars, e):
            key[int(name.partition("_")[2])] = exp
        full[tuple(key)] = c
    return [full.get(g, Fraction(0)) for g in monos]


def test_point_config_validation():
    assert CFG25.params == tuple(Fraction(v) for v in range(1, 6))
    assert CFG25.points()[1] == (1, 2, 4)
    with pytest.raises(PreconditionError):
        PointConfig(2, 5, (1, 2, 3, 4))
    with pytest.raises(PreconditionError):
        PointConfig(2, 5, (1, 1, 2, 3, 4))
    with pytest.raises(PreconditionError):
        PointConfig(2, 4, (1, 2, 3, 4))
    assert PointConfig.from_json(CFG36.to_json()) == CFG36


def test_point_config_random_is_deterministic():
    one = PointConfig.random(3, 7, 19)
    two = PointConfig.random(3, 7, 19)
    assert one == two
    assert len(set(one.params)) == 7
    assert PointConfig.random(3, 7, 20) != one


def test_monomial_exponents_basis():
    for n, d in ((2, 0), (2, 3), (3, 4), (4, 2)):
        monos = monomial_exponents(n, d)
        assert len(monos) == comb(n + d, d)
        assert len(set(monos)) == len(monos)
        assert all(len(g) == n + 1 and sum(g) == d for g in monos)
    assert monomial_exponents(2, 2)[0] == (2, 0, 0)


def test_h0_known_values():
    ctx = CFG25.lattice_context()
    assert h0(conic_class(CFG25), CFG25) == 1
    assert h0(DivisorClass.hyperplane(ctx), CFG25) == 3
    assert h0(DivisorClass.zero(ctx), CFG25) == 1
    assert h0(DivisorClass(ctx, (-1,), (0,) * 5), CFG25) == 0
    assert h0(anticanonical(ctx), CFG25) == 5
    # a line cannot pass doubly through a point
    assert h0(DivisorClass(ctx, (1,), (2, 0, 0, 0, 0)), CFG25) == 0
    # quadrics through 6 points of the degree-3 curve: the 3 containing the
    # curve plus one more, since evaluation at 6 of the 7 curve degrees of
    # freedom is onto
    ctx3 = CFG36.lattice_context()
    assert h0(DivisorClass(ctx3, (2,), (1,) * 6), CFG36) == 4


def test_h0_matches_symbolic_oracle():
    rng = random.Random(7)
    for n, r, dmax, loops in ((2, 5, 4, 20), (2, 6, 3, 15), (3, 6, 2, 10)):
        cfg = PointConfig.default(n, r)
        ctx = cfg.lattice_context()
        for _ in range(loops):
            deg = rng.randint(0, dmax)
            m = tuple(rng.randint(-1, 3) for _ in range(r))
            d = DivisorClass(ctx, (deg,), m)
            assert h0(d, cfg) == oracle_h0(d, cfg)


def test_h0_oracle_on_fractional_parameters():
    cfg = PointConfig.random(2, 6, 3)
    ctx = cfg.lattice_context()
    rng = random.Random(31)
    for _ in range(10):
        d = DivisorClass(ctx, (rng.randint(0, 3),),
                         tuple(rng.randint(0, 2) for _ in range(6)))
        assert h0(d, cfg) == oracle_h0(d, cfg)


def test_h0_negative_multiplicities_impose_nothing():
    ctx = CFG25.lattice_context()
    free = DivisorClass(ctx, (3,), (-2, -1, 0, 0, 0))
    assert h0(free, CFG25) == h0(DivisorClass(ctx, (3,), (0,) * 5), CFG25) == comb(5, 2)


def test_h0_drops_as_conditions_are_added():
    rng = random.Random(23)
    ctx = CFG25.lattice_context()
    for _ in range(25):
        d = DivisorClass(ctx, (rng.randint(0, 3),),
                         tuple(rng.randint(0, 2) for _ in range(5)))
        i = rng.randint(1, 5)
        assert h0(d - DivisorClass.exceptional(ctx, i), CFG25) <= h0(d, CFG25)


def test_form_space_kernel_annihilates_oracle_rows():
    rng = random.Random(11)
    ctx = CFG25.lattice_context()
    for _ in range(10):
        deg = rng.randint(1, 3)
        d = DivisorClass(ctx, (deg,), tuple(rng.randint(0, 2) for _ in range(5)))
        fs = form_space(d, CFG25)
        assert len(fs.kernel) == h0(d, CFG25)
        assert len(set(fs.kernel)) == len(fs.kernel)
        rows, ncols = oracle_rows(deg, d.m, CFG25)
        assert all(len(v) == ncols for v in fs.kernel)
        for row in rows:
            for vec in fs.kernel:
                assert sum(c * sympy.Rational(v) for c, v in zip(row, vec)) == 0
    with pytest.raises(PreconditionError):
        form_space(DivisorClass(ctx, (-1,), (0,) * 5), CFG25)


def test_section_of_line_and_conic():
    ctx = CFG25.lattice_context()
    line = section_of(DivisorClass(ctx, (1,), (1, 1, 0, 0, 0)), CFG25)
    assert str(line) == "z_0 - 3/2*z_1 + 1/2*z_2"
    assert line.leading()[1] == 1
    conic = section_of(conic_class(CFG25), CFG25)
    for p in CFG25.points():
        assert mult_at_point(conic, p) == 1
    assert mult_at_point(conic, (1, 7, 49)) == 1
    assert mult_at_point(conic, (1, 7, 50)) == 0
    with pytest.raises(PreconditionError):
        section_of(DivisorClass.hyperplane(ctx), CFG25)


def test_mult_at_point_basics():
    z0, z1, z2 = (MultiPoly.variable(f"z_{t}") for t in range(3))
    assert mult_at_point(z1 * z2, (1, 0, 0)) == 2
    assert mult_at_point(z1 * z2, (0, 0, 1)) == 1
    assert mult_at_point(MultiPoly.zero(), (1, 0, 0)) == inf
    assert initial_form_at_point(z0 * z2 - z1 ** 2, (1, 1, 1)) == \
        MultiPoly.variable("u_2") - 2 * MultiPoly.variable("u_1")
    with pytest.raises(PreconditionError):
        mult_at_point(z0 + z1 ** 2, (1, 0, 0))
    with pytest.raises(PreconditionError):
        mult_at_point(MultiPoly.variable("u_1"), (1, 0))
    with pytest.raises(PreconditionError):
        mult_at_point(z0, (0, 0, 0))


def test_mult_along_curve_values():
    conic = section_of(conic_class(CFG25), CFG25)
    assert mult_along_curve(conic, CFG25) == 1
    line = section_of(DivisorClass(CFG25.lattice_context(), (1,), (1, 1, 0, 0, 0)), CFG25)
    assert mult_along_curve(line, CFG25) == 0
    # z_0 z_2 - z_1^2 is one of the quadrics through the degree-3 curve
    q = MultiPoly.variable("z_0") * MultiPoly.variable("z_2") - MultiPoly.variable("z_1") ** 2
    assert mult_along_curve(q, CFG36) == 1


def test_section_multiplicity_meets_curve_bound():
    cfg = PointConfig.default(2, 6)
    ctx = cfg.lattice_context()
    bc = cfg.blowup_context()
    rng = random.Random(5)
    checked = 0
    for _ in range(400):
        d = DivisorClass(ctx, (rng.randint(1, 3),),
                         tuple(rng.randint(0, 2) for _ in range(6)))
        if h0(d, cfg) != 1:
            continue
        f = section_of(d, cfg)
        assert mult_along_curve(f, cfg) >= mult_lower_bound(d, bc)
        checked += 1
        if checked == 8:
            break
    assert checked == 8


def test_pencil_spanned_by_any_two_point_sections():
    # H - E_3 on seven points: the pencil of lines through p_3; dropping to
    # H - E_3 - E_i pins one line each, and any two of those span
    cfg = PointConfig.default(2, 7)
    ctx = cfg.lattice_context()
    d = DivisorClass(ctx, (1,), tuple(1 if i == 3 else 0 for i in range(1, 8)))
    assert h0(d, cfg) == 2
    monos = form_space(d, cfg).monomials
    others = [i for i in range(1, 8) if i != 3]
    secs = []
    for i in others:
        f = section_of(d - DivisorClass.exceptional(ctx, i), cfg)
        assert mult_at_point(f, cfg.points()[2]) >= 1
        assert mult_at_point(f, cfg.points()[i - 1]) >= 1
        secs.append(coeff_vector(f, monos, 2))
    for u, v in combinations(secs, 2):
        assert sympy.Matrix([u, v]).rank() == 2


def test_generation_small_cases():
    ctx = CFG25.lattice_context()
    assert generation_test(conic_class(CFG25), CFG25) == GenerationReport(1, 1, True)
    rep = generation_test(anticanonical(ctx), CFG25)
    assert rep.h0 == 5 and rep.generated
    rep = generation_test(DivisorClass(ctx, (2,), (1, 1, 0, 0, 0)), CFG25)
    assert rep.h0 == rep.span_dim == 4
    empty = generation_test(DivisorClass(ctx, (1,), (2, 0, 0, 0, 0)), CFG25)
    assert empty == GenerationReport(0, 0, True)


def test_generation_caps_and_bounds():
    ctx = CFG25.lattice_context()
    with pytest.raises(CapExceeded):
        generation_test(anticanonical(ctx), CFG25, cap=2)
    cfg58 = PointConfig.default(5, 8)
    with pytest.raises(PreconditionError):
        generation_test(DivisorClass.hyperplane(cfg58.lattice_context()), cfg58)

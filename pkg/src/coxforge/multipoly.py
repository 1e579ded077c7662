"""Sparse multivariate polynomials with exact rational coefficients.

Terms are kept in a dict mapping exponent tuples to Fraction coefficients.
A polynomial is normalized on construction: zero coefficients are dropped
and the variable tuple is pruned to the variables that actually occur, in
the canonical order below, so structurally equal polynomials compare equal
no matter how they were assembled.

Canonical variable order: homogeneous coordinates z_0 > z_1 > .., then
chart coordinates u_1 > .., the curve parameter s, then x_1 > .., y_1 > ..,
t_1 > t_2.  Term order is graded lexicographic (total degree first, then
lex on the exponent tuple), descending, so the leading monomial of
z_0 z_2 - z_1^2 is z_0 z_2.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import PreconditionError
from .jsonutil import decode_fraction, encode_fraction

_FAMILY_ORDER = {"z": 0, "u": 1, "s": 2, "x": 3, "y": 4, "t": 5}


def var_key(name: str):
    head, _, tail = name.partition("_")
    fam = _FAMILY_ORDER.get(head, len(_FAMILY_ORDER))
    idx = int(tail) if tail.isdigit() else 0
    return (fam, idx, name)


def _coerce_coef(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    raise PreconditionError("coef", f"coefficients must be rational, got {v!r}")


class MultiPoly:
    """Immutable sparse polynomial; all arithmetic returns new objects."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables=(), terms=None):
        variables = tuple(variables)
        raw = {}
        for exps, coef in (terms or {}).items():
            coef = _coerce_coef(coef)
            if not coef:
                continue
            exps = tuple(exps)
            if len(exps) != len(variables):
                raise PreconditionError("terms", "exponent tuple length != variable count")
            if any(e < 0 or not isinstance(e, int) for e in exps):
                raise PreconditionError("terms", f"exponents must be nonnegative integers: {exps}")
            raw[exps] = raw.get(exps, Fraction(0)) + coef
        raw = {e: c for e, c in raw.items() if c}
        used = sorted({i for e in raw for i, p in enumerate(e) if p},
                      key=lambda i: var_key(variables[i]))
        pruned_vars = tuple(variables[i] for i in used)
        pruned = {}
        for exps, coef in raw.items():
            key = tuple(exps[i] for i in used)
            pruned[key] = pruned.get(key, Fraction(0)) + coef
        object.__setattr__(self, "vars", pruned_vars)
        object.__setattr__(self, "terms", {e: c for e, c in pruned.items() if c})

    def __setattr__(self, *_):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls((), {})

    @classmethod
    def const(cls, v) -> "MultiPoly":
        return cls((), {(): _coerce_coef(v)})

    @classmethod
    def variable(cls, name: str) -> "MultiPoly":
        return cls((name,), {(1,): Fraction(1)})

    @classmethod
    def monomial(cls, exps_by_name: dict, coef=1) -> "MultiPoly":
        names = tuple(exps_by_name)
        return cls(names, {tuple(exps_by_name[n] for n in names): _coerce_coef(coef)})

    # -- ring structure ----------------------------------------------------

    def _aligned(self, other: "MultiPoly"):
        variables = tuple(sorted(set(self.vars) | set(other.vars), key=var_key))
        index = {n: i for i, n in enumerate(variables)}

        def remap(poly):
            out = {}
            for exps, coef in poly.terms.items():
                key = [0] * len(variables)
                for name, e in zip(poly.vars, exps):
                    key[index[name]] = e
                out[tuple(key)] = coef
            return out

        return variables, remap(self), remap(other)

    @staticmethod
    def _coerce(other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MultiPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        variables, left, right = self._aligned(other)
        for exps, coef in right.items():
            left[exps] = left.get(exps, Fraction(0)) + coef
        return MultiPoly(variables, left)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        variables, left, right = self._aligned(other)
        out = {}
        for e1, c1 in left.items():
            for e2, c2 in right.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return MultiPoly(variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PreconditionError("exponent", f"need a nonnegative integer, got {n!r}")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- calculus and substitution ------------------------------------------

    def deriv(self, name: str) -> "MultiPoly":
        """Partial derivative; zero if the variable does not occur."""
        if name not in self.vars:
            return MultiPoly.zero()
        i = self.vars.index(name)
        out = {}
        for exps, coef in self.terms.items():
            if exps[i] == 0:
                continue
            key = exps[:i] + (exps[i] - 1,) + exps[i + 1:]
            out[key] = out.get(key, Fraction(0)) + coef * exps[i]
        return MultiPoly(self.vars, out)

    def substitute(self, mapping: dict) -> "MultiPoly":
        """Replace variables by polynomials or constants, expanding exactly.

        Variables absent from the mapping survive unchanged.
        """
        images = {}
        for name, img in mapping.items():
            img = self._coerce(img)
            if img is None:
                raise PreconditionError("mapping", f"cannot substitute {mapping[name]!r}")
            images[name] = img
        total = MultiPoly.zero()
        for exps, coef in self.terms.items():
            prod = MultiPoly.const(coef)
            for name, e in zip(self.vars, exps):
                if e == 0:
                    continue
                base = images.get(name, MultiPoly.variable(name))
                prod = prod * base ** e
            total = total + prod
        return total

    def evaluate(self, values: dict) -> Fraction:
        out = Fraction(0)
        for exps, coef in self.terms.items():
            term = coef
            for name, e in zip(self.vars, exps):
                if e:
                    term *= Fraction(values[name]) ** e
            out += term
        return out

    # -- inspection ----------------------------------------------------------

    def total_degree(self) -> int:
        """Maximum term degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, names) -> int:
        """Joint degree in a variable or a set of variables; -1 if zero."""
        if isinstance(names, str):
            names = (names,)
        idx = [i for i, n in enumerate(self.vars) if n in names]
        return max((sum(e[i] for i in idx) for e in self.terms), default=-1)

    def sorted_terms(self):
        """Terms in descending graded-lex order as (exps, coef) pairs."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def leading(self):
        """(exps, coef) of the graded-lex leading term; raises on zero."""
        if not self.terms:
            raise PreconditionError("poly", "zero polynomial has no leading term")
        return self.sorted_terms()[0]

    # -- io -------------------------------------------------------------------

    def to_json(self) -> list:
        out = []
        for exps, coef in self.sorted_terms():
            out.append({"coef": encode_fraction(coef),
                        "exps": {n: e for n, e in zip(self.vars, exps) if e}})
        return out

    @classmethod
    def from_json(cls, obj) -> "MultiPoly":
        if not isinstance(obj, list):
            raise PreconditionError("poly", f"expected a term list, got {obj!r}")
        total = cls.zero()
        for term in obj:
            try:
                coef = decode_fraction(term["coef"])
                exps = term["exps"]
            except (KeyError, TypeError):
                raise PreconditionError("poly", f"malformed term {term!r}") from None
            total = total + cls.monomial({n: int(e) for n, e in exps.items()}, coef)
        return total

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for exps, coef in self.sorted_terms():
            factors = [f"{n}^{e}" if e > 1 else n
                       for n, e in zip(self.vars, exps) if e]
            mag = abs(coef)
            body = "*".join(factors) if factors else str(mag)
            if factors and mag != 1:
                body = f"{mag}*{body}"
            sign = "-" if coef < 0 else "+"
            chunks.append((sign, body))
        first_sign, first_body = chunks[0]
        text = (first_sign if first_sign == "-" else "") + first_body
        for sign, body in chunks[1:]:
            text += f" {sign} {body}"
        return text

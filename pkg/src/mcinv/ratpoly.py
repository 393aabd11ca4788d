"""Sparse multivariate polynomials with exact rational coefficients.

Variables are :class:`Var` triples ``(deg, basis, dual)``.  ``basis`` indexes a
basis of the Lie algebra, ``deg`` is the exponent vector ``omega`` of the
attached ``tau^omega`` (or ``eps^omega``), and ``dual`` distinguishes
coordinate functions (``b_i^* (x) eps^omega``) from algebra elements
(``b_i (x) tau^omega``).  Polynomials on the base algebra itself use the empty
degree ``()``.

The multigrading of a monomial is the exponent-weighted sum of the degrees of
its variables.  For dual variables this is the index sum, i.e. the negative of
the group degree; every grading operation here uses the stored degrees as-is.

Internally a monomial is a flat tuple ``(id, exp, id, exp, ...)`` over interned
variable ids (see :mod:`mcinv.kernels`), which keeps the product kernel cheap.
The canonical, run-independent ordering used for printing and JSON is the
lexicographic order on ``Var``.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, NamedTuple

from . import kernels
from .errors import UnmappedVariableError

__all__ = [
    "Var",
    "Monomial",
    "Polynomial",
    "to_fraction",
    "fraction_to_json",
    "fraction_from_json",
    "gamma_degree",
    "homogeneous_component",
    "substitute",
    "evaluate",
    "directional_derivative",
]


class Var(NamedTuple):
    deg: tuple
    basis: int
    dual: bool = False

    def __str__(self):
        name = ("f" if self.dual else "x") + str(self.basis)
        if self.deg:
            name += "[" + ",".join(map(str, self.deg)) + "]"
        return name


# internal formal parameter, never part of user-facing polynomials
_PARAM = Var((), -1, False)

_ids: dict[Var, int] = {}
_vars: list[Var] = []
_lock = threading.Lock()


def _vid(v: Var) -> int:
    i = _ids.get(v)
    if i is None:
        if not isinstance(v, Var):
            v = Var(tuple(v[0]), int(v[1]), bool(v[2]))
            return _vid(v)
        with _lock:
            i = _ids.get(v)
            if i is None:
                i = len(_vars)
                _vars.append(v)
                _ids[v] = i
    return i


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def fraction_to_json(x: Fraction) -> dict:
    return {"num": str(x.numerator), "den": str(x.denominator)}


def fraction_from_json(obj) -> Fraction:
    if isinstance(obj, dict):
        return Fraction(int(obj["num"]), int(obj["den"]))
    return to_fraction(obj)


def _key_from_exponents(exponents: Mapping[Var, int]) -> tuple:
    pairs = []
    for v, e in exponents.items():
        e = int(e)
        if e < 0:
            raise ValueError("negative exponent")
        if e:
            pairs.append((_vid(v), e))
    pairs.sort()
    out = []
    for i, e in pairs:
        out.append(i)
        out.append(e)
    return tuple(out)


def _sort_key(key: tuple) -> tuple:
    return tuple(sorted((_vars[key[i]], key[i + 1]) for i in range(0, len(key), 2)))


class Monomial:
    """Immutable product of variables with positive exponents."""

    __slots__ = ("_key",)

    def __init__(self, exponents: Mapping[Var, int] | None = None):
        self._key = _key_from_exponents(exponents or {})

    @classmethod
    def _from_key(cls, key: tuple) -> "Monomial":
        m = cls.__new__(cls)
        m._key = key
        return m

    @property
    def exponents(self) -> dict[Var, int]:
        k = self._key
        pairs = sorted((_vars[k[i]], k[i + 1]) for i in range(0, len(k), 2))
        return dict(pairs)

    @property
    def degree(self) -> int:
        return sum(self._key[1::2])

    def gamma_degree(self, ell: int | None = None) -> tuple:
        return _gamma_of_key(self._key, ell)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial._from_key(kernels.mono_mul(self._key, other._key))

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other):
        return _sort_key(self._key) < _sort_key(other._key)

    def __repr__(self):
        if not self._key:
            return "Monomial(1)"
        return "Monomial(" + "*".join(_fmt_power(v, e) for v, e in self.exponents.items()) + ")"


def _fmt_power(v: Var, e: int) -> str:
    return str(v) if e == 1 else f"{v}^{e}"


def _gamma_of_key(key: tuple, ell: int | None = None) -> tuple:
    if not key:
        return (0,) * (ell or 0)
    acc = None
    for i in range(0, len(key), 2):
        d = _vars[key[i]].deg
        e = key[i + 1]
        if acc is None:
            acc = [e * x for x in d]
        else:
            if len(d) != len(acc):
                if not any(d):
                    continue
                if not any(acc):
                    acc = [0] * len(d)
                else:
                    raise ValueError("monomial mixes degree vectors of different lengths")
            for j, x in enumerate(d):
                acc[j] += e * x
    if ell is not None and len(acc) != ell:
        if any(acc):
            raise ValueError(f"degree vector has length {len(acc)}, expected {ell}")
        acc = [0] * ell
    return tuple(acc)


class Polynomial:
    """Immutable sparse polynomial over the rationals.

    >>> x = Polynomial.var(Var((), 0))
    >>> (x + 1) ** 2 == x * x + 2 * x + 1
    True
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable | None = None):
        raw: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for m, c in items:
                key = m._key if isinstance(m, Monomial) else _key_from_exponents(m)
                c = to_fraction(c)
                if c:
                    raw[key] = raw.get(key, 0) + c
        self._terms = {k: c for k, c in raw.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def var(cls, v: Var, coeff=1) -> "Polynomial":
        c = to_fraction(coeff)
        return cls._raw({(_vid(v), 1): c} if c else {})

    @classmethod
    def const(cls, c) -> "Polynomial":
        c = to_fraction(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._raw({})

    @classmethod
    def linear(cls, coeffs: Mapping[Var, object]) -> "Polynomial":
        out = {}
        for v, c in coeffs.items():
            c = to_fraction(c)
            if c:
                k = (_vid(v), 1)
                out[k] = out.get(k, 0) + c
        return cls._raw({k: c for k, c in out.items() if c})

    # -- inspection -------------------------------------------------------

    def terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in canonical order."""
        keys = sorted(self._terms, key=_sort_key)
        return [(Monomial._from_key(k), self._terms[k]) for k in keys]

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def coefficient(self, m: Monomial | Mapping[Var, int]) -> Fraction:
        key = m._key if isinstance(m, Monomial) else _key_from_exponents(m)
        return self._terms.get(key, Fraction(0))

    def variables(self) -> list[Var]:
        ids = set()
        for k in self._terms:
            ids.update(k[::2])
        return sorted(_vars[i] for i in ids)

    def total_degree(self) -> int:
        return max((sum(k[1::2]) for k in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(k[1::2]) for k in self._terms}) <= 1

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        try:
            return Polynomial.const(other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "Polynomial":
        c = to_fraction(c)
        if not c:
            return Polynomial.zero()
        return Polynomial._raw({k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Polynomial._raw(kernels.poly_mul(self._terms, other._terms))
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if not other.is_constant() or other.is_zero():
                return NotImplemented
            other = other.constant_term()
        return self.scale(1 / to_fraction(other))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        try:
            return self._terms == Polynomial.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.terms():
            mono = "*".join(_fmt_power(v, e) for v, e in m.exponents.items())
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- grading ----------------------------------------------------------

    def graded_components(self, ell: int | None = None) -> dict[tuple, "Polynomial"]:
        """Split into multigraded pieces; keys are degree vectors."""
        buckets: dict[tuple, dict] = {}
        for k, c in self._terms.items():
            buckets.setdefault(_gamma_of_key(k, ell), {})[k] = c
        return {g: Polynomial._raw(t) for g, t in sorted(buckets.items())}

    def homogeneous_component(self, gamma) -> "Polynomial":
        gamma = tuple(gamma)
        ell = len(gamma)
        return Polynomial._raw(
            {k: c for k, c in self._terms.items() if _gamma_of_key(k, ell) == gamma}
        )

    def degree_components(self) -> dict[int, "Polynomial"]:
        """Split by ordinary total degree."""
        buckets: dict[int, dict] = {}
        for k, c in self._terms.items():
            buckets.setdefault(sum(k[1::2]), {})[k] = c
        return {d: Polynomial._raw(t) for d, t in sorted(buckets.items())}

    # -- substitution and evaluation ----------------------------------------

    def substitute(self, sigma: Mapping[Var, object], strict: bool = True) -> "Polynomial":
        """Image under the algebra homomorphism extending ``sigma``.

        With ``strict=False`` variables outside the domain of ``sigma`` are
        left in place.
        """
        images: dict[int, dict] = {}
        for v, img in sigma.items():
            if not isinstance(img, Polynomial):
                img = Polynomial.const(img)
            images[_vid(v)] = img._terms
        powers: dict[tuple, dict] = {}
        out: dict = {}
        for key, c in self._terms.items():
            acc = {(): c}
            for pos in range(0, len(key), 2):
                vid = key[pos]
                e = key[pos + 1]
                img = images.get(vid)
                if img is None:
                    if strict:
                        raise UnmappedVariableError(_vars[vid])
                    img = {(vid, 1): Fraction(1)}
                    images[vid] = img
                pw = powers.get((vid, e))
                if pw is None:
                    pw = img
                    for _ in range(e - 1):
                        pw = kernels.poly_mul(pw, img)
                    powers[(vid, e)] = pw
                acc = kernels.poly_mul(acc, pw)
                if not acc:
                    break
            for k, v in acc.items():
                s = out.get(k)
                out[k] = v if s is None else s + v
        return Polynomial._raw({k: c for k, c in out.items() if c})

    def evaluate(self, point: Mapping[Var, object]) -> Fraction:
        vals: dict[int, Fraction] = {}
        for v, x in point.items():
            vals[_vid(v)] = to_fraction(x)
        total = Fraction(0)
        for key, c in self._terms.items():
            t = c
            for pos in range(0, len(key), 2):
                x = vals.get(key[pos])
                if x is None:
                    raise UnmappedVariableError(_vars[key[pos]])
                t *= x ** key[pos + 1]
                if not t:
                    break
            total += t
        return total

    def diff(self, v: Var) -> "Polynomial":
        vid = _vid(v)
        return Polynomial._raw(kernels.apply_derivation(self._terms, {vid: {(): Fraction(1)}}))

    def apply_derivation(self, images: Mapping[Var, "Polynomial"]) -> "Polynomial":
        """Apply the derivation determined by its values on variables.

        Variables not in ``images`` are sent to zero.
        """
        raw = {_vid(v): p._terms for v, p in images.items() if p}
        return Polynomial._raw(kernels.apply_derivation(self._terms, raw))

    # -- JSON ---------------------------------------------------------------

    def to_json(self) -> list:
        out = []
        for m, c in self.terms():
            out.append(
                {
                    "coeff": fraction_to_json(c),
                    "vars": [
                        {"basis": v.basis, "deg": list(v.deg), "dual": v.dual, "exp": e}
                        for v, e in m.exponents.items()
                    ],
                }
            )
        return out

    @classmethod
    def from_json(cls, data: list) -> "Polynomial":
        terms = []
        for t in data:
            exps = {
                Var(tuple(int(d) for d in v["deg"]), int(v["basis"]), bool(v["dual"])): int(v["exp"])
                for v in t["vars"]
            }
            terms.append((exps, fraction_from_json(t["coeff"])))
        return cls(terms)


def gamma_degree(m: Monomial, ell: int | None = None) -> tuple:
    return m.gamma_degree(ell)


def homogeneous_component(p: Polynomial, gamma) -> Polynomial:
    return p.homogeneous_component(gamma)


def substitute(p: Polynomial, sigma: Mapping[Var, object]) -> Polynomial:
    return p.substitute(sigma)


def evaluate(p: Polynomial, point: Mapping[Var, object]) -> Fraction:
    return p.evaluate(point)


def directional_derivative(p: Polynomial, base: Mapping[Var, object], direction: Mapping[Var, object]):
    """Coefficient of ``t`` in ``p(base + t*direction)``.

    Computed by substituting a fresh formal parameter and extracting its
    linear coefficient.  Returns a ``Fraction`` when every base value is a
    number, otherwise a ``Polynomial``.
    """
    t = Polynomial.var(_PARAM)
    sigma = {}
    numeric = True
    for v in p.variables():
        if v not in base:
            raise UnmappedVariableError(v)
        b = base[v]
        if isinstance(b, Polynomial):
            numeric = numeric and b.is_constant()
        else:
            b = Polynomial.const(b)
        d = direction.get(v, 0)
        sigma[v] = b + t * d if d else b
    image = p.substitute(sigma)
    pid = _vid(_PARAM)
    linear = {}
    for key, c in image._terms.items():
        for pos in range(0, len(key), 2):
            if key[pos] == pid:
                if key[pos + 1] == 1:
                    linear[key[:pos] + key[pos + 2:]] = c
                break
    result = Polynomial._raw(linear)
    if numeric:
        return result.constant_term()
    return result

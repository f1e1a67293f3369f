"""Presentations, normal forms and basis enumeration for the six algebras.

The two q-deformed coordinate rings (the parent unitary quantum group and
its double-torus quotient) are presented on the alphabet
``Dinv < D < z < a < d < b < c`` with a graded lexicographic order; the
rewrite rules orient every defining relation toward the published basis
patterns (powers of the quantum determinant, the central idempotent
witness z, then a single run of a / d and a single run of b / c).  The
classical torus, the base Z2 function algebra, the q-torus comodule algebra
and the finite root-of-unity quotients are presented on their own alphabets.

Elements are finite linear combinations of irreducible words with exact
Laurent-polynomial coefficients.  All algebra objects are immutable after
construction and cache aggressively; they are safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable, Sequence

from .errors import (
    CrossAlgebraMix,
    InvalidExponent,
    NotAHopfAlgebra,
    RootConditionViolated,
    UnknownGenerator,
)
from .scalars import CyclotomicMode, QScalar, invert_in_cyclotomic_field
from .words import RewriteRule, RewriteSystem, Word

ONE = QScalar.one()
Q = QScalar.q_power(1)
QI = QScalar.q_power(-1)


def _sc(value) -> QScalar:
    return QScalar.of(value)


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


class Element:
    """A finite combination of normal-form monomials of one algebra."""

    __slots__ = ("algebra", "terms", "_hash")

    def __init__(self, algebra: "Algebra", terms: dict):
        canon = {}
        for m, c in terms.items():
            c = algebra.canon_scalar(_sc(c))
            if c:
                canon[m] = c
        self.algebra = algebra
        self.terms = canon
        self._hash = None

    # -- basics ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def support(self):
        return set(self.terms)

    def coefficient(self, mon) -> QScalar:
        return self.terms.get(mon, QScalar.zero())

    def map_scalars(self, fn) -> "Element":
        return Element(self.algebra, {m: fn(c) for m, c in self.terms.items()})

    def _check_peer(self, other: "Element"):
        if self.algebra is not other.algebra:
            raise CrossAlgebraMix(
                f"cannot mix {self.algebra.tag} with {other.algebra.tag}"
            )

    # -- ring structure ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Element):
            other = self.algebra.unit() * _sc(other)
        self._check_peer(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, QScalar.zero()) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Element(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            other = self.algebra.unit() * _sc(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.map_scalars(lambda c: c * _sc(other))
        self._check_peer(other)
        out = self.algebra.zero()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out = out + self.algebra.mul_mon(m1, m2) * (c1 * c2)
        return out

    def __rmul__(self, other):
        # scalars commute with everything
        return self.map_scalars(lambda c: _sc(other) * c)

    def __pow__(self, n: int):
        if n < 0:
            raise InvalidExponent("negative powers of general elements")
        out = self.algebra.unit()
        for _ in range(n):
            out = out * self
        return out

    # -- Hopf / star convenience (delegates to the algebra) ----------------

    def star(self) -> "Element":
        out = self.algebra.zero()
        for m, c in self.terms.items():
            out = out + self.algebra.star_mon(m) * c.star()
        return out

    def coproduct(self) -> "TensorElement":
        out = TensorElement((self.algebra, self.algebra), {})
        for m, c in self.terms.items():
            out = out + self.algebra.coproduct_mon(m) * c
        return out

    def counit(self) -> QScalar:
        total = QScalar.zero()
        for m, c in self.terms.items():
            total = total + c * self.algebra.counit_mon(m)
        return self.algebra.canon_scalar(total)

    def antipode(self) -> "Element":
        out = self.algebra.zero()
        for m, c in self.terms.items():
            out = out + self.algebra.antipode_mon(m) * c
        return out

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QScalar)):
            other = self.algebra.unit() * _sc(other)
        if not isinstance(other, Element):
            return NotImplemented
        if self.algebra is not other.algebra:
            raise CrossAlgebraMix(
                f"comparing {self.algebra.tag} with {other.algebra.tag}"
            )
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.algebra.tag, frozenset(self.terms.items()))
            )
        return self._hash

    def __repr__(self):
        return f"<{self.algebra.tag}: {self}>"

    def __str__(self):
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=self.algebra.mon_sort_key)
        parts = []
        for m in keys:
            parts.append(_format_scaled_mon(self.algebra, m, self.terms[m], not parts))
        return "".join(parts)


def _format_scaled_mon(algebra, mon, coeff: QScalar, first: bool) -> str:
    mon_str = algebra.format_mon(mon)
    chunks = []
    for k, c in coeff.items():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        factors = []
        if mag != 1 or (k == 0 and not mon_str):
            factors.append(str(mag))
        if k:
            factors.append("q" if k == 1 else f"q^{k}")
        if mon_str:
            factors.append(mon_str)
        body = "*".join(factors) or "1"
        if first and not chunks:
            chunks.append(body if sign == "+" else f"-{body}")
        else:
            chunks.append(f" {sign} {body}")
    return "".join(chunks)


class TensorElement:
    """Rank-2 or rank-3 tensor with one algebra per leg."""

    __slots__ = ("legs", "terms", "_hash")

    def __init__(self, legs: tuple, terms: dict):
        canon = {}
        canon_scalar = legs[0].canon_scalar
        for key, c in terms.items():
            c = canon_scalar(_sc(c))
            if c:
                canon[key] = c
        self.legs = tuple(legs)
        self.terms = canon
        self._hash = None

    @property
    def rank(self) -> int:
        return len(self.legs)

    def _check_peer(self, other: "TensorElement"):
        if self.legs != other.legs:
            raise CrossAlgebraMix("tensor legs differ")

    def __add__(self, other):
        self._check_peer(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, QScalar.zero()) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TensorElement(self.legs, out)

    def __sub__(self, other):
        return self + other * _sc(-1)

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return TensorElement(
                self.legs, {k: c * _sc(other) for k, c in self.terms.items()}
            )
        self._check_peer(other)
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                legs_els = [
                    leg.mul_mon(m1, m2) for leg, m1, m2 in zip(self.legs, k1, k2)
                ]
                _tensor_accumulate(out, legs_els, c1 * c2, self.legs[0].canon_scalar)
        return TensorElement(self.legs, out)

    __rmul__ = __mul__

    def apply_leg(self, i: int, fn, new_algebra) -> "TensorElement":
        """Map leg i monomials through a linear map given on monomials."""
        legs = list(self.legs)
        legs[i] = new_algebra
        out: dict = {}
        for key, c in self.terms.items():
            image = fn(key[i])
            for m, ci in image.terms.items():
                new_key = key[:i] + (m,) + key[i + 1 :]
                s = out.get(new_key, QScalar.zero()) + c * ci
                if s:
                    out[new_key] = s
                else:
                    out.pop(new_key, None)
        return TensorElement(tuple(legs), out)

    def coproduct_leg(self, i: int) -> "TensorElement":
        """Replace leg i by its coproduct, increasing the rank by one."""
        leg = self.legs[i]
        legs = self.legs[:i] + (leg, leg) + self.legs[i + 1 :]
        out: dict = {}
        for key, c in self.terms.items():
            for (m1, m2), ci in leg.coproduct_mon(key[i]).terms.items():
                new_key = key[:i] + (m1, m2) + key[i + 1 :]
                s = out.get(new_key, QScalar.zero()) + c * ci
                if s:
                    out[new_key] = s
                else:
                    out.pop(new_key, None)
        return TensorElement(legs, out)

    def counit_leg(self, i: int):
        """Contract leg i with the counit; returns a lower-rank tensor or Element."""
        leg = self.legs[i]
        legs = self.legs[:i] + self.legs[i + 1 :]
        out: dict = {}
        for key, c in self.terms.items():
            eps = leg.counit_mon(key[i])
            if eps.is_zero():
                continue
            new_key = key[:i] + key[i + 1 :]
            s = out.get(new_key, QScalar.zero()) + c * eps
            if s:
                out[new_key] = s
            else:
                out.pop(new_key, None)
        if len(legs) == 1:
            return Element(legs[0], {k[0]: c for k, c in out.items()})
        return TensorElement(legs, out)

    def star_legs(self) -> "TensorElement":
        """(* tensor ... tensor *) with the antilinear scalar conjugation."""
        out: dict = {}
        for key, c in self.terms.items():
            legs_els = [leg.star_mon(m) for leg, m in zip(self.legs, key)]
            _tensor_accumulate(out, legs_els, c.star(), self.legs[0].canon_scalar)
        return TensorElement(self.legs, out)

    def multiply_legs(self) -> Element:
        """For rank 2 over one algebra: the multiplication map m(x tensor y)."""
        if self.rank != 2 or self.legs[0] is not self.legs[1]:
            raise CrossAlgebraMix("multiplication needs both legs in one algebra")
        alg = self.legs[0]
        out = alg.zero()
        for (m1, m2), c in self.terms.items():
            out = out + alg.mul_mon(m1, m2) * c
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.legs == other.legs and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (tuple(l.tag for l in self.legs), frozenset(self.terms.items()))
            )
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: tuple(map(str, k))):
            mon = " ⊗ ".join(
                leg.format_mon(m) or "1" for leg, m in zip(self.legs, key)
            )
            scal = self.terms[key]
            prefix = "" if not parts else " + "
            parts.append(f"{prefix}({scal})·{mon}")
        return "".join(parts)

    __repr__ = __str__


def _tensor_accumulate(out: dict, legs_els: list[Element], coeff: QScalar, canon):
    for combo in iproduct(*(el.terms.items() for el in legs_els)):
        key = tuple(m for m, _ in combo)
        c = coeff
        for _, ci in combo:
            c = c * ci
        s = canon(out.get(key, QScalar.zero()) + c)
        if s:
            out[key] = s
        else:
            out.pop(key, None)


def tensor_of(elements: Sequence[Element]) -> TensorElement:
    legs = tuple(e.algebra for e in elements)
    out: dict = {}
    _tensor_accumulate(out, list(elements), ONE, legs[0].canon_scalar)
    return TensorElement(legs, out)


def elements_equal(e1: Element, e2: Element) -> bool:
    return e1 == e2


# ---------------------------------------------------------------------------
# Algebra base and word algebras
# ---------------------------------------------------------------------------

_INV_LETTER = {"D": "Dinv", "u": "uinv", "v": "vinv", "x": "xinv", "y": "yinv"}
_BASE_OF_INV = {v: k for k, v in _INV_LETTER.items()}


class Algebra:
    tag: str = "?"
    is_hopf: bool = True

    def canon_scalar(self, s: QScalar) -> QScalar:
        return s

    # subclasses provide: unit, zero, mul_mon, coproduct_mon, counit_mon,
    # antipode_mon, star_mon, format_mon, mon_sort_key

    def zero(self) -> Element:
        return Element(self, {})

    def monomial(self, mon, coeff=1) -> Element:
        return Element(self, {mon: _sc(coeff)})

    def _not_hopf(self):
        raise NotAHopfAlgebra(f"{self.tag} carries no coproduct")


class WordAlgebra(Algebra):
    """An algebra presented by a confluence-checked rewrite system."""

    def __init__(
        self,
        tag: str,
        system: RewriteSystem,
        generator_names: Sequence[str],
        is_hopf: bool = True,
        notes: str = "",
    ):
        self.tag = tag
        self.system = system
        self.generator_names = tuple(generator_names)
        self.is_hopf = is_hopf
        self.notes = notes
        self._mul_cache: dict = {}
        self._cop_cache: dict = {}
        self._antipode_cache: dict = {}
        self._star_cache: dict = {}
        self._cop_letter: dict[str, list] = {}
        self._counit_letter: dict[str, QScalar] = {}
        self._antipode_letter: dict[str, list] = {}
        self._star_letter: dict[str, list] = {}

    def canon_scalar(self, s: QScalar) -> QScalar:
        return self.system.scalar_canon(s)

    # -- element construction ---------------------------------------------

    def unit(self) -> Element:
        return Element(self, {(): ONE})

    def element_from_combo(self, combo: dict) -> Element:
        return Element(self, self._post_combo(combo))

    def _post_combo(self, combo: dict) -> dict:
        return combo

    def normalize_word(self, word: Iterable[str], coeff=1) -> Element:
        word = tuple(word)
        for x in word:
            if x not in self.system._rank:
                raise UnknownGenerator(f"{x!r} is not a generator of {self.tag}")
        return self.element_from_combo(self.system.normalize(word, _sc(coeff)))

    def gen(self, name: str, power: int = 1) -> Element:
        return self.normalize_word(self.gen_word(name, power))

    def gen_word(self, name: str, power: int = 1) -> Word:
        if name not in self.generator_names:
            raise UnknownGenerator(f"{name!r} is not a generator of {self.tag}")
        if power >= 0:
            return (name,) * power
        inv = _INV_LETTER.get(name) or _BASE_OF_INV.get(name)
        if inv is None or inv not in self.system._rank:
            raise InvalidExponent(f"{name} has no inverse in {self.tag}")
        return (inv,) * (-power)

    # -- multiplication ------------------------------------------------------

    def mul_mon(self, m1: Word, m2: Word) -> Element:
        key = (m1, m2)
        hit = self._mul_cache.get(key)
        if hit is None:
            hit = self.element_from_combo(self.system.normalize(m1 + m2))
            self._mul_cache[key] = hit
        return hit

    # -- Hopf structure, extended from letter data ----------------------------

    def _install_hopf_letter(self, letter, cop, counit, antipode=None, star=None):
        self._cop_letter[letter] = [
            (_sc(c), tuple(w1), tuple(w2)) for c, w1, w2 in cop
        ]
        self._counit_letter[letter] = _sc(counit)
        if antipode is not None:
            self._antipode_letter[letter] = [(_sc(c), tuple(w)) for c, w in antipode]
        if star is not None:
            self._star_letter[letter] = [(_sc(c), tuple(w)) for c, w in star]

    def _letter_cop_tensor(self, letter) -> TensorElement:
        raw = self._cop_letter[letter]
        out: dict = {}
        for c, w1, w2 in raw:
            e1 = self.element_from_combo(self.system.normalize(w1))
            e2 = self.element_from_combo(self.system.normalize(w2))
            _tensor_accumulate(out, [e1, e2], c, self.canon_scalar)
        return TensorElement((self, self), out)

    def coproduct_mon(self, mon: Word) -> TensorElement:
        if not self.is_hopf:
            self._not_hopf()
        hit = self._cop_cache.get(mon)
        if hit is not None:
            return hit
        if not mon:
            out = TensorElement((self, self), {((), ()): ONE})
        else:
            out = self.coproduct_mon(mon[:-1]) * self._letter_cop_tensor(mon[-1])
        self._cop_cache[mon] = out
        return out

    def counit_mon(self, mon: Word) -> QScalar:
        if not self.is_hopf:
            self._not_hopf()
        total = ONE
        for x in mon:
            total = total * self._counit_letter[x]
            if total.is_zero():
                break
        return self.canon_scalar(total)

    def _letter_image(self, table: dict, letter: str) -> Element:
        combo: dict = {}
        for c, w in table[letter]:
            for m, ci in self.system.normalize(w, c).items():
                s = self.canon_scalar(combo.get(m, QScalar.zero()) + ci)
                if s:
                    combo[m] = s
                else:
                    combo.pop(m, None)
        return self.element_from_combo(combo)

    def antipode_mon(self, mon: Word) -> Element:
        if not self.is_hopf:
            self._not_hopf()
        hit = self._antipode_cache.get(mon)
        if hit is not None:
            return hit
        if not mon:
            out = self.unit()
        else:
            # antimultiplicative: S(x w) = S(w) S(x)
            out = self.antipode_mon(mon[1:]) * self._letter_image(
                self._antipode_letter, mon[0]
            )
        self._antipode_cache[mon] = out
        return out

    def star_mon(self, mon: Word) -> Element:
        hit = self._star_cache.get(mon)
        if hit is not None:
            return hit
        if not mon:
            out = self.unit()
        else:
            out = self.star_mon(mon[1:]) * self._letter_image(
                self._star_letter, mon[0]
            )
        self._star_cache[mon] = out
        return out

    # -- display / enumeration ------------------------------------------------

    def format_mon(self, mon: Word) -> str:
        if not mon:
            return ""
        parts = []
        i = 0
        while i < len(mon):
            j = i
            while j < len(mon) and mon[j] == mon[i]:
                j += 1
            parts.append(mon[i] if j - i == 1 else f"{mon[i]}^{j - i}")
            i = j
        return "*".join(parts)

    def mon_sort_key(self, mon: Word):
        return self.system.order_key(mon)

    def basis_by_degree(self, max_len: int) -> list[Word]:
        return self.system.normal_words_by_degree(max_len)


# ---------------------------------------------------------------------------
# The concrete presentations
# ---------------------------------------------------------------------------

_QG_LETTERS = ("Dinv", "D", "z", "a", "d", "b", "c")


def _qg_base_rules() -> list[RewriteRule]:
    r = RewriteRule
    one = ONE
    rules = [
        r(("D", "Dinv"), ((one, ()),)),
        r(("Dinv", "D"), ((one, ()),)),
        r(("z", "Dinv"), ((one, ("Dinv", "z")),)),
        r(("z", "D"), ((one, ("D", "z")),)),
        r(("a", "Dinv"), ((one, ("Dinv", "a")),)),
        r(("a", "D"), ((one, ("D", "a")),)),
        r(("a", "z"), ((one, ("z", "a")),)),
        r(("d", "Dinv"), ((one, ("Dinv", "d")),)),
        r(("d", "D"), ((one, ("D", "d")),)),
        r(("d", "z"), ((one, ("z", "d")),)),
        r(("b", "Dinv"), ((QScalar.q_power(-2), ("Dinv", "b")),)),
        r(("b", "D"), ((QScalar.q_power(2), ("D", "b")),)),
        r(("b", "z"), ((one, ("z", "b")),)),
        r(("c", "Dinv"), ((QScalar.q_power(2), ("Dinv", "c")),)),
        r(("c", "D"), ((QScalar.q_power(-2), ("D", "c")),)),
        r(("c", "z"), ((one, ("z", "c")),)),
        r(("a", "d"), ((one, ("D", "z")),)),
        r(("d", "a"), ((one, ("D", "z")),)),
        r(("b", "a"), ((Q, ("a", "b")),)),
        r(("c", "a"), ((QI, ("a", "c")),)),
        r(("b", "d"), ((Q, ("d", "b")),)),
        r(("c", "d"), ((QI, ("d", "c")),)),
        r(("b", "c"), ((Q, ("D", "z")), (-Q, ("D",)))),
        r(("c", "b"), ((QI, ("D", "z")), (-QI, ("D",)))),
    ]
    return rules


def _quotient_extra_rules() -> list[RewriteRule]:
    r = RewriteRule
    one = ONE
    return [
        r(("a", "b"), ()),
        r(("a", "c"), ()),
        r(("d", "b"), ()),
        r(("d", "c"), ()),
        r(("z", "z"), ((one, ("z",)),)),
        r(("z", "a"), ((one, ("a",)),)),
        r(("z", "d"), ((one, ("d",)),)),
        r(("z", "b"), ()),
        r(("z", "c"), ()),
    ]


_Z_DEFINING = ("Dinv", "a", "d")  # z is the determinant-normalised diagonal ad

_QG_COPRODUCT = {
    "Dinv": [(1, ("Dinv",), ("Dinv",))],
    "D": [(1, ("D",), ("D",))],
    "a": [(1, ("a",), ("a",)), (1, ("b",), ("c",))],
    "b": [(1, ("a",), ("b",)), (1, ("b",), ("d",))],
    "c": [(1, ("c",), ("a",)), (1, ("d",), ("c",))],
    "d": [(1, ("c",), ("b",)), (1, ("d",), ("d",))],
}

_QG_COUNIT = {"Dinv": 1, "D": 1, "a": 1, "d": 1, "b": 0, "c": 0, "z": 1}


class QGroupAlgebra(WordAlgebra):
    """Shared machinery for the parent quantum group and its quotient."""

    def __init__(self, tag, rules, notes="", mutation=None):
        if mutation == "bc_weak":
            # replaces the q^2-commutation of the antidiagonal pair by a
            # plain commutation; used by the sensitivity (mutation) checks
            rules = [r for r in rules if r.pattern != ("b", "c")]
            rules.append(
                RewriteRule(("b", "c"), ((ONE, ("D", "z")), (-ONE, ("D",))))
            )
        system = RewriteSystem(_QG_LETTERS, rules)
        super().__init__(
            tag,
            system,
            generator_names=("a", "b", "c", "d", "D", "Dinv", "z"),
            notes=notes,
        )
        for letter, cop in _QG_COPRODUCT.items():
            self._install_hopf_letter(letter, cop, _QG_COUNIT[letter])
        self._counit_letter["z"] = ONE
        self._hopf_ready = False

    def _ensure_hopf_letters(self):
        if self._hopf_ready:
            return
        # mark ready up front: the z computation below folds over the
        # statically installed letters only, so re-entry is harmless
        self._hopf_ready = True
        images = _antipode_images()
        for letter, combo in images["antipode"].items():
            self._antipode_letter[letter] = [(c, w) for c, w in combo]
        for letter, combo in images["star"].items():
            self._star_letter[letter] = [(c, w) for c, w in combo]
        # z = Dinv*a*d: its structure maps are computed, not postulated
        zc = self.unit().coproduct()
        for x in _Z_DEFINING:
            zc = zc * self._letter_cop_tensor(x)
        self._cop_letter["z"] = [
            (c, k[0], k[1]) for k, c in zc.terms.items()
        ]
        s_z = self.unit()
        for x in reversed(_Z_DEFINING):
            s_z = s_z * self._letter_image(self._antipode_letter, x)
        self._antipode_letter["z"] = [(c, m) for m, c in s_z.terms.items()]
        star_z = self.unit()
        for x in reversed(_Z_DEFINING):
            star_z = star_z * self._letter_image(self._star_letter, x)
        self._star_letter["z"] = [(c, m) for m, c in star_z.terms.items()]

    def coproduct_mon(self, mon):
        self._ensure_hopf_letters()
        return super().coproduct_mon(mon)

    def antipode_mon(self, mon):
        self._ensure_hopf_letters()
        return super().antipode_mon(mon)

    def star_mon(self, mon):
        self._ensure_hopf_letters()
        return super().star_mon(mon)


@lru_cache(maxsize=None)
def auq2() -> QGroupAlgebra:
    return QGroupAlgebra(
        "AUq2",
        _qg_base_rules(),
        notes=(
            "z-powers are restricted to nonnegative exponents: the published "
            "basis prints integer powers, but no inverse of z is derivable "
            "from the presentation"
        ),
    )


@lru_cache(maxsize=None)
def adtq(mutation: str | None = None) -> QGroupAlgebra:
    tag = "ADTq" if mutation is None else f"ADTq!{mutation}"
    return QGroupAlgebra(
        tag, _qg_base_rules() + _quotient_extra_rules(), mutation=mutation
    )


# -- the classical torus ------------------------------------------------------


class TorusAlgebra(WordAlgebra):
    def lattice_mon(self, k: int, l: int) -> Word:
        u, uinv, v, vinv = self._names
        return ((u,) * k if k >= 0 else (uinv,) * (-k)) + (
            (v,) * l if l >= 0 else (vinv,) * (-l)
        )

    def lattice_exponents(self, mon: Word) -> tuple[int, int]:
        u, uinv, v, vinv = self._names
        k = sum(1 if x == u else -1 if x == uinv else 0 for x in mon)
        l = sum(1 if x == v else -1 if x == vinv else 0 for x in mon)
        return k, l


def _torus_rules(names, q_swap: QScalar | None) -> list[RewriteRule]:
    u, uinv, v, vinv = names
    one = ONE
    r = RewriteRule
    rules = [
        r((u, uinv), ((one, ()),)),
        r((uinv, u), ((one, ()),)),
        r((v, vinv), ((one, ()),)),
        r((vinv, v), ((one, ()),)),
    ]
    if q_swap is None:
        for hi, lo in ((v, u), (v, uinv), (vinv, u), (vinv, uinv)):
            rules.append(r((hi, lo), ((one, (lo, hi)),)))
    else:
        rules.append(r((v, u), ((q_swap, (u, v)),)))
        rules.append(r((v, uinv), ((q_swap.inverse(), (uinv, v)),)))
        rules.append(r((vinv, u), ((q_swap.inverse(), (u, vinv)),)))
        rules.append(r((vinv, uinv), ((q_swap, (uinv, vinv)),)))
    return rules


@lru_cache(maxsize=None)
def at2() -> TorusAlgebra:
    names = ("u", "uinv", "v", "vinv")
    alg = TorusAlgebra(
        "AT2",
        RewriteSystem(("uinv", "u", "vinv", "v"), _torus_rules(names, None)),
        generator_names=("u", "v"),
    )
    alg._names = names
    for x, xi in (("u", "uinv"), ("uinv", "u"), ("v", "vinv"), ("vinv", "v")):
        alg._install_hopf_letter(
            x, [(1, (x,), (x,))], 1, antipode=[(1, (xi,))], star=[(1, (xi,))]
        )
    return alg


@lru_cache(maxsize=None)
def at2q() -> TorusAlgebra:
    # x y = q y x, so moving y leftward past x costs q^-1
    names = ("x", "xinv", "y", "yinv")
    alg = TorusAlgebra(
        "AT2q",
        RewriteSystem(("xinv", "x", "yinv", "y"), _torus_rules(names, QI)),
        generator_names=("x", "y"),
        is_hopf=False,
    )
    alg._names = names
    for x, xi in (("x", "xinv"), ("xinv", "x"), ("y", "yinv"), ("yinv", "y")):
        alg._star_letter[x] = [(ONE, (xi,))]
    return alg


# -- functions on the two-point group ----------------------------------------


class Z2Algebra(WordAlgebra):
    """Functions on Z2 with basis d0, d1; the unit is d0 + d1."""

    def unit(self) -> Element:
        return Element(self, {("d0",): ONE, ("d1",): ONE})

    def _post_combo(self, combo: dict) -> dict:
        unit_coeff = combo.pop((), None)
        if unit_coeff:
            for m in (("d0",), ("d1",)):
                s = combo.get(m, QScalar.zero()) + unit_coeff
                if s:
                    combo[m] = s
                else:
                    combo.pop(m, None)
        return combo

    def delta(self, i: int) -> Element:
        return self.monomial((f"d{i}",))

    def basis_by_degree(self, max_len: int) -> list[Word]:
        # the empty word is not a basis monomial here: the unit is d0 + d1
        return [("d0",), ("d1",)]


@lru_cache(maxsize=None)
def az2() -> Z2Algebra:
    r = RewriteRule
    one = ONE
    rules = [
        r(("d0", "d0"), ((one, ("d0",)),)),
        r(("d1", "d1"), ((one, ("d1",)),)),
        r(("d0", "d1"), ()),
        r(("d1", "d0"), ()),
    ]
    alg = Z2Algebra(
        "AZ2", RewriteSystem(("d0", "d1"), rules), generator_names=("d0", "d1")
    )
    alg._install_hopf_letter(
        "d0",
        [(1, ("d0",), ("d0",)), (1, ("d1",), ("d1",))],
        1,
        antipode=[(1, ("d0",))],
        star=[(1, ("d0",))],
    )
    alg._install_hopf_letter(
        "d1",
        [(1, ("d0",), ("d1",)), (1, ("d1",), ("d0",))],
        0,
        antipode=[(1, ("d1",))],
        star=[(1, ("d1",))],
    )
    return alg


@lru_cache(maxsize=None)
def free_algebra(letters: tuple[str, ...] = ("g",)) -> WordAlgebra:
    """Free associative algebra; no relations, every word is normal."""
    return WordAlgebra(
        f"FREE({','.join(letters)})",
        RewriteSystem(letters, []),
        generator_names=letters,
        is_hopf=False,
    )


# ---------------------------------------------------------------------------
# Normal monomial views and pattern windows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientMon:
    """Structured reading D^m [z] gen^n of a normal quotient monomial."""

    d: int
    z: bool
    gen: str | None
    n: int


def quotient_mon_view(mon: Word) -> QuotientMon:
    d = 0
    z = False
    gen = None
    n = 0
    for x in mon:
        if x == "D":
            d += 1
        elif x == "Dinv":
            d -= 1
        elif x == "z":
            z = True
        else:
            if gen is None:
                gen = x
            elif gen != x:
                raise ValueError(f"not a quotient normal monomial: {mon}")
            n += 1
    return QuotientMon(d, z, gen, n)


def quotient_mon_word(d: int, z: bool = False, gen: str | None = None, n: int = 0) -> Word:
    word: tuple[str, ...] = ("D",) * d if d >= 0 else ("Dinv",) * (-d)
    if z:
        word = word + ("z",)
    if gen is not None and n:
        word = word + (gen,) * n
    return word


@dataclass(frozen=True)
class BasisWindow:
    """Exponent bounds used by basis enumeration."""

    d_max: int = 0
    gen_max: int = 0
    z_max: int = 1
    lattice_max: int = 0


def enumerate_basis(algebra: Algebra, window: BasisWindow) -> list:
    """The published basis pattern of the algebra, restricted to the window."""
    tag = algebra.tag
    if tag.startswith("ADTq") or tag.startswith("FDQUOT"):
        if tag.startswith("FDQUOT"):
            return algebra.system.all_normal_words()
        out = []
        for d in range(-window.d_max, window.d_max + 1):
            out.append(quotient_mon_word(d))
            out.append(quotient_mon_word(d, z=True))
            for gen in ("a", "d", "b", "c"):
                for n in range(1, window.gen_max + 1):
                    out.append(quotient_mon_word(d, gen=gen, n=n))
        return out
    if tag == "AUq2":
        out = []
        x_slots = [(None, 0)] + [(g, m) for g in ("a", "d") for m in range(1, window.gen_max + 1)]
        y_slots = [(None, 0)] + [(g, m) for g in ("b", "c") for m in range(1, window.gen_max + 1)]
        for k in range(-window.d_max, window.d_max + 1):
            for l in range(0, window.z_max + 1):
                for (xg, xm) in x_slots:
                    for (yg, ym) in y_slots:
                        word = quotient_mon_word(k) + ("z",) * l
                        if xg:
                            word += (xg,) * xm
                        if yg:
                            word += (yg,) * ym
                        out.append(word)
        return out
    if tag in ("AT2", "AT2q"):
        r = window.lattice_max
        return [
            algebra.lattice_mon(k, l)
            for k in range(-r, r + 1)
            for l in range(-r, r + 1)
        ]
    if tag == "AZ2":
        return [("d0",), ("d1",)]
    raise UnknownGenerator(f"no basis pattern for {tag}")


# ---------------------------------------------------------------------------
# Antipode derivation (solved once from the axioms, then frozen)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _antipode_images() -> dict:
    """Solve the antipode equations on the parent algebra.

    The ansatz is a combination of the four degree-two monomials Dinv*g; the
    matrix antipode identities then form a linear system with a unique
    solution.  The involution follows from the compact-form convention
    (the star of a diagonal entry is the antipode of that entry, the star of
    an off-diagonal entry is the antipode of the opposite one).
    """
    from .linalg import solve_unique

    alg = auq2()
    gens = ("a", "b", "c", "d")
    cands = [("Dinv", g) for g in gens]
    nunk = len(gens) * len(cands)

    def unk(gen_i: int, cand_i: int) -> int:
        return gen_i * len(cands) + cand_i

    u = [["a", "b"], ["c", "d"]]
    rows: dict = {}

    def add_equation(products, const_is_unit):
        # products: list of (gen_index, word_left_of_candidate, word_right)
        coeffs: dict[Word, list[QScalar]] = {}
        for gi, left, right in products:
            for ci, cand in enumerate(cands):
                e = alg.normalize_word(left + cand + right)
                for m, c in e.terms.items():
                    row = coeffs.setdefault(m, [QScalar.zero()] * nunk)
                    row[unk(gi, ci)] = row[unk(gi, ci)] + c
        const: dict[Word, QScalar] = {(): ONE} if const_is_unit else {}
        for m in set(coeffs) | set(const):
            row = coeffs.get(m, [QScalar.zero()] * nunk)
            rows[(len(rows), m)] = (row, const.get(m, QScalar.zero()))

    for i in range(2):
        for j in range(2):
            # sum_k S(u[i][k]) * u[k][j] = delta_ij
            add_equation(
                [(gens.index(u[i][k]), (), (u[k][j],)) for k in range(2)],
                const_is_unit=(i == j),
            )
            # sum_k u[i][k] * S(u[k][j]) = delta_ij
            add_equation(
                [(gens.index(u[k][j]), (u[i][k],), ()) for k in range(2)],
                const_is_unit=(i == j),
            )

    matrix = [row for row, _ in rows.values()]
    rhs = [b for _, b in rows.values()]
    solution = solve_unique(matrix, rhs)

    images: dict[str, list] = {}
    for gi, g in enumerate(gens):
        combo = []
        for ci, cand in enumerate(cands):
            c = solution[unk(gi, ci)]
            if not c.is_zero():
                combo.append((c, cand))
        images[g] = combo
    antipode = dict(images)
    antipode["D"] = [(ONE, ("Dinv",))]
    antipode["Dinv"] = [(ONE, ("D",))]
    star = {
        "a": images["a"],
        "d": images["d"],
        "b": images["c"],
        "c": images["b"],
        "D": [(ONE, ("Dinv",))],
        "Dinv": [(ONE, ("D",))],
    }
    return {"antipode": antipode, "star": star}


# ---------------------------------------------------------------------------
# Finite quotients at roots of unity
# ---------------------------------------------------------------------------


def root_condition_holds(n: int, mode: CyclotomicMode) -> bool:
    value = mode.canon((-Q) ** (n * n))
    return value == ONE


def build_finite_quotient(n: int, mode: CyclotomicMode | None) -> WordAlgebra:
    """Quotient by a^n - z, b^n - (1-z), c^n - (1-z), d^n - z, D^n - 1.

    ``mode`` must specialise q to a primitive root of unity making
    (-q)^(n^2) = 1; symbolic q is refused.  Derived relations (such as
    D*a^(n-1) = d) are produced by bounded completion, after which the basis
    of irreducible words is provably finite.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if mode is None:
        raise RootConditionViolated("finite quotients need a root-of-unity mode")
    mode = CyclotomicMode(mode.order, primitive=True)
    if not root_condition_holds(n, mode):
        raise RootConditionViolated(
            f"(-q)^{n * n} != 1 for a primitive root of order {mode.order}"
        )
    return _finite_quotient_cached(n, mode.order)


@lru_cache(maxsize=None)
def _finite_quotient_cached(n: int, order: int) -> WordAlgebra:
    mode = CyclotomicMode(order, primitive=True)
    letters = ("D", "z", "a", "d", "b", "c")

    def translate(word: Word) -> Word:
        out: tuple[str, ...] = ()
        for x in word:
            out += ("D",) * (n - 1) if x == "Dinv" else (x,)
        return out

    rules = []
    for rule in _qg_base_rules() + _quotient_extra_rules():
        if "Dinv" in rule.pattern:
            continue
        rules.append(rule)
    one_minus_z = ((ONE, ()), (-ONE, ("z",)))
    rules += [
        RewriteRule(("a",) * n, ((ONE, ("z",)),)),
        RewriteRule(("d",) * n, ((ONE, ("z",)),)),
        RewriteRule(("b",) * n, one_minus_z),
        RewriteRule(("c",) * n, one_minus_z),
        RewriteRule(("D",) * n, ((ONE, ()),)),
    ]
    system = RewriteSystem(letters, rules, scalar_canon=mode.canon)
    system.complete(
        invert_scalar=lambda s: invert_in_cyclotomic_field(s, mode),
        max_len=2 * n + 4,
    )
    leftovers = system.unresolved_pairs(2 * n + 4)
    if leftovers:
        raise RootConditionViolated(
            f"quotient rewrite system is not confluent: {leftovers[0].word}"
        )

    alg = FiniteQuotientAlgebra(
        f"FDQUOT(n={n},order={order})",
        system,
        generator_names=("a", "b", "c", "d", "D", "Dinv", "z"),
    )
    alg.n = n
    alg.mode = mode
    alg._translate = translate
    parent = adtq()
    parent._ensure_hopf_letters()
    for letter in letters:
        if letter == "z":
            continue
        alg._install_hopf_letter(
            letter,
            [(c, translate(w1), translate(w2)) for c, w1, w2 in parent._cop_letter[letter]],
            parent._counit_letter[letter],
            antipode=[(c, translate(w)) for c, w in parent._antipode_letter[letter]],
            star=[(c, translate(w)) for c, w in parent._star_letter[letter]],
        )
    alg._install_hopf_letter(
        "z",
        [(c, translate(w1), translate(w2)) for c, w1, w2 in parent._cop_letter["z"]],
        parent._counit_letter["z"],
        antipode=[(c, translate(w)) for c, w in parent._antipode_letter["z"]],
        star=[(c, translate(w)) for c, w in parent._star_letter["z"]],
    )
    alg.dimension = len(system.all_normal_words())
    return alg


class FiniteQuotientAlgebra(WordAlgebra):
    n: int
    mode: CyclotomicMode
    dimension: int

    def gen_word(self, name, power=1):
        if name in ("D", "Dinv") and power != 0:
            exp = power if name == "D" else -power
            return ("D",) * ((exp % self.n) if self.n > 1 else 0)
        return super().gen_word(name, power)

    def from_parent(self, e: Element) -> Element:
        """Image of a quotient-algebra element under the root-of-unity quotient."""
        out = self.zero()
        for m, c in e.terms.items():
            out = out + self.normalize_word(self._translate(m), c)
        return out


def project_to_quotient(e: Element, target: WordAlgebra) -> Element:
    """Reinterpret words of the parent presentation inside a quotient."""
    out = target.zero()
    for m, c in e.terms.items():
        out = out + target.normalize_word(m, c)
    return out


def check_confluence(algebra: WordAlgebra, degree_bound: int):
    """Unresolved critical pairs of the presentation up to the degree bound.

    An empty list is the machine obligation that the irreducible words form
    a linear basis; non-confluence is returned as data, not raised.
    """
    return algebra.system.unresolved_pairs(degree_bound)

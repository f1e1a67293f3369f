"""Hopf *-structure maps, convolution algebra and the invariant functional.

The structure maps themselves live on the algebra objects (they are letter
data extended (anti)multiplicatively); this module provides the element-level
entry points, the axiom verifier used by the suites, linear-map tables with
their convolution product, and the Haar functional of the double-torus
quotient together with its positivity and invariance checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .algebras import Algebra, Element, TensorElement, quotient_mon_view
from .errors import NotAHopfAlgebra, WindowExceeded
from .report import Check
from .scalars import QScalar


def coproduct(e: Element) -> TensorElement:
    return e.coproduct()


def counit(e: Element) -> QScalar:
    return e.counit()


def antipode(e: Element) -> Element:
    return e.antipode()


def star_element(e: Element) -> Element:
    return e.star()


# ---------------------------------------------------------------------------
# Axiom verification
# ---------------------------------------------------------------------------


def verify_hopf_axioms(algebra: Algebra, max_degree: int, mons=None) -> list[Check]:
    """Check the Hopf *-algebra axioms on every basis monomial of the window.

    Covered: coassociativity, both counit laws, both antipode laws,
    compatibility of the coproduct with the involution, the involution being
    involutive, and (S compose *) squaring to the identity.
    """
    if not algebra.is_hopf:
        raise NotAHopfAlgebra(f"{algebra.tag} carries no coproduct")
    checks: list[Check] = []
    if mons is None:
        mons = algebra.basis_by_degree(max_degree)
    failures = {name: None for name in _AXIOM_NAMES}
    for mon in mons:
        el = algebra.monomial(mon)
        cop = el.coproduct()
        eps = el.counit()
        if cop.coproduct_leg(0) != cop.coproduct_leg(1):
            failures["coassociativity"] = failures["coassociativity"] or str(el)
        if cop.counit_leg(0) != el or cop.counit_leg(1) != el:
            failures["counit_law"] = failures["counit_law"] or str(el)
        eps_unit = algebra.unit() * eps
        left = cop.apply_leg(0, algebra.antipode_mon, algebra).multiply_legs()
        right = cop.apply_leg(1, algebra.antipode_mon, algebra).multiply_legs()
        if left != eps_unit or right != eps_unit:
            failures["antipode_law"] = failures["antipode_law"] or str(el)
        starred = el.star()
        if starred.coproduct() != cop.star_legs():
            failures["coproduct_star"] = failures["coproduct_star"] or str(el)
        if starred.star() != el:
            failures["star_involutive"] = failures["star_involutive"] or str(el)
        if starred.antipode().star().antipode() != el:
            failures["antipode_star_square"] = failures["antipode_star_square"] or str(el)
    for name in _AXIOM_NAMES:
        checks.append(
            Check(
                f"hopf_{algebra.tag}_{name}",
                failures[name] is None,
                witness=failures[name],
            )
        )
    return checks


_AXIOM_NAMES = (
    "coassociativity",
    "counit_law",
    "antipode_law",
    "coproduct_star",
    "star_involutive",
    "antipode_star_square",
)


# ---------------------------------------------------------------------------
# Linear maps and convolution
# ---------------------------------------------------------------------------


@dataclass
class LinearMapTable:
    """A linear map given by images of basis monomials, with optional fallback.

    Out-of-window queries raise :class:`WindowExceeded` instead of silently
    extrapolating.
    """

    source: Algebra
    target: Algebra
    images: dict = field(default_factory=dict)
    window: str = ""
    fallback: Callable | None = None
    name: str = ""

    def apply_mon(self, mon) -> Element:
        hit = self.images.get(mon)
        if hit is not None:
            return hit
        if self.fallback is not None:
            return self.fallback(mon)
        raise WindowExceeded(
            f"{self.name or 'map'}: monomial outside window {self.window!r}"
        )

    def apply(self, e: Element) -> Element:
        out = self.target.zero()
        for m, c in e.terms.items():
            out = out + self.apply_mon(m) * c
        return out


def convolve(f: LinearMapTable, g: LinearMapTable) -> LinearMapTable:
    """Convolution product: multiply the images of the two coproduct legs."""
    if f.source is not g.source or f.target is not g.target:
        raise WindowExceeded("convolution needs a common source and target")
    source, target = f.source, g.target

    def fallback(mon):
        out = target.zero()
        for (m1, m2), c in source.coproduct_mon(mon).terms.items():
            out = out + (f.apply_mon(m1) * g.apply_mon(m2)) * c
        return out

    return LinearMapTable(
        source, target, window=f.window, fallback=fallback, name=f"({f.name})*({g.name})"
    )


def unit_counit(source: Algebra, target: Algebra) -> LinearMapTable:
    return LinearMapTable(
        source,
        target,
        fallback=lambda mon: target.unit() * source.counit_mon(mon),
        name="unit∘counit",
    )


# ---------------------------------------------------------------------------
# The Haar functional
# ---------------------------------------------------------------------------


def haar(e: Element) -> QScalar:
    """The invariant state: supported on the two central idempotents only.

    On the normal basis, powers of the determinant alone or together with a
    generator run are annihilated; the idempotent components each carry
    weight one half (forced by invariance applied to the group-like 2z-1).
    """
    if not e.algebra.tag.startswith("ADTq"):
        raise WindowExceeded("the invariant functional lives on the quotient algebra")
    half = QScalar.of(Fraction(1, 2))
    total = QScalar.zero()
    for mon, c in e.terms.items():
        view = quotient_mon_view(mon)
        if view.gen is not None or view.d != 0:
            continue
        total = total + (c * half if view.z else c)
    return total


def haar_biinvariance_checks(algebra, max_degree: int) -> list[Check]:
    bad_left = bad_right = None
    for mon in algebra.basis_by_degree(max_degree):
        el = algebra.monomial(mon)
        cop = el.coproduct()
        value = algebra.unit() * haar(el)
        left = _contract_haar(cop, leg=1, algebra=algebra)
        right = _contract_haar(cop, leg=0, algebra=algebra)
        if left != value:
            bad_left = bad_left or str(el)
        if right != value:
            bad_right = bad_right or str(el)
    return [
        Check("haar_right_invariance", bad_left is None, witness=bad_left),
        Check("haar_left_invariance", bad_right is None, witness=bad_right),
    ]


def _contract_haar(t: TensorElement, leg: int, algebra) -> Element:
    out = algebra.zero()
    for key, c in t.terms.items():
        weight = haar(algebra.monomial(key[leg]))
        if weight.is_zero():
            continue
        out = out + algebra.monomial(key[1 - leg]) * (c * weight)
    return out


def haar_gram_min_eigenvalue(algebra, max_degree: int, theta: float) -> float:
    """Least eigenvalue of the Gram matrix [h(p_i* p_j)] at a numeric q."""
    mons = algebra.basis_by_degree(max_degree)
    stars = [algebra.monomial(m).star() for m in mons]
    els = [algebra.monomial(m) for m in mons]
    n = len(mons)
    gram = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            gram[i, j] = haar(stars[i] * els[j]).eval_unit(theta)
    if np.max(np.abs(gram - gram.conj().T)) > 1e-10:
        raise ArithmeticError("Gram matrix is not Hermitian")
    return float(np.min(np.linalg.eigvalsh((gram + gram.conj().T) / 2)))

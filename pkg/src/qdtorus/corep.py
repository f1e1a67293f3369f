"""Corepresentation matrices, characters and intertwiners.

The three families of unitary irreducibles are the determinant powers, their
twists by the central unitary group-like 2z-1, and the two-dimensional
family whose entries are determinant powers times generator runs.  The
layout of the two-dimensional family (printed rows vs their transpose) is
determined mechanically against the fixed coproduct convention and recorded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebras import Element, adtq, quotient_mon_word
from .errors import CyclotomicModeUnsupported, IncompleteWindow
from .hopf import haar
from .linalg import nullspace
from .report import Check
from .scalars import QScalar


@dataclass(frozen=True)
class CorepMatrix:
    label: str
    entries: tuple[tuple[Element, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def algebra(self):
        return self.entries[0][0].algebra


def _el(d: int, z: bool = False, gen=None, n: int = 0, coeff=1) -> Element:
    alg = adtq()
    return alg.monomial(quotient_mon_word(d, z, gen, n), coeff)


def chi(m: int) -> CorepMatrix:
    return CorepMatrix(f"chi({m})", ((_el(m),),))


def chiz(m: int) -> CorepMatrix:
    entry = _el(m, z=True, coeff=2) - _el(m)
    return CorepMatrix(f"chiz({m})", ((entry,),))


@lru_cache(maxsize=None)
def _two_dim_layout() -> str:
    """Decide whether the printed entry layout or its transpose coreps."""
    for layout in ("printed", "transposed"):
        candidate = _build_w(0, 1, layout)
        if all(c.passed for c in verify_corep(candidate, check_unitary=False)):
            return layout
    raise ArithmeticError("neither layout satisfies the corepresentation law")


def _build_w(m: int, n: int, layout: str) -> CorepMatrix:
    rows = (
        (_el(m, gen="a", n=n), _el(m, gen="b", n=n)),
        (_el(m, gen="c", n=n), _el(m, gen="d", n=n)),
    )
    if layout == "transposed":
        rows = tuple(zip(*rows))
    return CorepMatrix(f"w({m},{n})", rows)


def w_rep(m: int, n: int) -> CorepMatrix:
    if n < 1:
        raise ValueError("the two-dimensional family needs n >= 1")
    return _build_w(m, n, _two_dim_layout())


def direct_sum(v: CorepMatrix, w: CorepMatrix) -> CorepMatrix:
    alg = v.algebra
    zero = alg.zero()
    top = tuple(row + (zero,) * w.dim for row in v.entries)
    bottom = tuple((zero,) * v.dim + row for row in w.entries)
    return CorepMatrix(f"{v.label}+{w.label}", top + bottom)


def standard_families(m_max: int, n_max: int) -> list[CorepMatrix]:
    out: list[CorepMatrix] = []
    for m in range(-m_max, m_max + 1):
        out.append(chi(m))
        out.append(chiz(m))
    for m in range(-m_max, m_max + 1):
        for n in range(1, n_max + 1):
            out.append(w_rep(m, n))
    return out


# ---------------------------------------------------------------------------
# Verification and characters
# ---------------------------------------------------------------------------


def verify_corep(w: CorepMatrix, check_unitary: bool = True) -> list[Check]:
    alg = w.algebra
    from .algebras import tensor_of

    cop_bad = eps_bad = uni_bad = None
    for i in range(w.dim):
        for j in range(w.dim):
            expected = None
            for k in range(w.dim):
                term = tensor_of([w.entries[i][k], w.entries[k][j]])
                expected = term if expected is None else expected + term
            if w.entries[i][j].coproduct() != expected:
                cop_bad = cop_bad or f"{w.label}[{i}][{j}]"
            eps = w.entries[i][j].counit()
            if eps != (QScalar.one() if i == j else QScalar.zero()):
                eps_bad = eps_bad or f"{w.label}[{i}][{j}]"
    checks = [
        Check(f"corep_{w.label}_coproduct_law", cop_bad is None, witness=cop_bad),
        Check(f"corep_{w.label}_counit_law", eps_bad is None, witness=eps_bad),
    ]
    if check_unitary:
        unit = alg.unit()
        for i in range(w.dim):
            for j in range(w.dim):
                target = unit if i == j else alg.zero()
                rowsum = alg.zero()
                colsum = alg.zero()
                for k in range(w.dim):
                    rowsum = rowsum + w.entries[i][k] * w.entries[j][k].star()
                    colsum = colsum + w.entries[k][i].star() * w.entries[k][j]
                if rowsum != target or colsum != target:
                    uni_bad = uni_bad or f"{w.label}[{i}][{j}]"
        checks.append(Check(f"corep_{w.label}_unitary", uni_bad is None, witness=uni_bad))
    return checks


def character_of(w: CorepMatrix) -> Element:
    out = w.algebra.zero()
    for i in range(w.dim):
        out = out + w.entries[i][i]
    return out


def character_gram(coreps: list[CorepMatrix]) -> list[list[QScalar]]:
    chars = [character_of(w) for w in coreps]
    stars = [c.star() for c in chars]
    return [[haar(si * cj) for cj in chars] for si in stars]


def character_gram_is_identity(coreps: list[CorepMatrix]) -> Check:
    gram = character_gram(coreps)
    witness = None
    for i, row in enumerate(gram):
        for j, value in enumerate(row):
            expected = QScalar.one() if i == j else QScalar.zero()
            if value != expected:
                witness = f"h(chi[{coreps[i].label}]* chi[{coreps[j].label}]) = {value}"
                break
        if witness:
            break
    return Check("character_gram_identity", witness is None, witness=witness)


def decompose_character(chi_el: Element, candidates: list[CorepMatrix]) -> dict[str, int]:
    """Multiplicities against the candidate irreducibles via the Haar pairing.

    Raises :class:`IncompleteWindow` if the multiplicities do not reconstruct
    the input exactly (candidate window too small).
    """
    mults: dict[str, int] = {}
    recon = chi_el.algebra.zero()
    for w in candidates:
        char = character_of(w)
        weight = haar(char.star() * chi_el)
        if weight.is_zero():
            continue
        value = weight.constant_value()
        if value.denominator != 1 or value < 0:
            raise IncompleteWindow(
                f"non-integral multiplicity {weight} for {w.label}"
            )
        mults[w.label] = int(value)
        recon = recon + char * weight
    if recon != chi_el:
        raise IncompleteWindow("reconstruction from candidates failed")
    return mults


# ---------------------------------------------------------------------------
# Intertwiners
# ---------------------------------------------------------------------------


def intertwiner_space(v: CorepMatrix, w: CorepMatrix) -> list[list[list[QScalar]]]:
    """Basis of scalar matrices T with w T = T v, solved exactly over Q(q)."""
    alg = v.algebra
    if alg.tag.startswith("FDQUOT"):
        raise CyclotomicModeUnsupported(
            "intertwiner solving needs field coefficients; the cyclotomic "
            "quotient ring has zero divisors"
        )
    nrows_T, ncols_T = w.dim, v.dim
    nunk = nrows_T * ncols_T

    def unk(r, c):
        return r * ncols_T + c

    rows: list[list[QScalar]] = []
    buckets: dict = {}
    for i in range(w.dim):
        for j in range(v.dim):
            # sum_k w[i][k] T[k][j] - sum_k T[i][k] v[k][j] = 0
            coeffs: dict = {}
            for k in range(w.dim):
                for mon, c in w.entries[i][k].terms.items():
                    row = coeffs.setdefault(mon, [QScalar.zero()] * nunk)
                    row[unk(k, j)] = row[unk(k, j)] + c
            for k in range(v.dim):
                for mon, c in v.entries[k][j].terms.items():
                    row = coeffs.setdefault(mon, [QScalar.zero()] * nunk)
                    row[unk(i, k)] = row[unk(i, k)] - c
            rows.extend(coeffs.values())
    basis = nullspace(rows, nunk)
    return [
        [[vec[unk(r, c)] for c in range(ncols_T)] for r in range(nrows_T)]
        for vec in basis
    ]


# ---------------------------------------------------------------------------
# Matrix-coefficient coverage of the basis window
# ---------------------------------------------------------------------------


def peter_weyl_checks(m_max: int, n_max: int) -> list[Check]:
    """Matrix entries of the listed irreducibles biject onto the basis window.

    The idempotent lines are reached through half the sum and half the
    difference of the two one-dimensional families.
    """
    half = QScalar.of(Fraction(1, 2))
    produced: set = set()
    expected: set = set()
    witness = None
    for m in range(-m_max, m_max + 1):
        for n in range(1, n_max + 1):
            w = w_rep(m, n)
            for row in w.entries:
                for entry in row:
                    produced.add(entry)
            for g in ("a", "b", "c", "d"):
                expected.add(_el(m, gen=g, n=n))
        plus = (character_of(chi(m)) + character_of(chiz(m))) * half
        minus = (character_of(chi(m)) - character_of(chiz(m))) * half
        produced.add(plus)
        produced.add(minus)
        expected.add(_el(m, z=True))
        expected.add(_el(m) - _el(m, z=True))
    total = (2 * m_max + 1) * (4 * n_max + 2)
    if len(produced) != total:
        witness = f"expected {total} distinct coefficients, got {len(produced)}"
    elif produced != expected:
        witness = "coefficient set differs from the basis window"
    return [Check("peter_weyl_coverage", witness is None, witness=witness)]

"""Truncated numeric realization of the invariant-state representation.

The representation acts on a two-sector lattice basis indexed by
(sector, m, n).  The four generators are weighted shifts given in closed
form; the determinant, its inverse and the idempotent witness are built
compositionally.  Operators are materialised as finitely supported matrices
on a finite window; columns whose image leaves the window are marked
truncated, and all statements are asserted on the interior only.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from functools import lru_cache

from .algebras import Element, adtq
from .errors import NonConvergence, WindowOverflow
from .report import Check

Site = tuple[str, int, int]
Vec = dict[Site, complex]

ADJOINT_TOL = 1e-10


@dataclass(frozen=True)
class LatticeWindow:
    size: int

    def sites(self) -> list[Site]:
        n = self.size
        return [
            (sector, m, k)
            for sector in ("c", "q")
            for m in range(-n, n + 1)
            for k in range(-n, n + 1)
        ]

    def interior(self) -> list[Site]:
        n = self.size
        return [
            (sector, m, k)
            for sector in ("c", "q")
            for m in range(-n + 1, n)
            for k in range(-n + 1, n)
        ]

    def contains(self, site: Site) -> bool:
        return abs(site[1]) <= self.size and abs(site[2]) <= self.size

    def is_interior(self, site: Site) -> bool:
        return abs(site[1]) < self.size and abs(site[2]) < self.size


def lattice_action(
    gen: str, site: Site, qval: complex, mutate_b: bool = False
):
    """Exact infinite-lattice action of one generator; None is a structural zero."""
    sector, m, n = site
    if gen == "a":
        if sector != "c":
            return None
        return ("c", m, n + 1) if n >= 0 else ("c", m + 1, n + 1), 1.0 + 0j
    if gen == "d":
        if sector != "c":
            return None
        return ("c", m + 1, n - 1) if n > 0 else ("c", m, n - 1), 1.0 + 0j
    if gen == "b":
        if sector != "q":
            return None
        if n > 0:
            exponent = 2 * n if mutate_b else 2 * n - 1
            return ("q", m + 1, n - 1), -(qval ** exponent)
        return ("q", m, n - 1), qval ** (2 * m)
    if gen == "c":
        if sector != "q":
            return None
        if n >= 0:
            return ("q", m, n + 1), 1.0 + 0j
        return ("q", m + 1, n + 1), -(qval ** (-2 * m - 1))
    raise ValueError(f"no lattice rule for generator {gen!r}")


class SparseOperator:
    """Finitely supported operator on a window, column-indexed.

    ``truncated`` collects columns whose true image was clipped by the
    window; such columns are untrusted and strict application refuses them.
    """

    def __init__(self, window: LatticeWindow, cols=None, truncated=None):
        self.window = window
        self.cols: dict[Site, dict[Site, complex]] = cols or {}
        self.truncated: set[Site] = truncated or set()

    @staticmethod
    def from_rule(window: LatticeWindow, rule) -> "SparseOperator":
        cols: dict[Site, dict[Site, complex]] = {}
        truncated: set[Site] = set()
        for site in window.sites():
            hit = rule(site)
            if hit is None:
                continue
            target, weight = hit
            if window.contains(target):
                cols[site] = {target: weight}
            else:
                truncated.add(site)
        return SparseOperator(window, cols, truncated)

    def entry(self, row: Site, col: Site) -> complex:
        return self.cols.get(col, {}).get(row, 0j)

    def apply(self, vec: Vec, strict: bool = False) -> Vec:
        out: Vec = {}
        for site, amp in vec.items():
            if abs(amp) < 1e-15:
                continue
            if strict and site in self.truncated:
                raise WindowOverflow(f"column {site} is truncated")
            for target, weight in self.cols.get(site, {}).items():
                out[target] = out.get(target, 0j) + weight * amp
        return {s: v for s, v in out.items() if v != 0}

    def compose(self, other: "SparseOperator") -> "SparseOperator":
        """self applied after other."""
        cols: dict[Site, dict[Site, complex]] = {}
        truncated = set(other.truncated)
        for site, col in other.cols.items():
            acc: dict[Site, complex] = {}
            for mid, w1 in col.items():
                if mid in self.truncated:
                    truncated.add(site)
                for target, w2 in self.cols.get(mid, {}).items():
                    acc[target] = acc.get(target, 0j) + w2 * w1
            acc = {s: v for s, v in acc.items() if abs(v) > 0}
            if acc:
                cols[site] = acc
        return SparseOperator(self.window, cols, truncated)

    def adjoint(self, mark_missing_rows: bool = False) -> "SparseOperator":
        cols: dict[Site, dict[Site, complex]] = {}
        rows = set()
        for site, col in self.cols.items():
            for target, weight in col.items():
                rows.add(target)
                cols.setdefault(target, {})[site] = weight.conjugate()
        truncated = set()
        if mark_missing_rows:
            truncated = {s for s in self.window.sites() if s not in rows}
        return SparseOperator(self.window, cols, truncated)

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        cols = {s: dict(col) for s, col in self.cols.items()}
        for site, col in other.cols.items():
            acc = cols.setdefault(site, {})
            for target, weight in col.items():
                acc[target] = acc.get(target, 0j) + weight
        cols = {
            s: {t: v for t, v in col.items() if v != 0}
            for s, col in cols.items()
        }
        cols = {s: col for s, col in cols.items() if col}
        return SparseOperator(self.window, cols, self.truncated | other.truncated)

    def scaled(self, factor: complex) -> "SparseOperator":
        if factor == 0:
            return SparseOperator(self.window, {}, set(self.truncated))
        return SparseOperator(
            self.window,
            {s: {t: factor * v for t, v in col.items()} for s, col in self.cols.items()},
            set(self.truncated),
        )

    def column_defect(self, other: "SparseOperator", columns) -> float:
        worst = 0.0
        for site in columns:
            col1 = self.cols.get(site, {})
            col2 = other.cols.get(site, {})
            for target in set(col1) | set(col2):
                worst = max(worst, abs(col1.get(target, 0j) - col2.get(target, 0j)))
        return worst


@dataclass
class OperatorSet:
    """The generator operators plus composites, at one window and one theta."""

    window: LatticeWindow
    theta: float
    ops: dict[str, SparseOperator]

    def __getitem__(self, gen: str) -> SparseOperator:
        return self.ops[gen]

    def identity(self) -> SparseOperator:
        return SparseOperator(
            self.window, {s: {s: 1.0 + 0j} for s in self.window.sites()}, set()
        )


def build_generator_operators(
    window: LatticeWindow, theta: float, mutate_b: bool = False
) -> OperatorSet:
    """The shift operators; the determinant, its inverse and the idempotent
    witness are composed from them rather than postulated.

    Composites are assembled on a padded window and clipped, so that inside
    the requested window they agree with the infinite-lattice operators and
    truncation shows up only as clipped targets, never as lost interior
    columns.
    """
    if not 0.0 <= theta < 1.0:
        raise ValueError("theta parametrises the unit circle: need 0 <= theta < 1")
    padded = LatticeWindow(window.size + 3)
    qval = cmath.exp(2j * cmath.pi * theta)
    ops: dict[str, SparseOperator] = {}
    for gen in ("a", "b", "c", "d"):
        ops[gen] = SparseOperator.from_rule(
            padded, lambda site, g=gen: lattice_action(g, site, qval, mutate_b)
        )
    ad = ops["a"].compose(ops["d"])
    bc = ops["b"].compose(ops["c"])
    ops["D"] = ad + bc.scaled(-(qval ** -1))
    ops["Dinv"] = ops["D"].adjoint(mark_missing_rows=True)
    ops["z"] = ops["Dinv"].compose(ad)
    return OperatorSet(window, theta, {g: _clip(op, window) for g, op in ops.items()})


def _clip(op: SparseOperator, window: LatticeWindow) -> SparseOperator:
    cols: dict[Site, dict[Site, complex]] = {}
    truncated = set(t for t in op.truncated if window.contains(t))
    for site, col in op.cols.items():
        if not window.contains(site):
            continue
        kept = {t: w for t, w in col.items() if window.contains(t)}
        if len(kept) < len(col):
            truncated.add(site)
        if kept:
            cols[site] = kept
    return SparseOperator(window, cols, truncated)


def operator_for_word(word, opset: OperatorSet) -> SparseOperator:
    out = None
    for letter in word:
        out = opset[letter] if out is None else out.compose(opset[letter])
    return opset.identity() if out is None else out


def operator_for_element(e: Element, opset: OperatorSet) -> SparseOperator:
    total = SparseOperator(opset.window, {}, set())
    for mon, coeff in e.terms.items():
        total = total + operator_for_word(mon, opset).scaled(
            coeff.eval_unit(opset.theta)
        )
    return total


def apply_element(e: Element, vec: Vec, opset: OperatorSet, strict: bool = True) -> Vec:
    """Apply an element letterwise; strict mode raises on truncation loss."""
    out: Vec = {}
    for mon, coeff in e.terms.items():
        current = dict(vec)
        for letter in reversed(mon):
            current = opset[letter].apply(current, strict=strict)
        factor = coeff.eval_unit(opset.theta)
        for site, amp in current.items():
            out[site] = out.get(site, 0j) + factor * amp
    return {s: v for s, v in out.items() if abs(v) > 0}


@lru_cache(maxsize=None)
def operator_set(window_size: int, theta: float, mutate_b: bool = False) -> OperatorSet:
    return build_generator_operators(LatticeWindow(window_size), theta, mutate_b)


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------


def verify_gns_relations(
    window_size: int, theta: float, mutate_b: bool = False, tol: float = 1e-10
) -> tuple[list[Check], dict[str, float]]:
    """Relations, adjoints and determinant isometry on the window interior.

    Returns the checks plus the maximal defect observed per relation.
    """
    opset = operator_set(window_size, theta, mutate_b)
    window = opset.window
    alg = adtq()
    interior = [s for s in window.interior()]
    defects: dict[str, float] = {}
    relation_bad = None
    for rule in alg.system.rules:
        lhs = operator_for_word(rule.pattern, opset)
        rhs = SparseOperator(window, {}, set())
        for coeff, word in rule.result:
            rhs = rhs + operator_for_word(word, opset).scaled(coeff.eval_unit(theta))
        name = "*".join(rule.pattern)
        defects[name] = lhs.column_defect(rhs, interior)
        if defects[name] > tol:
            relation_bad = relation_bad or f"{rule} (defect {defects[name]:.2e})"
    checks = [Check("gns_defining_relations", relation_bad is None, witness=relation_bad)]

    adjoint_bad = None
    for gen in ("a", "b", "c", "d", "D", "z"):
        op = operator_for_word((gen,), opset)
        star_op = operator_for_element(alg.gen(gen).star(), opset)
        for col in interior:
            for row, weight in op.cols.get(col, {}).items():
                if not window.is_interior(row):
                    continue
                if abs(star_op.entry(col, row) - weight.conjugate()) > tol:
                    adjoint_bad = adjoint_bad or f"{gen} at {col}"
    checks.append(Check("gns_adjoint_consistency", adjoint_bad is None, witness=adjoint_bad))

    iso_bad = None
    det = opset["D"]
    targets_seen = set()
    for col in interior:
        entries = det.cols.get(col, {})
        if len(entries) != 1:
            iso_bad = iso_bad or f"determinant column {col} not a shift"
            continue
        (target, weight), = entries.items()
        if abs(abs(weight) - 1.0) > tol or target in targets_seen:
            iso_bad = iso_bad or f"determinant weight at {col}"
        targets_seen.add(target)
    checks.append(Check("gns_determinant_isometric", iso_bad is None, witness=iso_bad))
    return checks, defects


def vacuum_state() -> Vec:
    """The cyclic vector: equal weight on the two sector origins."""
    amp = 1.0 / math.sqrt(2.0)
    return {("c", 0, 0): amp + 0j, ("q", 0, 0): amp + 0j}


def gns_expectation(e: Element, window_size: int, theta: float) -> complex:
    """Vector state of the vacuum; sectors never mix, so the cross terms of
    the cyclic vector vanish and the state splits over the two origins."""
    opset = operator_set(window_size, theta)
    total = 0j
    for vac in (("c", 0, 0), ("q", 0, 0)):
        image = apply_element(e, {vac: 1.0 + 0j}, opset, strict=True)
        total += 0.5 * image.get(vac, 0j)
    return total


def estimate_operator_norm(
    e: Element,
    window_size: int,
    theta: float,
    tol: float = 1e-8,
    max_iter: int = 5000,
) -> float:
    """Largest singular value of the truncated matrix by power iteration."""
    opset = operator_set(window_size, theta)
    op = operator_for_element(e, opset)
    adj = op.adjoint()
    rng = random.Random(0xD70)
    vec: Vec = {
        site: complex(rng.gauss(0, 1), rng.gauss(0, 1))
        for site in LatticeWindow(window_size).sites()
    }
    norm = math.sqrt(sum(abs(v) ** 2 for v in vec.values()))
    vec = {s: v / norm for s, v in vec.items()}
    lam_prev = None
    for _ in range(max_iter):
        image = adj.apply(op.apply(vec))
        lam = sum((vec.get(s, 0j).conjugate() * v).real for s, v in image.items())
        norm = math.sqrt(sum(abs(v) ** 2 for v in image.values()))
        if norm == 0:
            return 0.0
        vec = {s: v / norm for s, v in image.items()}
        if lam_prev is not None and abs(lam - lam_prev) <= tol * max(1.0, abs(lam)):
            return math.sqrt(max(lam, 0.0))
        lam_prev = lam
    raise NonConvergence(f"power iteration did not stabilise in {max_iter} steps")


def theta_continuity_defect(window_size: int, theta: float, step: float = 1e-6) -> float:
    """Largest entrywise change of the generator operators under a theta nudge."""
    first = build_generator_operators(LatticeWindow(window_size), theta).ops
    second = build_generator_operators(LatticeWindow(window_size), theta + step).ops
    worst = 0.0
    for gen in ("a", "b", "c", "d", "D", "z"):
        cols = set(first[gen].cols) | set(second[gen].cols)
        for s in cols:
            targets = set(first[gen].cols.get(s, {})) | set(second[gen].cols.get(s, {}))
            for t in targets:
                worst = max(worst, abs(first[gen].entry(t, s) - second[gen].entry(t, s)))
    return worst

"""Scalar-weighted word rewriting over a finite alphabet.

A rewrite system carries an ordered alphabet (the monomial order is graded
lexicographic in that letter order) and rules mapping a pattern word to a
linear combination of strictly smaller words.  Normal forms are computed by
leftmost reduction; the Diamond Lemma obligation is discharged by resolving
every overlap and inclusion ambiguity among rule patterns
(:meth:`RewriteSystem.unresolved_pairs`).  Bounded Knuth-Bendix completion
(:meth:`RewriteSystem.complete`) is used for finite quotients, where new
relations such as D*a = d are consequences of the quotient generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import CompletionFailure, UnknownGenerator
from .scalars import QScalar

Word = tuple[str, ...]
Combo = dict[Word, QScalar]


@dataclass(frozen=True)
class RewriteRule:
    pattern: Word
    result: tuple[tuple[QScalar, Word], ...]

    def __str__(self) -> str:
        rhs = " + ".join(f"({c})*{'*'.join(w) or '1'}" for c, w in self.result) or "0"
        return f"{'*'.join(self.pattern)} -> {rhs}"


@dataclass
class CriticalPair:
    """One ambiguity with its two fully reduced resolutions."""

    word: Word
    left: Combo
    right: Combo

    @property
    def resolved(self) -> bool:
        return self.left == self.right


class RewriteSystem:
    def __init__(
        self,
        letters: Sequence[str],
        rules: Iterable[RewriteRule],
        scalar_canon: Callable[[QScalar], QScalar] | None = None,
        check_orientation: bool = True,
    ):
        self.letters = tuple(letters)
        self._rank = {x: i for i, x in enumerate(self.letters)}
        if len(self._rank) != len(self.letters):
            raise ValueError("duplicate letters")
        self.scalar_canon = scalar_canon or (lambda s: s)
        self.rules: list[RewriteRule] = []
        self._by_first: dict[str, list[int]] = {x: [] for x in self.letters}
        self._cache: dict[Word, Combo] = {}
        for rule in rules:
            self.add_rule(rule, check_orientation=check_orientation)

    # -- construction ---------------------------------------------------

    def add_rule(self, rule: RewriteRule, check_orientation: bool = True):
        for x in rule.pattern:
            if x not in self._rank:
                raise UnknownGenerator(f"letter {x!r} not in alphabet {self.letters}")
        canon_result = tuple(
            (self.scalar_canon(c), w) for c, w in rule.result if self.scalar_canon(c)
        )
        rule = RewriteRule(rule.pattern, canon_result)
        if check_orientation:
            key = self.order_key(rule.pattern)
            for _, w in rule.result:
                if self.order_key(w) >= key:
                    raise ValueError(f"rule does not decrease the monomial order: {rule}")
        self.rules.append(rule)
        self._by_first[rule.pattern[0]].append(len(self.rules) - 1)
        self._cache.clear()

    # -- the monomial order ----------------------------------------------

    def order_key(self, word: Word):
        return (len(word), tuple(self._rank[x] for x in word))

    def leading_monomial(self, combo: Combo) -> Word:
        return max(combo, key=self.order_key)

    # -- reduction --------------------------------------------------------

    def find_redex(self, word: Word, rule_order: Sequence[int] | None = None):
        """Leftmost position with a matching rule, or None if irreducible."""
        n = len(word)
        for pos in range(n):
            candidates = (
                self._by_first[word[pos]] if rule_order is None else rule_order
            )
            for idx in candidates:
                rule = self.rules[idx]
                L = len(rule.pattern)
                if pos + L <= n and word[pos : pos + L] == rule.pattern:
                    return pos, idx
        return None

    def is_normal(self, word: Word) -> bool:
        return self.find_redex(word) is None

    def normalize(
        self,
        word: Word,
        coeff: QScalar | None = None,
        rule_order: Sequence[int] | None = None,
    ) -> Combo:
        """Full normal form of coeff * word as a word combination."""
        coeff = QScalar.one() if coeff is None else coeff
        use_cache = rule_order is None
        out: Combo = {}
        stack: list[tuple[QScalar, Word]] = [(coeff, word)]
        while stack:
            c, w = stack.pop()
            if use_cache:
                hit = self._cache.get(w)
                if hit is not None:
                    _merge_scaled(out, hit, c, self.scalar_canon)
                    continue
            redex = self.find_redex(w, rule_order)
            if redex is None:
                _merge_term(out, w, c, self.scalar_canon)
                continue
            pos, idx = redex
            rule = self.rules[idx]
            tail = pos + len(rule.pattern)
            for rc, rw in rule.result:
                stack.append((self.scalar_canon(c * rc), w[:pos] + rw + w[tail:]))
        if use_cache and coeff.is_one():
            self._cache[word] = dict(out)
        return out

    def normalize_combo(self, combo: Combo) -> Combo:
        out: Combo = {}
        for w, c in combo.items():
            _merge_scaled(out, self.normalize(w), c, self.scalar_canon)
        return out

    # -- ambiguities -------------------------------------------------------

    def critical_words(self, max_len: int | None = None):
        """All overlap and inclusion ambiguities among rule patterns.

        Yields (word, (pos1, rule1), (pos2, rule2)) where the two rules apply
        at the stated positions of the shared word.
        """
        n = len(self.rules)
        for i in range(n):
            p1 = self.rules[i].pattern
            for j in range(n):
                p2 = self.rules[j].pattern
                # proper overlap: a suffix of p1 is a prefix of p2
                for k in range(1, min(len(p1), len(p2))):
                    if p1[len(p1) - k :] == p2[:k]:
                        word = p1 + p2[k:]
                        if max_len is None or len(word) <= max_len:
                            yield word, (0, i), (len(p1) - k, j)
                # inclusion: p2 strictly inside p1
                if i != j and len(p2) < len(p1):
                    for pos in range(len(p1) - len(p2) + 1):
                        if p1[pos : pos + len(p2)] == p2:
                            if max_len is None or len(p1) <= max_len:
                                yield p1, (0, i), (pos, j)

    def resolve(self, word: Word, at: tuple[int, int]) -> Combo:
        pos, idx = at
        rule = self.rules[idx]
        tail = pos + len(rule.pattern)
        combo: Combo = {}
        for rc, rw in rule.result:
            _merge_term(combo, word[:pos] + rw + word[tail:], rc, self.scalar_canon)
        return self.normalize_combo(combo)

    def unresolved_pairs(self, max_len: int | None = None) -> list[CriticalPair]:
        bad = []
        seen = set()
        for word, at1, at2 in self.critical_words(max_len):
            key = (word, at1, at2)
            if key in seen or at1 == at2:
                continue
            seen.add(key)
            left = self.resolve(word, at1)
            right = self.resolve(word, at2)
            if left != right:
                bad.append(CriticalPair(word, left, right))
        return bad

    def complete(
        self,
        invert_scalar: Callable[[QScalar], QScalar],
        max_len: int = 12,
        max_rounds: int = 40,
    ):
        """Orient unresolved critical pairs into new rules until confluent.

        ``invert_scalar`` must invert any nonzero coefficient (so the scalar
        ring must be a field, e.g. a primitive cyclotomic mode).
        """
        for _ in range(max_rounds):
            pairs = self.unresolved_pairs(max_len)
            if not pairs:
                return
            for pair in pairs:
                diff: Combo = dict(pair.left)
                _merge_scaled(diff, pair.right, QScalar.of(-1), self.scalar_canon)
                diff = {w: c for w, c in diff.items() if c}
                if not diff:
                    continue
                lm = self.leading_monomial(diff)
                inv = invert_scalar(diff[lm])
                result = tuple(
                    (self.scalar_canon(-inv * c), w) for w, c in diff.items() if w != lm
                )
                self.add_rule(RewriteRule(lm, result))
                break
        else:
            raise CompletionFailure(
                f"completion did not stabilise after {max_rounds} rounds"
            )

    # -- normal word enumeration -------------------------------------------

    def normal_words_by_degree(self, max_len: int) -> list[Word]:
        """All irreducible words of length <= max_len (prefix-closed BFS)."""
        out: list[Word] = [()]
        frontier: list[Word] = [()]
        for _ in range(max_len):
            nxt = []
            for w in frontier:
                for x in self.letters:
                    ext = w + (x,)
                    if self._suffix_normal(ext):
                        nxt.append(ext)
            out.extend(nxt)
            frontier = nxt
            if not frontier:
                break
        return out

    def _suffix_normal(self, word: Word) -> bool:
        # extensions of normal words only create redexes ending at the last letter
        n = len(word)
        for idx, rule in enumerate(self.rules):
            L = len(rule.pattern)
            if L <= n and word[n - L :] == rule.pattern:
                return False
        return True

    def all_normal_words(self, hard_cap: int = 64) -> list[Word]:
        """Every irreducible word, for systems with finitely many.

        Raises :class:`CompletionFailure` if words keep growing past the cap,
        which signals a non-finite-dimensional (or non-completed) system.
        """
        out: list[Word] = [()]
        frontier: list[Word] = [()]
        length = 0
        while frontier:
            length += 1
            if length > hard_cap:
                raise CompletionFailure("normal words do not stop growing")
            nxt = []
            for w in frontier:
                for x in self.letters:
                    ext = w + (x,)
                    if self._suffix_normal(ext):
                        nxt.append(ext)
            out.extend(nxt)
            frontier = nxt
        return out


def _merge_term(out: Combo, word: Word, coeff: QScalar, canon):
    s = canon(out.get(word, QScalar.zero()) + coeff)
    if s:
        out[word] = s
    else:
        out.pop(word, None)


def _merge_scaled(out: Combo, combo: Combo, coeff: QScalar, canon):
    for w, c in combo.items():
        _merge_term(out, w, coeff * c, canon)

"""Exact expected products of traces over Haar-random unitaries.

The pair enumeration of ``surfaces`` is grouped by (cycle types, block
count) so each distinct Weingarten product is fetched once; the hot
loop touches only integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .perm import mobius_of_cycle_type, partitions
from .ratfn import LaurentSeries, Polynomial, RationalFunction
from .surfaces import (
    DEFAULT_PAIR_CAP,
    PairCapExceeded,
    class_counts,
    diagonal_max_euler,
    occurrences,
)
from .weingarten import wg
from .words import Word, WordTuple, word_tuple

DEFAULT_LAURENT_TERMS = 8

_ZERO_SERIES = RationalFunction.zero().laurent_at_infinity(DEFAULT_LAURENT_TERMS)


@dataclass(frozen=True)
class TraceResult:
    """Exact trace function with its expansion at n = infinity."""

    function: RationalFunction
    validity_threshold: int              # exact for integer n >= this
    leading: tuple[int, Fraction] | None  # first nonzero Laurent term
    laurent: LaurentSeries
    balanced: bool

    def evaluate(self, n0: int, *, allow_below_threshold: bool = False) -> Fraction:
        """Evaluate at an integer dimension, guarding the validity range."""
        if n0 < self.validity_threshold and not allow_below_threshold:
            raise ValueError(
                f"n = {n0} is below the validity threshold "
                f"{self.validity_threshold}; pass allow_below_threshold=True "
                "to evaluate the bare rational function"
            )
        return self.function.evaluate(n0)


@dataclass(frozen=True)
class LeadingTerm:
    """Leading-term shortcut: exponent ch and the Mobius sum over argmax pairs."""

    exponent: int | None
    coefficient: int
    degenerate: bool     # True when the Mobius sum vanishes (true order < ch)
    balanced: bool


def _zero_result(laurent_terms: int) -> TraceResult:
    zero = RationalFunction.zero()
    return TraceResult(zero, 1, None, zero.laurent_at_infinity(laurent_terms), False)


def _counts_key(t: WordTuple):
    return tuple(tuple(w.letters) for w in t.words)


_class_counts_cache: dict[tuple, dict] = {}


def _grouped_counts(t: WordTuple, cap: int) -> dict:
    occ = occurrences(t)
    if occ.pair_count() > cap:
        # enforced even on cache hits so the cap contract is deterministic
        raise PairCapExceeded(occ.pair_count(), cap)
    key = _counts_key(t)
    hit = _class_counts_cache.get(key)
    if hit is not None:
        return hit
    counts = class_counts(occ, cap=cap)
    if len(_class_counts_cache) > 64:
        _class_counts_cache.clear()
    _class_counts_cache[key] = counts
    return counts


def trace_exact(
    t: WordTuple,
    *,
    cyclic_reduce: bool = True,
    cap: int = DEFAULT_PAIR_CAP,
    laurent_terms: int = DEFAULT_LAURENT_TERMS,
) -> TraceResult:
    """The expected product of traces as a canonical rational function.

    Identically zero for unbalanced tuples.  Empty words contribute a
    factor n each.  Valid for integer n >= max occurrences of a single
    generator.
    """
    if cyclic_reduce:
        t = t.cyclically_reduced()
    if not t.is_balanced():
        return _zero_result(laurent_terms)
    occ = occurrences(t)
    counts = _grouped_counts(t, cap)
    total = RationalFunction.zero()
    for (types, blocks), count in sorted(counts.items()):
        term = RationalFunction(
            Polynomial.monomial(blocks + occ.num_empty, count)
        )
        for mu in types:
            term = term * wg(mu)
        total = total + term
    threshold = max(occ.counts, default=1)
    laurent = total.laurent_at_infinity(laurent_terms)
    return TraceResult(total, max(threshold, 1), laurent.leading_term(), laurent, True)


def trace_leading(
    t: WordTuple,
    *,
    cyclic_reduce: bool = True,
    cap: int = DEFAULT_PAIR_CAP,
) -> LeadingTerm:
    """Order-ch term of the trace: exponent ch, coefficient the Mobius sum.

    When the coefficient vanishes the true leading exponent is at most
    ch - 2 and the result is flagged degenerate.
    """
    if cyclic_reduce:
        t = t.cyclically_reduced()
    if not t.is_balanced():
        return LeadingTerm(None, 0, True, False)
    occ = occurrences(t)
    shift = occ.num_empty - occ.num_letters
    counts = _grouped_counts(t, cap)
    ch: int | None = None
    coefficient = 0
    for (types, blocks), count in counts.items():
        chi = blocks + sum(len(mu) for mu in types) + shift
        if ch is None or chi > ch:
            ch = chi
            coefficient = 0
        if chi == ch:
            moeb = math.prod(mobius_of_cycle_type(mu) for mu in types)
            coefficient += count * moeb
    return LeadingTerm(ch, coefficient, coefficient == 0, True)


def parity_report(
    t: WordTuple,
    *,
    cyclic_reduce: bool = True,
    cap: int = DEFAULT_PAIR_CAP,
    laurent_terms: int = DEFAULT_LAURENT_TERMS,
) -> bool:
    """Whether all Laurent exponents share the parity of the word count.

    Vacuously true for the zero function (in particular for unbalanced
    tuples).
    """
    result = trace_exact(
        t, cyclic_reduce=cyclic_reduce, cap=cap, laurent_terms=laurent_terms
    )
    num_words = len(t.words)
    return all(
        (e - num_words) % 2 == 0 for e, _ in result.laurent.nonzero_terms()
    )


_ch_cache: dict[tuple, int] = {}


def _ch_of_powers(w: Word, parts: tuple[int, ...], rank: int, cap: int) -> int:
    t = WordTuple(tuple(w ** j for j in parts), rank).cyclically_reduced()
    scan_size = occurrences(t).match_count()
    if scan_size > cap:
        raise PairCapExceeded(scan_size, cap)
    key = _counts_key(t)
    hit = _ch_cache.get(key)
    if hit is None:
        # diagonal pairs attain the maximum, so the cheap scan suffices
        hit = diagonal_max_euler(t, cyclic_reduce=False, cap=cap)
        _ch_cache[key] = hit
    return hit


def scl_upper_bound(
    w: Word,
    budget: int,
    *,
    rank: int | None = None,
    cap: int = DEFAULT_PAIR_CAP,
) -> Fraction:
    """Upper bound for the stable commutator length of w.

    Minimizes -ch(w^j1, ..., w^jl) / (2 sum j) over all power multisets
    with total at most ``budget``; nonincreasing in the budget.  Tuples
    whose enumeration exceeds the pair cap are skipped; if every tuple
    is skipped, the cap error propagates.
    """
    t = word_tuple([w], rank)
    if not t.is_balanced() or w.cyclic_reduce().is_empty:
        raise ValueError("scl bound requires a balanced, nontrivial word")
    if budget < 1:
        raise ValueError("budget must be positive")
    best: Fraction | None = None
    skipped: PairCapExceeded | None = None
    for total in range(1, budget + 1):
        for parts in partitions(total):
            try:
                ch = _ch_of_powers(w, parts, t.rank, cap)
            except PairCapExceeded as exc:
                skipped = exc
                continue
            bound = Fraction(-ch, 2 * total)
            if best is None or bound < best:
                best = bound
    if best is None:
        raise skipped if skipped is not None else AssertionError
    return best

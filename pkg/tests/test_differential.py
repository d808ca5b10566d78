"""Randomized cross-checks between independent computation routes."""

import itertools
import random

from wordmeasure.ratfn import Polynomial, RationalFunction
from wordmeasure.surfaces import (
    _scan,
    block_count,
    cycle_types,
    enumerate_matchings,
    euler_char,
    occurrences,
    z_disc_count,
)
from wordmeasure.trace import trace_exact
from wordmeasure.weingarten import wg
from wordmeasure.words import Letter, Word, word_tuple


def _random_balanced_tuples(count, seed):
    rng = random.Random(seed)
    found = []
    while len(found) < count:
        words = [
            Word(
                Letter(rng.randint(1, 2), rng.choice((1, -1)))
                for _ in range(rng.choice([2, 4, 6]))
            )
            for _ in range(rng.choice([1, 1, 2]))
        ]
        t = word_tuple(words, 2)
        reduced = t.cyclically_reduced()
        if not t.is_balanced() or reduced.total_length == 0:
            continue
        if occurrences(reduced).pair_count() > 2500:
            continue
        found.append(t)
    return found


def test_grouped_trace_matches_naive_accumulation():
    # sum Wg products pair by pair, with no grouping or caching shortcuts
    for t in _random_balanced_tuples(12, seed=1729):
        reduced = t.cyclically_reduced()
        occ = occurrences(reduced)
        matchings = list(enumerate_matchings(occ))
        total = RationalFunction.zero()
        for s, tt in itertools.product(matchings, repeat=2):
            term = RationalFunction(
                Polynomial.monomial(block_count(occ, s, tt) + occ.num_empty)
            )
            for mu in cycle_types(occ, s, tt):
                term = term * wg(mu)
            total = total + term
        assert trace_exact(t).function == total, str(t)


def test_scan_agrees_with_single_pair_helpers():
    for t in _random_balanced_tuples(8, seed=42):
        occ = occurrences(t.cyclically_reduced())
        for s_parts, t_parts, blocks, z_total, types in _scan(occ, True, 10**6):
            s_full, t_full = occ.expand(s_parts), occ.expand(t_parts)
            assert blocks == block_count(occ, s_full, t_full)
            assert z_total == z_disc_count(occ, s_full, t_full)
            assert types == cycle_types(occ, s_full, t_full)
            assert (
                euler_char(occ, s_full, t_full)
                == blocks + z_total - occ.num_letters + occ.num_empty
            )

import itertools
import math

import pytest

from wordmeasure.solutions import pair_leq
from wordmeasure.surfaces import (
    OccurrenceTable,
    PairCapExceeded,
    UnbalancedError,
    block_count,
    commutator_length,
    cycle_types,
    diagonal_max_euler,
    enumerate_matchings,
    euler_char,
    max_euler,
    occurrences,
    pair_statistics,
    z_disc_count,
)
from wordmeasure.words import parse, parse_tuple

XY = parse_tuple(["[x,y]"], 2)
XY2 = parse_tuple(["[x,y]^2"], 2)
XYXZ = parse_tuple(["[x,y][x,z]"], 3)
XXY = parse_tuple(["[x^2,y]"], 2)
ANNULUS = parse_tuple(["x", "X"], 1)


class TestOccurrences:
    def test_commutator(self):
        occ = occurrences(XY)
        assert occ.L == 2
        assert occ.pos_ids == ((0,), (1,))
        assert occ.neg_ids == ((2,), (3,))

    def test_commutator_square(self):
        occ = occurrences(XY2)
        assert occ.L == 4
        assert occ.counts == (2, 2)

    def test_two_commutators(self):
        occ = occurrences(XYXZ)
        assert occ.L == 4
        assert occ.counts == (2, 1, 1)

    def test_unbalanced_rejected(self):
        with pytest.raises(UnbalancedError):
            occurrences(parse_tuple(["x"], 1))

    def test_canonical_order_is_reading_order(self):
        occ = occurrences(parse_tuple(["y X", "x Y"], 2))
        assert occ.pos_ids == ((2,), (0,))
        assert occ.neg_ids == ((1,), (3,))


class TestEnumeration:
    def test_counts(self):
        assert len(list(enumerate_matchings(occurrences(XY)))) == 1
        assert len(list(enumerate_matchings(occurrences(XYXZ)))) == 2
        assert len(list(enumerate_matchings(occurrences(XY2)))) == 4

    def test_deterministic_order(self):
        first = list(enumerate_matchings(occurrences(XY2)))
        second = list(enumerate_matchings(occurrences(XY2)))
        assert first == second
        assert len(set(first)) == len(first)


class TestBlockAndDiscCounts:
    def test_single_commutator(self):
        occ = occurrences(XY)
        (m,) = enumerate_matchings(occ)
        assert block_count(occ, m, m) == 1
        assert z_disc_count(occ, m, m) == 2
        assert euler_char(occ, m, m) == -1

    def test_annulus_pair(self):
        # the surface for (x, x^-1) must be an annulus: chi = 0
        occ = occurrences(ANNULUS)
        (m,) = enumerate_matchings(occ)
        assert z_disc_count(occ, m, m) == 1
        assert euler_char(occ, m, m) == 0
        assert block_count(occ, m, m) == 1

    def test_diagonal_z_count_is_l(self):
        occ = occurrences(XY2)
        for m in enumerate_matchings(occ):
            assert z_disc_count(occ, m, m) == occ.L

    def test_mixed_pair_of_two_commutators(self):
        occ = occurrences(XYXZ)
        m1, m2 = enumerate_matchings(occ)
        assert z_disc_count(occ, m1, m2) == 3
        assert cycle_types(occ, m1, m2) == ((2,), (1,), (1,))

    def test_one_occurrence_per_generator(self):
        occ = occurrences(parse_tuple(["[x,y]"], 2))
        (m,) = enumerate_matchings(occ)
        assert z_disc_count(occ, m, m) == 2  # r cycles


class TestHistograms:
    def test_two_commutators_all_at_minus_three(self):
        scan = pair_statistics(XYXZ)
        assert scan.histogram == {-3: 4}

    def test_commutator_square_split(self):
        scan = pair_statistics(XY2)
        assert scan.histogram == {-3: 12, -5: 4}

    def test_parallel_scan_matches(self):
        serial = pair_statistics(XY2, jobs=1)
        parallel = pair_statistics(XY2, jobs=2)
        assert serial == parallel


class TestMaxEuler:
    def test_commutator(self):
        assert max_euler(XY).ch == -1

    def test_two_commutators_all_achieve(self):
        scan = max_euler(XYXZ)
        assert scan.ch == -3
        assert len(scan.argmax) == 4

    def test_cube(self):
        t = parse_tuple(["[x,y]^3"], 2)
        assert max_euler(t, collect_argmax=False).ch == -3

    def test_unbalanced_sentinel(self):
        scan = max_euler(parse_tuple(["x"], 1))
        assert scan.ch == float("-inf")
        assert not scan.balanced

    def test_empty_words_shift(self):
        # ch(w, 1) = ch(w) + 1
        with_empty = parse_tuple(["[x,y]", ""], 2)
        assert max_euler(with_empty).ch == max_euler(XY).ch + 1

    def test_diagonal_agrees(self, golden_tuples):
        for t in golden_tuples.values():
            scan = max_euler(t, collect_argmax=False)
            assert scan.diagonal_ch == scan.ch
            assert diagonal_max_euler(t) == scan.ch

    def test_cap_enforced(self):
        with pytest.raises(PairCapExceeded):
            pair_statistics(XY2, cap=10)
        with pytest.raises(PairCapExceeded):
            diagonal_max_euler(XY2, cap=3)


class TestCommutatorLength:
    def test_powers_of_commutator(self):
        w = parse("[x,y]", 2)
        for m in (1, 2, 3):
            assert commutator_length(w**m) == m // 2 + 1

    def test_simple_commutator(self):
        assert commutator_length(parse("[x,y]", 2)) == 1

    def test_unbalanced_is_infinite(self):
        assert commutator_length(parse("x", 1)) == math.inf

    def test_trivial_word(self):
        assert commutator_length(parse("x X", 1)) == 0


SMALL_TUPLES = [XY, XXY, XYXZ, XY2, ANNULUS, parse_tuple(["x^2", "X^2"], 1)]


def _all_pairs(occ):
    matchings = list(enumerate_matchings(occ))
    return [(s, t) for s in matchings for t in matchings]


@pytest.mark.parametrize("t", SMALL_TUPLES, ids=[str(t) for t in SMALL_TUPLES])
def test_chi_monotone_under_pair_order(t):
    # going down in the pair order never lowers chi; covering steps move by 0 or 2
    occ = occurrences(t.cyclically_reduced())
    pairs = _all_pairs(occ)
    chi = {p: euler_char(occ, *p) for p in pairs}
    for below, above in itertools.product(pairs, repeat=2):
        if below == above or not pair_leq(below, above):
            continue
        assert chi[below] >= chi[above]
        if _pair_rank(above) - _pair_rank(below) == 1:  # covering move
            assert chi[below] - chi[above] in (0, 2)


def _cycles(a, b):
    inv = [0] * len(a)
    for k, v in enumerate(a):
        inv[v] = k
    seen = [False] * len(a)
    out = []
    for start in range(len(a)):
        if seen[start]:
            continue
        size = 0
        k = start
        while not seen[k]:
            seen[k] = True
            size += 1
            k = inv[b[k]]
        out.append(size)
    return out


def _pair_rank(p):
    return sum(len(a) - len(_cycles(a, b)) for a, b in zip(*p))


@pytest.mark.parametrize("t", SMALL_TUPLES, ids=[str(t) for t in SMALL_TUPLES])
def test_block_count_symmetric_empirically(t):
    occ = occurrences(t.cyclically_reduced())
    for s, tt in _all_pairs(occ):
        assert block_count(occ, s, tt) == block_count(occ, tt, s)


@pytest.mark.parametrize("t", SMALL_TUPLES, ids=[str(t) for t in SMALL_TUPLES])
def test_chi_parity_matches_word_count(t):
    occ = occurrences(t.cyclically_reduced())
    num_words = len(t.words)
    for s, tt in _all_pairs(occ):
        assert (euler_char(occ, s, tt) - num_words) % 2 == 0


def test_matching_validation():
    occ = occurrences(XY2)
    with pytest.raises(ValueError):
        occ.check_matching(((0, 0), (0, 1)))
    with pytest.raises(ValueError):
        occ.check_matching(((0, 1),))

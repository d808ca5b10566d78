"""Matchings of letter occurrences and the invariants of their surfaces.

A matching pair (sigma, tau) determines a closed-up surface whose
2-cells come in two kinds: discs counted by blocks of an index
partition (union-find below), and discs counted by cycles of
sigma^-1 tau within each generator.  Only those two counts matter:
Euler characteristic = blocks + cycles - 2L, so no complex is ever
built.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .perm import Partition, mobius_of_cycle_type
from .words import Word, WordTuple, word_tuple

DEFAULT_PAIR_CAP = 10**8

# per generator, the image vector of a bijection E_i+ -> E_i- (canonical order)
Matching = tuple[tuple[int, ...], ...]
MatchingPair = tuple[Matching, Matching]


class UnbalancedError(ValueError):
    """Occurrence tables require a balanced word tuple."""


class PairCapExceeded(RuntimeError):
    """An enumeration would exceed the configured pair cap."""

    def __init__(self, needed: int, cap: int) -> None:
        super().__init__(
            f"enumeration of {needed} matching pairs exceeds the cap {cap}"
        )
        self.needed = needed
        self.cap = cap


class OccurrenceTable:
    """Occurrence positions of each generator, in (word, letter) order.

    Letters get global ids in reading order; ``prev[g]`` is the id of
    the cyclically preceding letter in the same word.  Empty words
    contribute no letters but are remembered: each one caps off a disc,
    adding 1 to every Euler characteristic.
    """

    __slots__ = (
        "rank", "num_words", "num_empty", "positions", "prev",
        "pos_ids", "neg_ids", "pos_prev", "neg_prev",
        "counts", "L", "num_letters", "active",
    )

    def __init__(self, t: WordTuple) -> None:
        if not t.is_balanced():
            raise UnbalancedError(f"word tuple {t} is not balanced")
        self.rank = t.rank
        self.num_words = len(t.words)
        self.num_empty = sum(1 for w in t.words if w.is_empty)
        positions: list[tuple[int, int]] = []
        prev: list[int] = []
        pos_ids: list[list[int]] = [[] for _ in range(t.rank)]
        neg_ids: list[list[int]] = [[] for _ in range(t.rank)]
        gid = 0
        for wi, w in enumerate(t.words):
            base = gid
            k = len(w)
            for li, let in enumerate(w.letters):
                positions.append((wi, li))
                prev.append(base + (li - 1) % k)
                (pos_ids if let.sign > 0 else neg_ids)[let.gen - 1].append(gid)
                gid += 1
        self.positions = tuple(positions)
        self.prev = tuple(prev)
        self.pos_ids = tuple(tuple(v) for v in pos_ids)
        self.neg_ids = tuple(tuple(v) for v in neg_ids)
        self.pos_prev = tuple(
            tuple(prev[g] for g in gens) for gens in self.pos_ids
        )
        self.neg_prev = tuple(
            tuple(prev[g] for g in gens) for gens in self.neg_ids
        )
        self.counts = tuple(len(v) for v in self.pos_ids)
        self.L = sum(self.counts)
        self.num_letters = gid
        self.active = tuple(i for i, c in enumerate(self.counts) if c)

    def match_count(self) -> int:
        return math.prod(math.factorial(c) for c in self.counts)

    def pair_count(self) -> int:
        return self.match_count() ** 2

    def identity_matching(self) -> Matching:
        return tuple(tuple(range(c)) for c in self.counts)

    def check_matching(self, m: Matching) -> Matching:
        m = tuple(tuple(part) for part in m)
        if len(m) != self.rank:
            raise ValueError(f"matching must have {self.rank} parts")
        for i, part in enumerate(m):
            if sorted(part) != list(range(self.counts[i])):
                raise ValueError(
                    f"part {i + 1} is not a bijection of {self.counts[i]} occurrences"
                )
        return m

    def expand(self, parts: tuple[tuple[int, ...], ...]) -> Matching:
        """Lift per-active-generator vectors to a full rank-length matching."""
        full = [()] * self.rank
        for gi, i in enumerate(self.active):
            full[i] = parts[gi]
        return tuple(full)


def occurrences(t: WordTuple) -> OccurrenceTable:
    return OccurrenceTable(t)


def enumerate_matchings(occ: OccurrenceTable) -> Iterator[Matching]:
    """All color-preserving bijections, in a fixed lexicographic order."""
    for parts in itertools.product(
        *(itertools.permutations(range(c)) for c in occ.counts)
    ):
        yield parts


def _scan(
    occ: OccurrenceTable,
    want_types: bool,
    cap: int,
    sigma_range: tuple[int, int] | None = None,
) -> Iterator[tuple[tuple, tuple, int, int, tuple[Partition, ...] | None]]:
    """Yield (sigma_parts, tau_parts, blocks, z_discs, cycle_types) per pair.

    The parts tuples range over active generators only; use
    ``occ.expand`` to recover full matchings.  The sigma-side merges are
    frozen into a flattened parent array once per sigma and copied per
    tau, so the inner loop does only the tau unions and cycle walks.
    ``sigma_range`` restricts the outer enumeration to a slice of the
    sigma order, which is how the scan is chunked across workers.
    """
    total = occ.pair_count()
    if total > cap:
        raise PairCapExceeded(total, cap)
    active = occ.active
    n_act = len(active)
    sizes = [occ.counts[i] for i in active]
    pos_ids = [occ.pos_ids[i] for i in active]
    pos_prev = [occ.pos_prev[i] for i in active]
    neg_ids = [occ.neg_ids[i] for i in active]
    neg_prev = [occ.neg_prev[i] for i in active]
    perms = [list(itertools.permutations(range(c))) for c in sizes]
    n_nodes = occ.num_letters
    base_ids = list(range(n_nodes))
    sigma_iter = itertools.product(*perms)
    if sigma_range is not None:
        sigma_iter = itertools.islice(sigma_iter, *sigma_range)

    for sigma_parts in sigma_iter:
        parent0 = base_ids.copy()
        count0 = 0
        for gi in range(n_act):
            sp = sigma_parts[gi]
            pp = pos_prev[gi]
            ng = neg_ids[gi]
            for k in range(sizes[gi]):
                a = pp[k]
                while parent0[a] != a:
                    parent0[a] = parent0[parent0[a]]
                    a = parent0[a]
                b = ng[sp[k]]
                while parent0[b] != b:
                    parent0[b] = parent0[parent0[b]]
                    b = parent0[b]
                if a != b:
                    parent0[a] = b
                    count0 += 1
        for v in range(n_nodes):  # flatten so per-tau copies resolve in one hop
            r = v
            while parent0[r] != r:
                r = parent0[r]
            parent0[v] = r
        sinv = []
        for gi in range(n_act):
            inv = [0] * sizes[gi]
            for k, v in enumerate(sigma_parts[gi]):
                inv[v] = k
            sinv.append(inv)

        for tau_parts in itertools.product(*perms):
            parent = parent0.copy()
            merges = 0
            for gi in range(n_act):
                tp = tau_parts[gi]
                po = pos_ids[gi]
                np_ = neg_prev[gi]
                for k in range(sizes[gi]):
                    a = po[k]
                    while parent[a] != a:
                        parent[a] = parent[parent[a]]
                        a = parent[a]
                    b = np_[tp[k]]
                    while parent[b] != b:
                        parent[b] = parent[parent[b]]
                        b = parent[b]
                    if a != b:
                        parent[a] = b
                        merges += 1
            blocks = n_nodes - count0 - merges
            z_total = 0
            types: list[Partition] | None = [] if want_types else None
            for gi in range(n_act):
                inv = sinv[gi]
                tp = tau_parts[gi]
                seen = 0
                if want_types:
                    lengths = []
                    for start in range(sizes[gi]):
                        if seen >> start & 1:
                            continue
                        size = 0
                        k = start
                        while not seen >> k & 1:
                            seen |= 1 << k
                            size += 1
                            k = inv[tp[k]]
                        lengths.append(size)
                    z_total += len(lengths)
                    types.append(tuple(sorted(lengths, reverse=True)))
                else:
                    for start in range(sizes[gi]):
                        if seen >> start & 1:
                            continue
                        z_total += 1
                        k = start
                        while not seen >> k & 1:
                            seen |= 1 << k
                            k = inv[tp[k]]
            yield (
                sigma_parts,
                tau_parts,
                blocks,
                z_total,
                tuple(types) if want_types else None,
            )


def block_count(occ: OccurrenceTable, sigma: Matching, tau: Matching) -> int:
    """Blocks of the index partition induced by the pair.

    Each occurrence carries an in-slot and an out-slot; the word
    structure identifies out(t) with in(t+1) cyclically (collapsed here
    to one node per letter junction), sigma identifies in(m) with
    out(sigma(m)) and tau identifies out(m) with in(tau(m)).
    """
    sigma = occ.check_matching(sigma)
    tau = occ.check_matching(tau)
    parent = list(range(occ.num_letters))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    merges = 0
    for i in occ.active:
        for k in range(occ.counts[i]):
            for a, b in (
                (occ.pos_prev[i][k], occ.neg_ids[i][sigma[i][k]]),
                (occ.pos_ids[i][k], occ.neg_prev[i][tau[i][k]]),
            ):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
                    merges += 1
    return occ.num_letters - merges


def cycle_types(
    occ: OccurrenceTable, sigma: Matching, tau: Matching
) -> tuple[Partition, ...]:
    """Cycle type of (sigma^-1 tau) restricted to E_i+, per active generator."""
    sigma = occ.check_matching(sigma)
    tau = occ.check_matching(tau)
    out = []
    for i in occ.active:
        inv = [0] * occ.counts[i]
        for k, v in enumerate(sigma[i]):
            inv[v] = k
        seen = [False] * occ.counts[i]
        lengths = []
        for start in range(occ.counts[i]):
            if seen[start]:
                continue
            size = 0
            k = start
            while not seen[k]:
                seen[k] = True
                size += 1
                k = inv[tau[i][k]]
            lengths.append(size)
        out.append(tuple(sorted(lengths, reverse=True)))
    return tuple(out)


def z_disc_count(occ: OccurrenceTable, sigma: Matching, tau: Matching) -> int:
    return sum(len(ct) for ct in cycle_types(occ, sigma, tau))


def euler_char(occ: OccurrenceTable, sigma: Matching, tau: Matching) -> int:
    return (
        block_count(occ, sigma, tau)
        + z_disc_count(occ, sigma, tau)
        - occ.num_letters
        + occ.num_empty
    )


def pair_mobius(occ: OccurrenceTable, sigma: Matching, tau: Matching) -> int:
    """Mobius value of sigma^-1 tau (multiplicative over generators)."""
    return math.prod(
        mobius_of_cycle_type(ct) for ct in cycle_types(occ, sigma, tau)
    )


@dataclass(frozen=True)
class PairScan:
    """Exhaustive statistics of the matching-pair enumeration."""

    balanced: bool
    ch: int | float                      # max Euler characteristic; -inf if unbalanced
    argmax: tuple[MatchingPair, ...]     # pairs achieving ch (sorted), if collected
    diagonal_ch: int | None              # max over pairs with sigma == tau
    histogram: dict[int, int]            # chi -> number of pairs
    match_count: int
    pair_count: int


_UNBALANCED_SCAN = PairScan(False, float("-inf"), (), None, {}, 0, 0)


def _accumulate(occ, scan_iter, collect_argmax):
    """Fold one scan stream into (histogram, max, argmax parts, diagonal max)."""
    shift = occ.num_empty - occ.num_letters
    hist: dict[int, int] = {}
    best: int | None = None
    best_pairs: list[tuple[tuple, tuple]] = []
    diag: int | None = None
    for sigma_parts, tau_parts, blocks, z_total, _ in scan_iter:
        chi = blocks + z_total + shift
        hist[chi] = hist.get(chi, 0) + 1
        if best is None or chi > best:
            best = chi
            best_pairs = [(sigma_parts, tau_parts)] if collect_argmax else []
        elif chi == best and collect_argmax:
            best_pairs.append((sigma_parts, tau_parts))
        if sigma_parts == tau_parts and (diag is None or chi > diag):
            diag = chi
    return hist, best, best_pairs, diag


def _chunk_worker(args):
    letters, rank, lo, hi, cap, collect_argmax = args
    words = WordTuple(tuple(Word(w) for w in letters), rank)
    occ = OccurrenceTable(words)
    return _accumulate(occ, _scan(occ, False, cap, (lo, hi)), collect_argmax)


def pair_statistics(
    t: WordTuple,
    *,
    cyclic_reduce: bool = True,
    cap: int = DEFAULT_PAIR_CAP,
    collect_argmax: bool = True,
    jobs: int = 1,
) -> PairScan:
    """Scan all matching pairs of t, tracking the full chi histogram.

    With ``jobs`` > 1 the sigma enumeration is split into contiguous
    slices scanned in worker processes; the merge is order-independent,
    and the argmax list is sorted canonically either way.
    """
    if cyclic_reduce:
        t = t.cyclically_reduced()
    if not t.is_balanced():
        return _UNBALANCED_SCAN
    occ = occurrences(t)
    match_count = occ.match_count()
    if jobs > 1 and match_count >= 4 * jobs:
        if occ.pair_count() > cap:
            raise PairCapExceeded(occ.pair_count(), cap)
        from concurrent.futures import ProcessPoolExecutor

        letters = tuple(
            tuple((let.gen, let.sign) for let in w) for w in t.words
        )
        bounds = [match_count * k // jobs for k in range(jobs + 1)]
        tasks = [
            (letters, t.rank, bounds[k], bounds[k + 1], cap, collect_argmax)
            for k in range(jobs)
            if bounds[k] < bounds[k + 1]
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_chunk_worker, tasks))
        hist = {}
        best = None
        best_pairs = []
        diag = None
        for part_hist, part_best, part_pairs, part_diag in results:
            for chi, count in part_hist.items():
                hist[chi] = hist.get(chi, 0) + count
            if part_best is not None and (best is None or part_best > best):
                best = part_best
                best_pairs = []
            if part_best == best:
                best_pairs.extend(part_pairs)
            if part_diag is not None and (diag is None or part_diag > diag):
                diag = part_diag
    else:
        hist, best, best_pairs, diag = _accumulate(
            occ, _scan(occ, False, cap), collect_argmax
        )
    argmax = tuple(
        sorted((occ.expand(s), occ.expand(tt)) for s, tt in best_pairs)
    )
    return PairScan(
        True,
        best if best is not None else float("-inf"),
        argmax,
        diag,
        hist,
        match_count,
        occ.pair_count(),
    )


def max_euler(
    t: WordTuple,
    *,
    cyclic_reduce: bool = True,
    cap: int = DEFAULT_PAIR_CAP,
    collect_argmax: bool = True,
    jobs: int = 1,
) -> PairScan:
    """Maximum Euler characteristic over all matching pairs, with argmax set.

    Returns the full scan statistics; ``ch`` is -inf for unbalanced
    input rather than an error, mirroring the vanishing of the trace.
    """
    return pair_statistics(
        t,
        cyclic_reduce=cyclic_reduce,
        cap=cap,
        collect_argmax=collect_argmax,
        jobs=jobs,
    )


def diagonal_max_euler(
    t: WordTuple,
    *,
    cyclic_reduce: bool = True,
    cap: int = DEFAULT_PAIR_CAP,
) -> int | float:
    """Max Euler characteristic over diagonal pairs (sigma, sigma) only.

    Agrees with ``max_euler`` but costs |Match| instead of |Match|^2
    scans; used where only the maximum is needed.
    """
    if cyclic_reduce:
        t = t.cyclically_reduced()
    if not t.is_balanced():
        return float("-inf")
    occ = occurrences(t)
    if occ.match_count() > cap:
        raise PairCapExceeded(occ.match_count(), cap)
    sizes = [occ.counts[i] for i in occ.active]
    pos_ids = [occ.pos_ids[i] for i in occ.active]
    pos_prev = [occ.pos_prev[i] for i in occ.active]
    neg_ids = [occ.neg_ids[i] for i in occ.active]
    neg_prev = [occ.neg_prev[i] for i in occ.active]
    n_nodes = occ.num_letters
    best: int | None = None
    for parts in itertools.product(
        *(itertools.permutations(range(c)) for c in sizes)
    ):
        parent = list(range(n_nodes))
        merges = 0
        for gi, sp in enumerate(parts):
            for k in range(sizes[gi]):
                for a, b in (
                    (pos_prev[gi][k], neg_ids[gi][sp[k]]),
                    (pos_ids[gi][k], neg_prev[gi][sp[k]]),
                ):
                    while parent[a] != a:
                        parent[a] = parent[parent[a]]
                        a = parent[a]
                    while parent[b] != b:
                        parent[b] = parent[parent[b]]
                        b = parent[b]
                    if a != b:
                        parent[a] = b
                        merges += 1
        # chi(sigma, sigma) = B - L + #empty: all L z-discs are fixed points
        chi = (n_nodes - merges) - occ.L + occ.num_empty
        if best is None or chi > best:
            best = chi
    return best if best is not None else occ.num_empty


def class_counts(
    occ: OccurrenceTable, *, cap: int = DEFAULT_PAIR_CAP
) -> dict[tuple[tuple[Partition, ...], int], int]:
    """Multiplicity of each (per-generator cycle types, block count) class.

    This is the whole content of the pair enumeration needed for the
    exact trace: the Weingarten weight of a pair depends only on the
    cycle types, and the power of n only on the block count.
    """
    counts: dict[tuple[tuple[Partition, ...], int], int] = {}
    for _, _, blocks, _, types in _scan(occ, True, cap):
        key = (types, blocks)
        counts[key] = counts.get(key, 0) + 1
    return counts


def commutator_length(
    w: Word, *, rank: int | None = None, cap: int = DEFAULT_PAIR_CAP
) -> int | float:
    """Least g such that w is a product of g commutators; inf if none.

    Computed as (1 - ch(w)) / 2 from the maximal Euler characteristic
    over matching pairs.
    """
    t = word_tuple([w], rank)
    if not t.is_balanced():
        return math.inf
    if w.cyclic_reduce().is_empty:
        return 0
    scan = max_euler(t, cap=cap, collect_argmax=False)
    return (1 - scan.ch) // 2

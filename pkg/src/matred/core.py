"""Independence oracles, derived matroid constructions, and the exact
algorithms for coloring number, disjoint bases and matroid intersection.

Ground sets are {0..n-1}; subsets are int bitmasks. Oracles are immutable
after construction and cache their answers, so they are safe to share
between concurrent readers.
"""

from collections import deque
from dataclasses import dataclass, field

from matred import kernels
from matred.bitset import bit_list, bits, full_mask, mask_of
from matred.errors import (
    EmptyTruncation,
    GroundSetMismatch,
    GroundSetTooLarge,
    InvalidPartition,
    LoopPresent,
)

AUDIT_CAP = 14
TABLE_CAP = 18


@dataclass(frozen=True)
class Partition:
    """Ordered disjoint nonempty classes covering {0..n-1}.

    Doubles as a partition matroid description and as a coloring
    certificate; its coloring number is the largest class size.
    """

    n: int
    classes: tuple = field(default_factory=tuple)

    def __post_init__(self):
        union = 0
        for c in self.classes:
            if c == 0:
                raise InvalidPartition("empty class")
            if c & union:
                raise InvalidPartition("classes overlap")
            union |= c
        if union != full_mask(self.n):
            raise InvalidPartition("classes do not cover the ground set")

    @staticmethod
    def from_sets(n, sets):
        return Partition(n, tuple(mask_of(s) for s in sets))

    def as_sets(self):
        return [bit_list(c) for c in self.classes]

    def class_sizes(self):
        return [c.bit_count() for c in self.classes]

    def max_class_size(self):
        return max((c.bit_count() for c in self.classes), default=0)

    def class_of(self, e):
        b = 1 << e
        for i, c in enumerate(self.classes):
            if c & b:
                return i
        raise ValueError(f"element {e} not in partition")


class Matroid:
    """Base independence oracle. Subclasses implement ``_indep(mask)``."""

    def __init__(self, n):
        if n < 0:
            raise ValueError("ground set size must be nonnegative")
        self.n = n
        self._indep_cache = {}
        self._rank_cache = {}
        self._table = None

    def _indep(self, mask):
        raise NotImplementedError

    def indep(self, mask):
        cached = self._indep_cache.get(mask)
        if cached is None:
            cached = self._indep_cache[mask] = bool(self._indep(mask))
        return cached

    @property
    def full(self):
        return full_mask(self.n)

    def rank(self, mask=None):
        """Greedy maximum independent subset size, ascending element order."""
        if mask is None:
            mask = self.full
        cached = self._rank_cache.get(mask)
        if cached is None:
            cur = 0
            for e in bits(mask):
                if self.indep(cur | (1 << e)):
                    cur |= 1 << e
            cached = self._rank_cache[mask] = cur.bit_count()
        return cached

    def is_loopless(self):
        return all(self.indep(1 << e) for e in range(self.n))

    def require_loopless(self):
        for e in range(self.n):
            if not self.indep(1 << e):
                raise LoopPresent(f"element {e} is a loop")

    def table(self):
        """Independence table over all 2^n subsets (cached).

        Assumes the oracle is a genuine matroid: supersets of dependent
        sets are marked dependent without querying.
        """
        if self._table is None:
            if self.n > TABLE_CAP:
                raise GroundSetTooLarge(f"table for n={self.n} refused")
            self._table = build_table(self, assume_closed=True)
        return self._table


class FunctionalMatroid(Matroid):
    """Oracle defined by an arbitrary ``mask -> bool`` function.

    Used for ad-hoc set systems; feed the result to ``audit_axioms`` before
    trusting it as a matroid.
    """

    def __init__(self, n, fn):
        super().__init__(n)
        self._fn = fn

    def _indep(self, mask):
        return self._fn(mask)


def build_table(M, assume_closed=True):
    """Independence bytearray over all subsets.

    With ``assume_closed`` the build skips oracle calls on supersets of
    known dependent sets; the axiom audit sets it to False so that the raw
    oracle is recorded verbatim.
    """
    n = M.n
    if n > TABLE_CAP:
        raise GroundSetTooLarge(f"table for n={n} refused")
    table = bytearray(1 << n)
    table[0] = 1 if M.indep(0) else 0
    for mask in range(1, 1 << n):
        if assume_closed:
            m = mask
            closed = True
            while m:
                low = m & -m
                if not table[mask ^ low]:
                    closed = False
                    break
                m ^= low
            if not closed:
                continue
        table[mask] = 1 if M.indep(mask) else 0
    return table


def rank(M, mask):
    """Rank of a subset (greedy; correctness is the matroid property)."""
    return M.rank(mask)


def audit_axioms(M):
    """Exhaustively check (I1), (I2), the exchange axiom and looplessness."""
    n = M.n
    if n > AUDIT_CAP:
        raise GroundSetTooLarge(f"axiom audit infeasible for n={n}")
    table = build_table(M, assume_closed=False)
    if not table[0]:
        return False
    for e in range(n):
        if not table[1 << e]:
            return False
    for mask in range(1, 1 << n):
        if table[mask]:
            m = mask
            while m:
                low = m & -m
                if not table[mask ^ low]:
                    return False
                m ^= low
    # exchange: every independent J must be a maximum independent subset of
    # J together with all elements that do not extend it
    ranks = kernels.rank_table(table, n)
    full = full_mask(n)
    for mask in range(1 << n):
        if not table[mask]:
            continue
        blocked = 0
        rest = full & ~mask
        while rest:
            low = rest & -rest
            if not table[mask | low]:
                blocked |= low
            rest ^= low
        if ranks[mask | blocked] != mask.bit_count():
            return False
    return True


# ---------------------------------------------------------------------------
# derived constructions


class DualMatroid(Matroid):
    def __init__(self, M):
        super().__init__(M.n)
        self.base = M
        self._base_rank = M.rank()

    def _indep(self, mask):
        return self.base.rank(self.full & ~mask) == self._base_rank


class RestrictedMatroid(Matroid):
    def __init__(self, M, elements):
        elements = sorted(elements)
        if any(e < 0 or e >= M.n for e in elements):
            raise ValueError("restriction outside the ground set")
        super().__init__(len(elements))
        self.base = M
        self.parent_elements = tuple(elements)

    def _indep(self, mask):
        parent = 0
        for i in bits(mask):
            parent |= 1 << self.parent_elements[i]
        return self.base.indep(parent)


class TruncatedMatroid(Matroid):
    def __init__(self, M, k):
        super().__init__(M.n)
        self.base = M
        self.k = k

    def _indep(self, mask):
        return mask.bit_count() <= self.k and self.base.indep(mask)


class DirectSumMatroid(Matroid):
    def __init__(self, M1, M2):
        super().__init__(M1.n + M2.n)
        self.parts = (M1, M2)

    def _indep(self, mask):
        m1, m2 = self.parts
        return m1.indep(mask & full_mask(m1.n)) and m2.indep(mask >> m1.n)


class ParallelExtensionMatroid(Matroid):
    """Ground set grows by one element (id n) parallel to ``s``."""

    def __init__(self, M, s):
        if not M.indep(1 << s):
            raise LoopPresent(f"cannot add a parallel copy of loop {s}")
        super().__init__(M.n + 1)
        self.base = M
        self.s = s

    def _indep(self, mask):
        new_bit = 1 << self.base.n
        s_bit = 1 << self.s
        if not mask & new_bit:
            return self.base.indep(mask)
        if mask & s_bit:
            return False
        return self.base.indep((mask ^ new_bit) | s_bit)


def dual(M):
    """X is independent iff the rest of the ground set spans the matroid."""
    return DualMatroid(M)


def restrict(M, elements):
    """Restriction to a subset, re-indexed to a dense 0-based ground set.

    ``elements`` may be an iterable of ids or a bitmask; the i-th smallest
    kept element becomes element i (see ``parent_elements``).
    """
    if isinstance(elements, int):
        elements = bit_list(elements)
    return RestrictedMatroid(M, elements)


def truncate(M, k):
    """Independent sets of size at most k. Truncating at or above the rank
    returns the matroid unchanged; truncation to rank 0 is rejected."""
    if k < 0:
        raise ValueError("truncation rank must be nonnegative")
    if k == 0 and M.n > 0:
        raise EmptyTruncation("rank-0 truncation would make every element a loop")
    if k >= M.rank():
        return M
    return TruncatedMatroid(M, k)


def direct_sum(M1, M2):
    """Disjoint union; M2's elements are relabeled to start at M1.n."""
    return DirectSumMatroid(M1, M2)


def add_parallel(M, s):
    return ParallelExtensionMatroid(M, s)


# ---------------------------------------------------------------------------
# matroid union machinery


def _union_augment(Ms, parts, s):
    """Try to absorb element s into the disjoint independent sets ``parts``
    (parts[j] independent in Ms[j]) via a shortest augmenting path in the
    exchange digraph. Mutates ``parts`` and reports success."""
    k = len(Ms)
    prev = {s: None}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        xbit = 1 << x
        for j in range(k):
            if parts[j] & xbit:
                continue
            if Ms[j].indep(parts[j] | xbit):
                parts[j] |= xbit
                v = x
                while prev[v] is not None:
                    pv, pj = prev[v]
                    parts[pj] = (parts[pj] & ~(1 << v)) | (1 << pv)
                    v = pv
                return True
        for j in range(k):
            if parts[j] & xbit:
                continue
            with_x = parts[j] | xbit
            m = parts[j]
            while m:
                low = m & -m
                m ^= low
                y = low.bit_length() - 1
                if y in prev:
                    continue
                if Ms[j].indep(with_x ^ low):
                    prev[y] = (x, j)
                    queue.append(y)
    return False


def matroid_union_max(Ms):
    """Maximum-size disjoint family (I_1,...,I_k) with I_j independent in
    Ms[j]; single ascending pass of augmentations reaches the optimum."""
    if not Ms:
        return []
    n = Ms[0].n
    if any(M.n != n for M in Ms):
        raise GroundSetMismatch("union requires a common ground set")
    parts = [0] * len(Ms)
    for s in range(n):
        sbit = 1 << s
        if any(p & sbit for p in parts):
            continue
        _union_augment(Ms, parts, s)
    return parts


def partition_into_independent(M, k):
    """Partition of the ground set into k sets independent in M, or None."""
    parts = matroid_union_max([M] * k)
    covered = 0
    for p in parts:
        covered |= p
    if covered != M.full:
        return None
    return parts


def coloring_number(M):
    """Coloring number with a certificate partition into independent sets.

    Searches k upward from the rank lower bound ceil(n / r); each
    candidate k is decided by matroid union on k copies of M.
    """
    M.require_loopless()
    n = M.n
    if n == 0:
        return 0, Partition(0, ())
    r = M.rank()
    k = -(-n // r)
    while True:
        parts = partition_into_independent(M, k)
        if parts is not None:
            classes = tuple(p for p in parts if p)
            return len(classes), Partition(n, classes)
        k += 1


def coloring_number_bruteforce(M):
    """Independent re-derivation of the coloring number by exhaustive
    search over class assignments; cross-checks ``coloring_number``."""
    if M.n > 12:
        raise GroundSetTooLarge("brute-force coloring capped at 12 elements")
    M.require_loopless()
    if M.n == 0:
        return 0
    lower = -(-M.n // M.rank())
    return kernels.chi_bruteforce(M.table(), M.n, lower)


def has_k_disjoint_bases(M, k):
    """Decide whether k pairwise disjoint bases exist, via matroid union
    on k copies; on success the certificate lists the bases."""
    if k < 1:
        raise ValueError("k must be at least 1")
    parts = matroid_union_max([M] * k)
    target = k * M.rank()
    if sum(p.bit_count() for p in parts) != target:
        return False, None
    return True, parts


def matroid_intersection_max(M1, M2):
    """Maximum common independent set via shortest augmenting paths in the
    exchange digraph; returns (mask, size)."""
    if M1.n != M2.n:
        raise GroundSetMismatch("intersection requires a common ground set")
    n = M1.n
    common = 0
    while True:
        prev = {}
        queue = deque()
        target = None
        for x in range(n):
            xbit = 1 << x
            if common & xbit or not M1.indep(common | xbit):
                continue
            prev[x] = None
            if M2.indep(common | xbit):
                target = x
                break
            queue.append(x)
        while target is None and queue:
            v = queue.popleft()
            vbit = 1 << v
            if common & vbit:
                # v leaves, x enters, keeping independence in M1
                base = common ^ vbit
                for x in range(n):
                    xbit = 1 << x
                    if common & xbit or x in prev:
                        continue
                    if M1.indep(base | xbit):
                        prev[x] = v
                        if M2.indep(common | xbit):
                            target = x
                            break
                        queue.append(x)
            else:
                # y leaves, v enters, keeping independence in M2
                for y in bits(common):
                    if y in prev:
                        continue
                    if M2.indep((common ^ (1 << y)) | vbit):
                        prev[y] = v
                        queue.append(y)
        if target is None:
            return common, common.bit_count()
        v = target
        while v is not None:
            common ^= 1 << v
            v = prev.get(v)
        assert M1.indep(common) and M2.indep(common)


def circuits(M):
    """All inclusion-minimal dependent sets, ascending by bitmask."""
    if M.n > AUDIT_CAP:
        raise GroundSetTooLarge("circuit enumeration capped at 14 elements")
    table = M.table()
    out = []
    for mask in range(1, 1 << M.n):
        if table[mask]:
            continue
        m = mask
        minimal = True
        while m:
            low = m & -m
            if not table[mask ^ low]:
                minimal = False
                break
            m ^= low
        if minimal:
            out.append(mask)
    return out


def bases(M):
    """All maximal independent sets (= independent sets of full rank)."""
    if M.n > AUDIT_CAP:
        raise GroundSetTooLarge("basis enumeration capped at 14 elements")
    table = M.table()
    r = M.rank()
    return [m for m in range(1 << M.n) if m.bit_count() == r and table[m]]

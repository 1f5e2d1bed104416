"""Pure-Python kernels for the exhaustive searches.

Every function here has a compiled twin in ``_speedups.pyx`` with identical
semantics; ``matred.kernels`` picks the compiled version when available.
All kernels operate on an independence table: a ``bytearray`` of length
``2**n`` whose entry at index ``X`` is 1 iff the subset with bitmask ``X``
is independent. Tables are only built for small ground sets, so masks fit
comfortably in machine words.
"""


def rank_table(bits, n):
    """Ranks of all subsets, as a list indexed by bitmask.

    Valid for any downward-closed system: the largest independent subset of
    a dependent X is contained in X minus one element.
    """
    size = 1 << n
    ranks = [0] * size
    for mask in range(1, size):
        if bits[mask]:
            ranks[mask] = mask.bit_count()
        else:
            best = 0
            m = mask
            while m:
                low = m & -m
                r = ranks[mask ^ low]
                if r > best:
                    best = r
                m ^= low
            ranks[mask] = best
    return ranks


def weak_map_witness(bits, n, class_masks):
    """First dependent transversal of the classes, or -1 if none exists.

    Walks transversal prefixes in ascending element order; a dependent
    prefix is completed greedily (supersets of dependent sets stay
    dependent), so the returned mask always picks one element per class.
    """
    q = len(class_masks)

    def complete(prefix, i):
        for j in range(i, q):
            m = class_masks[j]
            prefix |= m & -m
        return prefix

    def dfs(prefix, i):
        if i == q:
            return -1
        m = class_masks[i]
        while m:
            low = m & -m
            m ^= low
            nxt = prefix | low
            if not bits[nxt]:
                return complete(nxt, i + 1)
            hit = dfs(nxt, i + 1)
            if hit != -1:
                return hit
        return -1

    return dfs(0, 0)


def has_independent_transversal(bits, n, class_masks):
    """True iff some transversal picking one element per class is independent."""
    q = len(class_masks)

    def dfs(prefix, i):
        if i == q:
            return True
        m = class_masks[i]
        while m:
            low = m & -m
            m ^= low
            nxt = prefix | low
            if bits[nxt] and dfs(nxt, i + 1):
                return True
        return False

    return dfs(0, 0)


def min_partition_chi(bits, n, rank, rank_preserving):
    """Minimum over all weak-map set partitions of the largest class size.

    Enumerates set partitions as restricted growth strings, pruning on the
    best max-class-size found so far, on the class count (a weak map never
    has more classes than the rank), and on dependent cross-class pairs.
    Returns -1 when no qualifying partition exists (only possible in
    rank-preserving mode on degenerate inputs).
    """
    if n == 0:
        return 0
    # pair-dependence masks for the cross-class prune
    dep2 = [0] * n
    for e in range(n):
        for f in range(e + 1, n):
            if not bits[(1 << e) | (1 << f)]:
                dep2[e] |= 1 << f
                dep2[f] |= 1 << e

    best = n + 1
    if not rank_preserving or rank == 1:
        best = n  # the single-class partition is always a weak map
    class_masks = [0] * n
    class_sizes = [0] * n

    def leaf_ok(num_classes):
        masks = class_masks[:num_classes]
        if weak_map_witness(bits, n, masks) != -1:
            return False
        if rank_preserving:
            if num_classes != rank:
                return False
            if not has_independent_transversal(bits, n, masks):
                return False
        return True

    def dfs(i, num_classes, assigned, cur_max):
        nonlocal best
        if cur_max >= best:
            return
        if i == n:
            if num_classes and leaf_ok(num_classes):
                best = cur_max
            return
        if rank_preserving and num_classes + (n - i) < rank:
            return
        e_bit = 1 << i
        limit = num_classes + 1 if num_classes < rank else num_classes
        for c in range(limit):
            opening = c == num_classes
            if not opening:
                if class_sizes[c] + 1 >= best:
                    continue
                if dep2[i] & (assigned & ~class_masks[c]):
                    continue
            elif dep2[i] & assigned:
                continue
            class_masks[c] |= e_bit
            class_sizes[c] += 1
            dfs(
                i + 1,
                num_classes + opening,
                assigned | e_bit,
                max(cur_max, class_sizes[c]),
            )
            class_masks[c] ^= e_bit
            class_sizes[c] -= 1

    dfs(0, 0, 0, 0)
    return best if best <= n else -1


def chi_bruteforce(bits, n, lower):
    """Smallest k >= lower admitting a partition into k independent classes."""
    if n == 0:
        return 0
    class_masks = [0] * n

    def feasible(i, used, k):
        if i == n:
            return True
        e_bit = 1 << i
        limit = used + 1 if used < k else used
        for c in range(limit):
            if bits[class_masks[c] | e_bit]:
                class_masks[c] |= e_bit
                if feasible(i + 1, max(used, c + 1), k):
                    class_masks[c] ^= e_bit
                    return True
                class_masks[c] ^= e_bit
        return False

    k = max(1, lower)
    while True:
        for c in range(n):
            class_masks[c] = 0
        if feasible(0, 0, k):
            return k
        k += 1


def list_color_witness(tables, n, lists):
    """Search for a list coloring with every color class independent in
    every table; returns the per-element color assignment or None.

    ``lists`` holds per-element sequences of color ids in {0..C-1}.
    """
    num_colors = 0
    for lst in lists:
        for c in lst:
            if c + 1 > num_colors:
                num_colors = c + 1
    color_masks = [0] * num_colors
    assign = [-1] * n

    def dfs(i):
        if i == n:
            return True
        e_bit = 1 << i
        for c in lists[i]:
            new = color_masks[c] | e_bit
            if all(t[new] for t in tables):
                color_masks[c] = new
                assign[i] = c
                if dfs(i + 1):
                    return True
                color_masks[c] ^= e_bit
                assign[i] = -1
        return False

    if dfs(0):
        return list(assign)
    return None

# cython: boundscheck=False, wraparound=False, nonecheck=False
"""Compiled kernels; semantics match matred._kernels exactly.

Independence tables arrive as byte buffers over all 2**n subsets; masks fit
in 32 bits because tables are only built for small ground sets.
"""

from libc.stdlib cimport free, malloc

import array


cdef extern from *:
    int __builtin_popcount(unsigned int) nogil


def rank_table(const unsigned char[::1] bits, int n):
    cdef Py_ssize_t size = 1 << n
    out = array.array("i", bytes(4 * size))
    cdef int[::1] ranks = out
    cdef Py_ssize_t mask
    cdef unsigned int m, low
    cdef int best, r
    for mask in range(1, size):
        if bits[mask]:
            ranks[mask] = __builtin_popcount(<unsigned int> mask)
        else:
            best = 0
            m = <unsigned int> mask
            while m:
                low = m & (~m + 1)
                r = ranks[mask ^ low]
                if r > best:
                    best = r
                m ^= low
            ranks[mask] = best
    return out


cdef long _wm_dfs(const unsigned char[::1] bits, unsigned int* masks, int q,
                  int i, unsigned int prefix):
    cdef unsigned int m, low, nxt
    cdef long hit
    cdef int j
    if i == q:
        return -1
    m = masks[i]
    while m:
        low = m & (~m + 1)
        m ^= low
        nxt = prefix | low
        if not bits[nxt]:
            for j in range(i + 1, q):
                nxt |= masks[j] & (~masks[j] + 1)
            return <long> nxt
        hit = _wm_dfs(bits, masks, q, i + 1, nxt)
        if hit != -1:
            return hit
    return -1


cdef bint _transversal_dfs(const unsigned char[::1] bits, unsigned int* masks,
                           int q, int i, unsigned int prefix):
    cdef unsigned int m, low, nxt
    if i == q:
        return True
    m = masks[i]
    while m:
        low = m & (~m + 1)
        m ^= low
        nxt = prefix | low
        if bits[nxt] and _transversal_dfs(bits, masks, q, i + 1, nxt):
            return True
    return False


cdef unsigned int* _to_mask_array(object class_masks, int q) except NULL:
    cdef unsigned int* masks = <unsigned int*> malloc(q * sizeof(unsigned int))
    if masks == NULL:
        raise MemoryError()
    cdef int i
    for i in range(q):
        masks[i] = <unsigned int> class_masks[i]
    return masks


def weak_map_witness(const unsigned char[::1] bits, int n, class_masks):
    cdef int q = len(class_masks)
    if q == 0:
        return -1
    cdef unsigned int* masks = _to_mask_array(class_masks, q)
    try:
        return _wm_dfs(bits, masks, q, 0, 0)
    finally:
        free(masks)


def has_independent_transversal(const unsigned char[::1] bits, int n, class_masks):
    cdef int q = len(class_masks)
    if q == 0:
        return True
    cdef unsigned int* masks = _to_mask_array(class_masks, q)
    try:
        return bool(_transversal_dfs(bits, masks, q, 0, 0))
    finally:
        free(masks)


cdef struct MPState:
    int n
    int rank
    bint rank_preserving
    int best
    unsigned int* class_masks
    int* class_sizes
    unsigned int* dep2


cdef bint _mp_leaf_ok(const unsigned char[::1] bits, MPState* st, int num_classes):
    if _wm_dfs(bits, st.class_masks, num_classes, 0, 0) != -1:
        return False
    if st.rank_preserving:
        if num_classes != st.rank:
            return False
        if not _transversal_dfs(bits, st.class_masks, num_classes, 0, 0):
            return False
    return True


cdef void _mp_dfs(const unsigned char[::1] bits, MPState* st, int i,
                  int num_classes, unsigned int assigned, int cur_max):
    cdef int c, limit, size
    cdef unsigned int e_bit
    cdef bint opening
    if cur_max >= st.best:
        return
    if i == st.n:
        if num_classes and _mp_leaf_ok(bits, st, num_classes):
            st.best = cur_max
        return
    if st.rank_preserving and num_classes + (st.n - i) < st.rank:
        return
    e_bit = 1u << i
    limit = num_classes + 1 if num_classes < st.rank else num_classes
    for c in range(limit):
        opening = c == num_classes
        if not opening:
            if st.class_sizes[c] + 1 >= st.best:
                continue
            if st.dep2[i] & (assigned & ~st.class_masks[c]):
                continue
        elif st.dep2[i] & assigned:
            continue
        st.class_masks[c] |= e_bit
        st.class_sizes[c] += 1
        size = st.class_sizes[c]
        _mp_dfs(bits, st, i + 1, num_classes + (1 if opening else 0),
                assigned | e_bit, cur_max if cur_max >= size else size)
        st.class_masks[c] ^= e_bit
        st.class_sizes[c] -= 1


def min_partition_chi(const unsigned char[::1] bits, int n, int rank,
                      bint rank_preserving):
    if n == 0:
        return 0
    cdef MPState st
    st.n = n
    st.rank = rank
    st.rank_preserving = rank_preserving
    st.best = n + 1
    if not rank_preserving or rank == 1:
        st.best = n
    st.class_masks = <unsigned int*> malloc(n * sizeof(unsigned int))
    st.class_sizes = <int*> malloc(n * sizeof(int))
    st.dep2 = <unsigned int*> malloc(n * sizeof(unsigned int))
    if st.class_masks == NULL or st.class_sizes == NULL or st.dep2 == NULL:
        raise MemoryError()
    cdef int e, f
    try:
        for e in range(n):
            st.class_masks[e] = 0
            st.class_sizes[e] = 0
            st.dep2[e] = 0
        for e in range(n):
            for f in range(e + 1, n):
                if not bits[(1u << e) | (1u << f)]:
                    st.dep2[e] |= 1u << f
                    st.dep2[f] |= 1u << e
        _mp_dfs(bits, &st, 0, 0, 0, 0)
        return st.best if st.best <= n else -1
    finally:
        free(st.class_masks)
        free(st.class_sizes)
        free(st.dep2)


cdef bint _chi_dfs(const unsigned char[::1] bits, unsigned int* class_masks,
                   int n, int i, int used, int k):
    cdef int c, limit
    cdef unsigned int e_bit
    if i == n:
        return True
    e_bit = 1u << i
    limit = used + 1 if used < k else used
    for c in range(limit):
        if bits[class_masks[c] | e_bit]:
            class_masks[c] |= e_bit
            if _chi_dfs(bits, class_masks, n, i + 1,
                        used if used > c + 1 else c + 1, k):
                class_masks[c] ^= e_bit
                return True
            class_masks[c] ^= e_bit
    return False


def chi_bruteforce(const unsigned char[::1] bits, int n, int lower):
    if n == 0:
        return 0
    cdef unsigned int* class_masks = <unsigned int*> malloc(n * sizeof(unsigned int))
    if class_masks == NULL:
        raise MemoryError()
    cdef int k = lower if lower > 1 else 1
    cdef int c
    try:
        while True:
            for c in range(n):
                class_masks[c] = 0
            if _chi_dfs(bits, class_masks, n, 0, 0, k):
                return k
            k += 1
    finally:
        free(class_masks)


cdef bint _lc_dfs(const unsigned char[::1] flat, Py_ssize_t stride, int nm,
                  int n, int i, int* list_offsets, int* list_values,
                  unsigned int* color_masks, int* assign):
    cdef int j, c, m
    cdef unsigned int e_bit, new_mask
    cdef bint ok
    if i == n:
        return True
    e_bit = 1u << i
    for j in range(list_offsets[i], list_offsets[i + 1]):
        c = list_values[j]
        new_mask = color_masks[c] | e_bit
        ok = True
        for m in range(nm):
            if not flat[m * stride + new_mask]:
                ok = False
                break
        if ok:
            color_masks[c] = new_mask
            assign[i] = c
            if _lc_dfs(flat, stride, nm, n, i + 1, list_offsets, list_values,
                       color_masks, assign):
                return True
            color_masks[c] ^= e_bit
            assign[i] = -1
    return False


def list_color_witness(tables, int n, lists):
    cdef int nm = len(tables)
    cdef Py_ssize_t stride = 1 << n
    flat_obj = b"".join(bytes(t) for t in tables)
    cdef const unsigned char[::1] flat = flat_obj
    cdef int num_colors = 0
    cdef int total = 0
    for lst in lists:
        total += len(lst)
        for c in lst:
            if c + 1 > num_colors:
                num_colors = c + 1
    cdef int* offsets = <int*> malloc((n + 1) * sizeof(int))
    cdef int* values = <int*> malloc((total if total else 1) * sizeof(int))
    cdef unsigned int* color_masks = <unsigned int*> malloc(
        (num_colors if num_colors else 1) * sizeof(unsigned int))
    cdef int* assign = <int*> malloc((n if n else 1) * sizeof(int))
    if offsets == NULL or values == NULL or color_masks == NULL or assign == NULL:
        raise MemoryError()
    cdef int i, pos = 0
    try:
        for i in range(num_colors):
            color_masks[i] = 0
        for i in range(n):
            offsets[i] = pos
            for c in lists[i]:
                values[pos] = c
                pos += 1
            assign[i] = -1
        offsets[n] = pos
        if _lc_dfs(flat, stride, nm, n, 0, offsets, values, color_masks, assign):
            return [assign[i] for i in range(n)]
        return None
    finally:
        free(offsets)
        free(values)
        free(color_masks)
        free(assign)

"""Hot kernels for the generational loop and bulk sampling.

Everything here is written in nopython-compatible style and wrapped by
:func:`smsemoa._accel.kernel`, so the same source runs JIT-compiled or as
plain Python (``SMSEMOA_NUMBA=0``) with bit-identical results.

Objectives are int64 values scaled by a constant per-problem denominator
and negated for minimization problems, so the engine always maximizes and
every comparison is exact integer arithmetic. Randomness is a xoshiro256**
stream held in a ``uint64[4]`` array; bounded draws use rejection sampling
so probabilities like 1/n are exact.

Draw order per generation (fixed contract):
  1. parent one: for the reuse variant with a nonempty archive, one unit
     draw (coin) then one bounded draw (index); otherwise one bounded draw.
  2. if a crossover operator is configured: one unit draw against p_c, and
     when it fires, parent two (as in 1) followed by the operator's draws.
  3. mutation draws (bit strings: one bounded draw per bit; permutations:
     one unit draw against the move rate, then the move's draws).
  4. survival tie-breaks, each only when the candidate set has >1 element:
     max-f1 boundary representative, then max-f2 representative (first
     front only), then the argmin set.
"""

import numpy as np

from ._accel import kernel

# problem ids
PROB_OJZJ = 0
PROB_OJZJ_SS = 1
PROB_OMM = 2
PROB_LOTZ = 3
PROB_KP = 4
PROB_NK = 5
PROB_TSP = 6
PROB_QAP = 7

# algorithm variants
VARIANT_L = 0
VARIANT_A = 1
VARIANT_AR = 2

# crossover / permutation-mutation kinds
CX_NONE = 0
CX_ONE_POINT = 1
CX_UNIFORM = 2
CX_OX = 3
CX_CX = 4
MUT_TWO_OPT = 0
MUT_TWO_SWAP = 1

# run loop statuses and box indices
STATUS_BUDGET = 0
STATUS_COVERED = 1
STATUS_GROW = 2
BOX_GENS = 0
BOX_COVERED = 1
BOX_COVGEN = 2
BOX_DISTINCT = 3

_U64 = np.uint64
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX_A = np.uint64(0xBF58476D1CE4E5B9)
_MIX_B = np.uint64(0x94D049BB133111EB)
_MASK64 = np.uint64(0xFFFFFFFFFFFFFFFF)
_FNV_OFFSET = np.uint64(0xCBF29CE484222325)
_FNV_PRIME = np.uint64(0x100000001B3)
_I64_MAX = 9223372036854775807


# ---------------------------------------------------------------------------
# randomness


@kernel
def mix64(z):
    """splitmix64 finalizer (stateless bit mixer)."""
    z = _U64((z ^ (z >> _U64(30))) * _MIX_A)
    z = _U64((z ^ (z >> _U64(27))) * _MIX_B)
    return _U64(z ^ (z >> _U64(31)))


@kernel
def derive_seed(base, index):
    """Fixed (base, index) -> stream seed mixing; injective in practice."""
    return mix64(_U64(base + _U64(_U64(index + _U64(1)) * _GOLDEN)))


@kernel
def fold_label(base, label_bytes):
    """Mix a byte label (FNV-1a) into a base seed; used for named streams."""
    h = _FNV_OFFSET
    for i in range(label_bytes.shape[0]):
        h = _U64(h ^ _U64(label_bytes[i]))
        h = _U64(h * _FNV_PRIME)
    return mix64(_U64(base ^ h))


@kernel
def seed_state(state, seed):
    """Fill a xoshiro256** state from a 64-bit seed via splitmix64."""
    s = _U64(seed)
    for i in range(4):
        s = _U64(s + _GOLDEN)
        state[i] = mix64(s)
    if state[0] == _U64(0) and state[1] == _U64(0) and state[2] == _U64(0) and state[3] == _U64(0):
        state[0] = _U64(1)


@kernel
def next_u64(state):
    """xoshiro256** step; mutates state, returns a uint64."""
    s0 = state[0]
    s1 = state[1]
    s2 = state[2]
    s3 = state[3]
    r = _U64(s1 * _U64(5))
    out = _U64(_U64((r << _U64(7)) | (r >> _U64(57))) * _U64(9))
    t = _U64(s1 << _U64(17))
    s2 = _U64(s2 ^ s0)
    s3 = _U64(s3 ^ s1)
    s1 = _U64(s1 ^ s2)
    s0 = _U64(s0 ^ s3)
    s2 = _U64(s2 ^ t)
    s3 = _U64((s3 << _U64(45)) | (s3 >> _U64(19)))
    state[0] = s0
    state[1] = s1
    state[2] = s2
    state[3] = s3
    return out


@kernel
def next_unit(state):
    """float64 uniform in [0, 1) from the top 53 bits."""
    return np.float64(next_u64(state) >> _U64(11)) * (1.0 / 9007199254740992.0)


@kernel
def next_below(state, n):
    """Uniform int64 in [0, n); exact via rejection."""
    nn = _U64(n)
    lim = _U64(_MASK64 - _U64(_MASK64 % nn))
    while True:
        x = next_u64(state)
        if x < lim:
            return np.int64(x % nn)


@kernel
def next_distinct_pair(state, n):
    """Two distinct positions in [0, n), returned ordered (i < j)."""
    i = next_below(state, n)
    j = next_below(state, n)
    while j == i:
        j = next_below(state, n)
    if i < j:
        return i, j
    return j, i


@kernel
def fill_unit(state, out):
    for i in range(out.shape[0]):
        out[i] = next_unit(state)


@kernel
def fill_below(state, n, out):
    for i in range(out.shape[0]):
        out[i] = next_below(state, n)


# ---------------------------------------------------------------------------
# genotype initialization and variation operators


@kernel
def fill_random_bits(state, out):
    for i in range(out.shape[0]):
        out[i] = np.uint8(next_u64(state) & _U64(1))


@kernel
def fill_random_perm(state, out):
    """Fisher-Yates shuffle of the identity; unbiased."""
    n = out.shape[0]
    for i in range(n):
        out[i] = i
    for i in range(n - 1, 0, -1):
        j = next_below(state, i + 1)
        t = out[i]
        out[i] = out[j]
        out[j] = t


@kernel
def mutate_bits(state, row, n):
    """Flip each bit independently with probability exactly 1/n."""
    for b in range(n):
        if next_below(state, n) == 0:
            row[b] = row[b] ^ np.uint8(1)


@kernel
def cross_one_point(state, x, y, child):
    """child = x[:i] + y[i:] with i uniform in [1..n]."""
    n = child.shape[0]
    cut = 1 + next_below(state, n)
    for b in range(n):
        if b < cut:
            child[b] = x[b]
        else:
            child[b] = y[b]


@kernel
def cross_uniform(state, x, y, child):
    """Each bit from x when the draw's low bit is set, else from y."""
    for b in range(child.shape[0]):
        if next_u64(state) & _U64(1) != _U64(0):
            child[b] = x[b]
        else:
            child[b] = y[b]


@kernel
def cross_ox(state, p, q, child, used):
    """Order crossover: keep p[c1..c2], fill from q cyclically after c2."""
    n = child.shape[0]
    c1, c2 = next_distinct_pair(state, n)
    for v in range(n):
        used[v] = 0
    for t in range(c1, c2 + 1):
        child[t] = p[t]
        used[p[t]] = 1
    pos = (c2 + 1) % n
    idx = (c2 + 1) % n
    left = n - (c2 - c1 + 1)
    while left > 0:
        v = q[idx]
        idx = (idx + 1) % n
        if used[v] == 0:
            child[pos] = v
            used[v] = 1
            pos = (pos + 1) % n
            left -= 1


@kernel
def cross_cx(p, q, child, pinv, visited):
    """Cycle crossover: cycles found from position 0 alternate p, q, p, ...

    Draws nothing from the stream.
    """
    n = child.shape[0]
    for i in range(n):
        pinv[p[i]] = i
        visited[i] = 0
    cycles = 0
    for s in range(n):
        if visited[s] == 1:
            continue
        cycles += 1
        from_p = (cycles % 2) == 1
        j = s
        while visited[j] == 0:
            visited[j] = 1
            if from_p:
                child[j] = p[j]
            else:
                child[j] = q[j]
            j = pinv[q[j]]


@kernel
def mutate_two_opt(state, row):
    """Reverse a uniformly chosen segment row[i..j], i < j."""
    n = row.shape[0]
    i, j = next_distinct_pair(state, n)
    while i < j:
        t = row[i]
        row[i] = row[j]
        row[j] = t
        i += 1
        j -= 1


@kernel
def mutate_two_swap(state, row):
    """Swap two distinct uniformly chosen positions."""
    i, j = next_distinct_pair(state, row.shape[0])
    t = row[i]
    row[i] = row[j]
    row[j] = t


# ---------------------------------------------------------------------------
# evaluation (scaled int64, engine orientation: always maximize)


@kernel
def _jump_side(c, n, k):
    if c <= n - k or c == n:
        return k + c
    return n - c


@kernel
def _jump_ss_side(c, n, k, a):
    # stepping-stone branches take precedence, then the plain jump branches;
    # values are scaled by n so 2k+1/n and n-1/n become integers
    if c == k - a:
        return 2 * k * n + 1
    if c == n - (k - a):
        return n * n - 1
    if c <= n - k or c == n:
        return (k + c) * n
    return (n - c) * n


@kernel
def eval_bits(prob, bits, n, k, a, kp_p1, kp_p2, nk_n1, nk_t1, nk_n2, nk_t2):
    if prob == PROB_KP:
        s1 = 0
        s2 = 0
        for i in range(n):
            if bits[i] == 1:
                s1 += kp_p1[i]
                s2 += kp_p2[i]
        return s1, s2
    if prob == PROB_NK:
        deg = nk_n1.shape[1]
        t1 = 0
        t2 = 0
        for i in range(n):
            col1 = np.int64(bits[i]) << deg
            col2 = col1
            for j in range(deg):
                col1 += np.int64(bits[nk_n1[i, j]]) << (deg - 1 - j)
                col2 += np.int64(bits[nk_n2[i, j]]) << (deg - 1 - j)
            t1 += nk_t1[i, col1]
            t2 += nk_t2[i, col2]
        return t1, t2
    if prob == PROB_LOTZ:
        lead = 0
        for i in range(n):
            if bits[i] == 1:
                lead += 1
            else:
                break
        trail = 0
        for i in range(n - 1, -1, -1):
            if bits[i] == 0:
                trail += 1
            else:
                break
        return lead, trail
    cnt = 0
    for i in range(n):
        cnt += np.int64(bits[i])
    if prob == PROB_OMM:
        return n - cnt, cnt
    if prob == PROB_OJZJ:
        return _jump_side(cnt, n, k), _jump_side(n - cnt, n, k)
    # PROB_OJZJ_SS
    return _jump_ss_side(cnt, n, k, a), _jump_ss_side(n - cnt, n, k, a)


@kernel
def kp_repair(bits, weights, capacity, order):
    """Drop selected items in the given order until weight <= capacity."""
    w = 0
    for i in range(bits.shape[0]):
        if bits[i] == 1:
            w += weights[i]
    t = 0
    while w > capacity:
        item = order[t]
        if bits[item] == 1:
            bits[item] = 0
            w -= weights[item]
        t += 1


@kernel
def eval_perm(prob, perm, n, tsp_d1, tsp_d2, qap_dist, qap_f1, qap_f2):
    if prob == PROB_TSP:
        s1 = 0
        s2 = 0
        for i in range(n):
            u = perm[i]
            v = perm[(i + 1) % n]
            s1 += tsp_d1[u, v]
            s2 += tsp_d2[u, v]
        return -s1, -s2
    # PROB_QAP
    s1 = 0
    s2 = 0
    for i in range(n):
        pi = perm[i]
        for j in range(n):
            d = qap_dist[pi, perm[j]]
            s1 += qap_f1[i, j] * d
            s2 += qap_f2[i, j] * d
    return -s1, -s2


# ---------------------------------------------------------------------------
# non-dominated sorting, contributions, survival removal


@kernel
def assign_fronts(f1, f2, count, rank, pending):
    """Peeling partition into fronts 1..v; rank[i] = front of solution i."""
    for i in range(count):
        rank[i] = 0
    assigned = 0
    v = 0
    while assigned < count:
        v += 1
        for i in range(count):
            pending[i] = 0
        for i in range(count):
            if rank[i] != 0:
                continue
            dominated = False
            for j in range(count):
                if j == i or rank[j] != 0:
                    continue
                if f1[j] >= f1[i] and f2[j] >= f2[i] and (f1[j] > f1[i] or f2[j] > f2[i]):
                    dominated = True
                    break
            if not dominated:
                pending[i] = 1
        for i in range(count):
            if pending[i] == 1:
                rank[i] = v
                assigned += 1
    return v


@kernel
def pick_removal(state, f1, f2, count, rank, v, order, contrib, is_inf):
    """Index of the solution removed from the last front.

    First front (v == 1): the unique max-f1 and max-f2 vectors keep one
    boundary representative each (a single representative when they are the
    same vector); duplicated vectors contribute 0; interior unique vectors
    get the rectangle to their distinct neighbors. Lower fronts: rectangle
    contributions against a virtual reference at componentwise min - 1.
    The minimum wins; sentinel entries lose to any finite value; ties are
    broken uniformly.
    """
    m = 0
    for i in range(count):
        if rank[i] == v:
            order[m] = i
            m += 1
    if m == 1:
        return order[0]
    # stable insertion sort by f1 ascending; within a front, equal f1 means
    # an identical objective vector, so groups are runs of equal f1
    for i in range(1, m):
        key = order[i]
        kf = f1[key]
        j = i - 1
        while j >= 0 and f1[order[j]] > kf:
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = key
    for t in range(m):
        contrib[t] = 0
        is_inf[t] = 0
    e0 = 1
    while e0 < m and f1[order[e0]] == f1[order[0]]:
        e0 += 1
    s_last = m - 1
    while s_last > 0 and f1[order[s_last - 1]] == f1[order[m - 1]]:
        s_last -= 1
    if v == 1:
        if e0 == m:
            # single distinct vector: one representative is preserved
            r = 0
            if m > 1:
                r = next_below(state, m)
            is_inf[r] = 1
        else:
            g = m - s_last
            r_hi = s_last
            if g > 1:
                r_hi = s_last + next_below(state, g)
            is_inf[r_hi] = 1
            g = e0
            r_lo = 0
            if g > 1:
                r_lo = next_below(state, g)
            is_inf[r_lo] = 1
            t = e0
            while t < s_last:
                e = t + 1
                while e < s_last and f1[order[e]] == f1[order[t]]:
                    e += 1
                if e - t == 1:
                    c = order[t]
                    contrib[t] = (f1[c] - f1[order[t - 1]]) * (f2[c] - f2[order[e]])
                t = e
    else:
        ref1 = f1[order[0]] - 1
        ref2 = f2[order[m - 1]] - 1
        t = 0
        while t < m:
            e = t + 1
            while e < m and f1[order[e]] == f1[order[t]]:
                e += 1
            if e - t == 1:
                c = order[t]
                if t == 0:
                    left = ref1
                else:
                    left = f1[order[t - 1]]
                if e == m:
                    right = ref2
                else:
                    right = f2[order[e]]
                contrib[t] = (f1[c] - left) * (f2[c] - right)
            t = e
    best = np.int64(_I64_MAX)
    found = False
    for t in range(m):
        if is_inf[t] == 0:
            if not found or contrib[t] < best:
                best = contrib[t]
                found = True
    if found:
        ties = 0
        for t in range(m):
            if is_inf[t] == 0 and contrib[t] == best:
                ties += 1
    else:
        ties = m
    pick = 0
    if ties > 1:
        pick = next_below(state, ties)
    c = 0
    for t in range(m):
        if found:
            if is_inf[t] == 0 and contrib[t] == best:
                if c == pick:
                    return order[t]
                c += 1
        else:
            if c == pick:
                return order[t]
            c += 1
    return order[m - 1]


# ---------------------------------------------------------------------------
# archive (sorted by f1 ascending, hence f2 strictly descending)


@kernel
def archive_lower_bound(arch_f1, length, c1):
    lo = 0
    hi = length
    while lo < hi:
        mid = (lo + hi) // 2
        if arch_f1[mid] < c1:
            lo = mid + 1
        else:
            hi = mid
    return lo


@kernel
def archive_insert(arch_f1, arch_f2, arch_geno, arch_len, c1, c2, geno):
    """Paper update rule; returns 1 if the candidate entered, else 0.

    Rejects when any member weakly dominates the candidate (equal vectors
    included), otherwise deletes the members it strictly dominates and
    inserts. Caller guarantees one free slot.
    """
    length = arch_len[0]
    pos = archive_lower_bound(arch_f1, length, c1)
    if pos < length and arch_f2[pos] >= c2:
        return 0
    # dominated members: a run left of pos (f1 < c1, f2 <= c2) plus the
    # equal-f1 member at pos when present (its f2 < c2, or we were rejected)
    dlo = pos
    while dlo > 0 and arch_f2[dlo - 1] <= c2:
        dlo -= 1
    dhi = pos
    if pos < length and arch_f1[pos] == c1:
        dhi = pos + 1
    removed = dhi - dlo
    if removed == 0:
        i = length
        while i > dlo:
            arch_f1[i] = arch_f1[i - 1]
            arch_f2[i] = arch_f2[i - 1]
            arch_geno[i, :] = arch_geno[i - 1, :]
            i -= 1
    elif removed >= 2:
        shift = removed - 1
        i = dhi
        while i < length:
            arch_f1[i - shift] = arch_f1[i]
            arch_f2[i - shift] = arch_f2[i]
            arch_geno[i - shift, :] = arch_geno[i, :]
            i += 1
    arch_f1[dlo] = c1
    arch_f2[dlo] = c2
    arch_geno[dlo, :] = geno
    arch_len[0] = length - removed + 1
    return 1


@kernel
def front_lookup(front_f1, front_f2, c1, c2):
    """Index of (c1, c2) on the analytic front, or -1; front f1 is sorted."""
    lo = 0
    hi = front_f1.shape[0]
    while lo < hi:
        mid = (lo + hi) // 2
        if front_f1[mid] < c1:
            lo = mid + 1
        else:
            hi = mid
    if lo < front_f1.shape[0] and front_f1[lo] == c1 and front_f2[lo] == c2:
        return lo
    return np.int64(-1)


@kernel
def mark_archive_coverage(front_f1, front_f2, front_mark, boxes, c1, c2):
    idx = front_lookup(front_f1, front_f2, c1, c2)
    if idx >= 0 and front_mark[idx] == 0:
        front_mark[idx] = 1
        boxes[BOX_DISTINCT] += 1


@kernel
def pop_coverage_add(front_f1, front_f2, pop_cov, boxes, c1, c2):
    idx = front_lookup(front_f1, front_f2, c1, c2)
    if idx >= 0:
        pop_cov[idx] += 1
        if pop_cov[idx] == 1:
            boxes[BOX_DISTINCT] += 1


@kernel
def pop_coverage_remove(front_f1, front_f2, pop_cov, boxes, c1, c2):
    idx = front_lookup(front_f1, front_f2, c1, c2)
    if idx >= 0:
        pop_cov[idx] -= 1
        if pop_cov[idx] == 0:
            boxes[BOX_DISTINCT] -= 1


# ---------------------------------------------------------------------------
# one generation


@kernel
def _select_parent(state, variant, mu, arch_count):
    """(index, 1 if from archive else 0); the reuse coin is drawn only when
    the archive is nonempty, so an empty archive falls back to the plain
    population draw."""
    if variant == VARIANT_AR and arch_count > 0:
        if next_unit(state) < 0.5:
            return next_below(state, mu), np.int64(0)
        return next_below(state, arch_count), np.int64(1)
    return next_below(state, mu), np.int64(0)


@kernel
def step_bits(state, prob, n, k, a,
              kp_p1, kp_p2, kp_w, kp_cap, kp_order,
              nk_n1, nk_t1, nk_n2, nk_t2,
              variant, mu, p_c, cx,
              pop_geno, pop_f1, pop_f2,
              arch_geno, arch_f1, arch_f2, arch_len,
              coverage_on, front_f1, front_f2, front_mark, pop_cov, boxes,
              rank_buf, order_buf, contrib_buf, inf_buf, pend_buf,
              off_geno, off_obj, rem_obj):
    """One generation on a bit-string problem; returns the removed slot."""
    child = pop_geno[mu]
    i1, src1 = _select_parent(state, variant, mu, arch_len[0])
    if src1 == 1:
        par1 = arch_geno[i1]
    else:
        par1 = pop_geno[i1]
    crossed = False
    if cx != CX_NONE:
        if next_unit(state) < p_c:
            i2, src2 = _select_parent(state, variant, mu, arch_len[0])
            if src2 == 1:
                par2 = arch_geno[i2]
            else:
                par2 = pop_geno[i2]
            if cx == CX_ONE_POINT:
                cross_one_point(state, par1, par2, child)
            else:
                cross_uniform(state, par1, par2, child)
            crossed = True
    if not crossed:
        child[:] = par1
    mutate_bits(state, child, n)
    if prob == PROB_KP:
        kp_repair(child, kp_w, kp_cap, kp_order)
    c1, c2 = eval_bits(prob, child, n, k, a, kp_p1, kp_p2, nk_n1, nk_t1, nk_n2, nk_t2)
    pop_f1[mu] = c1
    pop_f2[mu] = c2
    off_obj[0] = c1
    off_obj[1] = c2
    off_geno[:] = child
    if variant != VARIANT_L:
        # archive update precedes survival selection
        ins = archive_insert(arch_f1, arch_f2, arch_geno, arch_len, c1, c2, child)
        if ins == 1 and coverage_on == 1:
            mark_archive_coverage(front_f1, front_f2, front_mark, boxes, c1, c2)
    v = assign_fronts(pop_f1, pop_f2, mu + 1, rank_buf, pend_buf)
    r = pick_removal(state, pop_f1, pop_f2, mu + 1, rank_buf, v, order_buf, contrib_buf, inf_buf)
    if variant == VARIANT_L and coverage_on == 1:
        pop_coverage_add(front_f1, front_f2, pop_cov, boxes, c1, c2)
        pop_coverage_remove(front_f1, front_f2, pop_cov, boxes, pop_f1[r], pop_f2[r])
    rem_obj[0] = pop_f1[r]
    rem_obj[1] = pop_f2[r]
    if r != mu:
        pop_geno[r, :] = pop_geno[mu, :]
        pop_f1[r] = pop_f1[mu]
        pop_f2[r] = pop_f2[mu]
    return r


@kernel
def step_perm(state, prob, n,
              tsp_d1, tsp_d2, qap_dist, qap_f1, qap_f2,
              variant, mu, p_c, cx, mut, mut_rate,
              pop_geno, pop_f1, pop_f2,
              arch_geno, arch_f1, arch_f2, arch_len,
              rank_buf, order_buf, contrib_buf, inf_buf, pend_buf,
              used_buf, pinv_buf,
              off_geno, off_obj, rem_obj):
    """One generation on a permutation problem; returns the removed slot."""
    child = pop_geno[mu]
    i1, src1 = _select_parent(state, variant, mu, arch_len[0])
    if src1 == 1:
        par1 = arch_geno[i1]
    else:
        par1 = pop_geno[i1]
    crossed = False
    if cx != CX_NONE:
        if next_unit(state) < p_c:
            i2, src2 = _select_parent(state, variant, mu, arch_len[0])
            if src2 == 1:
                par2 = arch_geno[i2]
            else:
                par2 = pop_geno[i2]
            if cx == CX_OX:
                cross_ox(state, par1, par2, child, used_buf)
            else:
                cross_cx(par1, par2, child, pinv_buf, used_buf)
            crossed = True
    if not crossed:
        child[:] = par1
    if next_unit(state) < mut_rate:
        if mut == MUT_TWO_OPT:
            mutate_two_opt(state, child)
        else:
            mutate_two_swap(state, child)
    c1, c2 = eval_perm(prob, child, n, tsp_d1, tsp_d2, qap_dist, qap_f1, qap_f2)
    pop_f1[mu] = c1
    pop_f2[mu] = c2
    off_obj[0] = c1
    off_obj[1] = c2
    off_geno[:] = child
    if variant != VARIANT_L:
        archive_insert(arch_f1, arch_f2, arch_geno, arch_len, c1, c2, child)
    v = assign_fronts(pop_f1, pop_f2, mu + 1, rank_buf, pend_buf)
    r = pick_removal(state, pop_f1, pop_f2, mu + 1, rank_buf, v, order_buf, contrib_buf, inf_buf)
    rem_obj[0] = pop_f1[r]
    rem_obj[1] = pop_f2[r]
    if r != mu:
        pop_geno[r, :] = pop_geno[mu, :]
        pop_f1[r] = pop_f1[mu]
        pop_f2[r] = pop_f2[mu]
    return r


# ---------------------------------------------------------------------------
# full runs (loop over steps entirely inside the kernel)


@kernel
def run_bits(state, prob, n, k, a,
             kp_p1, kp_p2, kp_w, kp_cap, kp_order,
             nk_n1, nk_t1, nk_n2, nk_t2,
             variant, mu, p_c, cx,
             pop_geno, pop_f1, pop_f2,
             arch_geno, arch_f1, arch_f2, arch_len,
             coverage_on, stop_on_cover, front_f1, front_f2, front_mark, pop_cov, boxes,
             max_gens,
             rank_buf, order_buf, contrib_buf, inf_buf, pend_buf,
             off_geno, off_obj, rem_obj):
    front_len = front_f1.shape[0]
    if stop_on_cover == 1 and boxes[BOX_COVERED] == 1:
        return STATUS_COVERED
    while boxes[BOX_GENS] < max_gens:
        if variant != VARIANT_L and arch_len[0] + 1 > arch_f1.shape[0]:
            return STATUS_GROW
        step_bits(state, prob, n, k, a,
                  kp_p1, kp_p2, kp_w, kp_cap, kp_order,
                  nk_n1, nk_t1, nk_n2, nk_t2,
                  variant, mu, p_c, cx,
                  pop_geno, pop_f1, pop_f2,
                  arch_geno, arch_f1, arch_f2, arch_len,
                  coverage_on, front_f1, front_f2, front_mark, pop_cov, boxes,
                  rank_buf, order_buf, contrib_buf, inf_buf, pend_buf,
                  off_geno, off_obj, rem_obj)
        boxes[BOX_GENS] += 1
        if coverage_on == 1 and boxes[BOX_COVERED] == 0 and boxes[BOX_DISTINCT] == front_len:
            boxes[BOX_COVERED] = 1
            boxes[BOX_COVGEN] = boxes[BOX_GENS]
            if stop_on_cover == 1:
                return STATUS_COVERED
    return STATUS_BUDGET


@kernel
def run_perm(state, prob, n,
             tsp_d1, tsp_d2, qap_dist, qap_f1, qap_f2,
             variant, mu, p_c, cx, mut, mut_rate,
             pop_geno, pop_f1, pop_f2,
             arch_geno, arch_f1, arch_f2, arch_len,
             boxes, max_gens,
             rank_buf, order_buf, contrib_buf, inf_buf, pend_buf,
             used_buf, pinv_buf,
             off_geno, off_obj, rem_obj):
    while boxes[BOX_GENS] < max_gens:
        if variant != VARIANT_L and arch_len[0] + 1 > arch_f1.shape[0]:
            return STATUS_GROW
        step_perm(state, prob, n,
                  tsp_d1, tsp_d2, qap_dist, qap_f1, qap_f2,
                  variant, mu, p_c, cx, mut, mut_rate,
                  pop_geno, pop_f1, pop_f2,
                  arch_geno, arch_f1, arch_f2, arch_len,
                  rank_buf, order_buf, contrib_buf, inf_buf, pend_buf,
                  used_buf, pinv_buf,
                  off_geno, off_obj, rem_obj)
        boxes[BOX_GENS] += 1
    return STATUS_BUDGET


# ---------------------------------------------------------------------------
# bulk sampling for reference-point estimation


@kernel
def sample_eval_bits(state, prob, n, k, a,
                     kp_p1, kp_p2, kp_w, kp_cap, kp_order,
                     nk_n1, nk_t1, nk_n2, nk_t2,
                     geno_buf, out1, out2):
    for s in range(out1.shape[0]):
        fill_random_bits(state, geno_buf)
        if prob == PROB_KP:
            kp_repair(geno_buf, kp_w, kp_cap, kp_order)
        a1, a2 = eval_bits(prob, geno_buf, n, k, a, kp_p1, kp_p2, nk_n1, nk_t1, nk_n2, nk_t2)
        out1[s] = a1
        out2[s] = a2


@kernel
def sample_eval_perm(state, prob, n,
                     tsp_d1, tsp_d2, qap_dist, qap_f1, qap_f2,
                     geno_buf, out1, out2):
    for s in range(out1.shape[0]):
        fill_random_perm(state, geno_buf)
        a1, a2 = eval_perm(prob, geno_buf, n, tsp_d1, tsp_d2, qap_dist, qap_f1, qap_f2)
        out1[s] = a1
        out2[s] = a2

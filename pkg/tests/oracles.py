"""Independent brute-force reference computations used by the tests.

Nothing here imports the package's algorithms; relations are Python sets of
pairs and algebras are plain nested lists.
"""

import itertools
import random


# ---------------------------------------------------------------------------
# algebras


def sugihara_tables(n):
    """Order, product and negation of the n-element Sugihara chain straight
    from its definition: labels -k..k (0 omitted when n is even), product
    picks the larger absolute value and the smaller label on a tie."""
    k = n // 2
    labels = [j for j in range(-k, k + 1) if n % 2 or j != 0]
    pos = {j: i for i, j in enumerate(labels)}
    leq = [[i <= j for j in range(n)] for i in range(n)]

    def prod(i, j):
        if abs(i) != abs(j):
            return i if abs(i) > abs(j) else j
        return min(i, j)
    mult = [[pos[prod(labels[x], labels[y])] for y in range(n)] for x in range(n)]
    neg = [pos[-labels[x]] for x in range(n)]
    one = pos[0] if n % 2 else pos[1]
    return labels, leq, mult, neg, one


def brute_meet_join(leq):
    n = len(leq)
    meet = [[None] * n for _ in range(n)]
    join = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            lows = [c for c in range(n) if leq[c][a] and leq[c][b]]
            highs = [c for c in range(n) if leq[a][c] and leq[b][c]]
            m = [c for c in lows if all(leq[d][c] for d in lows)]
            j = [c for c in highs if all(leq[c][d] for d in highs)]
            meet[a][b] = m[0] if m else None
            join[a][b] = j[0] if j else None
    return meet, join


def brute_residuals(leq, mult):
    """``under[a][c] = a\\c`` and ``over[c][b] = c/b`` as maxima, or None."""
    n = len(leq)

    def greatest(cands):
        top = [x for x in cands if all(leq[y][x] for y in cands)]
        return top[0] if top else None
    under = [[greatest([b for b in range(n) if leq[mult[a][b]][c]]) for c in range(n)]
             for a in range(n)]
    over = [[greatest([a for a in range(n) if leq[mult[a][b]][c]]) for b in range(n)]
            for c in range(n)]
    return under, over


def brute_nested(K, L):
    """Nested sum by the case definitions, from raw fields of K and L.

    Returns (carrier tags, leq, mult, tilde, neg); tags are ("K", k) or ("L", l).
    """
    one = K.one
    tags = [("K", k) for k in range(K.size) if k != one] + [("L", l) for l in range(L.size)]
    n = len(tags)

    def as_k(t):
        return t[1] if t[0] == "K" else one

    def back(k):
        return tags.index(("K", k))

    leq = [[False] * n for _ in range(n)]
    mult = [[None] * n for _ in range(n)]
    for i, s in enumerate(tags):
        for j, t in enumerate(tags):
            if s[0] == "L" and t[0] == "L":
                leq[i][j] = bool(L.leq[s[1]][t[1]])
                mult[i][j] = tags.index(("L", L.mult[s[1]][t[1]]))
            elif s[0] == "K" and t[0] == "K":
                leq[i][j] = bool(K.leq[s[1]][t[1]])
                mult[i][j] = back(K.mult[s[1]][t[1]])
            elif s[0] == "K":            # k vs l
                leq[i][j] = bool(K.leq[s[1]][one])
                mult[i][j] = back(K.mult[s[1]][one])
            else:                        # l vs k
                leq[i][j] = bool(K.leq[one][t[1]])
                mult[i][j] = back(K.mult[one][t[1]])

    def unary(tk, tl):
        return [tags.index(("L", tl[t[1]])) if t[0] == "L" else back(tk[t[1]]) for t in tags]
    tilde = unary(K.tilde, L.tilde) if K.tilde else None
    neg = unary(K.neg, L.neg) if K.neg else None
    return tags, leq, mult, tilde, neg


def brute_isomorphic(A, B):
    """Exhaustive permutation search (small sizes only)."""
    if A.size != B.size:
        return None
    n = A.size
    for p in itertools.permutations(range(n)):
        if p[A.one] != B.one:
            continue
        if A.zero is not None and p[A.zero] != B.zero:
            continue
        if any(bool(A.leq[x][y]) != bool(B.leq[p[x]][p[y]]) for x in range(n) for y in range(n)):
            continue
        if any(p[A.mult[x][y]] != B.mult[p[x]][p[y]] for x in range(n) for y in range(n)):
            continue
        ok = True
        for name in ("tilde", "minus", "neg"):
            ta, tb = getattr(A, name), getattr(B, name)
            if ta is not None and any(p[ta[x]] != tb[p[x]] for x in range(n)):
                ok = False
        if ok:
            return p
    return None


def is_distributive(leq):
    meet, join = brute_meet_join(leq)
    r = range(len(leq))
    return all(meet[a][join[b][c]] == join[meet[a][b]][meet[a][c]] for a in r for b in r for c in r)


# ---------------------------------------------------------------------------
# relations as sets of pairs


def compose(R, S):
    return {(x, y) for (x, z) in R for (w, y) in S if z == w}


def converse(R):
    return {(y, x) for (x, y) in R}


def is_upset(leq, E, R):
    """Every pair of E above a member of R under (u,v) <= (x,y) iff x <= u and v <= y."""
    for (u, v) in R:
        for (x, y) in E:
            if (x, u) in leq and (v, y) in leq and (x, y) not in R:
                return False
    return True


def brute_upsets(leq, E):
    """All up-sets by trying every subset of E (|E| small)."""
    pairs = sorted(E)
    out = []
    for mask in range(1 << len(pairs)):
        R = {pairs[i] for i in range(len(pairs)) if mask >> i & 1}
        if is_upset(leq, E, R):
            out.append(frozenset(R))
    return out


def count_upsets(leq, E, limit=None):
    """Number of up-sets of (E, ≼), stopping early once it exceeds ``limit``.

    With p minimal, an up-set either avoids p (an up-set of the rest) or
    contains everything above p (plus an up-set of what is left)."""
    above = {p: frozenset(q for q in E if q[0] in {x for (x, y) in leq if y == p[0]}
                          and (p[1], q[1]) in leq) for p in E}
    memo = {}

    def count(rest):
        if not rest:
            return 1
        if rest in memo:
            return memo[rest]
        p = next(p for p in sorted(rest) if not any(q != p and p in above[q] for q in rest))
        total = count(rest - {p})
        if limit is None or total <= limit:
            total += count(rest - above[p])
        memo[rest] = total
        return total
    return count(frozenset(E))


def dq_ops(n, leq, E, alpha, beta):
    """Operations of the up-set algebra on sets of pairs."""
    a = {(x, alpha[x]) for x in range(n)}
    b = {(x, beta[x]) for x in range(n)}

    def comp(R):
        return set(E) - set(R)
    zero = compose(a, converse(comp(leq)))
    return {
        "tilde": lambda R: compose(converse(comp(R)), a),
        "minus": lambda R: compose(a, converse(comp(R))),
        "neg": lambda R: compose(compose(compose(a, b), comp(R)), b),
        "zero": zero,
    }


# ---------------------------------------------------------------------------
# random contexts


def _transitive_closure(n, rel):
    rel = set(rel) | {(x, x) for x in range(n)}
    changed = True
    while changed:
        changed = False
        for (x, y) in list(rel):
            for (w, z) in list(rel):
                if y == w and (x, z) not in rel:
                    rel.add((x, z))
                    changed = True
    return rel


def random_context_raw(rng, max_points=5, max_e=20):
    """A random valid context as plain data, or None when the draw has no
    admissible alpha/beta.  Keys: n, leq, E, alpha, beta (sets and lists)."""
    n = rng.randint(1, max_points)
    edges = {(x, y) for x in range(n) for y in range(x + 1, n) if rng.random() < 0.3}
    leq = _transitive_closure(n, edges)
    # blocks: components of comparability, randomly merged
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x
    for (x, y) in leq:
        parent[find(x)] = find(y)
    for x in range(n):
        for y in range(x + 1, n):
            if rng.random() < 0.3:
                parent[find(x)] = find(y)
    E = {(x, y) for x in range(n) for y in range(n) if find(x) == find(y)}
    if len(E) > max_e:
        return None
    perms = list(itertools.permutations(range(n)))
    in_e = [p for p in perms if all((x, p[x]) in E for x in range(n))]
    alphas = [p for p in in_e
              if all(((x, y) in leq) == ((p[x], p[y]) in leq) for x in range(n) for y in range(n))]
    betas = [p for p in in_e
             if all(((x, y) in leq) == ((p[y], p[x]) in leq) for x in range(n) for y in range(n))
             and all(p[p[x]] == x for x in range(n))]
    pairs = [(a, b) for a in alphas for b in betas if all(a[b[a[x]]] == b[x] for x in range(n))]
    if not pairs:
        return None
    alpha, beta = rng.choice(pairs)
    return {"n": n, "leq": leq, "E": E, "alpha": list(alpha), "beta": list(beta)}


def random_contexts(seed, count, max_upsets=128, max_e=20, max_points=5):
    """``count`` distinct random contexts whose up-set algebras stay small."""
    rng = random.Random(seed)
    out, seen = [], set()
    while len(out) < count:
        raw = random_context_raw(rng, max_points=max_points, max_e=max_e)
        if raw is None:
            continue
        key = (raw["n"], frozenset(raw["leq"]), frozenset(raw["E"]),
               tuple(raw["alpha"]), tuple(raw["beta"]))
        if key in seen:
            continue
        seen.add(key)
        if count_upsets(raw["leq"], raw["E"], max_upsets) > max_upsets:
            continue
        out.append(raw)
    return out


def matrix(n, pairs):
    return [[int((x, y) in pairs) for y in range(n)] for x in range(n)]


# ---------------------------------------------------------------------------
# brute-force residuated lattice enumeration


def brute_lattices(n):
    """Lattice orders on 0..n-1 up to isomorphism, each with 0 as bottom.

    Scans every order relation compatible with the natural labelling."""
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen, out = set(), []
    for mask in range(1 << len(slots)):
        rel = {(i, i) for i in range(n)}
        rel |= {slots[k] for k in range(len(slots)) if mask >> k & 1}
        if any((x, z) not in rel for (x, y) in rel for (w, z) in rel if y == w):
            continue
        leq = [[(i, j) in rel for j in range(n)] for i in range(n)]
        meet, join = brute_meet_join(leq)
        if any(v is None for row in meet + join for v in row):
            continue
        key = min(tuple(leq[p[i]][p[j]] for i in range(n) for j in range(n))
                  for p in itertools.permutations(range(n)))
        if key not in seen:
            seen.add(key)
            out.append(leq)
    return out


def _residuated(leq, mult):
    under, over = brute_residuals(leq, mult)
    return all(v is not None for row in under + over for v in row)


def _rl_tables(leq, e):
    """Every associative, residuated product on ``leq`` with identity ``e``."""
    n = len(leq)
    bot = next(x for x in range(n) if all(leq[x]))
    if e == bot and n > 1:
        return      # an absorbing bottom cannot be the identity
    mult = [[None] * n for _ in range(n)]
    for x in range(n):
        mult[e][x] = mult[x][e] = x
    for x in range(n):
        if x != e:
            mult[bot][x] = mult[x][bot] = bot
    free = [(a, b) for a in range(n) for b in range(n) if mult[a][b] is None]

    def monotone(a, b):
        v = mult[a][b]
        for c in range(n):
            for d in range(n):
                w = mult[c][d]
                if w is None:
                    continue
                if leq[a][c] and leq[b][d] and not leq[v][w]:
                    return False
                if leq[c][a] and leq[d][b] and not leq[w][v]:
                    return False
        return True

    def fill(k):
        if k == len(free):
            r = range(n)
            if all(mult[mult[a][b]][c] == mult[a][mult[b][c]] for a in r for b in r for c in r) \
                    and _residuated(leq, mult):
                yield [row[:] for row in mult]
            return
        a, b = free[k]
        for v in range(n):
            mult[a][b] = v
            if monotone(a, b):
                yield from fill(k + 1)
        mult[a][b] = None
    yield from fill(0)


def _key(leq, mult, e, zero):
    n = len(leq)
    best = None
    for p in itertools.permutations(range(n)):
        inv = [0] * n
        for i, q in enumerate(p):
            inv[q] = i
        k = (p[e], -1 if zero is None else p[zero],
             tuple(leq[inv[i]][inv[j]] for i in range(n) for j in range(n)),
             tuple(p[mult[inv[i]][inv[j]]] for i in range(n) for j in range(n)))
        if best is None or k < best:
            best = k
    return best


def brute_rl_models(n):
    """Residuated lattices of size n up to isomorphism as (leq, mult, one)."""
    seen, out = set(), []
    for leq in brute_lattices(n):
        for e in range(n):
            for mult in _rl_tables(leq, e):
                k = _key(leq, mult, e, None)
                if k not in seen:
                    seen.add(k)
                    out.append((leq, mult, e))
    return out


def brute_infl_models(n):
    """InFL-algebras of size n up to isomorphism as (leq, mult, one, zero):
    residuated lattices with a constant 0 whose negations a\\0, 0/a are
    mutually inverse."""
    seen, out = set(), []
    for leq, mult, e in brute_rl_models(n):
        under, over = brute_residuals(leq, mult)
        for z in range(n):
            tilde = [under[a][z] for a in range(n)]
            minus = [over[z][a] for a in range(n)]
            if all(tilde[minus[a]] == a == minus[tilde[a]] for a in range(n)):
                k = _key(leq, mult, e, z)
                if k not in seen:
                    seen.add(k)
                    out.append((leq, mult, e, z))
    return out


def ladder_layers(n, leq):
    """Layer sizes when ``leq`` (a set of pairs on n points) is a stack of
    antichains, each layer entirely below the next; None otherwise."""
    remaining = set(range(n))
    layers = []
    while remaining:
        layer = {x for x in remaining if not any(y != x and (y, x) in leq for y in remaining)}
        layers.append(layer)
        remaining -= layer
    for i, low in enumerate(layers):
        for j, high in enumerate(layers):
            for x in low:
                for y in high:
                    want = x == y or i < j
                    if ((x, y) in leq) != want:
                        return None
    return tuple(len(layer) for layer in layers)

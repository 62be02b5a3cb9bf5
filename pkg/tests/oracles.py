"""Slow, loop-based reference implementations used as test oracles.

Nothing here imports the vectorised code paths it is compared against.
"""

import itertools
import math


def ball_gap(a, b):
    return math.dist(a.center.tolist(), b.center.tolist()) - (a.radius_max + b.radius_max)


def brute_force_hcvi(balls, ball_labels, l, diam):
    """Return (per_cluster [(com, sep, hcvi)], avg) or None if the cascade is exhausted."""
    m = len(balls)
    labels = [int(x) for x in ball_labels]
    gap = {}
    for i in range(m):
        for j in range(m):
            gap[i, j] = ball_gap(balls[i], balls[j])

    intra = [gap[i, j] for i in range(m) for j in range(i + 1, m)
             if labels[i] >= 0 and labels[i] == labels[j] and gap[i, j] > 0]
    cross = [gap[i, j] for i in range(m) for j in range(i + 1, m)
             if labels[i] >= 0 and labels[j] >= 0 and labels[i] != labels[j] and gap[i, j] > 0]
    intra_fb = min(intra) if intra else None
    inter_fb = min(cross) if cross else None

    out = []
    for k in range(l):
        mine = [i for i in range(m) if labels[i] == k]
        theirs = [j for j in range(m) if labels[j] >= 0 and labels[j] != k]
        within = [gap[i, j] for i, j in itertools.combinations(mine, 2) if gap[i, j] > 0]
        if within:
            com = max(within)
        elif intra_fb is not None:
            com = intra_fb
        else:
            com = inter_fb
        between = [gap[i, j] for i in mine for j in theirs if gap[i, j] > 0]
        if between:
            sep = min(between)
        elif inter_fb is not None:
            sep = inter_fb
        elif diam > 0:
            sep = diam
        else:
            sep = None
        if com is None or sep is None:
            return None
        out.append((com, sep, com / max(sep, 1e-12 * diam)))
    total = 0.0
    for _, _, h in out:
        total += h
    return out, total / l


def best_two_partition(points):
    """Exhaustive minimum within-cluster sum of squares over all 2-partitions."""
    n = len(points)

    def sse(group):
        d = len(group[0])
        c = [sum(p[t] for p in group) / len(group) for t in range(d)]
        return sum(sum((p[t] - c[t]) ** 2 for t in range(d)) for p in group)

    best, best_cost = None, math.inf
    for mask in range(1, 2 ** (n - 1)):
        a = [i for i in range(n) if mask >> i & 1]
        b = [i for i in range(n) if not mask >> i & 1]
        cost = sse([points[i] for i in a]) + sse([points[i] for i in b])
        if cost < best_cost:
            best, best_cost = (frozenset(a), frozenset(b)), cost
    return best


def brute_force_silhouette(points, labels):
    n = len(points)
    clusters = sorted(set(labels))
    total = 0.0
    for i in range(n):
        own = [j for j in range(n) if labels[j] == labels[i] and j != i]
        if not own:
            continue  # singleton clusters score 0
        a = sum(math.dist(points[i], points[j]) for j in own) / len(own)
        b = min(
            sum(math.dist(points[i], points[j]) for j in range(n) if labels[j] == c)
            / sum(1 for j in range(n) if labels[j] == c)
            for c in clusters if c != labels[i]
        )
        if max(a, b) > 0:
            total += (b - a) / max(a, b)
    return total / n


def brute_force_davies_bouldin(points, labels):
    clusters = sorted(set(labels))
    d = len(points[0])
    cents, scat = {}, {}
    for c in clusters:
        mem = [p for p, lab in zip(points, labels) if lab == c]
        cents[c] = [sum(p[t] for p in mem) / len(mem) for t in range(d)]
        scat[c] = sum(math.dist(p, cents[c]) for p in mem) / len(mem)
    worst = []
    for c in clusters:
        worst.append(max((scat[c] + scat[o]) / math.dist(cents[c], cents[o])
                         for o in clusters if o != c))
    return sum(worst) / len(worst)


def brute_force_calinski_harabasz(points, labels):
    clusters = sorted(set(labels))
    n, d, k = len(points), len(points[0]), len(clusters)
    mean = [sum(p[t] for p in points) / n for t in range(d)]
    between = within = 0.0
    for c in clusters:
        mem = [p for p, lab in zip(points, labels) if lab == c]
        cent = [sum(p[t] for p in mem) / len(mem) for t in range(d)]
        between += len(mem) * sum((cent[t] - mean[t]) ** 2 for t in range(d))
        within += sum(sum((p[t] - cent[t]) ** 2 for t in range(d)) for p in mem)
    return (between / (k - 1)) / (within / (n - k))

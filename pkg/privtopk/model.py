__doc__ = """
Histograms over m items and the metered data system that serves them

Item ids are 1-based throughout. Sorted order is by descending score with ties broken by ascending item id.
"""

import json

import numpy as np

from . import common


class Histogram:
    """Score vector h over m items aggregated from n clients, immutable after construction

    scores:
        non-negative integer vote counts, item i has score scores[i - 1]
    n:
        the number of clients, defaults to the largest score (at least 1)
    extra:
        sidecar fields kept alongside the scores in the JSON file, e.g. s_low

    >>> h = Histogram([5, 9, 1], n=10)
    >>> h.m, h.n, h.score(2), h.order()
    (3, 10, 9, [2, 1, 3])
    >>> h.kth_score(2)
    5
    >>> Histogram([3, 11], n=10)
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: scores must lie in [0, n=10]
    >>> Histogram([1.7, 2.9], n=3)
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: scores must be integers: [1.7, 2.9]
    >>> Histogram([2.0, 1.0]).scores.tolist()
    [2, 1]
    """
    def __init__(self, scores, n=None, extra=None):
        try:
            raw = np.asarray(scores, dtype=float).ravel()
        except (TypeError, ValueError):
            raise common.BadParams('scores must be numbers: %r' % (scores,))
        bad = ~np.isfinite(raw) | (raw != np.floor(raw))
        if bad.any():
            raise common.BadParams('scores must be integers: %s' % raw[bad].tolist())
        scores = raw.astype(np.int64)
        if len(scores) < 1:
            raise common.BadParams('histogram needs at least one item')
        if n is None:
            n = max(1, int(scores.max()))
        if n < 1:
            raise common.BadParams('n must be positive: %s' % n)
        if scores.min() < 0 or scores.max() > n:
            raise common.BadParams('scores must lie in [0, n=%d]' % n)
        scores.flags.writeable = False
        self.scores = scores
        self.n = int(n)
        self.m = len(scores)
        self.extra = dict(extra or {})
        # the data system's own sort, not charged to any algorithm
        self._order = (np.argsort(-scores, kind='stable') + 1).tolist()
        self._values = scores.tolist()

    def __repr__(self):
        return 'Histogram(m=%d, n=%d)' % (self.m, self.n)

    def score(self, i):
        return self._values[i - 1]

    def order(self):
        """The permutation pi as a list of item ids by descending score
        """
        return list(self._order)

    def kth_score(self, k):
        """h[pi(k)], the k-th largest score
        """
        common.check_k(k, self.m)
        return self._values[self._order[k - 1] - 1]

    def to_json(self):
        data = {'n': self.n, 'scores': self._values}
        data.update(self.extra)
        return data

    @classmethod
    def from_json(cls, data):
        """Build from the parsed JSON object, malformed input raises BadParams

        >>> Histogram.from_json({'n': 5, 'scores': [1, 4], 's_low': [2]}).extra
        {'s_low': [2]}
        >>> Histogram.from_json([1, 4])
        Traceback (most recent call last):
         ...
        privtopk.common.BadParams: invalid histogram JSON: ...
        >>> Histogram.from_json({'n': 5, 'scores': [1.5]})
        Traceback (most recent call last):
         ...
        privtopk.common.BadParams: scores must be integers: [1.5]
        """
        try:
            extra = {key: value for key, value in data.items() if key not in ('n', 'scores')}
            return cls(data['scores'], n=data['n'], extra=extra)
        except (AttributeError, KeyError, TypeError) as e:
            raise common.BadParams('invalid histogram JSON: %s' % e)

    def save(self, filename):
        with open(filename, 'w') as fp:
            json.dump(self.to_json(), fp)

    @classmethod
    def load(cls, filename):
        """Load a histogram from {"n": <int>, "scores": [<int>, ...]}
        """
        with open(filename) as fp:
            return cls.from_json(json.load(fp))


class MeteredView:
    """Access counted facade over a histogram, the data system L1

    Every call is charged, including repeated random access to the same item.

    >>> view = MeteredView(Histogram([5, 9, 1]))
    >>> view.sorted_access(), view.sorted_access(), view.sorted_access()
    ((2, 9), (1, 5), (3, 1))
    >>> view.sorted_access()
    Traceback (most recent call last):
     ...
    privtopk.common.Exhausted: all 3 items returned by sorted access
    >>> view.random_access(3), view.random_access(3)
    ((3, 1), (3, 1))
    >>> view.access_count, view.sorted_accesses, view.random_accesses
    (5, 3, 2)
    >>> view.random_access(4)
    Traceback (most recent call last):
     ...
    privtopk.common.OutOfRange: item 4 outside [1, 3]
    >>> MeteredView(Histogram([7, 7])).sorted_access()
    (1, 7)
    """
    def __init__(self, source):
        self.source = source
        self.m = source.m
        self.sorted_order = source._order
        self._values = source._values
        self.sorted_cursor = 0
        self.sorted_accesses = self.random_accesses = 0

    @property
    def access_count(self):
        return self.sorted_accesses + self.random_accesses

    def sorted_access(self):
        """Return the next (item_id, score) pair in descending score order
        """
        if self.sorted_cursor >= self.m:
            raise common.Exhausted('all %d items returned by sorted access' % self.m)
        item = self.sorted_order[self.sorted_cursor]
        self.sorted_cursor += 1
        self.sorted_accesses += 1
        return item, self._values[item - 1]

    def random_access(self, i):
        """Return (i, h[i])
        """
        if not 1 <= i <= self.m:
            raise common.OutOfRange('item %s outside [1, %d]' % (i, self.m))
        self.random_accesses += 1
        return i, self._values[i - 1]


class TopKOutcome:
    """Returned item set plus telemetry

    items:
        the k distinct item ids returned
    ranking:
        the same items by descending aggregated score, when the algorithm knows it
    access_cost:
        accesses to the histogram view L1
    access_cost_total:
        accesses to every list the algorithm read, L1 and the noise list
    noise_samples:
        noise values generated
    threshold, seen:
        the threshold tau at termination and the items seen, for algorithms that stop early
    """
    def __init__(self, items, k, access_cost=0, access_cost_total=None, noise_samples=0, ranking=None, wall_time_ns=0, threshold=None, seen=None):
        self.items = frozenset(items)
        if len(self.items) != k:
            raise common.BadCardinality('expected %d items, got %d' % (k, len(self.items)))
        self.k = k
        self.ranking = tuple(ranking) if ranking is not None else tuple(sorted(self.items))
        self.access_cost = access_cost
        self.access_cost_total = access_cost if access_cost_total is None else access_cost_total
        self.noise_samples = noise_samples
        self.wall_time_ns = wall_time_ns
        self.threshold = threshold
        self.seen = frozenset(seen) if seen is not None else None

    def __repr__(self):
        return 'TopKOutcome(items=%s, access_cost=%d)' % (sorted(self.items), self.access_cost)


def exact_top_k(h, k):
    """The k items of largest score under the canonical tie-break

    >>> sorted(exact_top_k(Histogram([5, 9, 1]), 2))
    [1, 2]
    >>> sorted(exact_top_k(Histogram([3, 3, 3]), 2))
    [1, 2]
    >>> exact_top_k(Histogram([0]), 1)
    {1}
    >>> exact_top_k(Histogram([0]), 2)
    Traceback (most recent call last):
     ...
    privtopk.common.BadK: k=2 outside [1, 1]
    """
    common.check_k(k, h.m)
    return set(h._order[:k])


def is_accurate(h, S, alpha, k):
    """Whether S is (alpha, k)-accurate: every i in S has h[i] >= h[pi(k)] - alpha

    >>> h = Histogram([10, 9, 8, 1])
    >>> is_accurate(h, {1, 2}, 0, 2), is_accurate(h, {1, 3}, 0, 2), is_accurate(h, {1, 3}, 1, 2)
    (True, False, True)
    >>> is_accurate(h, {1, 4}, 7, 2), is_accurate(h, {1, 4}, 8, 2)
    (False, True)
    >>> is_accurate(h, {1, 4}, h.n, 2)
    True
    >>> is_accurate(h, {1}, 0, 2)
    Traceback (most recent call last):
     ...
    privtopk.common.BadCardinality: |S|=1 but k=2
    """
    if len(set(S)) != k:
        raise common.BadCardinality('|S|=%d but k=%d' % (len(set(S)), k))
    threshold = h.kth_score(k) - alpha
    return all(h.score(i) >= threshold for i in S)


def error_alpha(h, S, k):
    """Smallest alpha for which S is (alpha, k)-accurate: max over S of h[pi(k)] - h[i], floored at 0

    >>> error_alpha(Histogram([10, 9, 8, 1]), {1, 4}, 2)
    8
    >>> error_alpha(Histogram([10, 9, 8, 1]), {1, 2}, 2)
    0
    """
    kth = h.kth_score(k)
    return max(0, max(kth - h.score(i) for i in S))

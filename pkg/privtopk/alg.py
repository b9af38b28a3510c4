__doc__ = 'Top-k selection algorithms: the threshold algorithm, one-shot noisy top-k and the private threshold algorithm'

import heapq
import math

import numpy as np

from . import common, model, noise, oracle, settings


class SortedList:
    """Descending (item_id, value) list with an inverted index, metered like the histogram view

    values:
        value of item i at values[i - 1]

    >>> L = SortedList([2.0, 0.0, 5.0])
    >>> L.tuples
    [(3, 5.0), (1, 2.0), (2, 0.0)]
    >>> L.inverted_index[1], L.sorted_access(), L.random_access(2), L.access_count
    (2, (3, 5.0), (2, 0.0), 2)
    """
    def __init__(self, values):
        values = np.asarray(values, dtype=float)
        self.m = len(values)
        order = np.argsort(-values, kind='stable')
        self._items = (order + 1).tolist()
        self._values = values.tolist()
        self.sorted_cursor = 0
        self.sorted_accesses = self.random_accesses = 0

    @classmethod
    def from_noise(cls, m, spec, rng):
        """Eager noise list: draw all m noises up front and sort them
        """
        return cls(spec.sample(rng, m))

    @property
    def tuples(self):
        return [(i, self._values[i - 1]) for i in self._items]

    @property
    def inverted_index(self):
        return {i: position for position, i in enumerate(self._items, 1)}

    @property
    def access_count(self):
        return self.sorted_accesses + self.random_accesses

    @property
    def noise_samples(self):
        return self.m

    def sorted_access(self):
        if self.sorted_cursor >= self.m:
            raise common.Exhausted('all %d items returned by sorted access' % self.m)
        item = self._items[self.sorted_cursor]
        self.sorted_cursor += 1
        self.sorted_accesses += 1
        return item, self._values[item - 1]

    def random_access(self, i):
        if not 1 <= i <= self.m:
            raise common.OutOfRange('item %s outside [1, %d]' % (i, self.m))
        self.random_accesses += 1
        return i, self._values[i - 1]


class AggregationFn:
    """Monotone aggregation f of t attribute values

    strict:
        f is strictly increasing in every argument, so an unseen item can only tie with tau
        when it ties with the last sorted value of every list

    >>> import numpy as np
    >>> SUM((3, 4.5)), SUM.arity
    (7.5, 2)
    >>> SUM.spot_check_monotone(np.random.default_rng(0))
    True
    """
    def __init__(self, fn, arity, name=None, strict=True):
        self.fn = fn
        self.arity = arity
        self.name = name or getattr(fn, '__name__', 'f')
        self.strict = strict

    def __call__(self, values):
        return self.fn(values)

    def __repr__(self):
        return 'AggregationFn(%s, arity=%d)' % (self.name, self.arity)

    def spot_check_monotone(self, rng, trials=1000):
        """Check y <= y' componentwise implies f(y) <= f(y') on random pairs
        """
        for _ in range(trials):
            y = rng.normal(size=self.arity)
            y2 = y + rng.exponential(size=self.arity)
            if self(y.tolist()) > self(y2.tolist()):
                return False
        return True


def _sum(values):
    return sum(values)

SUM = AggregationFn(_sum, 2, 'sum')


def threshold_algorithm(lists, f, k):
    """Exact top-k by f-score over t lists using round-robin sorted access

    lists:
        objects with sorted_access, random_access and access_count over the same items [1, m],
        sorted by descending value with ties by ascending item id
    f:
        monotone aggregation over one value per list
    k:
        number of items to return

    Each round reads one sorted entry per list in order and looks up a newly seen item in every other list.
    Stops after the round in which the k best seen items all beat every unseen item under the canonical
    order (descending score, ascending id), or once all m items were seen.
    An unseen item scores at most tau = f(last seen values), and when it scores exactly tau under a strict f
    its id is above the last item read from every list.

    >>> L1 = SortedList([10, 8, 1])
    >>> L2 = SortedList([2, 0, 5])
    >>> result = threshold_algorithm([L1, L2], SUM, 1)
    >>> sorted(result.items), result.access_cost, result.access_cost_total, result.threshold
    ([1], 3, 7, 10.0)
    >>> h = model.Histogram([5, 9, 1, 9])
    >>> view = model.MeteredView(h)
    >>> result = threshold_algorithm([view], AggregationFn(sum, 1), 2)
    >>> result.items == model.exact_top_k(h, 2), result.ranking, view.access_count
    (True, (2, 4), 2)

    A score tie with tau is only settled once no unseen item can have a smaller id:

    >>> a, b = [0, 1, 1, 0, 1, 1, 1, 2, 2], [1, 2, 2, 1, 1, 0, 1, 0, 1]
    >>> sorted(threshold_algorithm([SortedList(a), SortedList(b)], SUM, 5).items)
    [2, 3, 5, 7, 9]
    >>> threshold_algorithm([SortedList([1.0])], SUM, 2)
    Traceback (most recent call last):
     ...
    privtopk.common.BadK: k=2 outside [1, 1]
    """
    m = lists[0].m
    common.check_k(k, m)
    t = len(lists)
    seen = {}
    top = [] # min-heap of (score, -item), the root is the weakest of the current top k
    last = [None] * t
    last_items = [None] * t
    next_unseen = 1 # smallest item id that might not be seen yet
    while True:
        for index, L in enumerate(lists):
            item, value = L.sorted_access()
            last[index] = value
            last_items[index] = item
            if item in seen:
                continue
            attributes = [None] * t
            attributes[index] = value
            for other in range(t):
                if other != index:
                    attributes[other] = lists[other].random_access(item)[1]
            score = f(attributes)
            seen[item] = score
            key = score, -item
            if len(top) < k:
                heapq.heappush(top, key)
            elif key > top[0]:
                heapq.heapreplace(top, key)
        if len(seen) == m:
            break
        tau = f(last)
        if len(top) == k:
            weakest_score, weakest_item = top[0][0], -top[0][1]
            if weakest_score > tau:
                break
            if weakest_score == tau:
                while next_unseen in seen:
                    next_unseen += 1
                # lowest id an unseen item scoring exactly tau could have
                lowest_tie = max(next_unseen, max(last_items) + 1) if f.strict else next_unseen
                if lowest_tie > weakest_item:
                    break
    tau = f(last)
    ranking = [-item for score, item in sorted(top, reverse=True)]
    # an early stop leaves every unseen item at or below tau <= min score in the result
    assert len(seen) == m or top[0][0] >= tau, 'stopped with min score %s below tau %s' % (top[0][0], tau)
    common.logger.debug('threshold algorithm stopped after %d rounds, %d items seen, tau=%s' % (lists[0].sorted_accesses, len(seen), tau))
    return model.TopKOutcome(
        ranking, k,
        access_cost=lists[0].access_count,
        access_cost_total=sum(L.access_count for L in lists),
        noise_samples=sum(getattr(L, 'noise_samples', 0) for L in lists[1:]),
        ranking=ranking,
        threshold=tau,
        seen=seen,
    )


def _oneshot_select(h, k, noise_values):
    """Return the k items with largest h[i] + noise_values[i - 1]

    Passing zeros gives the exact top-k, only for testing since it is not private.

    >>> h = model.Histogram([5, 9, 1, 9])
    >>> _oneshot_select(h, 2, np.zeros(h.m)).items == model.exact_top_k(h, 2)
    True
    """
    common.check_k(k, h.m)
    v = h.scores + noise_values
    order = np.argsort(-v, kind='stable')[:k] + 1
    ranking = order.tolist()
    return model.TopKOutcome(ranking, k, access_cost=h.m, noise_samples=len(noise_values), ranking=ranking)


def oneshot_private_topk(h, k, spec, rng):
    """Add i.i.d. noise from spec to every score and return the k largest noisy scores

    Reads all m scores so the access cost is m.

    >>> rng = np.random.default_rng(1)
    >>> h = model.Histogram([1, 0])
    >>> spec = noise.NoiseSpec.from_epsilon('gumbel', math.log(2))
    >>> wins = sum(1 in oneshot_private_topk(h, 1, spec, rng).items for _ in range(30000))
    >>> abs(wins / 30000. - 2 / 3.) < 0.01
    True
    """
    return _oneshot_select(h, k, spec.sample(rng, h.m))


def private_threshold_topk(view, k, spec, rng, mode='lazy'):
    """Private top-k by running the threshold algorithm on the histogram view and a sorted noise list

    view:
        the MeteredView, L1
    spec:
        noise added to each score
    mode:
        eager draws and sorts all m noises first, lazy materializes the noise list on demand

    The output distribution equals oneshot_private_topk with the same spec.
    access_cost counts accesses to the view only.

    >>> h = model.Histogram([5, 4, 3, 2, 1, 0])
    >>> spec = noise.NoiseSpec('gumbel', 1)
    >>> rng = np.random.default_rng(9)
    >>> for mode in 'eager', 'lazy':
    ...     result = private_threshold_topk(model.MeteredView(h), 2, spec, rng, mode)
    ...     print(mode, len(result.items), result.access_cost <= 2 * h.m)
    eager 2 True
    lazy 2 True
    >>> private_threshold_topk(model.MeteredView(h), 2, spec, rng, 'greedy')
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: unknown mode: greedy
    """
    common.check_k(k, view.m)
    if mode == 'eager':
        L2 = SortedList.from_noise(view.m, spec, rng)
    elif mode == 'lazy':
        L2 = oracle.LazyNoiseArray(view.m, spec, rng)
    else:
        raise common.BadParams('unknown mode: %s' % mode)
    return threshold_algorithm([view, L2], SUM, k)


def exponential_mechanism(view, epsilon, rng, mode='lazy'):
    """Select one item with probability proportional to exp(epsilon * h[i])

    The private threshold algorithm with k = 1 and Gumbel(1/epsilon) noise.

    >>> h = model.Histogram([3, 3, 3, 3])
    >>> rng = np.random.default_rng(3)
    >>> counts = np.bincount([min(exponential_mechanism(model.MeteredView(h), 1.0, rng).items) for _ in range(8000)], minlength=5)[1:]
    >>> bool(abs(counts / 8000. - 0.25).max() < 0.03)
    True
    >>> exponential_mechanism(model.MeteredView(h), 0, rng)
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: epsilon must be positive: 0
    """
    spec = noise.NoiseSpec.from_epsilon('gumbel', epsilon)
    return private_threshold_topk(view, 1, spec, rng, mode)


def laplace_privacy_params(k, eps_base, delta, m):
    """Privacy of one-shot top-k with Laplace(1/eps_base) noise as (eps_pure, eps_approx)

    eps_pure = 2 k eps_base.
    eps_approx = 8 eps_base sqrt(k ln(m / delta)) holds with that delta when m >= 2, 0 < delta <= 0.05
    and the value is at most 0.2, else it is None.

    >>> laplace_privacy_params(1, 0.1, 0, 10)
    (0.2, None)
    >>> pure, approx = laplace_privacy_params(4, 0.001, 0.01, 100)
    >>> pure, round(approx, 4)
    (0.008, 0.0486)
    >>> laplace_privacy_params(4, 0.001, 0.1, 100)
    (0.008, None)
    >>> laplace_privacy_params(1, -1, 0, 10)
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: need eps_base > 0, k >= 1, m >= 1 and delta >= 0
    """
    if not (eps_base > 0 and k >= 1 and m >= 1 and delta >= 0):
        raise common.BadParams('need eps_base > 0, k >= 1, m >= 1 and delta >= 0')
    eps_pure = 2 * k * eps_base
    eps_approx = None
    if m >= 2 and 0 < delta <= 0.05:
        value = 8 * eps_base * math.sqrt(k * math.log(m / delta))
        if value <= 0.2:
            eps_approx = value
    return eps_pure, eps_approx


def gumbel_privacy_params(k, eps_base, delta):
    """Privacy of one-shot top-k with Gumbel(1/eps_base) noise:
    min(k eps, k eps (e^eps - 1) / (e^eps + 1) + eps sqrt(k ln(1 / delta)))

    >>> eps = 0.3
    >>> gumbel_privacy_params(1, eps, 1) == eps * math.tanh(eps / 2)
    True
    >>> gumbel_privacy_params(4, 0.5, 0.01)
    2.0
    >>> round(gumbel_privacy_params(4, 0.5, 0.5), 4)
    1.3224
    >>> gumbel_privacy_params(1, 0.5, 0)
    0.5
    >>> gumbel_privacy_params(1, 0.5, 2)
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: need eps_base > 0, k >= 1 and 0 <= delta <= 1
    """
    if not (eps_base > 0 and k >= 1 and 0 <= delta <= 1):
        raise common.BadParams('need eps_base > 0, k >= 1 and 0 <= delta <= 1')
    pure = k * eps_base
    if delta == 0:
        return pure
    # (e^eps - 1) / (e^eps + 1) == tanh(eps / 2)
    approx = k * eps_base * math.tanh(eps_base / 2) + eps_base * math.sqrt(k * math.log(1 / delta))
    return min(pure, approx)


def accuracy_bound(m, beta, eps_base, c=settings.accuracy_constant):
    """alpha = c ln(m / beta) / eps_base, with probability 1 - beta the one-shot output is (alpha, k)-accurate

    >>> round(accuracy_bound(100, 0.1, 1, c=1), 3)
    6.908
    >>> accuracy_bound(100, 0.1, 0.5) == 2 * accuracy_bound(100, 0.1, 1)
    True
    >>> accuracy_bound(100, 1, 1)
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: need 0 < beta < 1 and eps_base > 0
    """
    if not (0 < beta < 1 and eps_base > 0):
        raise common.BadParams('need 0 < beta < 1 and eps_base > 0')
    return c * math.log(m / beta) / eps_base


def access_cost_bound(m, k):
    """Upper bound on the expected access cost of the private threshold algorithm, 2 (sqrt(mk) + sqrt(m) / sqrt(2))

    >>> round(access_cost_bound(10**5, 10), 1)
    2447.2
    >>> round(access_cost_bound(10**4, 1), 1)
    341.4
    """
    return 2 * (math.sqrt(m * k) + math.sqrt(m) / math.sqrt(2))


def access_cost_tail_bound(m, k, r):
    """Bound on P[cost >= 2r]: (e^k / k^k) (r^2/m)^k / e^(r^2/m), computed in log space

    >>> round(access_cost_tail_bound(10**4, 1, 200), 4)
    0.1991
    >>> access_cost_tail_bound(10**4, 5, 2 * math.sqrt(5 * 10**4)) < 0.05
    True
    """
    x = r * r / float(m)
    if x <= 0:
        return 1.0
    return math.exp(k - k * math.log(k) + k * math.log(x) - x)


ALGORITHMS = 'oneshot_laplace', 'oneshot_gumbel', 'privta_eager', 'privta_lazy', 'expmech', 'threshold_exact'

def run_algorithm(name, h, k, epsilon, rng, noise_kind=None):
    """Run one of ALGORITHMS by name on histogram h

    noise_kind:
        overrides the noise of the private threshold algorithm, gumbel by default

    >>> h = model.Histogram([5, 9, 1, 9])
    >>> run_algorithm('threshold_exact', h, 2, 1.0, None).ranking
    (2, 4)
    >>> run_algorithm('bogus', h, 2, 1.0, None)
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: unknown algorithm: bogus
    """
    if name == 'threshold_exact':
        return threshold_algorithm([model.MeteredView(h)], AggregationFn(_sum, 1, 'identity'), k)
    elif name in ('oneshot_laplace', 'oneshot_gumbel'):
        spec = noise.NoiseSpec.from_epsilon(name.split('_')[1], epsilon)
        return oneshot_private_topk(h, k, spec, rng)
    elif name in ('privta_eager', 'privta_lazy'):
        spec = noise.NoiseSpec.from_epsilon(noise_kind or 'gumbel', epsilon)
        return private_threshold_topk(model.MeteredView(h), k, spec, rng, name.split('_')[1])
    elif name == 'expmech':
        if k != 1:
            raise common.BadK('the exponential mechanism selects k=1, not %s' % k)
        return exponential_mechanism(model.MeteredView(h), epsilon, rng)
    raise common.BadParams('unknown algorithm: %s' % name)

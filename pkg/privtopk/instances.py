__doc__ = """
Instance families for benchmarks

The hard families plant a set S of high scores with a low subset S_L one below the rest,
so that finding an S_L member forces many accesses. S_L is kept in the histogram as extra['s_low'].
"""

import math

import numpy as np

from . import common, model, settings


def _check_common(m, n, k=1):
    if m < 1 or n < 1:
        raise common.BadParams('need m >= 1 and n >= 1, got m=%s n=%s' % (m, n))
    common.check_k(k, m)


def gen_random_access_hard(m, n, k, rng):
    """Each score is independently n with probability 2k/m, else 0

    >>> rng = np.random.default_rng(0)
    >>> h = gen_random_access_hard(100, 7, 5, rng)
    >>> set(h.scores.tolist()) <= {0, 7}
    True
    >>> counts = [int((gen_random_access_hard(100, 7, 5, rng).scores == 7).sum()) for _ in range(1000)]
    >>> bool(abs(np.mean(counts) - 10) < 3 * math.sqrt(10 * 0.9 / 1000))
    True
    >>> gen_random_access_hard(4, 3, 2, rng).scores.tolist()
    [3, 3, 3, 3]
    >>> gen_random_access_hard(4, 3, 3, rng)
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: need 2k <= m, got k=3 m=4
    """
    _check_common(m, n, k)
    if 2 * k > m:
        raise common.BadParams('need 2k <= m, got k=%s m=%s' % (k, m))
    scores = np.where(rng.random(m) < 2.0 * k / m, n, 0)
    return model.Histogram(scores, n)


def _planted(m, n, S, S_L):
    scores = np.zeros(m, dtype=np.int64)
    scores[np.asarray(S) - 1] = n
    scores[np.asarray(S_L) - 1] = n - 1
    return model.Histogram(scores, n, extra={'s_low': sorted(int(i) for i in S_L)})


def gen_sorted_hard(m, n, k, rng):
    """S = [m/2] scored n, except a uniform subset S_L of size |S|/k scored n - 1, the rest 0

    |S|/k is floored. Returns (histogram, S_L).

    >>> h, S_L = gen_sorted_hard(8, 5, 2, np.random.default_rng(1))
    >>> len(S_L), sorted(h.scores.tolist())
    (2, [0, 0, 0, 0, 4, 4, 5, 5])
    >>> S_L <= {1, 2, 3, 4}, h.extra['s_low'] == sorted(S_L)
    (True, True)
    >>> sorted(h.order().index(i) + 1 for i in S_L)
    [3, 4]
    >>> gen_sorted_hard(7, 5, 2, np.random.default_rng(1))
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: need m even, n >= 2 and k <= m/2, got m=7 n=5 k=2
    """
    _check_common(m, n, k)
    if m % 2 or n < 2 or k > m // 2:
        raise common.BadParams('need m even, n >= 2 and k <= m/2, got m=%s n=%s k=%s' % (m, n, k))
    size = m // 2
    S = np.arange(1, size + 1)
    S_L = rng.choice(S, size // k, replace=False)
    return _planted(m, n, S, S_L), set(S_L.tolist())


def both_access_tau(m, k):
    """tau = sqrt(mk) rounded to the nearest integer
    """
    return int(round(math.sqrt(m * k)))


def gen_both_access_hard(m, n, k, rng):
    """A uniform size tau = sqrt(mk) set S scored n except a uniform subset S_L of size tau/k scored n - 1

    >>> h, S_L = gen_both_access_hard(100, 9, 4, np.random.default_rng(2))
    >>> len(S_L), [h.scores.tolist().count(v) for v in (9, 8, 0)]
    (5, [15, 5, 80])
    >>> gen_both_access_hard(100, 1, 4, np.random.default_rng(2))
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: need n >= 2 and k <= tau=20 <= m, got m=100 n=1 k=4
    """
    _check_common(m, n, k)
    tau = both_access_tau(m, k)
    if n < 2 or not k <= tau <= m:
        raise common.BadParams('need n >= 2 and k <= tau=%d <= m, got m=%s n=%s k=%s' % (tau, m, n, k))
    S = rng.choice(m, tau, replace=False) + 1
    S_L = rng.choice(S, tau // k, replace=False)
    return _planted(m, n, S, S_L), set(S_L.tolist())


def gen_zipf(m, n, s, rng):
    """The r-th ranked item scores floor(n / r^s), ranks assigned by a uniform random permutation

    >>> h = gen_zipf(3, 6, 1, np.random.default_rng(3))
    >>> sorted(h.scores.tolist(), reverse=True)
    [6, 3, 2]
    >>> int(gen_zipf(1000, 50, 0.5, np.random.default_rng(3)).scores.max())
    50
    >>> gen_zipf(3, 6, 0, np.random.default_rng(3))
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: zipf exponent must be positive: 0
    """
    _check_common(m, n)
    if not s > 0:
        raise common.BadParams('zipf exponent must be positive: %s' % s)
    ranks = np.arange(1, m + 1, dtype=np.float64)
    levels = np.floor(n / np.power(ranks, float(s))).astype(np.int64)
    scores = np.empty(m, dtype=np.int64)
    scores[rng.permutation(m)] = levels
    return model.Histogram(np.minimum(scores, n), n)


def gen_uniform_random(m, n, rng):
    """Each score a uniform integer in [0, n]

    >>> h = gen_uniform_random(10000, 20, np.random.default_rng(4))
    >>> bool(abs(h.scores.mean() - 10) < 3 * math.sqrt(440 / 12. / 10000))
    True
    """
    _check_common(m, n)
    return model.Histogram(rng.integers(0, n + 1, m), n)


def gen_staircase(m, n, step=1):
    """h[i] = step * (m - i) clipped to n, one item on each level

    >>> gen_staircase(4, 100).scores.tolist(), gen_staircase(4, 5, step=2).scores.tolist()
    ([3, 2, 1, 0], [5, 4, 2, 0])
    """
    _check_common(m, n)
    return model.Histogram(np.minimum(step * np.arange(m - 1, -1, -1), n), n)


def first_low_position(h, s_low):
    """Sorted access depth at which the first member of s_low appears

    A consumer reading only through sorted access needs at least this many accesses to see an S_L member.

    >>> h, S_L = gen_sorted_hard(8, 5, 2, np.random.default_rng(1))
    >>> first_low_position(h, S_L)
    3
    """
    low = set(s_low)
    for position, item in enumerate(h.order(), 1):
        if item in low:
            return position
    return None


FAMILIES = 'uniform_random', 'zipf', 'random_access_hard', 'sorted_hard', 'both_access_hard', 'staircase'

class InstanceFamilySpec:
    """A named instance family with its parameters, generated deterministically from seed

    >>> spec = InstanceFamilySpec.parse('zipf:m=3,n=6,s=1', seed=5)
    >>> spec
    InstanceFamilySpec('zipf', m=3, n=6, k=1, s=1.0, seed=5)
    >>> spec.generate().scores.tolist() == spec.generate().scores.tolist()
    True
    >>> h = InstanceFamilySpec.parse('both_access_hard', m=100, n=9, k=4).generate()
    >>> len(h.extra['s_low'])
    5
    >>> InstanceFamilySpec.parse('zipf:m=3,q=2')
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: unknown instance parameter: q
    >>> InstanceFamilySpec('gaussian', 3, 6, 1)
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: unknown instance family: gaussian
    """
    def __init__(self, family, m, n, k=1, s=1.0, seed=settings.default_seed, step=1):
        if family not in FAMILIES:
            raise common.BadParams('unknown instance family: %s' % family)
        _check_common(m, n, k)
        self.family = family
        self.m, self.n, self.k = int(m), int(n), int(k)
        self.s = float(s)
        self.seed = seed
        self.step = int(step)

    def __repr__(self):
        return 'InstanceFamilySpec(%r, m=%d, n=%d, k=%d, s=%r, seed=%r)' % (self.family, self.m, self.n, self.k, self.s, self.seed)

    @classmethod
    def parse(cls, text, **defaults):
        """Parse 'family:key=value,...', keys not given fall back to defaults
        """
        family, _, params = text.partition(':')
        kwargs = {'m': 1000, 'n': 1000, 'k': 1}
        kwargs.update((key, value) for key, value in defaults.items() if value is not None)
        casts = {'m': int, 'n': int, 'k': int, 's': float, 'seed': int, 'step': int}
        for param in filter(None, params.split(',')):
            key, _, value = param.partition('=')
            key = key.strip()
            if key not in casts:
                raise common.BadParams('unknown instance parameter: %s' % key)
            try:
                kwargs[key] = casts[key](value)
            except ValueError:
                raise common.BadParams('invalid value for %s: %r' % (key, value))
        return cls(family.strip(), **kwargs)

    def generate(self, rng=None):
        """Build the histogram, S_L of hard families goes in extra['s_low']
        """
        if rng is None:
            rng = common.trial_rng(self.seed)
        if self.family == 'uniform_random':
            return gen_uniform_random(self.m, self.n, rng)
        elif self.family == 'zipf':
            return gen_zipf(self.m, self.n, self.s, rng)
        elif self.family == 'random_access_hard':
            return gen_random_access_hard(self.m, self.n, self.k, rng)
        elif self.family == 'sorted_hard':
            return gen_sorted_hard(self.m, self.n, self.k, rng)[0]
        elif self.family == 'both_access_hard':
            return gen_both_access_hard(self.m, self.n, self.k, rng)[0]
        return gen_staircase(self.m, self.n, self.step)

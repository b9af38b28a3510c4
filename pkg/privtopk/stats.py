__doc__ = 'Statistical tests and exact reference distributions for the acceptance suites'

import itertools
import math

import numpy as np
import scipy.stats

from . import common, settings


class FrequencyTable:
    """Observed counts per category against the expected probabilities

    >>> table = FrequencyTable(['a', 'b'], [70, 30], [0.5, 0.5])
    >>> table.total, table.expected_counts().tolist()
    (100, [50.0, 50.0])
    >>> FrequencyTable(['a', 'b'], [1, 1], [0.5, 0.6])
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: expected probabilities sum to 1.1, not 1
    """
    def __init__(self, categories, observed, expected):
        self.categories = list(categories)
        self.observed = np.asarray(observed, dtype=np.int64)
        self.expected = np.asarray(expected, dtype=float)
        if not len(self.categories) == len(self.observed) == len(self.expected):
            raise common.BadParams('categories, observed and expected differ in length')
        if (self.observed < 0).any() or (self.expected < 0).any():
            raise common.BadParams('counts and probabilities must be non-negative')
        if abs(self.expected.sum() - 1) > 1e-9:
            raise common.BadParams('expected probabilities sum to %s, not 1' % round(float(self.expected.sum()), 9))

    @classmethod
    def from_outcomes(cls, outcomes, probabilities):
        """Tally outcomes against a dict of category -> probability
        """
        categories = list(probabilities)
        index = {category: i for i, category in enumerate(categories)}
        observed = np.zeros(len(categories), dtype=np.int64)
        for outcome in outcomes:
            observed[index[outcome]] += 1
        return cls(categories, observed, [probabilities[c] for c in categories])

    @property
    def total(self):
        return int(self.observed.sum())

    def expected_counts(self):
        return self.total * self.expected


def chi_square_gof(table):
    """p-value of Pearson's chi-square goodness of fit with (categories - 1) degrees of freedom

    >>> chi_square_gof(FrequencyTable('ab', [50, 50], [0.5, 0.5]))
    1.0
    >>> '%.1e' % chi_square_gof(FrequencyTable('ab', [70, 30], [0.5, 0.5]))
    '6.3e-05'
    >>> chi_square_gof(FrequencyTable('ab', [7, 1], [0.5, 0.5]))
    Traceback (most recent call last):
     ...
    privtopk.common.SparseCells: expected count 4.0 below 5 in category 'a'
    """
    expected = table.expected_counts()
    if expected.min() < 5:
        raise common.SparseCells('expected count %s below 5 in category %r' % (expected.min(), table.categories[int(expected.argmin())]))
    return float(scipy.stats.chisquare(table.observed, expected).pvalue)


def pool_sparse(probabilities, total, minimum=5):
    """Map each category to itself, or to 'other' when its expected count is below minimum

    Categories are pooled from the least likely up until the pool itself reaches minimum.

    >>> labels = pool_sparse({'a': 0.9, 'b': 0.06, 'c': 0.04}, 100)
    >>> [labels[c] for c in 'abc']
    ['a', 'other', 'other']
    >>> pool_sparse({'a': 0.5, 'b': 0.5}, 100)
    {'a': 'a', 'b': 'b'}
    """
    order = sorted(probabilities, key=lambda c: probabilities[c])
    mass = 0.0
    cut = 0
    while cut < len(order) and (total * probabilities[order[cut]] < minimum or 0 < total * mass < minimum):
        mass += probabilities[order[cut]]
        cut += 1
    return {c: 'other' if position < cut else c for position, c in enumerate(order)}


def chi_square_homogeneity(counts_a, counts_b):
    """p-value that two count vectors over the same categories come from one distribution

    Categories never observed in either sample are dropped.

    >>> chi_square_homogeneity([30, 50, 20], [30, 50, 20])
    1.0
    >>> chi_square_homogeneity([300, 500, 200], [500, 300, 200]) < 1e-6
    True
    """
    table = np.array([counts_a, counts_b], dtype=float)
    table = table[:, table.sum(axis=0) > 0]
    if table.shape[1] < 2:
        return 1.0
    result = scipy.stats.chi2_contingency(table, correction=False)
    if result.expected_freq.min() < 5:
        raise common.SparseCells('expected count %s below 5' % result.expected_freq.min())
    return float(result.pvalue)


def ks_two_sample(a, b):
    """Asymptotic two-sample Kolmogorov-Smirnov p-value

    >>> rng = np.random.default_rng(0)
    >>> a = rng.random(10000)
    >>> ks_two_sample(a, a)
    1.0
    >>> ks_two_sample(a, rng.random(10000) + 0.5) < 1e-6
    True
    >>> ks_two_sample(a[:10], a)
    Traceback (most recent call last):
     ...
    privtopk.common.TooFew: need at least 25 values per sample, got 10 and 10000
    """
    if len(a) < 25 or len(b) < 25:
        raise common.TooFew('need at least 25 values per sample, got %d and %d' % (len(a), len(b)))
    return float(scipy.stats.ks_2samp(a, b, method='asymp').pvalue)


def rejection_order_stat_oracle(m, conditioning, j, window, rng, N, batch=settings.rejection_batch, min_draws=settings.rejection_min_draws, min_rate=settings.rejection_min_rate):
    """Sample U_(j) given conditioned order statistics by brute force

    Draws rows of m uniforms, sorts each descending and keeps U_(j) of the rows where
    every conditioned U_(p) lies within window of its target, until N values are kept.

    conditioning:
        dict position -> target value, or a ConditioningState
    window:
        half width of the acceptance window around each target

    >>> rng = np.random.default_rng(0)
    >>> x = rejection_order_stat_oracle(3, {}, 1, 0.01, rng, 20000)
    >>> len(x), round(float(x.mean()), 2)
    (20000, 0.75)
    >>> len(rejection_order_stat_oracle(5, {1: 0.9, 5: 0.1}, 3, 0.02, rng, 100))
    100
    >>> rejection_order_stat_oracle(3, {1: 0.2, 2: 0.7}, 3, 0.01, rng, 10, min_draws=200000)
    Traceback (most recent call last):
     ...
    privtopk.common.Timeout: acceptance rate 0 below 1e-06 after 200000 draws
    """
    targets = getattr(conditioning, 'u_values', conditioning)
    positions = np.array(sorted(targets), dtype=np.int64) - 1
    values = np.array([targets[p + 1] for p in positions])
    kept = []
    accepted = draws = 0
    while accepted < N:
        U = -np.sort(-rng.random((batch, m)), axis=1)
        if len(positions):
            ok = (np.abs(U[:, positions] - values) <= window).all(axis=1)
            U = U[ok]
        kept.append(U[:, j - 1])
        accepted += len(U)
        draws += batch
        if draws >= min_draws and accepted < min_rate * draws:
            raise common.Timeout('acceptance rate %g below %g after %d draws' % (accepted / float(draws), min_rate, draws))
    return np.concatenate(kept)[:N]


def exponential_mechanism_exact_probs(h, epsilon):
    """p[i] proportional to exp(epsilon * h[i]), shifted by the max score for stability

    >>> np.round(exponential_mechanism_exact_probs([2, 1, 0], 1), 5).tolist()
    [0.66524, 0.24473, 0.09003]
    >>> np.round(exponential_mechanism_exact_probs([1, 0], math.log(2)), 6).tolist()
    [0.666667, 0.333333]
    >>> exponential_mechanism_exact_probs([4, 4, 4, 4], 3).tolist()
    [0.25, 0.25, 0.25, 0.25]
    >>> p = exponential_mechanism_exact_probs([900, 1000, 1100], 2)
    >>> bool(abs(p.sum() - 1) < 1e-12 and np.allclose(p, exponential_mechanism_exact_probs([0, 100, 200], 2)))
    True
    """
    scores = np.asarray(getattr(h, 'scores', h), dtype=float)
    w = np.exp(epsilon * (scores - scores.max()))
    return w / w.sum()


def gumbel_topk_set_probs(h, k, epsilon):
    """Exact law of the set returned by one-shot top-k with Gumbel(1/epsilon) noise

    Gumbel top-k is sequential sampling without replacement with weights exp(epsilon * h[i]),
    so each set's probability sums the probabilities of its k! orderings.
    Returns a dict frozenset -> probability.

    >>> probs = gumbel_topk_set_probs([5, 4, 3, 2, 1, 0], 2, 1)
    >>> len(probs), round(sum(probs.values()), 12)
    (15, 1.0)
    >>> p = gumbel_topk_set_probs([2, 1, 0], 1, 1)
    >>> round(p[frozenset([1])], 5)
    0.66524
    """
    weights = exponential_mechanism_exact_probs(h, epsilon).tolist()
    probs = {}
    for sequence in itertools.permutations(range(len(weights)), k):
        p, remaining = 1.0, 1.0
        for i in sequence:
            p *= weights[i] / remaining
            remaining -= weights[i]
        key = frozenset(i + 1 for i in sequence)
        probs[key] = probs.get(key, 0.0) + p
    return probs


def mean_and_se(values):
    """Sample mean and standard error of the mean

    >>> mean, se = mean_and_se([1, 2, 3, 4])
    >>> mean, round(se, 4)
    (2.5, 0.6455)
    >>> mean_and_se([7])
    (7.0, 0.0)
    """
    values = np.asarray(values, dtype=float)
    mean = float(values.mean())
    if len(values) < 2:
        return mean, 0.0
    return mean, float(values.std(ddof=1) / math.sqrt(len(values)))

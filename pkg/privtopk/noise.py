__doc__ = """
Noise distributions and order statistics of uniforms

The j-th order statistic is always the j-th *largest* of m i.i.d. uniforms.
Conditioning happens in uniform space and is mapped to noise space with the inverse CDF,
which is monotone so the order of positions carries over.
"""

import math

import numpy as np

from . import adt, common


_TINY = math.nextafter(0.0, 1.0)
_ALMOST_ONE = math.nextafter(1.0, 0.0)


def _open_unit(u):
    """Clamp into the open interval (0, 1)
    """
    return min(max(u, _TINY), _ALMOST_ONE)


def _result(x):
    return float(x) if np.ndim(x) == 0 else x


class NoiseSpec:
    """Laplace(b) or Gumbel(b) noise with density, CDF and inverse CDF

    Gumbel is the max-stable form with CDF exp(-exp(-z/b)).

    >>> from scipy import integrate
    >>> for spec in NoiseSpec('laplace', 1), NoiseSpec('gumbel', 2.5):
    ...     left, right = integrate.quad(spec.pdf, -np.inf, 0)[0], integrate.quad(spec.pdf, 0, np.inf)[0]
    ...     print(spec, abs(left + right - 1) < 1e-6)
    NoiseSpec('laplace', 1.0) True
    NoiseSpec('gumbel', 2.5) True
    >>> NoiseSpec('normal', 1)
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: unknown noise kind: normal
    >>> NoiseSpec('gumbel', 0)
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: scale b must be positive: 0
    """
    KINDS = 'laplace', 'gumbel'

    def __init__(self, kind, b):
        kind = kind.lower()
        if kind not in self.KINDS:
            raise common.BadParams('unknown noise kind: %s' % kind)
        if not b > 0:
            raise common.BadParams('scale b must be positive: %s' % b)
        self.kind = kind
        self.b = float(b)

    @classmethod
    def from_epsilon(cls, kind, epsilon):
        """Noise with scale b = 1/epsilon
        """
        if not epsilon > 0:
            raise common.BadParams('epsilon must be positive: %s' % epsilon)
        return cls(kind, 1.0 / epsilon)

    def __repr__(self):
        return 'NoiseSpec(%r, %r)' % (self.kind, self.b)

    def __eq__(self, other):
        return isinstance(other, NoiseSpec) and (self.kind, self.b) == (other.kind, other.b)

    def __hash__(self):
        return hash((self.kind, self.b))

    def pdf(self, z):
        t = np.asarray(z, dtype=float) / self.b
        if self.kind == 'laplace':
            p = np.exp(-np.abs(t)) / (2 * self.b)
        else:
            with np.errstate(over='ignore'):
                p = np.exp(-(t + np.exp(-t))) / self.b
        return _result(p)

    def cdf(self, z):
        t = np.asarray(z, dtype=float) / self.b
        if self.kind == 'laplace':
            p = 0.5 + 0.5 * np.sign(t) * -np.expm1(-np.abs(t))
        else:
            with np.errstate(over='ignore'):
                p = np.exp(-np.exp(-t))
        return _result(p)

    def inverse_cdf(self, u):
        """F^{-1}(u) in closed form

        >>> abs(NoiseSpec('gumbel', 1).inverse_cdf(math.exp(-1))) < 1e-12
        True
        >>> NoiseSpec('laplace', 1).inverse_cdf(0.5)
        0.0
        >>> round(NoiseSpec('laplace', 2).inverse_cdf(0.25), 4)
        -1.3863
        >>> spec = NoiseSpec('laplace', 3)
        >>> grid = np.linspace(0.001, 0.999, 1000)
        >>> bool(max(abs(spec.cdf(spec.inverse_cdf(u)) - u) for u in grid) < 1e-9)
        True
        >>> NoiseSpec('gumbel', 1).inverse_cdf(1.0)
        Traceback (most recent call last):
         ...
        privtopk.common.DomainError: u=1.0 outside (0, 1)
        """
        if not 0 < u < 1:
            raise common.DomainError('u=%s outside (0, 1)' % u)
        if self.kind == 'gumbel':
            return -self.b * math.log(-math.log(u))
        elif u <= 0.5:
            return self.b * math.log(2 * u)
        else:
            return -self.b * (math.log(2) + math.log1p(-u))

    def sample(self, rng, size=None):
        """Draw i.i.d. noise from the numpy generator
        """
        if self.kind == 'laplace':
            return rng.laplace(0.0, self.b, size)
        return rng.gumbel(0.0, self.b, size)


def open_uniform(rng):
    """Uniform draw from (0, 1), never exactly 0
    """
    u = rng.random()
    while u == 0.0:
        u = rng.random()
    return u


def sample_beta(alpha, beta, rng, size=None):
    """Exact Beta(alpha, beta) draw as G_a / (G_a + G_b) from two gamma variates

    numpy's standard_gamma is a Marsaglia-Tsang squeeze rejection sampler,
    so a draw uses an expected constant number of normals and uniforms for shape >= 1.

    >>> rng = np.random.default_rng(11)
    >>> def close(x, mean, var):
    ...     return bool(abs(x.mean() - mean) <= 3 * math.sqrt(var / len(x)) and abs(x.var() - var) < 0.01)
    >>> close(sample_beta(1, 1, rng, 100000), 0.5, 1 / 12.)
    True
    >>> close(sample_beta(2, 2, rng, 100000), 0.5, 0.05)
    True
    >>> close(sample_beta(5, 1, rng, 100000), 5 / 6., 5 / 252.)
    True
    >>> sample_beta(0.5, 2, rng)
    Traceback (most recent call last):
     ...
    privtopk.common.BadShape: Beta shape parameters must be >= 1: (0.5, 2)
    """
    if alpha < 1 or beta < 1:
        raise common.BadShape('Beta shape parameters must be >= 1: (%s, %s)' % (alpha, beta))
    a = rng.standard_gamma(alpha, size)
    b = rng.standard_gamma(beta, size)
    return _result(a / (a + b))


def sample_unconditional_order_stat(m, j, rng, size=None):
    """Draw U_(j), the j-th largest of m uniforms, as Beta(m - j + 1, j)

    >>> rng = np.random.default_rng(2)
    >>> round(float(sample_unconditional_order_stat(3, 1, rng, 100000).mean()), 2)
    0.75
    >>> round(float(sample_unconditional_order_stat(5, 5, rng, 100000).mean()), 2)
    0.17
    >>> sample_unconditional_order_stat(5, 6, rng)
    Traceback (most recent call last):
     ...
    privtopk.common.BadIndex: position 6 outside [1, 5]
    """
    if not 1 <= j <= m:
        raise common.BadIndex('position %s outside [1, %d]' % (j, m))
    return sample_beta(m - j + 1, j, rng, size)


class ConditioningState:
    """Feasible realization of the sampled order statistics: positions J with values u_(j)

    Values must be non-increasing in position.

    >>> state = ConditioningState(10, {2: 0.8, 7: 0.3})
    >>> state.bounds(4), state.bounds(1), state.bounds(9)
    ((2, 0.8, 7, 0.3), (0, 1.0, 2, 0.8), (7, 0.3, 11, 0.0))
    >>> state.insert(5, 0.9)
    Traceback (most recent call last):
     ...
    privtopk.common.InfeasibleState: u_(5)=0.9 breaks the descending order between positions 2 and 7
    >>> state.insert(7, 0.2)
    Traceback (most recent call last):
     ...
    privtopk.common.AlreadySampled: position 7 already sampled
    """
    def __init__(self, m, values=None):
        self.m = m
        self.J = adt.PredecessorSet(m)
        self.u_values = {}
        for j, u in sorted((values or {}).items()):
            self.insert(j, u)

    def __len__(self):
        return len(self.u_values)

    def __contains__(self, j):
        return j in self.u_values

    def bounds(self, j):
        """Nearest sampled neighbours of j as (l, u_(l), r, u_(r))

        Missing neighbours are the sentinels position 0 with u = 1 and position m + 1 with u = 0.
        """
        l = self.J.predecessor(j)
        r = self.J.successor(j)
        if l is None:
            l, u_l = 0, 1.0
        else:
            u_l = self.u_values[l]
        if r is None:
            r, u_r = self.m + 1, 0.0
        else:
            u_r = self.u_values[r]
        return l, u_l, r, u_r

    def insert(self, j, u):
        if not 1 <= j <= self.m:
            raise common.BadIndex('position %s outside [1, %d]' % (j, self.m))
        if j in self.u_values:
            raise common.AlreadySampled('position %s already sampled' % j)
        if not 0 < u < 1:
            raise common.DomainError('u=%s outside (0, 1)' % u)
        l, u_l, r, u_r = self.bounds(j)
        # equal values are tolerated
        if u > u_l or u < u_r:
            raise common.InfeasibleState('u_(%d)=%s breaks the descending order between positions %d and %d' % (j, u, l, r))
        self.J.insert(j)
        self.u_values[j] = u


def sample_conditional_order_stat(state, m, j, rng, size=None):
    """Draw U_(j) given the values already fixed in state

    With l, r the nearest sampled positions around j (sentinels when absent)
    the draw is u_(r) + (u_(l) - u_(r)) * Beta(r - j, j - l).
    This covers the unconditioned case, j past the last sampled position, j between two sampled positions
    and j before the first one. The caller inserts the returned value into state.

    >>> rng = np.random.default_rng(5)
    >>> x = sample_conditional_order_stat(ConditioningState(5, {1: 0.9, 5: 0.1}), 5, 3, rng, 100000)
    >>> bool(x.min() >= 0.1 and x.max() <= 0.9), round(float(x.mean()), 2)
    (True, 0.5)
    >>> x = sample_conditional_order_stat(ConditioningState(4, {2: 0.6}), 4, 4, rng, 100000)
    >>> bool(x.max() <= 0.6), round(float(x.mean()), 2)
    (True, 0.2)
    >>> x = sample_conditional_order_stat(ConditioningState(2, {1: 0.4}), 2, 2, rng, 100000)
    >>> bool(x.max() <= 0.4), round(float(x.mean()), 2)
    (True, 0.2)
    >>> sample_conditional_order_stat(ConditioningState(2, {1: 0.4}), 2, 1, rng)
    Traceback (most recent call last):
     ...
    privtopk.common.AlreadySampled: position 1 already sampled
    """
    if m != state.m:
        raise common.BadParams('state is over %d positions, not %d' % (state.m, m))
    if not 1 <= j <= m:
        raise common.BadIndex('position %s outside [1, %d]' % (j, m))
    if j in state:
        raise common.AlreadySampled('position %s already sampled' % j)
    l, u_l, r, u_r = state.bounds(j)
    if u_l < u_r:
        raise common.InfeasibleState('u_(%d)=%s below u_(%d)=%s' % (l, u_l, r, u_r))
    x = sample_beta(r - j, j - l, rng, size)
    u = u_r + (u_l - u_r) * x
    if size is None:
        return _open_unit(u)
    return np.clip(u, _TINY, _ALMOST_ONE)


def order_stat_density(state, m, j, u):
    """Density of U_(j) at u given state, evaluated directly from the order statistic formulas

    Independent of the sampler, so it can provide analytic moments to test against.

    >>> from scipy import integrate
    >>> state = ConditioningState(10, {2: 0.8, 7: 0.3})
    >>> round(integrate.quad(lambda u: order_stat_density(state, 10, 4, u), 0.3, 0.8)[0], 6)
    1.0
    >>> order_stat_density(state, 10, 4, 0.9)
    0.0
    """
    l, u_l, r, u_r = state.bounds(j)
    width = u_l - u_r
    if not u_r <= u <= u_l or width <= 0:
        return 0.0
    a, b = r - j, j - l
    # (r-l-1)! / ((r-j-1)! (j-l-1)!) * (u - u_r)^(a-1) * (u_l - u)^(b-1) / width^(r-l-1)
    log_p = math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b) - (a + b - 1) * math.log(width)
    if a > 1:
        if u == u_r:
            return 0.0
        log_p += (a - 1) * math.log(u - u_r)
    if b > 1:
        if u == u_l:
            return 0.0
        log_p += (b - 1) * math.log(u_l - u)
    return math.exp(log_p)


def noise_from_uniform_order_stat(spec, u):
    """Map a uniform order statistic to the noise order statistic Z = F^{-1}(u)

    >>> round(noise_from_uniform_order_stat(NoiseSpec('gumbel', 1), 0.9), 4)
    2.2504
    >>> spec = NoiseSpec('laplace', 1)
    >>> noise_from_uniform_order_stat(spec, 0.5)
    0.0
    >>> noise_from_uniform_order_stat(spec, 0.7) >= noise_from_uniform_order_stat(spec, 0.3)
    True
    """
    return spec.inverse_cdf(u)

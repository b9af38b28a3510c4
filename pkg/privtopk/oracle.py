__doc__ = """
Lazy sorted noise array

Materializes entries of the descending noise list L2 only when they are read,
with the same joint distribution as drawing m noises up front and sorting them.
"""

from . import adt, common, noise


class LazyNoiseArray:
    """On-demand sorted noise list over m items supporting sorted and random access

    m:
        number of items
    spec:
        the NoiseSpec of the i.i.d. noises
    rng:
        numpy generator, the array owns this stream

    Each access costs O(log log m) expected time for the predecessor lookup plus a Beta draw.

    >>> import numpy as np
    >>> arr = LazyNoiseArray(6, noise.NoiseSpec('gumbel', 1), np.random.default_rng(4))
    >>> pairs = [arr.sorted_access(), arr.random_access(4), arr.sorted_access(), arr.random_access(1)]
    >>> len(arr.J) == arr.noise_samples <= 4, arr.access_count
    (True, 4)
    >>> arr.random_access(4) == pairs[1], arr.access_count
    (True, 5)
    >>> while arr.sorted_cursor < arr.m:
    ...     _ = arr.sorted_access()
    >>> sorted(item for item, z in arr.items_by_position())
    [1, 2, 3, 4, 5, 6]
    >>> arr.check()
    True
    >>> arr.sorted_access()
    Traceback (most recent call last):
     ...
    privtopk.common.Exhausted: all 6 positions returned by sorted access
    >>> arr.random_access(7)
    Traceback (most recent call last):
     ...
    privtopk.common.OutOfRange: item 7 outside [1, 6]
    """
    def __init__(self, m, spec, rng):
        if m < 1:
            raise common.BadParams('m must be positive: %s' % m)
        self.m = m
        self.spec = spec
        self.rng = rng
        self.state = noise.ConditioningState(m)
        self.entries = {} # position -> (item, Z, U)
        self.inv_index = {} # item -> position
        self.unseen_items = adt.ShufflePool(m)
        self.unsampled_positions = adt.ShufflePool(m)
        self.sorted_cursor = 0
        self.sorted_accesses = self.random_accesses = 0

    @property
    def J(self):
        return self.state.J

    @property
    def noise_samples(self):
        return len(self.entries)

    @property
    def access_count(self):
        return self.sorted_accesses + self.random_accesses

    def _materialize(self, j, item):
        u = noise.sample_conditional_order_stat(self.state, self.m, j, self.rng)
        self.state.insert(j, u)
        z = self.spec.inverse_cdf(u)
        self.entries[j] = item, z, u
        self.inv_index[item] = j
        self.unseen_items.discard(item)
        self.unsampled_positions.discard(j)
        return z

    def sorted_access(self):
        """Return (item, noise) at the next position of the descending noise list

        A position not yet materialized gets a uniformly chosen unassigned item
        and a noise drawn conditionally on its sampled neighbours.
        """
        if self.sorted_cursor >= self.m:
            raise common.Exhausted('all %d positions returned by sorted access' % self.m)
        self.sorted_cursor += 1
        self.sorted_accesses += 1
        j = self.sorted_cursor
        if j not in self.entries:
            self._materialize(j, self.unseen_items.draw(self.rng))
        item, z, u = self.entries[j]
        return item, z

    def random_access(self, i):
        """Return (i, noise of i), binding i to a uniformly chosen free position on first access
        """
        if not 1 <= i <= self.m:
            raise common.OutOfRange('item %s outside [1, %d]' % (i, self.m))
        self.random_accesses += 1
        j = self.inv_index.get(i)
        if j is None:
            j = self.unsampled_positions.draw(self.rng)
            self._materialize(j, i)
        return i, self.entries[j][1]

    def position_of(self, i):
        """Position bound to item i, or None when i was never returned
        """
        return self.inv_index.get(i)

    def items_by_position(self):
        """Materialized (item, noise) pairs in position order
        """
        return [self.entries[j][:2] for j in self.J]

    def check(self):
        """Verify the bookkeeping: entries and inv_index are inverse and values descend with position
        """
        if len(self.entries) != len(self.inv_index) or len(self.entries) != len(self.J):
            return False
        if len(self.unseen_items) != self.m - len(self.entries):
            return False
        previous = None
        for j in self.J:
            item, z, u = self.entries[j]
            if self.inv_index.get(item) != j:
                return False
            if z != self.spec.inverse_cdf(u):
                return False
            if previous is not None and (u > previous[1] or z > previous[0]):
                return False
            previous = z, u
        return True

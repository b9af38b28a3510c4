__doc__ = 'High level abstract datatypes'

from . import common, settings


class _Leaf:
    """Bottom of the van Emde Boas recursion: a universe of at most 2**leaf_bits keys in one int
    """
    __slots__ = ('mask', 'min', 'max')

    def __init__(self):
        self.mask = 0
        self.min = self.max = None

    def insert(self, x):
        self.mask |= 1 << x
        if self.min is None or x < self.min:
            self.min = x
        if self.max is None or x > self.max:
            self.max = x

    def successor(self, x):
        mask = self.mask >> (x + 1)
        if not mask:
            return None
        return x + (mask & -mask).bit_length()

    def predecessor(self, x):
        mask = self.mask & ((1 << x) - 1)
        if not mask:
            return None
        return mask.bit_length() - 1


class _Cluster:
    """van Emde Boas node over 2**bits keys

    The minimum is held here and not pushed into the clusters.
    Clusters and the summary are created on first insert so memory follows the number of members.
    """
    __slots__ = ('low_bits', 'high_bits', 'min', 'max', 'summary', 'clusters')

    def __init__(self, bits):
        self.low_bits = bits // 2
        self.high_bits = bits - self.low_bits
        self.min = self.max = None
        self.summary = None
        self.clusters = {}

    def insert(self, x):
        if self.min is None:
            self.min = self.max = x
            return
        if x < self.min:
            x, self.min = self.min, x
        h, l = x >> self.low_bits, x & ((1 << self.low_bits) - 1)
        cluster = self.clusters.get(h)
        if cluster is None:
            cluster = self.clusters[h] = _node(self.low_bits)
            if self.summary is None:
                self.summary = _node(self.high_bits)
            self.summary.insert(h)
        cluster.insert(l)
        if x > self.max:
            self.max = x

    def successor(self, x):
        if self.min is not None and x < self.min:
            return self.min
        h, l = x >> self.low_bits, x & ((1 << self.low_bits) - 1)
        cluster = self.clusters.get(h)
        if cluster is not None and l < cluster.max:
            return (h << self.low_bits) | cluster.successor(l)
        if self.summary is None:
            return None
        h = self.summary.successor(h)
        if h is None:
            return None
        return (h << self.low_bits) | self.clusters[h].min

    def predecessor(self, x):
        if self.max is not None and x > self.max:
            return self.max
        h, l = x >> self.low_bits, x & ((1 << self.low_bits) - 1)
        cluster = self.clusters.get(h)
        if cluster is not None and l > cluster.min:
            return (h << self.low_bits) | cluster.predecessor(l)
        ph = None if self.summary is None else self.summary.predecessor(h)
        if ph is None:
            if self.min is not None and x > self.min:
                return self.min
            return None
        return (ph << self.low_bits) | self.clusters[ph].max


def _node(bits):
    if bits <= settings.leaf_bits:
        return _Leaf()
    return _Cluster(bits)


class PredecessorSet:
    """Ordered set of integers in [1, universe_size] with predecessor and successor queries
    in O(log log m) time, built as a van Emde Boas tree

    >>> s = PredecessorSet(10)
    >>> s.insert(2); s.insert(7)
    >>> s.predecessor(5), s.predecessor(2), s.successor(2), s.successor(7)
    (2, None, 7, None)
    >>> 7 in s, 5 in s, len(s)
    (True, False, 2)
    >>> PredecessorSet(10).predecessor(4) is None
    True
    >>> s.predecessor(11)
    Traceback (most recent call last):
     ...
    privtopk.common.OutOfRange: 11 outside [1, 10]

    Agrees with a sorted list reference:

    >>> import bisect, random
    >>> rng = random.Random(3)
    >>> ok = True
    >>> for script in range(50):
    ...     m = rng.choice([1, 2, 5, 64, 65, 1000, 2**20])
    ...     s, ref = PredecessorSet(m), []
    ...     for op in range(200):
    ...         j = rng.randint(1, m)
    ...         if rng.random() < 0.4 and j not in s:
    ...             s.insert(j)
    ...             bisect.insort(ref, j)
    ...         i = bisect.bisect_left(ref, j)
    ...         pred = ref[i - 1] if i else None
    ...         i = bisect.bisect_right(ref, j)
    ...         succ = ref[i] if i < len(ref) else None
    ...         ok = ok and s.predecessor(j) == pred and s.successor(j) == succ
    ...     ok = ok and list(s) == ref
    >>> ok
    True
    """
    def __init__(self, universe_size):
        if universe_size < 1:
            raise common.BadParams('universe size must be positive: %s' % universe_size)
        self.universe_size = universe_size
        self.members = set()
        self.tree = _node(max(1, (universe_size - 1).bit_length()))

    def _check(self, j):
        if not 1 <= j <= self.universe_size:
            raise common.OutOfRange('%s outside [1, %d]' % (j, self.universe_size))

    def __len__(self):
        return len(self.members)

    def __contains__(self, j):
        return j in self.members

    def __iter__(self):
        j = self.min()
        while j is not None:
            yield j
            j = self.successor(j)

    def insert(self, j):
        """Add j, inserting an existing member is a no-op
        """
        self._check(j)
        if j not in self.members:
            self.members.add(j)
            self.tree.insert(j - 1)

    def predecessor(self, j):
        """Largest member strictly less than j, or None
        """
        self._check(j)
        p = self.tree.predecessor(j - 1)
        return None if p is None else p + 1

    def successor(self, j):
        """Smallest member strictly greater than j, or None
        """
        self._check(j)
        s = self.tree.successor(j - 1)
        return None if s is None else s + 1

    def min(self):
        return None if self.tree.min is None else self.tree.min + 1

    def max(self):
        return None if self.tree.max is None else self.tree.max + 1


class ShufflePool:
    """The values 1..n drawn without replacement in O(1) per draw

    Holds a virtual array that starts as the identity and is only stored where it was swapped,
    so creating a pool over a large universe costs nothing.
    Drawing picks a uniform slot among the remaining ones and swaps it to the back.

    >>> import numpy as np
    >>> pool = ShufflePool(5)
    >>> pool.discard(3)
    >>> rng = np.random.default_rng(0)
    >>> drawn = sorted(pool.draw(rng) for _ in range(4))
    >>> drawn, len(pool), 3 in pool
    ([1, 2, 4, 5], 0, False)
    >>> pool.draw(rng)
    Traceback (most recent call last):
     ...
    privtopk.common.Exhausted: pool is empty
    """
    def __init__(self, n):
        self.size = n
        self.slots = {} # slot -> value, where they differ
        self.where = {} # value -> slot, where they differ

    def __len__(self):
        return self.size

    def __contains__(self, value):
        return 1 <= value and self.where.get(value, value - 1) < self.size

    def _get(self, slot):
        return self.slots.get(slot, slot + 1)

    def _set(self, slot, value):
        if value == slot + 1:
            self.slots.pop(slot, None)
            self.where.pop(value, None)
        else:
            self.slots[slot] = value
            self.where[value] = slot

    def _remove_slot(self, slot):
        value = self._get(slot)
        last = self.size - 1
        if slot != last:
            self._set(slot, self._get(last))
        self._set(last, value)
        self.size = last
        return value

    def draw(self, rng):
        """Remove and return a uniformly chosen remaining value
        """
        if not self.size:
            raise common.Exhausted('pool is empty')
        return self._remove_slot(int(rng.integers(self.size)))

    def discard(self, value):
        """Remove this value if it has not been drawn
        """
        if value in self:
            self._remove_slot(self.where.get(value, value - 1))

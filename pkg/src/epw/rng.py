"""Deterministic splitmix64 stream used for all seeded sampling.

Every randomized construction in the package draws from this generator so
that results are reproducible bit for bit from a 64-bit seed.  Field
elements are drawn as ``next() mod p`` over F_p and as integers in
[-10, 10] (``next() mod 21 - 10``) over Q.
"""

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & _MASK

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return (z ^ (z >> 31)) & _MASK

    def next_mod(self, n):
        return self.next_u64() % n

    def next_symmetric(self, bound=10):
        """Integer uniform-ish in [-bound, bound]."""
        return self.next_mod(2 * bound + 1) - bound

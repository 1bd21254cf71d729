"""Counter-based random number streams.

Every stochastic routine in the package derives its generator from a
(seed, key...) tuple instead of sharing one sequential generator.  Streams
for distinct keys are statistically independent and can be consumed in any
order, so serial and parallel schedules produce bit-identical results.
"""

import numpy as np

# key domains, so different subsystems never collide on (l, i, b) tuples
DOMAIN_XI = 0
DOMAIN_CV = 1
DOMAIN_SIM = 2


def stream(seed, *key):
    """Return a Generator for the given seed and integer key tuple.

    The same (seed, key) always yields the same stream regardless of how
    many other streams were created before it.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))

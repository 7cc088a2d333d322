# Prevariety fans of a few small flag Dressians.
#
# Each system is built from the three-term exchange relations and the
# incidence relations, then refined into a fan and printed modulo lineality.

# %%
import time
from itertools import combinations

from flagdressian.prevariety import generate_relations, prevariety_fan, restrict_to_stratum

# %%
for ranks, n in [([2], 4), ([1, 3], 4), ([1, 2], 4), ([2], 5), ([1, 2, 3], 4)]:
    t = time.time()
    fan = prevariety_fan(generate_relations(ranks, n))
    print(ranks, n, "dim", fan.dim, "lineality", fan.lineality_dim, "f", fan.f_vector, "%.2fs" % (time.time() - t))

# %% [1,2] on 4 and [2] on 5 give the same numbers: the fibration at work.

# %% A stratum: uniform rank 2 on six elements below the rank 3 matroid with
# four circuit hyperplanes removed.
hyper = {(0, 1, 3), (0, 2, 4), (1, 2, 5), (3, 4, 5)}
M4 = [B for B in combinations(range(6), 3) if B not in hyper]
sys_ = restrict_to_stratum(generate_relations([2, 3], 6), [None, M4])
print(sys_)
fan = prevariety_fan(sys_)
print("dim", fan.dim, "lineality", fan.lineality_dim, "f", fan.f_vector)
for d, idx in fan.maximal_cells():
    if d == fan.dim:
        print("the one 2-cell uses rays", idx)

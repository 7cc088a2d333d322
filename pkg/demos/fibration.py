# Lift a valuated flag of ranks (1,2) to a valuated matroid of rank 2 on one
# more element and project it back.

# %%
import random

from flagdressian import samples
from flagdressian.flag import affine_cone_equal_sample, fibration_lift, fibration_project, flag_dressian_member
from flagdressian.characterizations import verdicts

rng = random.Random(1)
mq, m = samples.realizable_flag([1, 2], 4, rng)
print(mq)
print(m)
print("four characterizations:", verdicts([mq, m]))

# %%
nu = fibration_lift(mq, m, a=2, b=-1)
print(nu)
p, q = fibration_project(nu)
print(p.projectively_equal(mq), q.projectively_equal(m), flag_dressian_member([p, q]))

# %% Compare the two membership tests on random points (valid, perturbed, junk).
rep = affine_cone_equal_sample(1, 4, 300, rng)
print(rep["samples"], "samples,", rep["members"], "members,", len(rep["counterexamples"]), "counterexamples")

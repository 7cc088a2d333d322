# Two weights on the hexagon A + B with the same subdivision.
# Only one of them is a sum of weights on the factors.

# %%
from flagdressian.subdivision import (
    HEX_W1,
    HEX_W2,
    hexagon_configuration,
    hexagon_factors,
    is_minkowski_sum,
    minkowski_weight,
    point_mixed_decomposition,
    subdivide,
)

wA, wB = hexagon_factors()
name = lambda p: "".join(map(str, p))

# %%
for title, cfg in [("w1", hexagon_configuration(HEX_W1)), ("w2", hexagon_configuration(HEX_W2)), ("wA+wB", minkowski_weight([wA, wB]))]:
    sub = subdivide(cfg)
    print(title, "sum of factor weights:", is_minkowski_sum(cfg, [wA.labels, wB.labels]))
    for f in sub.maximal_faces():
        print("   ", sorted(name(a) + "+" + name(b) for a, b in f.labels))

# %% The point sets of the cells agree. At the centre 111, w1 picks the pairs
# 001+110 and 100+011 while w2 picks 001+110 and 010+101, so the label-level
# faces differ even though the polyhedral subdivision is the same.
s1 = subdivide(hexagon_configuration(HEX_W1))
print(s1.point_faces() == subdivide(hexagon_configuration(HEX_W2)).point_faces())

# %% Every cell of w1 is still a sum of a cell of A and a cell of B.
for labels, pick in point_mixed_decomposition(s1, [wA, wB]):
    print([name(x) for x in pick[0]], "+", [name(x) for x in pick[1]])

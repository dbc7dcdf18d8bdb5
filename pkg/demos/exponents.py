"""
Exponents from the trajectory versus the closed forms
=====================================================

"""

from fractions import Fraction

import numpy as np

from nsystems import (build_geometry, canonical_params, closed_forms_paper, compare,
                      sample_neighborhood, trajectory_exponents)

p = canonical_params(3)
t = trajectory_exponents(build_geometry(p))
d = compare(t, closed_forms_paper(p))

for e in d.entries:
    flag = "" if e.equal else "   <-- differs"
    print(f"{e.name:<7} {str(e.trajectory):>7} {str(e.paper):>7}{flag}")

# where each extremum is attained
for name, at in zip(t.names(), (*t.uniform_at, *t.ordinary_at)):
    print(name, "at", at.label, "strict" if at.strict else "tied")

# a small neighbourhood: only What_0 ever disagrees
samples = sample_neighborhood(p, Fraction(1, 64), 200, seed=1)
mism = [tuple(compare(s.exponents, closed_forms_paper(s.params)).mismatches) for s in samples]
print(len(samples), "points, mismatch patterns:", sorted(set(mism)))

# spread of the uniform exponents, as floats for a quick look
hat = np.array([[float(x) for x in s.exponents.uniform] for s in samples])
print("min", hat.min(axis=0).round(4), "max", hat.max(axis=0).round(4))

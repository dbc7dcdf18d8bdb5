"""
Jacobian certificates of algebraic independence
===============================================

"""

import numpy as np

from nsystems import canonical_params, independence_certificate
from nsystems.certify import specialization_rank_check, uniform_block_certificate

for n in range(3, 7):
    p = canonical_params(n)
    cert = independence_certificate(n, p)
    block = uniform_block_certificate(n, p)
    spec = specialization_rank_check(n, p)
    print(f"n={n}  rank {cert.rank}/{2 * n}  uniform block {block.rank}/{n}  "
          f"C=1 rank {spec.rank}/{spec.expected}  det {float(cert.determinant):.3e}")

# the exact matrix for n = 3, shown in floating point
cert = independence_certificate(3, canonical_params(3))
m = np.array([[float(x) for x in row] for row in cert.jacobian.to_rows()])
np.set_printoptions(precision=3, suppress=True, linewidth=100)
print(cert.rows)
print(m)

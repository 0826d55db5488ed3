# %% [markdown]
# # Three routes to 1/d
#
# The pairing of the generator of Z/d with the class of the multiplication
# extension is 1/d.  The same number comes out of the relative eta invariant
# of the circle twisted by a flat line bundle, and out of a log determinant.

# %%
from fractions import Fraction

import numpy as np

from secpair import (ExtensionClass, FlatLineBundle, UnitaryPath, delta_via_extension,
                     dls_determinant, eta_circle, hurwitz_zeta, log_det_pairing, rho_relative,
                     zeta_generator_check)
from secpair.detpair import root_of_unity

print("zeta_H(0, 1/3) =", hurwitz_zeta(0.0, 1 / 3))
for th in (Fraction(0), Fraction(1, 3), Fraction(1, 2)):
    r = eta_circle(FlatLineBundle(th))
    print(f"theta={th}: eta={r.eta:+.10f}  kernel dim {r.kernel_dim}")

# %% [markdown]
# The spectrum convention {n - theta} makes rho(V_theta, V_0) = +theta.  The
# opposite holonomy convention would give -theta.

# %%
for d in range(2, 7):
    ext = delta_via_extension(ExtensionClass.multiplication(d)).values[0]
    rho = rho_relative(FlatLineBundle(Fraction(1, d)), FlatLineBundle.trivial()).certified
    det = log_det_pairing([[root_of_unity(d)]], [[1.0]]).value
    print(f"d={d}: extension {ext}, rho {rho}, log-det {det}")

# %% Determinant of a path: the loop t -> diag(exp(2 pi i 2 t), 1) winds twice.
u = UnitaryPath.diagonal_exponential([2, 0], steps=64)
print(np.round(dls_determinant(u, exact=False).real, 10))
print("winding-one generator, m = 5:", zeta_generator_check(5).value)

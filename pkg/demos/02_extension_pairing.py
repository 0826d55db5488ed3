# %% [markdown]
# # The pairing from an extension
#
# A class with vanishing index is represented by an extension
# 0 -> Z -> E -> K1 -> 0.  Extend the inclusion of Z to a map E -> Q; on the
# torsion of K1 this descends to a character with values in Q/Z.

# %%
import random

from secpair import (ExtensionClass, FgGroup, GroupHom, KTheoryPair, QZHom, QZValue, Z, baer_sum,
                     cyclic, delta_via_extension, delta_via_qz, ext_to_qz_hom, pullback,
                     qz_class_for, rational_extensions, torsion_subgroup)

x = ExtensionClass.multiplication(3)
print("Z --x3--> Z -> Z/3 pairs the generator to", delta_via_extension(x).values[0])

# %% E = Z + Z/2 with iota(1) = (4, [1]) has quotient Z/8.
E = FgGroup(1, (2,))
x = ExtensionClass.from_inclusion(E, [4, 1])
delta = delta_via_extension(x)
T, incl = torsion_subgroup(x.k1)
e1 = x.pi(E.element([1, 0]))
print("k1 =", x.k1, " image of e1 pairs to", delta(incl.preimage(e1)))
print("4 * e1 =", (4 * e1).coords, "is nonzero but pairs to", delta(incl.preimage(4 * e1)))

# %% [markdown]
# The map E -> Q is not unique when E has free rank above one.  Its
# restriction to torsion is.

# %%
x = ExtensionClass.from_inclusion(FgGroup(3, (4,)), [6, 10, -4, 1])
values = {delta_via_extension(x, phi) for phi in rational_extensions(x, 16, random.Random(0))}
print("k1 =", x.k1, " distinct restrictions over 16 solves:", len(values))
print("agrees with the Ext-class route:", ext_to_qz_hom(x) in values)

# %% Blockwise sums and pullbacks.
s, (i2, i3) = baer_sum(ExtensionClass.multiplication(2), ExtensionClass.multiplication(3))
d = delta_via_extension(s)
T, incl = torsion_subgroup(s.k1)
print("sum: Z/2 generator ->", d(incl.preimage(i2.images()[0])),
      " Z/3 generator ->", d(incl.preimage(i3.images()[0])))
f = GroupHom.from_images(cyclic(3), cyclic(6), [[2]])
print("pullback of x6 along Z/3 -> Z/6 pairs [1] to",
      delta_via_extension(pullback(ExtensionClass.multiplication(6), f)).values[0])

# %% [markdown]
# ## The Q/Z-coefficient picture
#
# The same character read off from an additive map on K_0(Q/Z) that kills
# the divisible summand.

# %%
chi = QZHom(cyclic(4), (QZValue(3, 4),))
print("Q/Z picture on Z + Z/4: [1] ->", delta_via_qz(qz_class_for(KTheoryPair(Z, cyclic(4)), chi)).values[0])

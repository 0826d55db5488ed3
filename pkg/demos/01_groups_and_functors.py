# %% [markdown]
# # Finitely generated abelian groups
#
# Everything downstream is built on integer matrices and their Smith normal
# form.  A group is stored in invariant-factor form: free rank first, then a
# divisibility chain of torsion orders.

# %%
from secpair import (FgGroup, GroupHom, IntMatrix, QZ, cokernel, cyclic, ext_z,
                     group_from_presentation, hom_group, image, is_perfect_pairing, kernel,
                     smith_normal_form, tor_zn)

A = IntMatrix.from_rows([[2, 4], [6, 8]])
U, D, V = smith_normal_form(A)
print("D =", D.tolist(), " U A V == D:", U @ A @ V == D)

# %% Two generators with 2a = 0 and 3b = 0 give the cyclic group of order 6.
G, q = group_from_presentation(2, [[2, 0], [0, 3]])
print(G, "generators land on", [g.coords for g in q.images()])

# %% Kernel, image and cokernel of multiplication by 2 on Z/6.
f = GroupHom.multiplication(cyclic(6), 2)
print("ker", kernel(f)[0], " im", image(f)[0], " coker", cokernel(f)[0])

# %% [markdown]
# ## Hom, Tor, Ext
#
# Q/Z never appears as a group object.  Characters are lists of fractions,
# one per torsion generator.

# %%
K1 = FgGroup(1, (6,))
print("Tor(Z/4, Z + Z/6) =", tor_zn(4, K1)[0])
print("Ext(Z + Z/6, Z)   =", ext_z(K1))
H = hom_group(cyclic(6), QZ)
print("Hom(Z/6, Q/Z)     =", H.group, " generator sends [1] to", H.evaluate(H.group.gens()[0], [1]))
print("Hom(Z/4, Z/6)     =", hom_group(cyclic(4), 6).group)
print("pairing on Z/2 + Z/4 is perfect:", is_perfect_pairing(FgGroup(0, (2, 4))))

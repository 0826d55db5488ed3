# %% [markdown]
# # Compatible families over mod-m coefficients
#
# A character of the torsion of K1 is the same thing as a family of maps
# psi_m: Tor(Z/m, K1) -> Z/m, compatible with the maps between the
# dimension drop algebras.  Those maps are classified by small KK groups.

# %%
from secpair import (FgGroup, QZHom, QZValue, check_compatibility, compatible_family_space,
                     cyclic, delta_from_family, family_from_delta, kk_table)

for row in kk_table(6, 0):
    print(" ".join(f"{str(d.group):>4}" for d in row))

# %% From a character to a family and back.
k1 = cyclic(6)
F = family_from_delta(QZHom(k1, (QZValue(1, 6),)), k1, 12)
for m in (2, 3, 4, 6, 12):
    print(f"psi_{m} on {F.tor_group(m)}: {F.psi[m]}")
print("compatible:", bool(check_compatibility(F)), " back: [1] ->", delta_from_family(F).values[0])

# %% A single corrupted entry breaks one of the squares.
bad = F.with_entry(4, 0, 1)
print(check_compatibility(bad).failure)

# %% Counting every compatible family recovers the number of characters.
for G in (cyclic(6), FgGroup(0, (2, 4)), FgGroup(0, (6, 12))):
    print(G, "->", compatible_family_space(G, G.exponent()).order(), "families")

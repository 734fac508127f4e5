"""Discriminant groups and forms of small named lattices."""
# %%
from ballquot.catalog import parse
from ballquot.lattice import discriminant_form, forms_opposite, is_p_elementary

# %% A2 has discriminant group Z/3 with generator value 4/3
A2 = parse("A2")
F = discriminant_form(A2)
print("A2:", F.group.cyclic_orders, F.q_values)

# %% E6^∨(3) is 3-elementary of length 5, every generator has value 2/3
E = parse("E6v3")
FE = discriminant_form(E)
print("E6v3 det:", E.det)
print("E6v3 group:", FE.group.cyclic_orders)
print("E6v3 values:", [str(v) for v in FE.q_values])
print("3-elementary:", is_p_elementary(E, 3))

# %% its form is the opposite of the form of A2^5
print("opposite of A2^5:", forms_opposite(FE, discriminant_form(parse("A2^5"))))

"""Eigenspaces over Q(ζ_p) and certified positivity of period points."""
# %%
from ballquot.corpus import coxeter_extension, period_point, toy_ball
from ballquot.cyclotomic import eigenspace_basis, isotropy_check, positivity_check, q

# %% for id_U ⊕ cox(A_{p-1}) every eigenspace is one-dimensional and isotropic
for p in (3, 5, 7):
    act = coxeter_extension(p)
    dims = [len(eigenspace_basis(act, k)) for k in range(1, p)]
    iso = all(isotropy_check(b) for k in range(1, p) for b in eigenspace_basis(act, k))
    print(f"p={p}: dims {dims}, isotropic {iso}")

# %% a toy 2-ball: the ζ-eigenspace has dimension 3
act = toy_ball()
basis = eigenspace_basis(act, 1)
print("eigenspace dim", len(basis))

# %% a seeded period point, q(x) = 0 exactly and q(x + x̄) > 0 certified by intervals
x = period_point(act, seed=1)
print("q(x) =", q(x))
cert = positivity_check(x)
# for p = 3 the real subfield is Q, so q(x + x̄) is rational and its sign is exact
print(cert.status, cert.value if cert.precision == 0 else (cert.lower, cert.upper))

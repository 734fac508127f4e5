"""Short vectors, wall divisors and the hyperplane scan through a period point."""
# %%
from ballquot.catalog import parse
from ballquot.corpus import period_point, sextic_action, sextic_embedding
from ballquot.report import radius_box
from ballquot.walls import (delta_scan, divisible_norm_sieve, enumerate_box, enumerate_definite,
                            two_torsion_obstruction)

# %% root counts in negative definite lattices, checked against a box search
for name in ("A2", "D4", "E6", "E8"):
    L = parse(name)
    roots = enumerate_definite(L, -2)
    print(name, len(roots), "roots; box agrees:", roots == enumerate_box(L, -2, radius_box(L, -2)))

# %% norm -10 vectors of divisibility 2 cannot exist in the det-3 complement
S = sextic_embedding().complement
print("A_S has no 2-torsion:", two_torsion_obstruction(S.lattice))
cert = divisible_norm_sieve(S, -10, 2)
print("norms of div-2 vectors lie in", cert.ideal, "Z; -10 excluded:", cert.excluded)

# %% a generic period point avoids all walls up to the bound
act = sextic_action()
x = period_point(act, seed=2)
print(delta_scan(x, act.invariant, 3).status)

# %% a point built inside a root hyperplane hits it
root = [0] * 23
root[6] = 1
y = period_point(act, seed=2, orthogonal_to=root)
verdict = delta_scan(y, act.invariant, 3)
print(verdict.status, "with", len(verdict.witnesses), "wall vectors, e.g.", verdict.witness.coords)

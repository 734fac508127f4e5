"""The <6> lattice inside K3^[2]: complement, glue index and the order-3 action."""
# %%
from ballquot.corpus import naive_sextic_embedding, sextic_action, sextic_embedding
from ballquot.isometry import ball_dimension, coinvariant_charpoly_check, glue_power_check, in_O_plus
from ballquot.sublattice import divisibility

# %% v = 2e + 2f + z has square 8 - 2 = 6 and divisibility 2
emb = sextic_embedding()
v = emb.basis[0]
print("q(v) =", emb.ambient.q(v), " div(v) =", divisibility(v, emb.ambient))

# %% the complement has determinant 3 and the glue index is a power of 3
S = emb.complement
print("S: rank", S.rank, "det", S.lattice.det, "signature", S.lattice.signature)
print("glue index", emb.glue_index, "power of 3:", glue_power_check(emb, 3))

# %% the naive choice e + 3f in a single U glues with index 6
naive = naive_sextic_embedding()
print("naive glue index", naive.glue_index, "power of 3:", glue_power_check(naive, 3))

# %% an explicit order-3 isometry with this invariant lattice
act = sextic_action()
k = coinvariant_charpoly_check(act)
print("invariant Gram", act.invariant.gram, " k =", k)
print("ball dimension", ball_dimension(act.coinvariant.rank, 3))
print("in O+:", in_O_plus(act.matrix, act.ambient))

# coding: utf-8

# # Reflection recurrences and k-kernels

# A reflection spec fixes the values below 2^l0. Above that, each dyadic block mirrors an earlier one, and the left half is shifted by c.

# In[1]:

from abelianlab import theorems as th
from abelianlab.kernel import automatic_kernel, eval_linear_representation, guess_relations, to_linear_representation
from abelianlab.sequences import named_sequence

spec = th.ReflectionSpec(2, 2, (1, 2, 3, 2))
print(th.reflection_table(spec, 40))


# The closed form agrees with the recurrence, even far out.

# In[2]:

n = 10 ** 15 + 7
print(th.solve_reflection(spec, n), th.reflection_eval(spec, n))


# Guess linear relations among kernel slices of a measured series, then turn them into matrices.

# In[3]:

rs = guess_relations(named_sequence("delta12-tm2"), 2, 256, 1 << 12)
print("rank", rs.rank)
for line in rs.describe():
    print(" ", line)
rep = to_linear_representation(rs)
print([int(eval_linear_representation(rep, n)) for n in range(20)])


# Reduced mod 2 the same kind of series has a finite kernel, so it is computed by an automaton.

# In[4]:

ak = automatic_kernel(named_sequence("m0-pd2-mod2"), 2, 256, horizon=1 << 11)
print(ak.size, "states")
print("".join(str(ak(n)) for n in range(64)))

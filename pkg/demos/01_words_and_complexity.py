# coding: utf-8

# # Words and their complexity functions

# The catalog holds a handful of fixed points of uniform morphisms. Prefixes grow on demand.

# In[1]:

import numpy as np

from abelianlab import StatisticKind, get_word, series_table
from abelianlab.words import format_word

for wid in ("tm", "pd", "tm2", "pd2", "pd3"):
    w = get_word(wid, 40)
    print(f"{wid:>4}  {format_word(w.word[:40], w.alphabet.size)}")


# Abelian, 2-abelian and 3-abelian complexity sit below factor complexity. One table call computes them all.

# In[2]:

kinds = [StatisticKind.labelian(1), StatisticKind.labelian(2), StatisticKind.labelian(3), StatisticKind.factor()]
tab = series_table(get_word("tm"), kinds, 32)
grid = np.array([tab[k].values for k in kinds])
print(grid)
print("chain holds:", bool((np.diff(grid, axis=0) >= 0).all()))


# Extremal letter counts. For pd2 the letter 0 count over windows of length n ranges over an interval.

# In[3]:

K = StatisticKind
x = get_word("pd2")
t = series_table(x, [K.ext_max([0]), K.ext_min([0]), K.ext_delta([0])], 64, method="profile")
for n in (1, 2, 4, 8, 16, 32, 64):
    print(n, t[K.ext_min([0])][n], t[K.ext_max([0])][n], t[K.ext_delta([0])][n])

# coding: utf-8

# # Checking identities against computed values

# Each suite returns reports. A failing report records the first counterexamples it saw.

# In[1]:

from abelianlab import theorems as th
from abelianlab.catalog import get_word

print(th.reports_text(th.verify_pd_suite(128)))


# In[2]:

truth = th.tm_truth(129)
print(th.reports_text(th.verify_tm_suite(128, truth=truth, classes=False)))


# A deliberately corrupted table is caught.

# In[3]:

reps = th.verify_tm_suite(128, truth=truth.perturbed("D12", 65), classes=False)
print([r.summary() for r in reps if not r.passed])


# The block-coding relation is only checked empirically. Its report says so.

# In[4]:

print(th.conjecture_blocks(get_word("pd"), 3, 1023).summary())

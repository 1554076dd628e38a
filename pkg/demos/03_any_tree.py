"""Arbitrary trees: pendant augmentation and how the bound compares."""

import numpy as np

from treeburn import augment_degree2, burn_general_tree, random_tree
from treeburn.bounds import bessy_bound

t = random_tree(300, seed=1)
aug = augment_degree2(t, 0)
print(f"n={t.n}, degree-2 vertices={t.degree2_count}, augmented n'={aug.tree.n}")

r = burn_general_tree(t)
print("steps", r.steps_used, "bound", r.claimed_bound, "comparison", r.comparison)

# over a batch of sizes the new bound never sits above the older formula
rng = np.random.default_rng(0)
gaps = []
for i in range(50):
    n = int(rng.integers(50, 501))
    t = random_tree(n, [0, i])
    r = burn_general_tree(t)
    gaps.append(bessy_bound(n, t.degree2_count) - r.claimed_bound)
print("older formula minus ours: min", min(gaps), "max", max(gaps))

"""Closed forms on perfect and complete trees, then peeling on ragged ones."""

from treeburn import (
    audit,
    build_tree,
    burn_complete,
    burn_fbtnp_improved,
    burn_fbtnp_sqrt_n,
    burn_perfect,
    burning_number_exact,
    closed_form,
    complete_binary,
    perfect_binary,
    random_fbtnp,
    rooted,
)
from treeburn.bounds import improved_bound, sqrt_bound

t, rv = perfect_binary(3)
r = burn_perfect(rv)
print("perfect h=3:", r.sequence.sources, "closed form", closed_form(rv),
      "oracle", burning_number_exact(t).b)

# one leaf short keeps the perfect answer; two or more short drops it by one
for leaves in (7, 6, 3):
    t, rv = complete_binary(3, leaves)
    r = burn_complete(rv)
    print(f"complete h=3 with {leaves} bottom leaves: {r.steps_used} steps,",
          "oracle", burning_number_exact(t).b)

# a random full binary tree: both peeling burners, and what each round removed
t, rv = random_fbtnp(201, seed=4)
for burner, bound in ((burn_fbtnp_sqrt_n, sqrt_bound), (burn_fbtnp_improved, improved_bound)):
    r = burner(rv)
    print(f"{burner.__name__}: {r.steps_used} steps, bound {bound(t.n)}")

# random full trees are bushy and usually fall to one central source; a
# caterpillar (a long spine with a leaf hung on every spine vertex) is
# where the peeling rounds show up
spine = 30
edges = [(i, i + 1) for i in range(spine - 1)]
edges += [(i, spine + i) for i in range(spine - 1)]
edges += [(spine - 1, 2 * spine - 1), (spine - 1, 2 * spine)]
cat = build_tree(2 * spine + 1, edges)
r = burn_fbtnp_improved(rooted(cat, 0))
print(f"caterpillar n={cat.n}: {r.steps_used} steps, bound {improved_bound(cat.n)}")
for rec in audit(r):
    print("  ", rec["tag"], "k =", rec["k"], "burned", rec["burned"], "quota", rec["quota"])

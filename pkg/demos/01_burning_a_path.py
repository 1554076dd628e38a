"""Watching fire move through a path, step by step."""

from treeburn import burning_number_exact, is_valid_burning, path, simulate

p9 = path(9)

# light 2 first, then 6, then 8; each new fire waits one round before spreading
trace = simulate(p9, [2, 6, 8])
for step, burnt in enumerate(trace.burned_after, start=1):
    row = "".join("#" if v in burnt else "." for v in range(p9.n))
    print(f"after step {step}: {row}")

print("valid:", bool(is_valid_burning(p9, [2, 6, 8])))

# starting in the middle looks natural but leaves vertex 7 cold
bad = is_valid_burning(p9, [4, 1, 8])
print("4, 1, 8 ->", bad.reason)

# the oracle agrees that three steps is the best a path of nine can do
for n in (4, 9, 10, 16, 17):
    print(f"b(P_{n}) =", burning_number_exact(path(n)).b)

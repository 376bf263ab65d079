"""T² bundles over S²: the symplectic class extends only for the trivial map."""
from symplext import torus_over_s2_check

print("     b: " + " ".join(f"{b:2d}" for b in range(-3, 4)))
for a in range(-3, 4):
    row = " ".join(" Y" if torus_over_s2_check(a, b) else " ." for b in range(-3, 4))
    print(f"a={a:3d}: {row}")

"""Cohomology of two free models: T²×CP(1) and the Kodaira-Thurston manifold."""
from symplext import FreeGca, GcaPresentation, cohomology

alg = FreeGca([("t1", 1), ("t2", 1), ("b", 2), ("y", 3)])
cp = GcaPresentation(alg, {"y": alg.gen("b") ** 2}, name="T2xCP1")

alg = FreeGca([(f"x{i}", 1) for i in range(1, 5)])
kt = GcaPresentation(alg, {"x4": alg.gen("x1") * alg.gen("x2")}, name="KT")

for pres in (cp, kt):
    dims = [cohomology(pres, n).dimension for n in range(6)]
    print(f"{pres.name:8s} betti numbers 0..5: {dims}")

# representatives in degree 2 for KT
for rep in cohomology(kt, 2).representatives:
    print("  H2(KT) class:", rep)

"""κ for T⁴×CP(1) and a few classifying maps over S²."""
from symplext import ClassifyingData, is_extendable, kappa, sum_classifying, torus_cp

spec = torus_cp(2, 1)
km = kappa(spec)
print("source:", km.source)
print("target:", km.target)
print("rank:", km.rank, " image:", km.image_names())

quiet = ClassifyingData.from_values(km.target, ["u"], {"y@t11*t12": 3, "y@t21*t22": -1})
loud = ClassifyingData.from_values(km.target, ["u"], {"t21@1": 2})

for label, f in [("off the image", quiet), ("hits t21@1", loud), ("sum", sum_classifying(quiet, loud))]:
    v = is_extendable(spec, f, km=km)
    tail = "" if v.extendable else f" (witness {v.witness}, image {[str(x) for x in v.image]})"
    print(f"{label:14s} extendable={v.extendable}{tail}")

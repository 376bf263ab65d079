"""Degree one part of the reduced model of aut₁(T²×CP(m)).

The generator y@b^m is the only one with nonzero δ, and its coefficient has
absolute value m+1.  Everything else survives to H¹.
"""
from symplext import h1_aut1, separable_bs_model, torus_cp

for m in (1, 2, 3):
    model = separable_bs_model(torus_cp(1, m))
    print(f"m={m}: eliminated {list(model.eliminated)}")
    for name in model.degree_one:
        d = model.delta(name)
        if d.terms:
            print(f"   δ({name}) = {d}")
    print(f"   H1 basis: {list(h1_aut1(model).names)}")

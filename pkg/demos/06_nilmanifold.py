"""Nilmanifolds: δ vanishes in degree one and H*(Baut₁) is polynomial."""
from pathlib import Path

from symplext import (ClassifyingData, NilmanifoldModel, baut1_poly_generators, is_extendable_nil,
                      nil_bs_model, parse)

for n in (2, 4, 6):
    gens = baut1_poly_generators(NilmanifoldModel.torus(n))
    print(f"T^{n}: {gens.count} polynomial generators")

kt = NilmanifoldModel.kodaira_thurston()
bs = nil_bs_model(kt)
print("KT eliminated:", list(bs.eliminated))
gens = baut1_poly_generators(kt, bs)
print("KT generators:", gens.names)

doc = parse((Path(__file__).parent / "models" / "kt.rht").read_text())
f = ClassifyingData.from_values(gens.names, doc.base, doc.classify)
v = is_extendable_nil(kt, f, gens)
print("fixture classifying map extendable:", v.extendable, "witness:", v.witness)
print("zero map extendable:", is_extendable_nil(kt, ClassifyingData.zero(gens.names), gens).extendable)

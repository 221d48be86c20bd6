#!/usr/bin/env python3
# The negative direction: maps from an ODD sphere into a target whose
# cohomology is not free are never formal.  The witness is structural: in
# the barred bigraded model every differential is bar-linear, while any
# Lemma-3.6 witness for an even barred generator would need a power of
# bar-length >= 2.

from random import Random

from rht.gca import Cdga
from rht.quotient import ModelCohomology
from rht.formality import (bigraded_model, barred_bigraded_model,
                           bar_obstruction, lemma36_scan, formality_pipeline)
from rht.mapmodel import MapSpaceProblem
from rht.dgl import FiniteCdga

gens = [("x1", 5), ("x2", 5), ("y", 9)]
carrier = Cdga(gens, {}, 24)
Y = Cdga(gens, {"y": carrier.multiply(carrier.gen("x1"),
                                      carrier.gen("x2"))}, 24)

H = ModelCohomology(Y, 20)
print("H*(Y) ranks:", H.ranks())
print("(rank 2 in degree 14: x1*y and x2*y are closed but not exact)")

B = bigraded_model(H, 20)
print("\nbigraded resolution of H*(Y):")
for n in B.cdga.names:
    img = B.cdga.differential.images.get(n)
    print("  %s: degree %d, lower %d%s"
          % (n, B.cdga.gen_degree(n), B.lower[n],
             ", d = " + B.cdga.poly_str(img) if img else ""))

barred = barred_bigraded_model(B, 3)
cert, notes = bar_obstruction(barred, y_model=Y, bound=20)
print("\nobstruction witness:", cert.witness,
      "(degree %d, lower %d)" % (barred.cdga.gen_degree(cert.witness),
                                 barred.lower[cert.witness]))

entries = lemma36_scan(barred, 20, rng=Random(3), random_combos=1)
print("lemma-3.6 scan:")
for e in entries:
    print("  %-24s %s" % (e.w, e.status))

prob = MapSpaceProblem(FiniteCdga.sphere(3), 3, y_cdga=Y)
verdict = formality_pipeline(prob, 20)
print("\npipeline verdict:", verdict.verdict,
      "| certificate:", verdict.certificate.kind)

# for the EVEN sphere the same machinery correctly refuses to conclude
barred2 = barred_bigraded_model(bigraded_model(ModelCohomology(Y, 16), 16), 2)
cert2, notes2 = bar_obstruction(barred2, y_model=Y, bound=16)
print("same target, 2-sphere instead:", cert2, "-", notes2[0])

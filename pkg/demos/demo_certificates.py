#!/usr/bin/env python3
# Certificates are self-contained text: they embed every model they talk
# about, re-parse without the producing session, and re-verify from scratch.
# Tampering with any load-bearing line makes replay fail.

from rht.gca import Cdga
from rht.mapmodel import MapSpaceProblem, suspension_model
from rht.formality import formality_pipeline
from rht.dgl import FiniteCdga
from rht.certificates import serialize_verdict, replay_certificate_text

gens = [("x1", 4), ("x2", 4), ("y", 7)]
carrier = Cdga(gens, {}, 26)
Y = Cdga(gens, {"y": carrier.multiply(carrier.gen("x1"),
                                      carrier.gen("x2"))}, 26)

verdict = formality_pipeline(
    MapSpaceProblem(FiniteCdga.sphere(2), 2, y_cdga=Y), 16)
text = serialize_verdict(verdict)
print(text)

ok, info = replay_certificate_text(text)
print("replay:", ok, "-", info)

broken = text.replace("d y_bar = x1*x2_bar + x2*x1_bar",
                      "d y_bar = x1*x2_bar")
ok2, info2 = replay_certificate_text(broken)
print("tampered replay:", ok2, "-", info2)

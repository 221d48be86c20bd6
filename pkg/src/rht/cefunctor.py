"""Cochains on a DGL: the contravariant functor into Sullivan algebras.

C*(L) has one generator v_x of degree |x|+1 per basis element x of L, and
d = d0 + d1 with d0 linear (dual of d_L) and d1 quadratic (dual of the
bracket).  The sign convention used on generator duals is

    d0(v_z) = - sum_x  <z, d_L x> v_x
    d1(v_z) = 1/2 sum_{x,y} (-1)^{|x|+1} <z, [x,y]> v_x v_y   (ordered pairs)

d^2 = 0 exactly when L satisfies the DGL axioms, and C* of the sphere tensor
model agrees on the nose with the bar/suspension construction on C*(L); both
facts are enforced by tests.  Any other consistent convention differs from
this one by rescaling generators.
"""

from fractions import Fraction

from .gca import Cdga, Poly, FreeGCA

QONE = Fraction(1)
HALF = Fraction(1, 2)


class CeResult:
    """A Sullivan algebra with the dictionary back to the DGL basis."""

    def __init__(self, cdga, gen_of, basis_of):
        self.cdga = cdga
        self.gen_of = gen_of      # DGL basis name -> CDGA generator name
        self.basis_of = basis_of  # CDGA generator name -> DGL basis name

    def d0_d1_split(self, gen_name):
        """(linear part, quadratic part) of d on a generator."""
        img = self.cdga.differential.images.get(gen_name, Poly())
        lin = Poly({m: c for m, c in img.items() if sum(e for _, e in m) == 1})
        quad = Poly({m: c for m, c in img.items() if sum(e for _, e in m) == 2})
        return lin, quad


def ce_cochains(L, N, validate=True):
    """C*(L, d_L) truncated at cohomological degree N <= L.truncation + 1.

    Set validate=False only when feeding deliberately corrupted input to
    check that d^2 = 0 fails.
    """
    if N > L.truncation + 1:
        raise ValueError("N may exceed L's truncation by at most 1")
    if validate:
        report = L.validate()
        if not report:
            raise ValueError("invalid DGL: %s" % report)

    gens = []
    gen_of = {}
    counters = {}
    for x in L.names:
        d = L.degree_of[x] + 1
        if d > N:
            continue
        i = counters.get(d, 0)
        counters[d] = i + 1
        name = "v%d_%d" % (d, i)
        gens.append((name, d))
        gen_of[x] = name
    basis_of = {v: x for x, v in gen_of.items()}
    carrier = FreeGCA(gens)
    deg = L.degree_of

    images = {}
    for z in L.names:
        if z not in gen_of or deg[z] + 2 > N:
            continue
        img = Poly()
        for x in L.names:
            c = L.differential.get(x, {}).get(z)
            if c and x in gen_of:
                img = img + carrier.gen(gen_of[x]).scale(-c)
        for x in L.names:
            for y in L.names:
                if deg[x] + deg[y] != deg[z]:
                    continue
                if x not in gen_of or y not in gen_of:
                    continue
                c = L.bracket(x, y).get(z)
                if c:
                    tau = (-1) ** (deg[x] + 1)
                    term = carrier.multiply(carrier.gen(gen_of[x]),
                                            carrier.gen(gen_of[y]))
                    img = img + term.scale(HALF * tau * c)
        if img:
            images[gen_of[z]] = img
    cdga = Cdga(gens, images, N)
    return CeResult(cdga, gen_of, basis_of)


def ce_of_morphism(phi, ce_source, ce_target):
    """C*(phi): C*(target of phi) -> C*(source of phi), the transpose.

    ce_source and ce_target are the CeResults for phi.source and phi.target.
    Contravariant: ce_of_morphism(psi o phi) = ce(phi) o ce(psi).
    """
    from .gca import CdgaMorphism

    src_alg = ce_target.cdga   # C*(phi.target)
    tgt_alg = ce_source.cdga   # C*(phi.source)
    images = {}
    for vname in src_alg.names:
        y = ce_target.basis_of[vname]
        img = Poly()
        for x in phi.source.names:
            c = phi.images[x].get(y)
            if c and x in ce_source.gen_of:
                img = img + tgt_alg.gen(ce_source.gen_of[x]).scale(c)
        images[vname] = img
    return CdgaMorphism(src_alg, tgt_alg, images)

"""Degreewise quotient rings and cohomology rings.

Two implementations of the same informal interface (rank, basis elements,
multiplication of classes) back the bigraded-model construction and the
quasi-isomorphism checks:

  * QuotientRing: Lambda(gens)/(relations), degreewise bases computed by
    exact elimination over the monomial basis -- no Groebner machinery.
  * ModelCohomology: H^*(A, d) of a free CDGA, classes handled through the
    deterministic representative bases of gca.Cdga.cohomology.

Elements are (degree, coordinate tuple) pairs relative to the ring's own
degree-n basis.
"""

from fractions import Fraction

from .gca import FreeGCA, Poly
from .linalg import reduce_against, row_echelon

QZERO = Fraction(0)
QONE = Fraction(1)


class RingElement:
    __slots__ = ("degree", "coords")

    def __init__(self, degree, coords):
        self.degree = int(degree)
        self.coords = tuple(Fraction(c) for c in coords)

    def is_zero(self):
        return not any(self.coords)

    def __eq__(self, other):
        return (isinstance(other, RingElement) and self.degree == other.degree
                and self.coords == other.coords)

    def __repr__(self):
        return "RingElement(%d, %s)" % (self.degree, self.coords)


class QuotientRing:
    """Lambda(generators) / (relations), truncated at degree N."""

    def __init__(self, algebra, relations, truncation):
        self.algebra = algebra
        self.truncation = int(truncation)
        self.relations = []
        for f in relations:
            if not f:
                continue
            algebra.poly_degree(f)  # raises if inhomogeneous
            self.relations.append(f)
        self._data = {}

    def _degree_data(self, n):
        if n in self._data:
            return self._data[n]
        if n > self.truncation:
            raise ValueError("degree %d above quotient truncation" % n)
        monos = self.algebra.degree_basis(n)
        pos = {m: i for i, m in enumerate(monos)}
        rows = []
        for f in self.relations:
            df = self.algebra.poly_degree(f)
            if df > n:
                continue
            for m in self.algebra.degree_basis(n - df):
                prod = self.algebra.multiply(Poly({m: QONE}), f)
                if not prod:
                    continue
                vec = [QZERO] * len(monos)
                for mm, c in prod.items():
                    vec[pos[mm]] = c
                rows.append(vec)
        if rows:
            ech, pivots = row_echelon(rows, reduce=True)
            ech = ech[:len(pivots)]
        else:
            ech, pivots = [], []
        pivset = set(pivots)
        basis = [m for i, m in enumerate(monos) if i not in pivset]
        data = (ech, pivots, monos, pos, basis)
        self._data[n] = data
        return data

    def rank(self, n):
        if n < 0:
            return 0
        return len(self._degree_data(n)[4])

    def basis_monomials(self, n):
        return list(self._degree_data(n)[4])

    def basis_elements(self, n):
        r = self.rank(n)
        out = []
        for i in range(r):
            coords = [QZERO] * r
            coords[i] = QONE
            out.append(RingElement(n, coords))
        return out

    def unit(self):
        return self.poly_class(Poly.unit())

    def reduce(self, p):
        """Normal form of a homogeneous polynomial: a poly on non-pivot monomials."""
        if not p:
            return Poly()
        n = self.algebra.poly_degree(p)
        ech, pivots, monos, pos, basis = self._degree_data(n)
        vec = [QZERO] * len(monos)
        for m, c in p.items():
            vec[pos[m]] = c
        res = reduce_against(ech, pivots, vec)
        return Poly({m: res[pos[m]] for m in basis if res[pos[m]]})

    def poly_class(self, p):
        """Class of a homogeneous polynomial as a RingElement."""
        if not p:
            raise ValueError("poly_class of 0 needs an explicit degree; use zero(n)")
        n = self.algebra.poly_degree(p)
        nf = self.reduce(p)
        basis = self._degree_data(n)[4]
        return RingElement(n, [nf.coeff(m) for m in basis])

    def zero(self, n):
        return RingElement(n, [QZERO] * self.rank(n))

    def element_poly(self, e):
        basis = self._degree_data(e.degree)[4]
        return Poly({m: c for m, c in zip(basis, e.coords) if c})

    def multiply(self, e1, e2):
        n = e1.degree + e2.degree
        prod = self.algebra.multiply(self.element_poly(e1), self.element_poly(e2))
        if not prod:
            return self.zero(n)
        return self.poly_class(prod)

    def element_str(self, e):
        return self.algebra.poly_str(self.element_poly(e))

    def multiplication_matrix(self, f, n):
        """Matrix of (multiplication by f): Q_n -> Q_{n+|f|} in quotient bases."""
        from .linalg import RatMatrix
        df = self.algebra.poly_degree(f)
        src = self.basis_monomials(n)
        tgt = self._degree_data(n + df)
        tgt_basis = tgt[4]
        tpos = {m: i for i, m in enumerate(tgt_basis)}
        mat = RatMatrix(len(tgt_basis), len(src))
        for j, m in enumerate(src):
            prod = self.algebra.multiply(Poly({m: QONE}), f)
            nf = self.reduce(prod)
            for mm, c in nf.items():
                mat.set(tpos[mm], j, c)
        return mat


class CohomologyAlgebra:
    """A cohomology algebra presented by generators and relations.

    Degreewise ranks and products come from the underlying QuotientRing;
    construction enforces H^0 = Q and H^1 = 0.
    """

    def __init__(self, generators, relations, truncation):
        self.algebra = FreeGCA(generators)
        if any(d == 1 for d in self.algebra.degrees):
            raise ValueError("H^1 must vanish: no degree-1 generators")
        self.ring = QuotientRing(self.algebra, relations, truncation)
        self.truncation = int(truncation)
        if self.ring.rank(0) != 1:
            raise ValueError("H^0 must be Q")
        if self.ring.rank(1) != 0:
            raise ValueError("H^1 must vanish")

    def rank(self, n):
        return self.ring.rank(n)

    def ranks(self, upto=None):
        upto = self.truncation if upto is None else upto
        return [self.rank(n) for n in range(0, upto + 1)]

    def basis_elements(self, n):
        return self.ring.basis_elements(n)

    def unit(self):
        return self.ring.unit()

    def multiply(self, e1, e2):
        return self.ring.multiply(e1, e2)

    def zero(self, n):
        return self.ring.zero(n)

    def element_str(self, e):
        return self.ring.element_str(e)

    def generator_class(self, name):
        return self.ring.poly_class(self.algebra.gen(name))


class ModelCohomology:
    """H^*(A, d) of a Cdga, as a degreewise ring on representative classes."""

    def __init__(self, cdga, truncation=None):
        self.cdga = cdga
        self.truncation = (cdga.truncation - 1 if truncation is None
                           else int(truncation))
        if self.truncation + 1 > cdga.truncation:
            raise ValueError("truncation needs cdga truncation >= %d"
                             % (self.truncation + 1))

    def rank(self, n):
        if n < 0:
            return 0
        return self.cdga.cohomology(n)[0]

    def ranks(self, upto=None):
        upto = self.truncation if upto is None else upto
        return [self.rank(n) for n in range(0, upto + 1)]

    def representatives(self, n):
        return self.cdga.cohomology(n)[1]

    def basis_elements(self, n):
        r = self.rank(n)
        out = []
        for i in range(r):
            coords = [QZERO] * r
            coords[i] = QONE
            out.append(RingElement(n, coords))
        return out

    def unit(self):
        return RingElement(0, [QONE])

    def zero(self, n):
        return RingElement(n, [QZERO] * self.rank(n))

    def element_poly(self, e):
        reps = self.representatives(e.degree)
        out = Poly()
        for c, rep in zip(e.coords, reps):
            if c:
                out = out + rep.scale(c)
        return out

    def poly_class(self, p, degree=None):
        if not p:
            if degree is None:
                raise ValueError("class of 0 needs an explicit degree")
            return self.zero(degree)
        n = self.cdga.poly_degree(p)
        return RingElement(n, self.cdga.class_coordinates(n, p))

    def multiply(self, e1, e2):
        n = e1.degree + e2.degree
        prod = self.cdga.multiply(self.element_poly(e1), self.element_poly(e2))
        return self.poly_class(prod, degree=n)

    def element_str(self, e):
        return "[%s]" % self.cdga.poly_str(self.element_poly(e))


def free_gca_ranks(degrees, upto):
    """Degreewise dimensions of the free graded-commutative algebra on
    generators of the given degrees; the monomial-counting oracle."""
    ranks = [0] * (upto + 1)
    ranks[0] = 1
    for d in degrees:
        new = list(ranks)
        if d % 2 == 1:
            for n in range(upto, d - 1, -1):
                new[n] += ranks[n - d]
        else:
            for n in range(d, upto + 1):
                new[n] += new[n - d]
        ranks = new
    return ranks

"""Formality verdicts with replayable certificates.

Every verdict carries evidence that re-verifies from scratch:

  * FreeCohomologyCert -- degreewise ranks match a free algebra (Thom route);
  * KoszulCert -- a regular sequence plus an explicit quasi-isomorphism onto
    the quotient ring with zero differential;
  * TransferCert -- a retraction g o f = Id together with a formal certificate
    for the big algebra;
  * BarObstructionCert -- a structural non-formality witness on a barred
    bigraded model (only for odd sphere dimension: the even case cannot
    conclude and returns nothing);
  * Lemma36Entry -- scan evidence, never a verdict by itself.

Unknown is always an honest outcome; no checker ever turns an exhausted
search into a verdict.
"""

from fractions import Fraction

from .gca import Cdga, Poly, CheckReport, FreeGCA
from .quotient import (QuotientRing, CohomologyAlgebra, ModelCohomology,
                       RingElement, free_gca_ranks)
from .linalg import RatMatrix, EchelonSpan, rank as mat_rank, kernel_basis, solve
from .mapmodel import (suspension_model, bar_name, check_hypotheses,
                       reduce_to_odd_sphere, SplitError)
from .cefunctor import ce_cochains
from .dgl import tensor_map_model

QZERO = Fraction(0)
QONE = Fraction(1)

FORMAL = "formal"
NONFORMAL = "nonformal"
UNKNOWN = "unknown"


class ConsistencyError(Exception):
    """A Formal and a NonFormal certificate were derived for the same input."""


class FormalityVerdict:
    def __init__(self, verdict, bound, certificate=None, notes=None):
        if verdict not in (FORMAL, NONFORMAL, UNKNOWN):
            raise ValueError(verdict)
        self.verdict = verdict
        self.bound = int(bound)
        self.certificate = certificate
        self.notes = list(notes or [])

    @property
    def is_formal(self):
        return self.verdict == FORMAL

    @property
    def is_nonformal(self):
        return self.verdict == NONFORMAL

    def __repr__(self):
        kind = getattr(self.certificate, "kind", None)
        return "FormalityVerdict(%s, bound=%d, certificate=%s)" % (
            self.verdict, self.bound, kind)


# -- rho: CDGA -> graded ring with zero differential -----------------------

class RhoMorphism:
    """Multiplicative map from a Cdga to a degreewise ring, zero target d.

    images maps generator names to RingElements (missing/None means zero).
    """

    def __init__(self, cdga, ring, images):
        self.cdga = cdga
        self.ring = ring
        self.images = {}
        for name, img in images.items():
            if img is not None and not img.is_zero():
                self.images[name] = img

    def apply_poly(self, p, degree=None):
        if not p:
            if degree is None:
                raise ValueError("rho of 0 needs an explicit degree")
            return self.ring.zero(degree)
        n = self.cdga.poly_degree(p)
        out = self.ring.zero(n)
        for m, c in p.items():
            term = self.ring.unit()
            dead = False
            for i, e in m:
                img = self.images.get(self.cdga.names[i])
                if img is None:
                    dead = True
                    break
                for _ in range(e):
                    term = self.ring.multiply(term, img)
            if dead or term.is_zero():
                continue
            coords = [c * x for x in term.coords]
            out = RingElement(n, [a + b for a, b in zip(out.coords, coords)])
        return out

    def is_cochain_map(self):
        for name in self.cdga.names:
            img = self.cdga.differential.images.get(name)
            if img and not self.apply_poly(img).is_zero():
                return CheckReport.violation(
                    "cochain", "rho(d %s) != 0" % name)
        return CheckReport.good()

    def induced_matrix(self, n):
        rk, reps = self.cdga.cohomology(n)
        mat = RatMatrix(self.ring.rank(n), rk)
        for j, rep in enumerate(reps):
            e = self.apply_poly(rep, degree=n)
            for i, c in enumerate(e.coords):
                mat.set(i, j, c)
        return mat

    def is_quasi_iso(self, upto):
        for n in range(0, upto + 1):
            rk = self.cdga.cohomology(n)[0]
            if rk != self.ring.rank(n):
                return False, n
            if rk and mat_rank(self.induced_matrix(n)) != rk:
                return False, n
        return True, None


# -- certificates ------------------------------------------------------------

class FreeCohomologyCert:
    kind = "free-cohomology"

    def __init__(self, model, generator_degrees, bound):
        self.model = model
        self.generator_degrees = sorted(generator_degrees)
        self.bound = int(bound)

    def replay(self):
        H = ModelCohomology(self.model, self.bound)
        want = free_gca_ranks(self.generator_degrees, self.bound)
        return H.ranks(self.bound) == want


class RegularSequenceWitness:
    """Why a sequence is not regular: f_index, degree, offending class."""

    def __init__(self, index, degree, element_poly):
        self.index = index
        self.degree = degree
        self.element_poly = element_poly

    def __repr__(self):
        return "RegularSequenceWitness(index=%d, degree=%d)" % (
            self.index, self.degree)


class KoszulCert:
    kind = "koszul-regular-sequence"

    def __init__(self, model, bound):
        self.model = model
        self.bound = int(bound)
        shape = koszul_shape(model)
        if shape is None:
            raise ValueError("model is not of Koszul shape")
        self.even_gens, self.odd_closed, self.odd_sequence = shape

    @property
    def sequence_polys(self):
        return [self.model.differential.images[g] for g in self.odd_sequence]

    def replay(self):
        verdict = koszul_formality(self.model, self.bound)
        return verdict.is_formal


class TransferCert:
    kind = "transfer"

    def __init__(self, f, g, inner, bound=None):
        self.f = f
        self.g = g
        self.inner = inner  # FormalityVerdict (formal) for f's target
        self.bound = int(inner.bound if bound is None else bound)

    def replay(self):
        try:
            check_transfer_inputs(self.f, self.g)
        except ValueError:
            return False
        return replay_verdict(self.inner)


class BarObstructionCert:
    kind = "bar-linearity-obstruction"

    def __init__(self, y_model, bigraded, barred, witness, bound):
        self.y_model = y_model        # minimal Cdga of Y
        self.bigraded = bigraded      # BigradedModel of H*(Y)
        self.barred = barred          # its barred model, carries p
        self.witness = witness        # barred even generator of positive lower degree
        self.bound = int(bound)
        self.p = barred.p

    def replay(self):
        if self.p % 2 == 0:
            return False
        H = ModelCohomology(self.y_model, self.bound)
        rep = self.bigraded.validate(H, self.bound)
        if not rep:
            return False
        rep = verify_barred_structure(self.barred, self.bigraded)
        if not rep:
            return False
        rep = bar_linearity_report(self.barred)
        if not rep:
            return False
        w = self.witness
        alg = self.barred.cdga
        return (w in self.barred.barred_names
                and alg.gen_degree(w) % 2 == 0
                and self.barred.lower[w] >= 1)


def replay_verdict(verdict):
    """Re-verify a verdict's certificate from scratch."""
    if verdict.certificate is None:
        return verdict.verdict == UNKNOWN
    return verdict.certificate.replay()


# -- checkers ---------------------------------------------------------------

def free_cohomology_check(H, N):
    """Greedy rank match of H against a free graded-commutative algebra.

    H is anything with .rank(n).  Returns the matched generator degrees, or
    None as soon as the free count overshoots.  Rank matching is exactly what
    is certified, nothing more.
    """
    if H.rank(0) != 1:
        return None
    degrees = []
    for n in range(1, N + 1):
        have = free_gca_ranks(degrees, n)[n]
        want = H.rank(n)
        if have > want:
            return None
        degrees.extend([n] * (want - have))
    return degrees


def regular_sequence_check(algebra, seq, N):
    """Is f_1, ..., f_k a regular sequence in the even polynomial ring, up to
    total degree N?  Checks injectivity of multiplication by f_i on every
    degree <= N - |f_i| of the partial quotient.  Truncation-relative."""
    if any(d % 2 for d in algebra.degrees):
        raise ValueError("regular sequences live in an even polynomial ring")
    for f in seq:
        algebra.poly_degree(f)  # raises if inhomogeneous
    for i, f in enumerate(seq):
        ring = QuotientRing(algebra, seq[:i], N)
        df = algebra.poly_degree(f)
        if df is None:
            return False, RegularSequenceWitness(i, 0, Poly.unit())
        for k in range(0, N - df + 1):
            mat = ring.multiplication_matrix(f, k)
            ker = kernel_basis(mat)
            if ker:
                bad = Poly()
                for m, c in zip(ring.basis_monomials(k), ker[0]):
                    if c:
                        bad = bad + Poly({m: c})
                return False, RegularSequenceWitness(i, k, bad)
    return True, None


def koszul_shape(A):
    """(even generators, closed odd generators, non-closed odd generators)
    if A is of pure-Koszul shape, else None.

    Shape: every even generator closed; every non-closed odd generator's
    differential lies in the polynomial ring on the even generators."""
    evens, odd_closed, odd_seq = [], [], []
    even_idx = set()
    for i, name in enumerate(A.names):
        if A.degrees[i] % 2 == 0:
            even_idx.add(i)
    for name in A.names:
        deg = A.gen_degree(name)
        img = A.differential.images.get(name, Poly())
        if deg % 2 == 0:
            if img:
                return None
            evens.append(name)
        elif not img:
            if name in A.truncated_gens:
                return None
            odd_closed.append(name)
        else:
            for m in img.monomials():
                if any(i not in even_idx for i, _ in m):
                    return None
            odd_seq.append(name)
    return evens, odd_closed, odd_seq


def _restrict_poly(p, src, dst):
    out = Poly()
    for m, c in p.items():
        word = []
        for i, e in m:
            word.extend([src.names[i]] * e)
        out = out + dst.monomial_of_word(word).scale(c)
    return out


def koszul_sequence(A):
    """(even polynomial ring, odd-differential sequence, odd generator names)
    for an algebra of Koszul shape; None otherwise."""
    shape = koszul_shape(A)
    if shape is None:
        return None
    evens, _, odd_seq = shape
    even_alg = FreeGCA([(g, A.gen_degree(g)) for g in evens])
    seq = [_restrict_poly(A.differential.images[g], A, even_alg)
           for g in odd_seq]
    return even_alg, seq, odd_seq


def koszul_formality(A, N):
    """Formal with a Koszul certificate, or Unknown.  Never a false verdict.

    On pure-Koszul shape, checks that the odd differentials form a regular
    sequence, builds rho killing the non-closed odd generators, and verifies
    rho is a cochain map and a quasi-isomorphism up to N."""
    if N + 1 > A.truncation:
        raise ValueError("koszul_formality needs truncation >= N + 1")
    shape = koszul_shape(A)
    if shape is None:
        return FormalityVerdict(UNKNOWN, N,
                                notes=["not of Koszul shape"])
    evens, odd_closed, odd_seq = shape
    even_alg, seq, _ = koszul_sequence(A)
    ok, witness = regular_sequence_check(even_alg, seq, N)
    if not ok:
        return FormalityVerdict(
            UNKNOWN, N,
            notes=["sequence (%s) is not regular: index %d degree %d"
                   % (", ".join(odd_seq), witness.index, witness.degree)])
    target_alg = FreeGCA([(g, A.gen_degree(g)) for g in evens + odd_closed])
    rels = [_restrict_poly(f, even_alg, target_alg) for f in seq]
    ring = QuotientRing(target_alg, rels, N)
    images = {}
    for g in evens + odd_closed:
        nf = ring.reduce(target_alg.gen(g))
        images[g] = ring.poly_class(target_alg.gen(g)) if nf else ring.zero(A.gen_degree(g))
    rho = RhoMorphism(A, ring, images)
    rep = rho.is_cochain_map()
    if not rep:
        return FormalityVerdict(UNKNOWN, N, notes=[str(rep)])
    qis, bad = rho.is_quasi_iso(N)
    if not qis:
        return FormalityVerdict(
            UNKNOWN, N, notes=["rho fails quasi-isomorphism at degree %d" % bad])
    cert = KoszulCert(A, N)
    cert.rho = rho
    return FormalityVerdict(FORMAL, N, certificate=cert)


def check_transfer_inputs(f, g):
    if f.source is not g.target or f.target is not g.source:
        raise ValueError("transfer needs f: A -> B and g: B -> A")
    if not f.check():
        raise ValueError("f is not a CDGA morphism")
    if not g.check():
        raise ValueError("g is not a CDGA morphism")
    if not g.compose(f).is_identity():
        raise ValueError("g o f != Id")
    if f.source.cohomology(1)[0] != 0:
        raise ValueError("H^1(A) != 0")


def transfer_formality(f, g, cert_b):
    """Formality of the retract A given f: A -> B, g: B -> A with g o f = Id
    and a replaying Formal certificate for B."""
    check_transfer_inputs(f, g)
    if not cert_b.is_formal:
        raise ValueError("transfer needs a Formal certificate for the target")
    if not replay_verdict(cert_b):
        raise ValueError("certificate for B fails replay")
    bound = min(cert_b.bound, f.source.truncation - 1)
    return FormalityVerdict(FORMAL, bound,
                            certificate=TransferCert(f, g, cert_b, bound))


# -- bigraded models ---------------------------------------------------------

class BigradedModel:
    """Minimal Sullivan model of a cohomology ring with a resolution grading.

    lower maps generators to their resolution degree; rho_images maps the
    lower-degree-0 generators to ring elements (everything else goes to 0).
    """

    def __init__(self, cdga, lower, rho_images, ring, p=None, base=None,
                 barred_names=()):
        self.cdga = cdga
        self.lower = dict(lower)
        self.rho_images = dict(rho_images)
        self.ring = ring
        self.p = p
        self.base = base
        self.barred_names = tuple(barred_names)

    def rho(self, ring=None):
        return RhoMorphism(self.cdga, ring or self.ring, self.rho_images)

    def lower_weight(self, monomial):
        return sum(self.lower[self.cdga.names[i]] * e for i, e in monomial)

    def generators_of_lower(self, k):
        return [n for n in self.cdga.names if self.lower[n] == k]

    def w_plus(self):
        return [n for n in self.cdga.names if self.lower[n] >= 1]

    def validate(self, ring=None, upto=None):
        """All structural invariants plus rho being a quasi-isomorphism."""
        rep = self.validate_structure()
        if not rep:
            return rep
        ring = ring or self.ring
        upto = self.cdga.truncation - 1 if upto is None else upto
        rho = self.rho(ring)
        rep = rho.is_cochain_map()
        if not rep:
            return rep
        qis, bad = rho.is_quasi_iso(upto)
        if not qis:
            return CheckReport.violation(
                "quasi-iso", "rho fails at degree %d" % bad)
        return CheckReport.good()

    def validate_structure(self):
        alg = self.cdga
        rep = alg.check()
        if not rep:
            return rep
        for name in alg.names:
            if name not in self.lower:
                return CheckReport.violation("grading", "%s has no lower degree" % name)
            img = alg.differential.images.get(name, Poly())
            if self.lower[name] == 0:
                if img:
                    return CheckReport.violation(
                        "grading", "d != 0 on lower-degree-0 generator %s" % name)
                continue
            for m in img.monomials():
                if self.lower_weight(m) != self.lower[name] - 1:
                    return CheckReport.violation(
                        "grading", "d(%s) is not homogeneous of lower degree %d"
                        % (name, self.lower[name] - 1))
                if sum(e for _, e in m) < 2:
                    return CheckReport.violation(
                        "minimality", "d(%s) has a linear term" % name)
            if self.rho_images.get(name):
                return CheckReport.violation(
                    "rho", "rho does not vanish on %s in positive lower degree" % name)
        return CheckReport.good()


def bigraded_model(H, N):
    """Degree-by-degree Halperin-Stasheff construction over the ring H.

    H is a CohomologyAlgebra or any degreewise ring (rank, basis_elements,
    multiply, zero, unit).  Lower-degree-0 generators surject onto H's
    algebra generators; each further stage kills the kernel of
    H(current model) -> H, slot by slot in the resolution grading.
    """
    if H.rank(0) != 1:
        raise ValueError("H^0 must be Q")
    if H.rank(1) != 0:
        raise ValueError("H^1 must vanish")
    gens = []          # (name, degree)
    lower = {}
    dimages = {}
    rho_images = {}
    counters = {}

    def fresh(deg):
        i = counters.get(deg, 0)
        counters[deg] = i + 1
        return "z%d_%d" % (deg, i)

    def build():
        return Cdga(gens, dimages, N + 1)

    for n in range(2, N + 1):
        cur = build()

        def weight(m):
            return sum(lower[cur.names[i]] * e for i, e in m)

        def slot_reps(n_, k):
            """Representative vectors of the slot-(n_, k) cohomology."""
            basis_n = [m for m in cur.degree_basis(n_) if weight(m) == k]
            if not basis_n:
                return [], basis_n
            tgt = [m for m in cur.degree_basis(n_ + 1) if weight(m) == k - 1]
            tpos = {m: i for i, m in enumerate(tgt)}
            dmat = RatMatrix(len(tgt), len(basis_n))
            for j, m in enumerate(basis_n):
                for mm, c in cur.d(Poly({m: QONE})).items():
                    dmat.set(tpos[mm], j, c)
            ker = kernel_basis(dmat)
            span = EchelonSpan(len(basis_n))
            prev = [m for m in cur.degree_basis(n_ - 1) if weight(m) == k + 1]
            npos = {m: i for i, m in enumerate(basis_n)}
            for m in prev:
                img = cur.d(Poly({m: QONE}))
                vec = [QZERO] * len(basis_n)
                for mm, c in img.items():
                    vec[npos[mm]] = c
                span.add(vec)
            reps = [v for v in ker if span.add(v)]
            return reps, basis_n

        def slot_poly(v, basis_n):
            return Poly({m: c for m, c in zip(basis_n, v) if c})

        # surjectivity: new lower-0 generators hit a basis of coker(rho*)
        reps0, basis0 = slot_reps(n, 0)
        rho = RhoMorphism(cur, H, rho_images)
        span = EchelonSpan(H.rank(n))
        for v in reps0:
            span.add(list(rho.apply_poly(slot_poly(v, basis0), degree=n).coords))
        for e in H.basis_elements(n):
            if span.add(list(e.coords)):
                name = fresh(n)
                gens.append((name, n))
                lower[name] = 0
                rho_images[name] = e

        # injectivity: kill surviving kernel classes, slot by slot
        cur = build()
        rho = RhoMorphism(cur, H, rho_images)
        max_k = max((lower[g] for g, _ in gens), default=0) + 1
        killers = []
        for k in range(0, max_k + 1):
            reps, basis_n = slot_reps(n, k)
            if not reps:
                continue
            if k == 0:
                mat = RatMatrix(H.rank(n), len(reps))
                for j, v in enumerate(reps):
                    img = rho.apply_poly(slot_poly(v, basis_n), degree=n)
                    for i, c in enumerate(img.coords):
                        mat.set(i, j, c)
                combos = kernel_basis(mat)
            else:
                combos = [[QONE if i == j else QZERO for i in range(len(reps))]
                          for j in range(len(reps))]
            for combo in combos:
                c = Poly()
                for coeff, v in zip(combo, reps):
                    if coeff:
                        c = c + slot_poly(v, basis_n).scale(coeff)
                if c:
                    killers.append((k + 1, c))
        for klower, c in killers:
            name = fresh(n - 1)
            gens.append((name, n - 1))
            lower[name] = klower
            dimages[name] = c

    cdga = build()
    return BigradedModel(cdga, lower, rho_images, H)


def barred_bigraded_model(B, p):
    """Suspension of a bigraded model, lower grading (Zbar)_n = bar((Z)_n).

    The cohomology target is recomputed from the barred algebra itself (it is
    not inherited); rho kills everything of positive lower degree and all of
    Zbar above lower degree 0 stays at 0.  Whether rho is a quasi-isomorphism
    is exactly the formality question, so callers inspect it separately; the
    structural invariants are enforced here.
    """
    susp = suspension_model(B.cdga, p)
    alg = susp.cdga
    lower = dict(B.lower)
    for name in B.cdga.names:
        lower[bar_name(name)] = B.lower[name]
    ring = ModelCohomology(alg, alg.truncation - 1)
    rho_images = {}
    for name in alg.names:
        if lower[name] == 0:
            rho_images[name] = ring.poly_class(alg.gen(name))
    barred = BigradedModel(alg, lower, rho_images, ring, p=int(p), base=B,
                           barred_names=[bar_name(n) for n in B.cdga.names])
    rep = verify_barred_structure(barred, B)
    if not rep:
        raise ValueError("barred model failed validation: %s" % rep)
    return barred


def verify_barred_structure(barred, base):
    alg = barred.cdga
    rep = barred.validate_structure()
    if not rep:
        return rep
    sign = (-1) ** barred.p
    from .gca import Derivation
    S = Derivation(alg, -barred.p,
                   {n: alg.gen(bar_name(n)) for n in base.cdga.names})
    for name in base.cdga.names:
        if name in alg.truncated_gens:
            continue
        dv = alg.differential.images.get(name, Poly())
        want = alg.apply_derivation(S, dv).scale(sign)
        got = alg.differential.images.get(bar_name(name), Poly())
        if want != got:
            return CheckReport.violation(
                "suspension", "d(bar %s) != (-1)^p S(d %s)" % (name, name))
    for name in base.cdga.names:
        if barred.lower[bar_name(name)] != base.lower[name]:
            return CheckReport.violation(
                "grading", "bar grading broken at %s" % name)
    return CheckReport.good()


def bar_word_length(model, monomial):
    barred = set(model.barred_names)
    return sum(e for i, e in monomial
               if model.cdga.names[i] in barred)


def bar_linearity_report(barred):
    """d(Z) bar-free and d(Zbar) exactly bar-linear, generator by generator."""
    alg = barred.cdga
    barset = set(barred.barred_names)
    for name in alg.names:
        img = alg.differential.images.get(name, Poly())
        if not img:
            continue
        want = 1 if name in barset else 0
        for m in img.monomials():
            if bar_word_length(barred, m) != want:
                return CheckReport.violation(
                    "bar-linearity",
                    "d(%s) has a term of bar-length != %d" % (name, want))
    return CheckReport.good()


def bar_obstruction(barred, y_model=None, bound=None):
    """NonFormal certificate from bar-linearity, or None with a reason.

    Emitted only when p is odd (for even p the argument cannot conclude) and
    the barred side has an even generator in positive lower degree; any
    power of that generator has bar-length >= 2 while every differential is
    bar-linear, so no Lemma-3.6 witness can exist.  The certificate is
    structural: it does not depend on the truncation.
    """
    if barred.base is None or barred.p is None:
        raise ValueError("bar_obstruction needs a barred bigraded model")
    notes = []
    if barred.p % 2 == 0:
        return None, ["p = %d is even: the bar argument cannot conclude"
                      % barred.p]
    rep = bar_linearity_report(barred)
    if not rep:
        return None, [str(rep)]
    alg = barred.cdga
    witnesses = [n for n in barred.barred_names
                 if alg.gen_degree(n) % 2 == 0 and barred.lower[n] >= 1]
    if not witnesses:
        return None, ["no even barred generator of positive lower degree"]
    witness = witnesses[0]
    bound = bound if bound is not None else alg.truncation - 1
    if y_model is None:
        y_model = getattr(barred.base.ring, "cdga", None)
        if y_model is None:
            raise ValueError(
                "bar_obstruction needs y_model when the base ring is a "
                "presented cohomology algebra")
    cert = BarObstructionCert(y_model, barred.base, barred, witness, bound)
    return cert, notes


class Lemma36Entry:
    """Scan outcome for one even generator of positive lower degree."""

    def __init__(self, w, degree, results, status, witness=None):
        self.w = w
        self.degree = degree
        self.results = results      # list of (n, found: bool)
        self.status = status        # "witnessed" | "missing"
        self.witness = witness      # (w' poly, n, omega poly) when witnessed

    def __repr__(self):
        return "Lemma36Entry(%s, %s)" % (self.w, self.status)


def lemma36_scan(B, N, rng=None, random_combos=0):
    """For each even-degree generator w of positive lower degree, look for an
    odd generator combination w' with d(w') = w^n + Omega (no w^n term in
    Omega), for every n >= 2 with n|w| <= N.

    "missing" is evidence against formality within the scanned window, never
    a verdict.  Coefficients are extracted monomial-wise (for a generator w
    the power w^n is a single monomial, so there is no ambiguity).  With
    random_combos > 0, seeded random linear combinations of the even part are
    scanned too; full quantification over all nonzero elements is infinite
    and is not attempted.
    """
    alg = B.cdga
    wplus = B.w_plus()
    odd_wplus = [g for g in wplus if alg.gen_degree(g) % 2 == 1]
    entries = []

    def scan_element(label, poly, degw):
        results = []
        witness = None
        for n in range(2, N // degw + 1):
            target = alg.power(poly, n)
            if not target:
                results.append((n, False))
                continue
            lead = sorted(target.monomials(),
                          key=alg.degree_basis_position)[0]
            lead_coeff = target.coeff(lead)
            cands = [g for g in odd_wplus
                     if alg.gen_degree(g) == n * degw - 1]
            row = []
            for g in cands:
                img = alg.differential.images.get(g, Poly())
                row.append(img.coeff(lead) / lead_coeff)
            if any(row):
                mat = RatMatrix.from_rows([row])
                x = solve(mat, [QONE])
                wprime = Poly()
                for coeff, g in zip(x, cands):
                    if coeff:
                        wprime = wprime + alg.gen(g).scale(coeff)
                omega = alg.d(wprime) - target.scale(QONE / lead_coeff)
                witness = (wprime, n, omega)
                results.append((n, True))
                break
            results.append((n, False))
        status = "witnessed" if witness else "missing"
        return Lemma36Entry(label, degw, results, status, witness)

    for w in wplus:
        degw = alg.gen_degree(w)
        if degw % 2 or 2 * degw > N:
            continue
        entries.append(scan_element(w, alg.gen(w), degw))

    if random_combos and rng is not None:
        evens = [g for g in wplus
                 if alg.gen_degree(g) % 2 == 0 and 2 * alg.gen_degree(g) <= N]
        by_degree = {}
        for g in evens:
            by_degree.setdefault(alg.gen_degree(g), []).append(g)
        for degw, gs in sorted(by_degree.items()):
            if len(gs) < 2:
                continue
            for _ in range(random_combos):
                poly = Poly()
                while not poly:
                    poly = Poly()
                    for g in gs:
                        poly = poly + alg.gen(g).scale(rng.randint(-2, 2))
                entries.append(scan_element(
                    "random(%s)" % alg.poly_str(poly), poly, degw))
    return entries


# -- the pipeline ------------------------------------------------------------

def mapping_space_model(prob, N):
    """The Sullivan model of F(X, Y) used by the pipeline, plus notes.

    Sphere X with a minimal Sullivan Y-model takes the suspension route;
    a Lie model of Y takes the tensor route through the cochain functor.
    """
    notes = []
    if prob.y_cdga is not None:
        if set(prob.x_model.names) != {prob.x_model.unit, "t"}:
            raise ValueError(
                "the Sullivan route needs X to be a sphere model; "
                "give Y as a Lie model instead")
        if prob.y_cdga.truncation < N + 1:
            raise ValueError("Y-model truncation must be at least N + 1")
        susp = suspension_model(prob.y_cdga, prob.p)
        notes.append("suspension route: %d generators" % len(susp.cdga.names))
        return susp.cdga, notes
    M = tensor_map_model(prob.x_model, prob.y_dgl)
    res = ce_cochains(M, M.truncation + 1)
    if res.cdga.truncation < N + 1:
        raise ValueError(
            "Y Lie model truncation supports checks only up to degree %d"
            % (res.cdga.truncation - 1))
    notes.append("tensor route: %d generators" % len(res.cdga.names))
    return res.cdga, notes


def y_cohomology_ring(prob, N):
    if prob.y_cdga is not None:
        if prob.y_cdga.truncation < N + 1:
            raise ValueError("Y-model truncation must be at least N + 1")
        return ModelCohomology(prob.y_cdga, N), prob.y_cdga
    ce = ce_cochains(prob.y_dgl, prob.y_dgl.truncation + 1)
    bound = min(N, ce.cdga.truncation - 1)
    return ModelCohomology(ce.cdga, bound), ce.cdga


def formality_pipeline(prob, N):
    """Strongest verdict for the model of F(X, Y), with certificate.

    Order: free-cohomology rank match, Koszul route, then (odd p, via the
    sphere reduction if X is not itself a sphere) the bigraded bar
    obstruction.  All inconclusive -> Unknown(N).  A Formal and a NonFormal
    certificate for the same input raises ConsistencyError.
    """
    hyp = check_hypotheses(prob)
    if not hyp.ok:
        raise ValueError("hypotheses violated: %s" % "; ".join(hyp.messages))
    model, notes = mapping_space_model(prob, N)
    formal_verdict = None
    nonformal_verdict = None

    H_model = ModelCohomology(model, N)
    degrees = free_cohomology_check(H_model, N)
    if degrees is not None:
        cert = FreeCohomologyCert(model, degrees, N)
        notes.append("free cohomology on generator degrees %s" % degrees)
        formal_verdict = FormalityVerdict(FORMAL, N, cert, notes)
    else:
        notes.append("cohomology is not free (rank mismatch)")

    if formal_verdict is None:
        kv = koszul_formality(model, N)
        if kv.is_formal:
            kv.notes = notes + kv.notes
            formal_verdict = kv
        else:
            notes.extend(kv.notes)

    # negative route: only an odd sphere dimension can conclude
    p_eff = None
    reduction_note = None
    if set(prob.x_model.names) == {prob.x_model.unit, "t"}:
        if prob.p % 2 == 1:
            p_eff = prob.p
    elif prob.y_dgl is not None and hyp.odd_closed:
        try:
            red = reduce_to_odd_sphere(prob)
            p_eff = red.sphere_degree
            reduction_note = ("reduced to the %d-sphere: Q o I = Id and "
                              "g o f = Id verified" % p_eff)
        except SplitError as exc:
            notes.append("reduction unavailable: %s" % exc)
    if p_eff is None and formal_verdict is None:
        notes.append("no odd sphere reduction: the bar obstruction does not apply")

    if p_eff is not None:
        H_y, y_model = y_cohomology_ring(prob, N)
        ydeg = free_cohomology_check(H_y, H_y.truncation)
        if ydeg is None:
            B = bigraded_model(H_y, H_y.truncation)
            barred = barred_bigraded_model(B, p_eff)
            cert, ob_notes = bar_obstruction(barred, y_model=y_model,
                                             bound=H_y.truncation)
            notes.extend(ob_notes)
            if cert is not None:
                scan = lemma36_scan(barred, min(N, barred.cdga.truncation - 1))
                missing = [e.w for e in scan if e.status == "missing"]
                notes.append("lemma-3.6 scan: missing witnesses for %s"
                             % (missing or "nothing in range"))
                if reduction_note:
                    notes.append(reduction_note)
                nonformal_verdict = FormalityVerdict(NONFORMAL, N, cert, notes)
        else:
            notes.append("H*(Y) is free on degrees %s: no obstruction" % ydeg)

    if formal_verdict is not None and nonformal_verdict is not None:
        raise ConsistencyError(
            "both Formal and NonFormal were derived; this is a bug")
    if nonformal_verdict is not None:
        return nonformal_verdict
    if formal_verdict is not None:
        return formal_verdict
    return FormalityVerdict(UNKNOWN, N, notes=notes)

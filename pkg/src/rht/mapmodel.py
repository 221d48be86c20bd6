"""Models of mapping spaces out of a finite complex.

The Sullivan-level construction doubles the generators of a minimal model of
the target: each v acquires a companion Sv of degree |v| - p, S extends to an
algebra derivation of degree -p, and the differential on the new generators is

    d(Sv) = (-1)^p S(dv).

For odd p this is the classical -S(dv); for even p the sign flips (it must:
with -S(dv) and p even, d^2 != 0 already on three-generator examples, while
the displayed model of maps out of the 2-sphere uses +S(dy)).

The Lie-level route (tensor model, odd-generator splitting, reduction to an
odd sphere) lives here as well.
"""

from fractions import Fraction

from .gca import Cdga, Derivation, Poly, CheckReport, TruncationError
from .dgl import (Dgl, DglMorphism, FiniteCdga, FiniteCdgaMorphism,
                  tensor_map_model, tensor_name, restrict_dgl)
from .cefunctor import ce_cochains, ce_of_morphism
from .linalg import RatMatrix, rank as mat_rank

QONE = Fraction(1)


class HypothesisError(Exception):
    pass


class SplitError(Exception):
    """Odd-generator splitting failed; carries the offending report."""

    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


def bar_name(name):
    return name + "_bar"


class MapSpaceProblem:
    """The data of F(X, Y): a finite model of X, a model of Y, and p.

    Y may be given as a minimal Sullivan algebra (y_cdga) or a Lie model
    (y_dgl).  The connectivity m defaults to the largest value the Y-model
    supports.  t optionally designates an odd closed basis element of X.
    """

    def __init__(self, x_model, p, y_cdga=None, y_dgl=None, m=None, t=None,
                 name=None):
        if (y_cdga is None) == (y_dgl is None):
            raise ValueError("give exactly one of y_cdga, y_dgl")
        self.x_model = x_model
        self.p = int(p)
        self.y_cdga = y_cdga
        self.y_dgl = y_dgl
        self.t = t
        self.name = name
        if m is None:
            if y_cdga is not None:
                m = min(y_cdga.degrees) - 1 if y_cdga.degrees else 0
            else:
                m = min(y_dgl.degree_of.values()) if y_dgl.names else 0
        self.m = int(m)


class HypothesisReport:
    def __init__(self, connectivity_ok, hp_nonzero, odd_closed, messages):
        self.connectivity_ok = connectivity_ok
        self.hp_nonzero = hp_nonzero
        self.odd_closed = odd_closed
        self.messages = messages

    @property
    def ok(self):
        return self.connectivity_ok and self.hp_nonzero

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "HypothesisReport(connectivity_ok=%s, hp_nonzero=%s, odd_closed=%s)" % (
            self.connectivity_ok, self.hp_nonzero, self.odd_closed)


def finite_cohomology_rank(A, n):
    """H^n of a finite-dimensional model, straight from its tables."""
    src = A.basis_in_degree(n)
    tgt = A.basis_in_degree(n + 1)
    prev = A.basis_in_degree(n - 1) if n >= 1 else []
    tpos = {x: i for i, x in enumerate(tgt)}
    dmat = RatMatrix(len(tgt), len(src))
    for j, x in enumerate(src):
        for z, c in A.d(x).items():
            dmat.set(tpos[z], j, c)
    zdim = len(src) - mat_rank(dmat)
    spos = {x: i for i, x in enumerate(src)}
    dprev = RatMatrix(len(src), len(prev))
    for j, x in enumerate(prev):
        for z, c in A.d(x).items():
            dprev.set(spos[z], j, c)
    return zdim - mat_rank(dprev)


def check_hypotheses(prob):
    """Connectivity m >= p+1 and H^p(X) != 0; reports (never blocks) whether
    X carries a designated odd closed class, since the even-p path is allowed
    to run without one."""
    messages = []
    conn = prob.m >= prob.p + 1
    if not conn:
        messages.append("connectivity m=%d < p+1=%d" % (prob.m, prob.p + 1))
    hp = finite_cohomology_rank(prob.x_model, prob.p) > 0
    if not hp:
        messages.append("H^%d(X) = 0 at the declared top degree" % prob.p)
    odd_closed = None
    if prob.t is not None:
        A = prob.x_model
        odd_closed = (prob.t in A.degree_of
                      and A.degree_of[prob.t] % 2 == 1
                      and not A.d(prob.t))
        if not odd_closed:
            messages.append("designated class %r is not odd and closed" % prob.t)
    else:
        cands = [x for x in prob.x_model.names
                 if prob.x_model.degree_of[x] % 2 == 1 and not prob.x_model.d(x)]
        odd_closed = bool(cands) if prob.x_model.names else None
        if not odd_closed:
            messages.append("no odd closed basis class found in the X-model")
    return HypothesisReport(conn, hp, odd_closed, messages)


class SuspensionModel:
    """Lambda(V + SV) with the degree -p derivation S and its differential."""

    def __init__(self, cdga, S, p, origin, bar_of):
        self.cdga = cdga
        self.S = S
        self.p = int(p)
        self.origin = origin
        self.bar_of = bar_of
        self.unbar_of = {v: k for k, v in bar_of.items()}

    def barred_generators(self):
        return [self.bar_of[n] for n in self.origin.names]


def suspension_model(Y, p, truncation=None):
    """Sullivan model of maps from the p-sphere into the space modelled by Y.

    Y must be minimal with generator degrees > p (so the new generators stay
    in positive degree).  d(Sv) = (-1)^p S(dv).
    """
    p = int(p)
    if p < 1:
        raise ValueError("p must be >= 1")
    if not Y.is_minimal():
        raise ValueError("suspension model needs a minimal Sullivan algebra")
    if any(d <= p for d in Y.degrees):
        raise ValueError("generator degrees must exceed p")
    if Y.truncated_gens:
        # a bar of a truncated generator may land below the truncation and
        # its differential would be unknowable; never drop that silently
        raise TruncationError(
            "suspension needs the full differential of Y (truncated: %s)"
            % sorted(Y.truncated_gens))
    N = Y.truncation if truncation is None else int(truncation)
    gens = list(Y.generators)
    bar_of = {}
    for name, deg in Y.generators:
        b = bar_name(name)
        if b in Y.index:
            raise ValueError("bar name collision for %r" % name)
        bar_of[name] = b
        gens.append((b, deg - p))
    carrier = Cdga(gens, {}, max(N, max(d for _, d in gens) + 1))
    S = Derivation(carrier, -p, {n: carrier.gen(bar_of[n]) for n in Y.names})
    sign = (-1) ** p
    images = {}
    for name in Y.names:
        img = Y.differential.images.get(name, Poly())
        if img:
            images[name] = img  # same monomial encoding: Y's generators come first
        bimg = carrier.apply_derivation(S, img).scale(sign)
        if bimg:
            images[bar_of[name]] = bimg
    model = Cdga(gens, images, N)
    S = Derivation(model, -p, {n: model.gen(bar_of[n]) for n in Y.names})
    return SuspensionModel(model, S, p, Y, bar_of)


def split_odd_generator(A, t, complement=None):
    """Prop-style splitting off of an odd sphere inside a finite model.

    Returns (i, q) with i: (Lambda t, 0) -> A the inclusion and q the
    retraction killing the chosen complement; q o i = Id is verified exactly.
    Failures (t even, t not closed, q not a cochain map or not multiplicative
    for the given complement) are reported via SplitError, never repaired.
    """
    if t not in A.degree_of:
        raise KeyError("unknown basis element %r" % t)
    if A.degree_of[t] % 2 == 0:
        raise SplitError(CheckReport.violation("odd", "%s has even degree" % t))
    if A.d(t):
        raise SplitError(CheckReport.violation("closed", "d(%s) != 0" % t))
    T = FiniteCdga.sphere(A.degree_of[t])
    i = FiniteCdgaMorphism(T, A, {"1": {A.unit: QONE}, "t": {t: QONE}})
    if complement is None:
        complement = [x for x in A.names if x not in (A.unit, t)]
    q_images = {A.unit: {"1": QONE}, t: {"t": QONE}}
    for x in complement:
        q_images[x] = {}
    missing = [x for x in A.names if x not in q_images]
    if missing:
        raise SplitError(CheckReport.violation(
            "complement", "complement does not cover %s" % missing))
    q = FiniteCdgaMorphism(A, T, q_images)
    rep = i.check()
    if not rep:
        raise SplitError(rep)
    rep = q.check()
    if not rep:
        raise SplitError(rep)
    if not q.compose(i).is_identity():
        raise SplitError(CheckReport.violation("retraction", "q o i != Id"))
    return i, q


class Reduction:
    """The odd-sphere reduction package: Lie maps I, Q and cochain maps f, g.

    g o f = Id on C*(Lambda t (x) L), ready for the formality transfer.
    """

    def __init__(self, i, q, I, Q, model_X, model_sphere, ce_X, ce_sphere,
                 f, g, sphere_degree):
        self.i = i
        self.q = q
        self.I = I
        self.Q = Q
        self.model_X = model_X
        self.model_sphere = model_sphere
        self.ce_X = ce_X
        self.ce_sphere = ce_sphere
        self.f = f
        self.g = g
        self.sphere_degree = sphere_degree


def reduce_to_odd_sphere(prob, t=None):
    """Build I = i (x) Id and Q = q (x) Id, apply cochains, verify g o f = Id.

    Needs Y as a Lie model.  Returns a Reduction whose f, g are the CDGA
    morphisms feeding the formality transfer.
    """
    if prob.y_dgl is None:
        raise ValueError("reduction needs a Lie model of Y")
    t = t or prob.t
    if t is None:
        cands = [x for x in prob.x_model.names
                 if prob.x_model.degree_of[x] % 2 == 1 and not prob.x_model.d(x)]
        if not cands:
            raise SplitError(CheckReport.violation(
                "odd", "no odd closed basis class to split off"))
        t = min(cands, key=lambda x: (prob.x_model.degree_of[x], x))
    A = prob.x_model
    L = prob.y_dgl
    i, q = split_odd_generator(A, t)
    T = i.source
    M_A = tensor_map_model(A, L)
    M_T = restrict_dgl(tensor_map_model(T, L), M_A.truncation)

    def embed(model, B, a_combo, x):
        out = {}
        for a, c in a_combo.items():
            out[tensor_name(a, x, B.unit)] = c
        return out

    # factorization is easier to rebuild than to thread through restrict_dgl
    fact_T = {}
    for x in L.names:
        for a in T.names:
            nmx = tensor_name(a, x, T.unit)
            if nmx in M_T.degree_of:
                fact_T[nmx] = (a, x)
    I_images = {}
    for nm in M_T.names:
        a, x = fact_T[nm]
        I_images[nm] = embed(M_A, A, i.images[a], x)
    I = DglMorphism(M_T, M_A, I_images)
    _, _, fact_A = M_A.factorization
    Q_images = {}
    for nm in M_A.names:
        a, x = fact_A[nm]
        Q_images[nm] = embed(M_T, T, q.images[a], x)
    Q = DglMorphism(M_A, M_T, Q_images)
    rep = I.check()
    if not rep:
        raise SplitError(rep)
    rep = Q.check()
    if not rep:
        raise SplitError(rep)
    if not Q.compose(I).is_identity():
        raise SplitError(CheckReport.violation("retraction", "Q o I != Id"))
    N = M_A.truncation + 1
    ce_A = ce_cochains(M_A, N)
    ce_T = ce_cochains(M_T, N)
    f = ce_of_morphism(Q, ce_A, ce_T)   # C*(M_T) -> C*(M_A)
    g = ce_of_morphism(I, ce_T, ce_A)   # C*(M_A) -> C*(M_T)
    if not g.compose(f).is_identity():
        raise SplitError(CheckReport.violation("retraction", "g o f != Id"))
    return Reduction(i, q, I, Q, M_A, M_T, ce_A, ce_T, f, g,
                     A.degree_of[t])

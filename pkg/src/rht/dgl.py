"""Differential graded Lie algebras presented by bases and structure constants.

Degrees are positive (lower grading), the differential has degree -1, and the
axioms used throughout are

    [x,y] = -(-1)^{|x||y|} [y,x]
    [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
    d[x,y] = [dx,y] + (-1)^{|x|} [x,dy]

Every algebra carries a truncation bound N; brackets and checks only exist for
total degree <= N and every consumer is expected to respect that.

The module also holds finite-dimensional CDGA models (basis-presented, not
free) and the tensor construction A (x) L that models the space of maps from
a finite complex into the space modelled by L, with its fibration projection
and section.
"""

from fractions import Fraction

from .gca import Cdga, CheckReport

QZERO = Fraction(0)
QONE = Fraction(1)


class DglError(Exception):
    pass


class ConnectivityError(DglError):
    """The tensor model produced an element of degree <= 0."""


# -- linear combinations over named basis elements -----------------------

def lc(pairs=None):
    out = {}
    if pairs:
        for name, c in (pairs.items() if isinstance(pairs, dict) else pairs):
            c = Fraction(c)
            if c:
                out[name] = out.get(name, QZERO) + c
                if not out[name]:
                    del out[name]
    return out


def lc_add(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, QZERO) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def lc_scale(a, c):
    c = Fraction(c)
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


class Dgl:
    """DGL with explicit degreewise basis, sparse bracket table and d."""

    def __init__(self, basis, brackets, differential, truncation):
        self.truncation = int(truncation)
        self.names = []
        self.degree_of = {}
        for name, deg in basis:
            if name in self.degree_of:
                raise ValueError("duplicate basis name %r" % name)
            if deg < 1:
                raise ValueError("basis element %r has degree %d < 1" % (name, deg))
            if deg > self.truncation:
                raise ValueError("basis element %r above truncation" % name)
            self.names.append(name)
            self.degree_of[name] = int(deg)
        self._order = {n: i for i, n in enumerate(self.names)}
        self.by_degree = {}
        for n in self.names:
            self.by_degree.setdefault(self.degree_of[n], []).append(n)
        self.brackets = {}
        for (a, b), combo in brackets.items():
            self._check_names(a, b)
            if self.degree_of[a] + self.degree_of[b] > self.truncation:
                raise ValueError("stored bracket [%s,%s] above truncation" % (a, b))
            combo = lc(combo)
            if combo:
                self.brackets[(a, b)] = combo
        self.differential = {}
        for x, combo in differential.items():
            self._check_names(x)
            combo = lc(combo)
            if combo:
                self.differential[x] = combo
        # tensor-model bookkeeping, filled in by tensor_map_model
        self.factorization = None

    def _check_names(self, *names):
        for n in names:
            if n not in self.degree_of:
                raise KeyError("unknown basis element %r" % n)

    def basis_in_degree(self, n):
        return list(self.by_degree.get(n, []))

    def dims(self):
        return {n: len(v) for n, v in sorted(self.by_degree.items())}

    def bracket(self, a, b):
        """[a,b] as a linear combination; antisymmetry fills missing mirrors."""
        self._check_names(a, b)
        if self.degree_of[a] + self.degree_of[b] > self.truncation:
            raise DglError("bracket [%s,%s] lies above the truncation" % (a, b))
        if (a, b) in self.brackets:
            return dict(self.brackets[(a, b)])
        if (b, a) in self.brackets:
            sign = -1 if (self.degree_of[a] * self.degree_of[b]) % 2 == 0 else 1
            return lc_scale(self.brackets[(b, a)], sign)
        return {}

    def bracket_lin(self, ca, cb):
        out = {}
        for a, va in ca.items():
            for b, vb in cb.items():
                out = lc_add(out, lc_scale(self.bracket(a, b), va * vb))
        return out

    def d_lin(self, c):
        out = {}
        for x, v in c.items():
            out = lc_add(out, lc_scale(self.differential.get(x, {}), v))
        return out

    def combo_degree(self, c):
        degs = {self.degree_of[x] for x in c}
        if len(degs) > 1:
            raise ValueError("inhomogeneous combination")
        return degs.pop() if degs else None

    # -- validation -------------------------------------------------------

    def validate(self):
        """Exhaustive check of all DGL axioms up to truncation."""
        N = self.truncation
        for (a, b), combo in self.brackets.items():
            want = self.degree_of[a] + self.degree_of[b]
            for z in combo:
                if self.degree_of[z] != want:
                    return CheckReport.violation(
                        "bracket-degree",
                        "[%s,%s] has a term %s of degree %d, expected %d"
                        % (a, b, z, self.degree_of[z], want))
        for x, combo in self.differential.items():
            want = self.degree_of[x] - 1
            if want < 1 and combo:
                return CheckReport.violation(
                    "differential-degree", "d(%s) must vanish in degree %d" % (x, want))
            for z in combo:
                if self.degree_of[z] != want:
                    return CheckReport.violation(
                        "differential-degree",
                        "d(%s) has a term %s of degree %d, expected %d"
                        % (x, z, self.degree_of[z], want))
        for a in self.names:
            for b in self.names:
                da, db = self.degree_of[a], self.degree_of[b]
                if da + db > N:
                    continue
                sign = -1 if (da * db) % 2 == 0 else 1
                mirror = lc_scale(self.bracket(b, a), sign)
                if self.bracket(a, b) != mirror:
                    return CheckReport.violation(
                        "antisymmetry", "[%s,%s] != -(-1)^(|%s||%s|) [%s,%s]"
                        % (a, b, a, b, b, a))
        for x in self.names:
            dx = self.differential.get(x, {})
            if dx and self.d_lin(dx):
                return CheckReport.violation("d-squared", "d^2(%s) != 0" % x)
        for a in self.names:
            for b in self.names:
                da, db = self.degree_of[a], self.degree_of[b]
                if da + db > N:
                    continue
                lhs = self.d_lin(self.bracket(a, b))
                rhs = lc_add(self.bracket_lin(self.differential.get(a, {}), {b: QONE}),
                             lc_scale(self.bracket_lin({a: QONE},
                                                       self.differential.get(b, {})),
                                      (-1) ** da))
                if lhs != rhs:
                    return CheckReport.violation(
                        "leibniz", "d[%s,%s] != [d%s,%s] + (-1)^|%s| [%s,d%s]"
                        % (a, b, a, b, a, a, b))
        for a in self.names:
            for b in self.names:
                for c in self.names:
                    da, db, dc = (self.degree_of[a], self.degree_of[b],
                                  self.degree_of[c])
                    if da + db + dc > N:
                        continue
                    lhs = self.bracket_lin({a: QONE}, self.bracket(b, c))
                    rhs = lc_add(self.bracket_lin(self.bracket(a, b), {c: QONE}),
                                 lc_scale(self.bracket_lin({b: QONE},
                                                           self.bracket(a, c)),
                                          (-1) ** (da * db)))
                    if lhs != rhs:
                        return CheckReport.violation(
                            "jacobi", "Jacobi fails on (%s,%s,%s)" % (a, b, c))
        return CheckReport.good()


def validate_dgl(L):
    return L.validate()


class DglMorphism:
    """Degree-0 map of DGLs given by images on basis elements."""

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = {x: lc(images.get(x, {})) for x in source.names}

    def apply(self, combo):
        out = {}
        for x, v in combo.items():
            out = lc_add(out, lc_scale(self.images[x], v))
        return out

    def compose(self, inner):
        if inner.target is not self.source:
            raise ValueError("composition mismatch")
        return DglMorphism(inner.source, self.target,
                           {x: self.apply(inner.images[x]) for x in inner.source.names})

    @classmethod
    def identity(cls, L):
        return cls(L, L, {x: {x: QONE} for x in L.names})

    def is_identity(self):
        return all(self.images[x] == {x: QONE} for x in self.source.names)

    def check(self):
        """Degree 0, d phi = phi d, phi[x,y] = [phi x, phi y], up to truncation."""
        for x in self.source.names:
            for z in self.images[x]:
                if self.target.degree_of[z] != self.source.degree_of[x]:
                    return CheckReport.violation(
                        "degree", "image of %s is not degree-preserving" % x)
        for x in self.source.names:
            lhs = self.apply(self.source.differential.get(x, {}))
            rhs = self.target.d_lin(self.images[x])
            if lhs != rhs:
                return CheckReport.violation("cochain", "d phi != phi d at %s" % x)
        bound = min(self.source.truncation, self.target.truncation)
        for a in self.source.names:
            for b in self.source.names:
                if self.source.degree_of[a] + self.source.degree_of[b] > bound:
                    continue
                lhs = self.apply(self.source.bracket(a, b))
                rhs = self.target.bracket_lin(self.images[a], self.images[b])
                if lhs != rhs:
                    return CheckReport.violation(
                        "bracket", "phi[%s,%s] != [phi %s, phi %s]" % (a, b, a, b))
        return CheckReport.good()


def check_dgl_morphism(phi):
    return phi.check()


# -- finite-dimensional CDGA models ---------------------------------------

class FiniteCdga:
    """Finite-dimensional graded-commutative algebra with differential.

    Presented by an ordered basis with degrees, a multiplication table and a
    differential table; A^0 = Q.unit and A^n = 0 above the top degree.  This
    is the shape of X-model the tensor construction consumes.
    """

    def __init__(self, basis, unit, mult, diff=None):
        self.names = []
        self.degree_of = {}
        for name, deg in basis:
            if name in self.degree_of:
                raise ValueError("duplicate basis name %r" % name)
            self.names.append(name)
            self.degree_of[name] = int(deg)
        if unit not in self.degree_of or self.degree_of[unit] != 0:
            raise ValueError("unit must be a degree-0 basis element")
        if sum(1 for n in self.names if self.degree_of[n] == 0) != 1:
            raise ValueError("A^0 must be one-dimensional")
        self.unit = unit
        self.top_degree = max(self.degree_of.values())
        self.mult = {}
        for (a, b), combo in mult.items():
            combo = lc(combo)
            if combo:
                self.mult[(a, b)] = combo
        self.diff = {}
        if diff:
            for a, combo in diff.items():
                combo = lc(combo)
                if combo:
                    self.diff[a] = combo

    def product(self, a, b):
        if a == self.unit:
            return {b: QONE}
        if b == self.unit:
            return {a: QONE}
        return dict(self.mult.get((a, b), {}))

    def product_lin(self, ca, cb):
        out = {}
        for a, va in ca.items():
            for b, vb in cb.items():
                out = lc_add(out, lc_scale(self.product(a, b), va * vb))
        return out

    def d(self, a):
        return dict(self.diff.get(a, {}))

    def d_lin(self, c):
        out = {}
        for a, v in c.items():
            out = lc_add(out, lc_scale(self.d(a), v))
        return out

    def augmentation(self, a):
        return QONE if a == self.unit else QZERO

    def basis_in_degree(self, n):
        return [x for x in self.names if self.degree_of[x] == n]

    def validate(self):
        deg = self.degree_of
        for (a, b), combo in self.mult.items():
            for z in combo:
                if deg[z] != deg[a] + deg[b]:
                    return CheckReport.violation(
                        "degree", "%s*%s has a term of wrong degree" % (a, b))
        for a in self.names:
            for b in self.names:
                if deg[a] + deg[b] > self.top_degree:
                    if self.product(a, b):
                        return CheckReport.violation(
                            "top-degree", "%s*%s nonzero above top degree" % (a, b))
                    continue
                sign = 1 if (deg[a] * deg[b]) % 2 == 0 else -1
                if self.product(a, b) != lc_scale(self.product(b, a), sign):
                    return CheckReport.violation(
                        "commutativity", "%s*%s != (-1)^(|%s||%s|) %s*%s"
                        % (a, b, a, b, b, a))
        for a in self.names:
            for b in self.names:
                for c in self.names:
                    if deg[a] + deg[b] + deg[c] > self.top_degree:
                        continue
                    lhs = self.product_lin(self.product(a, b), {c: QONE})
                    rhs = self.product_lin({a: QONE}, self.product(b, c))
                    if lhs != rhs:
                        return CheckReport.violation(
                            "associativity", "(%s %s)%s != %s(%s %s)"
                            % (a, b, c, a, b, c))
        for a, combo in self.diff.items():
            for z in combo:
                if deg[z] != deg[a] + 1:
                    return CheckReport.violation(
                        "differential-degree", "d(%s) has wrong degree" % a)
        for a in self.names:
            if self.d_lin(self.d(a)):
                return CheckReport.violation("d-squared", "d^2(%s) != 0" % a)
        for a in self.names:
            for b in self.names:
                if deg[a] + deg[b] + 1 > self.top_degree:
                    continue
                lhs = self.d_lin(self.product(a, b))
                rhs = lc_add(self.product_lin(self.d(a), {b: QONE}),
                             lc_scale(self.product_lin({a: QONE}, self.d(b)),
                                      (-1) ** deg[a]))
                if lhs != rhs:
                    return CheckReport.violation(
                        "leibniz", "d(%s*%s) fails Leibniz" % (a, b))
        return CheckReport.good()

    @classmethod
    def point(cls):
        return cls([("1", 0)], "1", {})

    @classmethod
    def sphere(cls, p):
        """H^*(S^p) = Q.1 + Q.t with t^2 = 0 and zero differential."""
        if p < 1:
            raise ValueError("sphere dimension must be >= 1")
        return cls([("1", 0), ("t", p)], "1", {("t", "t"): {}})

    @classmethod
    def from_free_odd(cls, cdga):
        """Tables of a free CDGA all of whose generators are odd (hence finite)."""
        for name in cdga.names:
            if cdga.gen_degree(name) % 2 == 0:
                raise ValueError("from_free_odd needs all generators odd")
        monos = []
        top = sum(cdga.degrees)
        if cdga.truncation < top:
            raise ValueError(
                "from_free_odd needs truncation >= %d, the top degree" % top)
        for n in range(0, top + 1):
            monos.extend(cdga.degree_basis(n))
        mono_name = {}
        for m in monos:
            nm = "1" if not m else "".join(cdga.names[i] for i, _ in m)
            if nm in mono_name.values():
                raise ValueError("basis name collision %r" % nm)
            mono_name[m] = nm
        basis = [(mono_name[m], cdga.monomial_degree(m)) for m in monos]
        mult = {}
        diff = {}
        from .gca import Poly
        for m1 in monos:
            for m2 in monos:
                s, m = cdga.mul_monomials(m1, m2)
                if s and m in mono_name:
                    mult[(mono_name[m1], mono_name[m2])] = {mono_name[m]: s}
            img = cdga.d(Poly({m1: QONE})) if cdga.monomial_degree(m1) + 1 <= cdga.truncation else Poly()
            combo = {}
            for mm, c in img.items():
                combo[mono_name[mm]] = c
            if combo:
                diff[mono_name[m1]] = combo
        return cls(basis, "1", mult, diff)


class FiniteCdgaMorphism:
    """Map of finite-dimensional models given on basis elements."""

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = {a: lc(images.get(a, {})) for a in source.names}

    def apply(self, combo):
        out = {}
        for a, v in combo.items():
            out = lc_add(out, lc_scale(self.images[a], v))
        return out

    def check(self):
        deg_s, deg_t = self.source.degree_of, self.target.degree_of
        for a in self.source.names:
            for z in self.images[a]:
                if deg_t[z] != deg_s[a]:
                    return CheckReport.violation("degree", "image of %s" % a)
        if self.images[self.source.unit] != {self.target.unit: QONE}:
            return CheckReport.violation("unit", "unit is not preserved")
        for a in self.source.names:
            for b in self.source.names:
                if deg_s[a] + deg_s[b] > self.source.top_degree:
                    continue
                lhs = self.apply(self.source.product(a, b))
                rhs = self.target.product_lin(self.images[a], self.images[b])
                if lhs != rhs:
                    return CheckReport.violation(
                        "multiplicative", "q(%s*%s) != q(%s)q(%s)" % (a, b, a, b))
        for a in self.source.names:
            lhs = self.apply(self.source.d(a))
            rhs = self.target.d_lin(self.images[a])
            if lhs != rhs:
                return CheckReport.violation("cochain", "fails at %s" % a)
        return CheckReport.good()

    def compose(self, inner):
        if inner.target is not self.source:
            raise ValueError("composition mismatch")
        return FiniteCdgaMorphism(
            inner.source, self.target,
            {a: self.apply(inner.images[a]) for a in inner.source.names})

    def is_identity(self):
        return all(self.images[a] == {a: QONE} for a in self.source.names)


# -- free graded Lie algebras inside the tensor algebra -------------------

def _tensor_concat(e1, e2):
    out = {}
    for w1, c1 in e1.items():
        for w2, c2 in e2.items():
            w = w1 + w2
            s = out.get(w, QZERO) + c1 * c2
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return out


def tensor_commutator(e1, d1, e2, d2):
    """[u,v] = uv - (-1)^{|u||v|} vu inside the tensor algebra."""
    sign = -1 if (d1 * d2) % 2 == 0 else 1
    left = _tensor_concat(e1, e2)
    right = _tensor_concat(e2, e1)
    out = dict(left)
    for w, c in right.items():
        s = out.get(w, QZERO) + sign * c
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return out


def _express_in_span(span_vectors, words, target):
    """Coordinates of target over span_vectors (dicts word->coeff), or None."""
    from .linalg import RatMatrix, solve
    pos = {w: i for i, w in enumerate(words)}
    mat = RatMatrix(len(words), len(span_vectors))
    for j, vec in enumerate(span_vectors):
        for w, c in vec.items():
            mat.set(pos[w], j, c)
    b = [QZERO] * len(words)
    for w, c in target.items():
        b[pos[w]] = c
    return solve(mat, b)


def free_lie(generators, truncation):
    """The free graded Lie algebra L(V) realized inside the tensor algebra.

    Basis per degree is grown by spanning iterated commutators of generators
    and eliminating linear dependence; the bracket table is read back through
    exact solves.  Simple and provably correct at desk scale, no Lyndon-word
    machinery.
    """
    from .linalg import EchelonSpan

    N = int(truncation)
    gens = [(name, int(deg)) for name, deg in generators]
    if any(deg < 1 for _, deg in gens):
        raise ValueError("generator degrees must be >= 1")
    if gens and max(deg for _, deg in gens) > N:
        raise ValueError("truncation below a generator degree")

    def prune(elems_with_degree):
        """Keep a linearly independent subset, degree by degree, in order."""
        by_deg = {}
        for d, e in elems_with_degree:
            by_deg.setdefault(d, []).append(e)
        kept = []
        for d in sorted(by_deg):
            elems = by_deg[d]
            words = sorted({w for e in elems for w in e})
            pos = {w: i for i, w in enumerate(words)}
            span = EchelonSpan(len(words))
            for e in elems:
                vec = [QZERO] * len(words)
                for w, c in e.items():
                    vec[pos[w]] = c
                if span.add(vec):
                    kept.append((d, e))
        return kept

    # spanning elements, layered by bracket length; [span S, span T] spans
    # [S,T], so pruning each layer to an independent set is harmless
    layers = {1: [(deg, {(i,): QONE}) for i, (_, deg) in enumerate(gens)]}
    max_len = N // min(deg for _, deg in gens) if gens else 0
    for k in range(2, max_len + 1):
        layer = []
        for i in range(1, k):
            for d1, e1 in layers.get(i, []):
                for d2, e2 in layers.get(k - i, []):
                    if d1 + d2 > N:
                        continue
                    e = tensor_commutator(e1, d1, e2, d2)
                    if e:
                        layer.append((d1 + d2, e))
        layers[k] = prune(layer)

    # degreewise bases; generators keep their names, higher brackets are b<deg>_<i>
    basis = []
    reps = {}
    per_degree_count = {}
    for deg in range(1, N + 1):
        candidates = []
        for k in sorted(layers):
            for d, e in layers[k]:
                if d == deg:
                    candidates.append((k, e))
        if not candidates:
            continue
        words = sorted({w for _, e in candidates for w in e})
        span = EchelonSpan(len(words))
        pos = {w: i for i, w in enumerate(words)}
        for k, e in candidates:
            vec = [QZERO] * len(words)
            for w, c in e.items():
                vec[pos[w]] = c
            if span.add(vec):
                if k == 1:
                    word = next(iter(e))
                    name = gens[word[0]][0]
                else:
                    i = per_degree_count.get(deg, 0)
                    name = "b%d_%d" % (deg, i)
                    per_degree_count[deg] = i + 1
                lead = next(w for w in words if e.get(w))
                basis.append((name, deg))
                reps[name] = {w: c / e[lead] for w, c in e.items()}

    # bracket table via exact solves against the basis tensors
    names_by_degree = {}
    for name, deg in basis:
        names_by_degree.setdefault(deg, []).append(name)
    brackets = {}
    order = {name: i for i, (name, _) in enumerate(basis)}
    for a, da in basis:
        for b, db in basis:
            if order[b] < order[a] or da + db > N:
                continue
            e = tensor_commutator(reps[a], da, reps[b], db)
            target_names = names_by_degree.get(da + db, [])
            if not e:
                continue
            words = sorted({w for nm in target_names for w in reps[nm]} |
                           set(e))
            coords = _express_in_span([reps[nm] for nm in target_names],
                                      words, e)
            if coords is None:
                raise DglError("free Lie bracket escaped the computed basis")
            combo = {nm: c for nm, c in zip(target_names, coords) if c}
            if combo:
                brackets[(a, b)] = combo
    L = Dgl(basis, brackets, {}, N)
    L.tensor_reps = reps
    return L


def add_differential(L, images):
    """Copy of L with the given differential (validated by the caller)."""
    out = Dgl(list(zip(L.names, (L.degree_of[n] for n in L.names))),
              L.brackets, images, L.truncation)
    out.factorization = L.factorization
    if hasattr(L, "tensor_reps"):
        out.tensor_reps = L.tensor_reps
    return out


def free_lie_differential(L, generator_images):
    """Free Lie algebra with the differential generated by generator values.

    generator_images maps generator names to linear combinations of basis
    elements of one degree lower; the differential is extended to every
    bracket basis element through the tensor-algebra Leibniz rule
    d(uv) = du v + (-1)^{|u|} u dv, so Leibniz and d^2 = 0 hold whenever
    they hold on the generators.
    """
    if not hasattr(L, "tensor_reps"):
        raise DglError("free_lie_differential needs a free_lie output")
    reps = L.tensor_reps
    gen_letter = {}
    for name, rep in reps.items():
        if len(rep) == 1:
            word = next(iter(rep))
            if len(word) == 1 and rep[word] == QONE:
                gen_letter[word[0]] = name
    letter_image = {}
    for gname, combo in generator_images.items():
        word = next(iter(reps[gname]))
        letter_image[word[0]] = {w: c * v for n2, v in lc(combo).items()
                                 for w, c in reps[n2].items()}

    def d_tensor(elt):
        out = {}
        for word, coeff in elt.items():
            prefix_deg = 0
            for i, letter in enumerate(word):
                img = letter_image.get(letter)
                if img:
                    sign = -1 if prefix_deg % 2 else 1
                    for w, c in img.items():
                        key = word[:i] + w + word[i + 1:]
                        s = out.get(key, QZERO) + sign * coeff * c
                        if s:
                            out[key] = s
                        else:
                            out.pop(key, None)
                prefix_deg += L.degree_of[gen_letter[letter]]
        return out

    names_by_degree = {}
    for n in L.names:
        names_by_degree.setdefault(L.degree_of[n], []).append(n)
    images = {}
    for name in L.names:
        deg = L.degree_of[name]
        de = d_tensor(reps[name])
        if not de:
            continue
        targets = names_by_degree.get(deg - 1, [])
        words = sorted({w for nm in targets for w in reps[nm]} | set(de))
        coords = _express_in_span([reps[nm] for nm in targets], words, de)
        if coords is None:
            raise DglError("differential escaped the free Lie basis at %s"
                           % name)
        combo = {nm: c for nm, c in zip(targets, coords) if c}
        if combo:
            images[name] = combo
    return add_differential(L, images)


# -- the tensor mapping-space model ----------------------------------------

def tensor_name(a_name, x_name, unit):
    return x_name if a_name == unit else "%s_%s" % (a_name, x_name)


def tensor_map_model(A, L):
    """Lie model A (x) L of the mapping space, with

        |a(x)l|  = -|a| + |l|
        [a(x)l, a'(x)l'] = (-1)^{|a'||l|} aa' (x) [l,l']
        D(a(x)l) = d_A a (x) l + (-1)^{|a|} a (x) d_L l

    Degrees <= 0 violate the connectivity hypothesis and raise.  The output
    is truncated at L.truncation - 2*top(A), the largest bound for which all
    brackets are computable from L's table.
    """
    p = A.top_degree
    N_out = L.truncation - 2 * p
    if N_out < 1:
        raise DglError("L's truncation is too small for top degree %d" % p)
    pairs = []
    bad = []
    for x in L.names:
        for a in A.names:
            deg = L.degree_of[x] - A.degree_of[a]
            if deg <= 0:
                bad.append((a, x, deg))
            elif deg <= N_out:
                pairs.append((a, x, deg))
    if bad:
        raise ConnectivityError(
            "elements of nonpositive degree: %s"
            % ", ".join("%s(x)%s in degree %d" % t for t in bad))

    basis = []
    fact = {}
    for x in L.names:
        for a in A.names:
            deg = L.degree_of[x] - A.degree_of[a]
            if deg <= N_out:
                nm = tensor_name(a, x, A.unit)
                basis.append((nm, deg))
                fact[nm] = (a, x)
    name_of = {}
    for nm, (a, x) in fact.items():
        name_of[(a, x)] = nm

    def embed(a_combo, x_combo):
        out = {}
        for a, va in a_combo.items():
            for x, vx in x_combo.items():
                key = (a, x)
                if key not in name_of:
                    raise DglError("tensor term %s(x)%s escaped the basis" % (a, x))
                out = lc_add(out, {name_of[key]: va * vx})
        return out

    deg_of = dict(basis)
    brackets = {}
    order = {nm: i for i, (nm, _) in enumerate(basis)}
    for nm1, d1 in basis:
        a, x = fact[nm1]
        for nm2, d2 in basis:
            if order[nm2] < order[nm1] or d1 + d2 > N_out:
                continue
            a2, x2 = fact[nm2]
            lie = L.bracket(x, x2)
            if not lie:
                continue
            prod = A.product(a, a2)
            if not prod:
                continue
            sign = (-1) ** (A.degree_of[a2] * L.degree_of[x])
            combo = lc_scale(embed(prod, lie), sign)
            if combo:
                brackets[(nm1, nm2)] = combo

    differential = {}
    for nm, d in basis:
        a, x = fact[nm]
        img = {}
        da = A.d(a)
        if da:
            img = lc_add(img, embed(da, {x: QONE}))
        dx = L.differential.get(x, {})
        if dx:
            img = lc_add(img, lc_scale(embed({a: QONE}, dx), (-1) ** A.degree_of[a]))
        if img:
            differential[nm] = img

    M = Dgl(basis, brackets, differential, N_out)
    M.factorization = (A, L, fact)
    return M


def fibration_model(M):
    """Projection to L (evaluation at the basepoint) and its section.

    proj comes from the augmentation A -> Q, sect from the unit Q -> A;
    proj o sect = Id on L.
    """
    if M.factorization is None:
        raise DglError("fibration_model needs a tensor_map_model output")
    A, L, fact = M.factorization
    Lt = restrict_dgl(L, M.truncation)
    proj_images = {}
    for nm in M.names:
        a, x = fact[nm]
        eps = A.augmentation(a)
        proj_images[nm] = {x: eps} if eps else {}
    proj = DglMorphism(M, Lt, proj_images)
    sect_images = {}
    for x in Lt.names:
        sect_images[x] = {tensor_name(A.unit, x, A.unit): QONE}
    sect = DglMorphism(Lt, M, sect_images)
    return proj, sect


def restrict_dgl(L, truncation):
    """L with basis and tables cut down to the given lower truncation."""
    if truncation > L.truncation:
        raise ValueError("cannot extend a truncation")
    keep = [(n, L.degree_of[n]) for n in L.names if L.degree_of[n] <= truncation]
    brackets = {k: v for k, v in L.brackets.items()
                if L.degree_of[k[0]] + L.degree_of[k[1]] <= truncation}
    diff = {x: v for x, v in L.differential.items()
            if L.degree_of[x] <= truncation}
    return Dgl(keep, brackets, diff, truncation)

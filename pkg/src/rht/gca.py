"""Free graded-commutative algebras over Q with differentials and cohomology.

Conventions: generators live in positive (cohomological) degrees; a monomial
is a sorted tuple of (generator index, exponent) pairs with odd generators
carrying exponent at most 1; swapping two odd letters costs a Koszul sign -1.
Monomials of a fixed degree are ordered lexicographically by descending
exponent vector in declaration order, which makes every basis, representative
and matrix in this module deterministic.
"""

from fractions import Fraction

from .linalg import RatMatrix, EchelonSpan, rank as mat_rank, kernel_basis, solve

QZERO = Fraction(0)
QONE = Fraction(1)

ONE = ()  # the empty monomial


class TruncationError(Exception):
    """A computation produced a degree above the algebra's truncation bound."""


class Poly:
    """Q-linear combination of monomials; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[m] = c

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def unit(cls, coeff=QONE):
        coeff = Fraction(coeff)
        return cls({ONE: coeff}) if coeff else cls()

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, QZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        p = Poly()
        p.terms = out
        return p

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Poly()
        p = Poly()
        p.terms = {m: v * c for m, v in self.terms.items()}
        return p

    def coeff(self, monomial):
        return self.terms.get(monomial, QZERO)

    def items(self):
        return self.terms.items()

    def monomials(self):
        return self.terms.keys()

    def __repr__(self):
        return "Poly(%r)" % (self.terms,)


def add_term(termdict, monomial, coeff):
    s = termdict.get(monomial, QZERO) + coeff
    if s:
        termdict[monomial] = s
    else:
        termdict.pop(monomial, None)


class FreeGCA:
    """The free graded-commutative algebra on an ordered list of generators."""

    def __init__(self, generators):
        names = []
        degrees = []
        seen = set()
        for name, deg in generators:
            if name in seen:
                raise ValueError("duplicate generator name %r" % name)
            if deg < 1:
                raise ValueError("generator %r has degree %d < 1" % (name, deg))
            seen.add(name)
            names.append(name)
            degrees.append(int(deg))
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self.index = {n: i for i, n in enumerate(names)}
        self._basis_cache = {}

    @property
    def generators(self):
        return list(zip(self.names, self.degrees))

    def gen_degree(self, name):
        return self.degrees[self.index[name]]

    def is_odd(self, i):
        return self.degrees[i] % 2 == 1

    def gen(self, name, coeff=QONE):
        i = self.index[name]
        return Poly({((i, 1),): Fraction(coeff)})

    def monomial_degree(self, m):
        return sum(self.degrees[i] * e for i, e in m)

    def poly_degree(self, p):
        """Degree of a homogeneous polynomial; None for 0; ValueError if mixed."""
        degs = {self.monomial_degree(m) for m in p.monomials()}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous: degrees %s" % sorted(degs))
        return degs.pop()

    def is_homogeneous(self, p, degree=None):
        try:
            d = self.poly_degree(p)
        except ValueError:
            return False
        return True if degree is None else (d is None or d == degree)

    # -- monomial arithmetic -------------------------------------------

    def normalize_word(self, word):
        """Sort a word of generator refs; returns (sign, monomial) or (0, None).

        The Koszul sign is -1 per transposition of two odd letters; a repeated
        odd letter kills the word.
        """
        idxs = []
        for w in word:
            if isinstance(w, str):
                if w not in self.index:
                    raise KeyError("unknown generator %r" % w)
                idxs.append(self.index[w])
            else:
                if not 0 <= w < len(self.names):
                    raise KeyError("generator index %d out of range" % w)
                idxs.append(w)
        odd_seq = [i for i in idxs if self.is_odd(i)]
        if len(set(odd_seq)) != len(odd_seq):
            return 0, None
        inversions = 0
        for a in range(len(odd_seq)):
            for b in range(a + 1, len(odd_seq)):
                if odd_seq[a] > odd_seq[b]:
                    inversions += 1
        sign = -1 if inversions % 2 else 1
        exps = {}
        for i in idxs:
            exps[i] = exps.get(i, 0) + 1
        mono = tuple(sorted(exps.items()))
        return sign, mono

    def mul_monomials(self, m1, m2):
        """Product of two normalized monomials: (sign, monomial) or (0, None)."""
        sign = 1
        odd1 = [i for i, e in m1 if self.is_odd(i)]
        merged = dict(m1)
        for i, e in m2:
            if self.is_odd(i):
                if i in merged:
                    return 0, None
                # move this odd letter left past the odd letters of m1 above it
                crossings = sum(1 for j in odd1 if j > i)
                if crossings % 2:
                    sign = -sign
            merged[i] = merged.get(i, 0) + e
        return sign, tuple(sorted(merged.items()))

    def multiply(self, p, q):
        out = {}
        for m1, c1 in p.items():
            for m2, c2 in q.items():
                s, m = self.mul_monomials(m1, m2)
                if s:
                    add_term(out, m, c1 * c2 * s)
        res = Poly()
        res.terms = out
        return res

    def power(self, p, k):
        res = Poly.unit()
        for _ in range(k):
            res = self.multiply(res, p)
        return res

    def monomial_of_word(self, word):
        sign, m = self.normalize_word(word)
        if sign == 0:
            return Poly()
        return Poly({m: Fraction(sign)})

    def expand_monomial(self, m):
        """Monomial as an explicit letter list (generator indices, sorted)."""
        letters = []
        for i, e in m:
            letters.extend([i] * e)
        return letters

    # -- degreewise bases ----------------------------------------------

    def degree_basis(self, n):
        """All monomials of total degree n, in descending exponent-lex order."""
        if n < 0:
            return []
        if n in self._basis_cache:
            return self._basis_cache[n]
        out = []

        def rec(gi, remaining, acc):
            if remaining == 0:
                out.append(tuple(acc))
                return
            if gi == len(self.names):
                return
            d = self.degrees[gi]
            top = remaining // d
            if self.is_odd(gi):
                top = min(top, 1)
            for e in range(top, -1, -1):
                if e:
                    acc.append((gi, e))
                    rec(gi + 1, remaining - e * d, acc)
                    acc.pop()
                else:
                    rec(gi + 1, remaining, acc)

        rec(0, n, [])
        self._basis_cache[n] = out
        return out

    def dim(self, n):
        return len(self.degree_basis(n))

    def poly_to_vector(self, p, n):
        basis = self.degree_basis(n)
        pos = {m: i for i, m in enumerate(basis)}
        v = [QZERO] * len(basis)
        for m, c in p.items():
            if m not in pos:
                raise ValueError("monomial of wrong degree in poly_to_vector")
            v[pos[m]] = c
        return v

    def vector_to_poly(self, vec, n):
        basis = self.degree_basis(n)
        return Poly({m: c for m, c in zip(basis, vec) if c})

    # -- derivations ----------------------------------------------------

    def apply_derivation(self, deriv, p, truncation=None):
        """Graded Leibniz extension of a generator-level derivation.

        D(uv) = D(u)v + (-1)^{|D||u|} u D(v).  If truncation is given, any
        output term above it raises TruncationError instead of being dropped.
        """
        out = Poly()
        ddeg = deriv.degree
        for m, c in p.items():
            letters = self.expand_monomial(m)
            prefix_deg = 0
            for i, li in enumerate(letters):
                img = deriv.images.get(self.names[li])
                if img:
                    sign = -1 if (ddeg % 2) and (prefix_deg % 2) else 1
                    left = Poly({tuple(sorted({j: letters[:i].count(j)
                                               for j in set(letters[:i])}.items())): QONE}) \
                        if i else Poly.unit()
                    right_letters = letters[i + 1:]
                    right = Poly({tuple(sorted({j: right_letters.count(j)
                                                for j in set(right_letters)}.items())): QONE}) \
                        if right_letters else Poly.unit()
                    term = self.multiply(self.multiply(left, img), right)
                    out = out + term.scale(c * sign)
                prefix_deg += self.degrees[li]
        if truncation is not None:
            for m in out.monomials():
                if self.monomial_degree(m) > truncation:
                    raise TruncationError(
                        "derivation output exceeds truncation %d" % truncation)
        return out

    # -- printing --------------------------------------------------------

    def monomial_str(self, m):
        if not m:
            return "1"
        parts = []
        for i, e in m:
            parts.append(self.names[i] if e == 1 else "%s^%d" % (self.names[i], e))
        return "*".join(parts)

    def poly_str(self, p):
        if not p:
            return "0"
        items = sorted(p.items(), key=lambda mc: (self.monomial_degree(mc[0]),
                                                  self.degree_basis_position(mc[0])))
        chunks = []
        for m, c in items:
            mag = abs(c)
            if m == ONE:
                body = str(mag)
            elif mag == 1:
                body = self.monomial_str(m)
            else:
                body = "%s*%s" % (mag, self.monomial_str(m))
            if not chunks:
                chunks.append(body if c > 0 else "-" + body)
            else:
                chunks.append(("+ " if c > 0 else "- ") + body)
        return " ".join(chunks)

    def degree_basis_position(self, m):
        n = self.monomial_degree(m)
        return self.degree_basis(n).index(m)


class Derivation:
    """Degree-homogeneous derivation, given by its values on generators."""

    def __init__(self, algebra, degree, images, check_degrees=True):
        self.algebra = algebra
        self.degree = int(degree)
        self.images = {}
        for name, img in images.items():
            if name not in algebra.index:
                raise KeyError("unknown generator %r" % name)
            if img:
                if check_degrees:
                    want = algebra.gen_degree(name) + self.degree
                    got = algebra.poly_degree(img)
                    if got is not None and got != want:
                        raise ValueError(
                            "derivation image of %s has degree %s, expected %d"
                            % (name, got, want))
                self.images[name] = img

    def __call__(self, p, truncation=None):
        return self.algebra.apply_derivation(self, p, truncation)


class CheckReport:
    """Outcome of a structural validation; falsy when a violation was found."""

    def __init__(self, ok, kind=None, message=None):
        self.ok = ok
        self.kind = kind
        self.message = message

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "CheckReport(ok)"
        return "CheckReport(%s: %s)" % (self.kind, self.message)

    @classmethod
    def good(cls):
        return cls(True)

    @classmethod
    def violation(cls, kind, message):
        return cls(False, kind, message)


class Cdga(FreeGCA):
    """Free CDGA (Lambda V, d) with a degree +1 differential and a truncation.

    The truncation is a hard contract: asking d to produce a degree above it
    raises TruncationError.  Generators of top degree == truncation may have
    unknown differential; they are listed in ``truncated_gens``.
    """

    def __init__(self, generators, differential_images, truncation):
        super().__init__(generators)
        if truncation < 1:
            raise ValueError("truncation must be >= 1")
        self.truncation = int(truncation)
        imgs = {}
        self.truncated_gens = set()
        for name in self.names:
            deg = self.gen_degree(name)
            img = differential_images.get(name, Poly())
            if deg + 1 > self.truncation:
                self.truncated_gens.add(name)
                if img:
                    raise TruncationError(
                        "d(%s) has degree %d above truncation %d"
                        % (name, deg + 1, self.truncation))
                continue
            imgs[name] = img
        # degree violations are reported by check(), not raised here
        self.differential = Derivation(self, 1, imgs, check_degrees=False)
        self._cohomology_cache = {}
        self._dmat_cache = {}

    def d(self, p):
        return self.differential(p, truncation=self.truncation)

    def check(self):
        """Verify degree +1 and d^2 = 0 on generators, up to truncation."""
        for name in self.names:
            if name in self.truncated_gens:
                continue
            img = self.differential.images.get(name)
            if not img:
                continue
            try:
                good = self.poly_degree(img) == self.gen_degree(name) + 1
            except ValueError:
                good = False
            if not good:
                return CheckReport.violation(
                    "degree", "d(%s) is not homogeneous of degree |%s|+1" % (name, name))
        for name in self.names:
            if name in self.truncated_gens:
                continue
            if self.gen_degree(name) + 2 > self.truncation:
                continue
            img = self.differential.images.get(name, Poly())
            if any(w in self.truncated_gens for m in img.monomials()
                   for w in (self.names[i] for i, _ in m)):
                continue
            dd = self.d(img)
            if dd:
                return CheckReport.violation(
                    "d-squared", "d^2(%s) = %s != 0" % (name, self.poly_str(dd)))
        return CheckReport.good()

    def is_minimal(self):
        """dV inside the decomposables (no linear terms in any d-image)."""
        for name, img in self.differential.images.items():
            for m in img.monomials():
                if sum(e for _, e in m) < 2:
                    return False
        return True

    # -- cohomology -----------------------------------------------------

    def d_matrix(self, n):
        """Matrix of d: C^n -> C^{n+1} in the deterministic monomial bases."""
        if n in self._dmat_cache:
            return self._dmat_cache[n]
        if n + 1 > self.truncation:
            raise TruncationError("d out of degree %d exceeds truncation" % n)
        src = self.degree_basis(n)
        tgt = self.degree_basis(n + 1)
        pos = {m: i for i, m in enumerate(tgt)}
        mat = RatMatrix(len(tgt), len(src))
        for j, m in enumerate(src):
            img = self.d(Poly({m: QONE}))
            for mm, c in img.items():
                mat.set(pos[mm], j, c)
        self._dmat_cache[n] = mat
        return mat

    def cohomology(self, n):
        """(rank, representatives) of H^n; deterministic echelon-pivot reps.

        Needs n + 1 <= truncation so that d out of degree n is available.
        """
        if n < 0:
            return 0, []
        if n + 1 > self.truncation:
            raise TruncationError(
                "cohomology in degree %d needs truncation >= %d" % (n, n + 1))
        if n in self._cohomology_cache:
            return self._cohomology_cache[n]
        dn = self.d_matrix(n)
        cocycles = kernel_basis(dn)
        dim = self.dim(n)
        span = EchelonSpan(dim)
        if n >= 1:
            dprev = self.d_matrix(n - 1)
            for j in range(dprev.cols):
                span.add(dprev.column(j))
        reps = []
        rep_vecs = []
        for v in cocycles:
            if span.add(v):
                reps.append(self.vector_to_poly(v, n))
                rep_vecs.append(v)
        result = (len(reps), reps)
        self._cohomology_cache[n] = result
        self._class_basis_cache = getattr(self, "_class_basis_cache", {})
        self._class_basis_cache[n] = rep_vecs
        return result

    def coboundary_columns(self, n):
        """Columns spanning the coboundaries inside C^n."""
        if n == 0:
            return []
        dprev = self.d_matrix(n - 1)
        return [dprev.column(j) for j in range(dprev.cols)]

    def class_coordinates(self, n, p):
        """Coordinates of the class [p] in the representative basis of H^n.

        p must be a cocycle of degree n (or zero); raises ValueError otherwise.
        """
        rk, reps = self.cohomology(n)
        if not p:
            return [QZERO] * rk
        if self.poly_degree(p) != n:
            raise ValueError("class_coordinates: wrong degree")
        if self.d(p):
            raise ValueError("class_coordinates: not a cocycle")
        rep_vecs = self._class_basis_cache[n]
        cob = self.coboundary_columns(n)
        cols = rep_vecs + cob
        if not cols:
            return []
        mat = RatMatrix.from_columns(cols, rows=self.dim(n))
        x = solve(mat, self.poly_to_vector(p, n))
        if x is None:
            raise ValueError("class_coordinates: vector not in cocycle span")
        return x[:rk]


class CdgaMorphism:
    """CDGA morphism given by generator images in the target algebra."""

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = {}
        for name in source.names:
            img = images.get(name, Poly())
            self.images[name] = img

    def apply(self, p):
        out = Poly()
        for m, c in p.items():
            term = Poly.unit(c)
            for i, e in m:
                img = self.images[self.source.names[i]]
                for _ in range(e):
                    term = self.target.multiply(term, img)
                    if not term:
                        break
                if not term:
                    break
            out = out + term
        return out

    def check(self):
        """Degree preservation and phi d = d phi on generators (to truncation)."""
        bound = min(self.source.truncation, self.target.truncation)
        for name in self.source.names:
            img = self.images[name]
            if img:
                try:
                    got = self.target.poly_degree(img)
                except ValueError:
                    return CheckReport.violation(
                        "degree", "image of %s is inhomogeneous" % name)
                if got != self.source.gen_degree(name):
                    return CheckReport.violation(
                        "degree", "image of %s has degree %s != %d"
                        % (name, got, self.source.gen_degree(name)))
        for name in self.source.names:
            deg = self.source.gen_degree(name)
            if deg + 1 > bound or name in self.source.truncated_gens:
                continue
            lhs = self.apply(self.source.differential.images.get(name, Poly()))
            rhs = self.target.d(self.images[name])
            if lhs != rhs:
                return CheckReport.violation(
                    "cochain", "phi(d %s) != d(phi %s)" % (name, name))
        return CheckReport.good()

    def compose(self, inner):
        """self o inner (inner applied first)."""
        if inner.target is not self.source:
            raise ValueError("composition mismatch")
        images = {name: self.apply(inner.images[name]) for name in inner.source.names}
        return CdgaMorphism(inner.source, self.target, images)

    @classmethod
    def identity(cls, algebra):
        return cls(algebra, algebra, {n: algebra.gen(n) for n in algebra.names})

    def is_identity(self):
        if self.source is not self.target and \
                self.source.generators != self.target.generators:
            return False
        return all(self.images[n] == self.target.gen(n) for n in self.source.names)

    def induced_on_cohomology(self, n):
        """Matrix of H^n(phi): H^n(source) -> H^n(target) in representative bases."""
        rk_s, reps_s = self.source.cohomology(n)
        rk_t, _ = self.target.cohomology(n)
        mat = RatMatrix(rk_t, rk_s)
        for j, rep in enumerate(reps_s):
            img = self.apply(rep)
            coords = self.target.class_coordinates(n, img)
            for i, c in enumerate(coords):
                mat.set(i, j, c)
        return mat

    def is_quasi_iso(self, upto):
        """(True, None) if H^n(phi) is an isomorphism for all n <= upto,
        else (False, first bad degree).  Truncation-relative."""
        for n in range(0, upto + 1):
            rk_s, _ = self.source.cohomology(n)
            rk_t, _ = self.target.cohomology(n)
            if rk_s != rk_t:
                return False, n
            if rk_s and mat_rank(self.induced_on_cohomology(n)) != rk_s:
                return False, n
        return True, None

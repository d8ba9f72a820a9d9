"""Bar construction, Koszul duals, cobar, and double-dual completeness.

The bar complex of an augmented truncated dg algebra is built on tensor
words in the augmentation-ideal basis, truncated by letter count.  Its
graded dual is presented as a free dg algebra on one generator per ideal
basis element and realized through the usual weight-bounded truncation, so
every claim stays window-qualified.  Completeness reports compare the
cohomology of an algebra with that of its double dual, degree by degree,
with explicit stability and saturation flags instead of global claims.

Sign conventions are fixed here once: with eps_i the shifted degree sum
|e_1| + ... + |e_{i-1}| - (i-1), the bar differential applies d in slot i
with sign (-1)^{eps_i} and merges slots i, i+1 with sign (-1)^{eps_i+|e_i|}.
The dual-side twist is chosen so that cobar of the dual coalgebra agrees
with the dual bar presentation term for term; the squaring checks in the
test suite keep both honest.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from .dgalgebra import (
    DgAlgebraPresentation,
    InconsistentPresentation,
    OverflowEntry,
    UnsafeWindow,
    cohomology,
    realize,
)
from .fields import GroundField
from .linalg import DSquaredNonzero, SparseMatrix, cohomology_of_complex
from .quiver import Arrow, PathAlgebraElement, QuiverPresentation


class NotConilpotent(Exception):
    """Raised when iterated reduced comultiplication cannot terminate."""


@dataclass(frozen=True)
class BarWord:
    """A tensor word [e_1|...|e_m]; the empty word remembers its vertex."""

    letters: tuple
    vertex: str

    @property
    def source(self):
        return self.letters[0].source if self.letters else self.vertex

    @property
    def target(self):
        return self.letters[-1].target if self.letters else self.vertex

    def __str__(self):
        if not self.letters:
            return "[%s]" % self.vertex
        return "[" + "|".join(str(p) for p in self.letters) + "]"


def _ideal_basis(t):
    return [e for e in t.qb.basis if not e.is_trivial()]


def _weight_homogeneous_relations(presentation):
    return all(
        len({presentation.weight_of(p) for p in r.terms}) == 1
        for r in presentation.relations)


class BarComplex:
    """Tensor words of length <= word_bound with the bar differential.

    Columns whose internal or merge data escape the underlying algebra's
    weight bound are dropped and ledgered, mirroring the truncation
    discipline of the dg engine.  d of d is checked word by word along
    fully honest column chains at construction time.
    """

    def __init__(self, t, word_bound, window):
        if not t.presentation.augmented:
            raise ValueError("the bar construction needs an augmented input")
        if word_bound < 0:
            raise ValueError("word bound must be >= 0")
        self.algebra = t
        self.field = t.field
        self.word_bound = word_bound
        self.window = tuple(window)
        degree_of = t.presentation.degree_of
        ideal = _ideal_basis(t)
        words = [BarWord((), v) for v in sorted(t.presentation.vertices)]
        layer = words
        for _ in range(word_bound):
            layer = [BarWord(w.letters + (e,), w.source)
                     for w in layer for e in ideal if w.target == e.source]
            words.extend(layer)
        words.sort(key=lambda w: (len(w.letters), tuple(str(p) for p in w.letters), w.vertex))
        self.words_by_degree = {}
        for w in words:
            d = sum(degree_of(p) - 1 for p in w.letters)
            self.words_by_degree.setdefault(d, []).append(w)
        self._index = {}
        for d, bucket in self.words_by_degree.items():
            for i, w in enumerate(bucket):
                self._index[w] = (d, i)
        self._columns = {}
        self.differential_ledger = []
        one = self.field.one()
        for w in words:
            column = {}
            broken = False
            prefix = 0
            for i, letter in enumerate(w.letters):
                sign = self.field.of(-1 if prefix % 2 else 1)
                col = t.d_of(letter)
                if col is None:
                    broken = True
                    break
                for f, c in col.items():
                    target = BarWord(w.letters[:i] + (f,) + w.letters[i + 1:], w.vertex)
                    self._bump(column, target, sign * c)
                if i + 1 < len(w.letters):
                    merged = t.product(PathAlgebraElement.from_path(letter, one),
                                       PathAlgebraElement.from_path(w.letters[i + 1], one))
                    if merged is None:
                        broken = True
                        break
                    msign = self.field.of(
                        -1 if (prefix + degree_of(letter)) % 2 else 1)
                    for g, c in merged.terms.items():
                        target = BarWord(w.letters[:i] + (g,) + w.letters[i + 2:], w.vertex)
                        self._bump(column, target, msign * c)
                prefix += degree_of(letter) - 1
            if broken:
                self._columns[w] = None
                self.differential_ledger.append(OverflowEntry(
                    "bar-differential", self._index[w][0], str(w)))
            else:
                self._columns[w] = column
        self._check_d_squared()

    @staticmethod
    def _bump(column, word, coeff):
        s = column.get(word)
        s = coeff if s is None else s + coeff
        if s:
            column[word] = s
        else:
            column.pop(word, None)

    def _check_d_squared(self):
        for w, column in self._columns.items():
            if column is None:
                continue
            total = {}
            verifiable = True
            for u, c in column.items():
                next_column = self._columns[u]
                if next_column is None:
                    verifiable = False
                    break
                for v, c2 in next_column.items():
                    self._bump(total, v, c * c2)
            if verifiable and total:
                raise DSquaredNonzero(self._index[w][0], str(w))

    def d_of(self, word):
        return self._columns[word]

    def dims(self):
        lo, hi = self.window
        return {d: len(self.words_by_degree.get(d, ()))
                for d in range(lo, hi + 1)}

    def all_dims(self):
        return {d: len(ws) for d, ws in sorted(self.words_by_degree.items())}

    def matrix_between(self, degree):
        source = self.words_by_degree.get(degree, [])
        target = self.words_by_degree.get(degree + 1, [])
        m = SparseMatrix(len(target), len(source))
        for j, w in enumerate(source):
            column = self._columns[w]
            if column is None:
                continue
            for u, c in column.items():
                m.set(self._index[u][1], j, c)
        return m

    def cohomology_dims(self, safe_window, strict=False):
        lo, hi = safe_window
        if lo > hi:
            raise ValueError("empty cohomology window [%s, %s]" % (lo, hi))
        check_lo, check_hi = (lo - 1, hi + 1) if strict else (lo, hi)
        touched = sorted({e.degree for e in self.differential_ledger
                          if check_lo <= e.degree <= check_hi})
        if touched:
            raise UnsafeWindow(touched,
                               "bar truncation overflow at degrees %s inside window [%d, %d]"
                               % (touched, lo, hi))
        dims = self.all_dims()
        matrices = {d: self.matrix_between(d) for d in range(lo - 1, hi + 1)}
        raw = cohomology_of_complex(dims, matrices, (lo, hi), self.field, verify=False)
        return {d: raw[d][0] for d in range(lo, hi + 1)}


def bar(t, word_bound, window):
    """Bar complex of an augmented truncation on words of length <= Λ."""
    return BarComplex(t, word_bound, window)


def dual_bar(t, word_bound, window):
    """Koszul dual of an augmented truncation, as a free truncated dg algebra.

    One generator per augmentation-ideal basis element e, placed in degree
    1 - |e| and weighted by the weight of e, so the realization bound counts
    bar letters when every ideal element has weight one and total letter
    weight otherwise.  The differential dualizes d (linear part) and
    multiplication (quadratic part).  Pairs whose product escapes the input's
    weight bound contribute nothing; that is exact for weight-homogeneous
    relations, and certified finite-dimensional inputs recover the products
    instead of skipping.
    """
    if not t.presentation.augmented:
        raise ValueError("the dual bar construction needs an augmented input")
    if t.differential_ledger:
        degrees = sorted({e.degree for e in t.differential_ledger})
        raise UnsafeWindow(
            degrees,
            "input differential is unknown at degrees %s; realize the input "
            "at a larger weight bound" % degrees)
    degree_of = t.presentation.degree_of
    ideal = _ideal_basis(t)
    names = {e: "[%s]" % e for e in ideal}
    arrows = [Arrow(names[e], e.source, e.target, 1 - degree_of(e)) for e in ideal]
    weights = {names[e]: t.qb.weight_of(e) for e in ideal}
    scratch = QuiverPresentation(t.presentation.vertices, arrows)
    terms = {names[e]: {} for e in ideal}
    field = t.field

    def bump(name, path, coeff):
        bucket = terms[name]
        s = bucket.get(path)
        s = coeff if s is None else s + coeff
        if s:
            bucket[path] = s
        else:
            bucket.pop(path, None)

    for f in ideal:
        for e, c in t.d_of(f).items():
            sign = field.of(-1 if degree_of(e) % 2 else 1)
            bump(names[e], scratch.path([names[f]]), sign * c)
    homogeneous = _weight_homogeneous_relations(t.presentation)
    one = field.one()
    for p in ideal:
        for q in ideal:
            if p.target != q.source:
                continue
            product = t.product(PathAlgebraElement.from_path(p, one),
                                PathAlgebraElement.from_path(q, one))
            if product is None:
                if homogeneous:
                    continue
                raise ValueError(
                    "product %s * %s escapes the input weight bound and the "
                    "relations are not weight-homogeneous; raise the bound" % (p, q))
            for e, c in product.terms.items():
                sign = field.of(-1 if (degree_of(e) + degree_of(p)
                                       + (degree_of(p) - 1) * (degree_of(q) - 1)) % 2 else 1)
                bump(names[e], scratch.path([names[p], names[q]]), sign * c)
    differential = {name: PathAlgebraElement(bucket)
                    for name, bucket in terms.items() if bucket}
    presentation = DgAlgebraPresentation(
        t.presentation.vertices, arrows, differential=differential,
        weights=weights, field=field)
    return realize(presentation, window, word_bound)


class CoalgebraPresentation:
    """Cogenerators over a vertex base with reduced comultiplication.

    comultiplication maps a cogenerator name to [(coeff, left, right), ...];
    differential maps a name to [(coeff, other), ...].  Weights supply the
    conilpotency witness: every splitting must satisfy w(left) + w(right) <=
    w(parent), and when no weights are given they are derived by a fixpoint
    pass whose failure to terminate is exactly a splitting cycle.
    """

    def __init__(self, vertices, cogenerators, comultiplication=None,
                 differential=None, weights=None, field=None):
        self.field = field if field is not None else GroundField(0)
        self.quiver = QuiverPresentation(vertices, cogenerators)
        self.vertices = self.quiver.vertices
        self.cogenerators = self.quiver.arrows
        self._degree = {g.name: g.degree for g in self.cogenerators}
        self.comultiplication = {}
        for name, entries in (comultiplication or {}).items():
            gamma = self._known(name)
            kept = []
            for coeff, left, right in entries:
                c = self.field.of(coeff)
                if not c:
                    continue
                lgen, rgen = self._known(left), self._known(right)
                if (lgen.source != gamma.source or lgen.target != rgen.source
                        or rgen.target != gamma.target):
                    raise InconsistentPresentation(
                        "splitting %s -> %s (x) %s breaks vertex composability"
                        % (name, left, right))
                if lgen.degree + rgen.degree != gamma.degree:
                    raise InconsistentPresentation(
                        "splitting %s -> %s (x) %s changes degree" % (name, left, right))
                kept.append((c, left, right))
            if kept:
                self.comultiplication[name] = kept
        self.differential = {}
        for name, entries in (differential or {}).items():
            gamma = self._known(name)
            kept = []
            for coeff, other in entries:
                c = self.field.of(coeff)
                if not c:
                    continue
                target = self._known(other)
                if (target.source, target.target) != (gamma.source, gamma.target):
                    raise InconsistentPresentation(
                        "d(%s) term %s changes endpoints" % (name, other))
                if target.degree != gamma.degree + 1:
                    raise InconsistentPresentation(
                        "d(%s) term %s has degree %d, expected %d"
                        % (name, other, target.degree, gamma.degree + 1))
                kept.append((c, other))
            if kept:
                self.differential[name] = kept
        self.weights = self._settle_weights(weights)
        self._check_coassociativity()

    def _known(self, name):
        if not self.quiver.has_arrow(name):
            raise InconsistentPresentation("unknown cogenerator %r" % name)
        return self.quiver.arrow(name)

    def _settle_weights(self, weights):
        if weights is not None:
            out = {}
            for g in self.cogenerators:
                w = weights.get(g.name)
                if not isinstance(w, int) or w < 1:
                    raise NotConilpotent(
                        "cogenerator %s needs a positive integer weight" % g.name)
                out[g.name] = w
            for name, entries in self.comultiplication.items():
                for _, left, right in entries:
                    if out[left] + out[right] > out[name]:
                        raise NotConilpotent(
                            "splitting %s -> %s (x) %s does not descend in weight"
                            % (name, left, right))
            return out
        out = {}
        pending = {g.name for g in self.cogenerators}
        while pending:
            progressed = False
            for name in sorted(pending):
                entries = self.comultiplication.get(name, ())
                if all(left in out and right in out for _, left, right in entries):
                    out[name] = max([1] + [out[left] + out[right]
                                           for _, left, right in entries])
                    pending.discard(name)
                    progressed = True
            if not progressed:
                raise NotConilpotent(
                    "splitting cycle through %s" % ", ".join(sorted(pending)))
        return out

    def _check_coassociativity(self):
        left_assoc = {}
        right_assoc = {}
        for name, entries in self.comultiplication.items():
            for c1, p, q in entries:
                for c2, a, b in self.comultiplication.get(p, ()):
                    key = (name, a, b, q)
                    left_assoc[key] = left_assoc.get(key, self.field.of(0)) + c1 * c2
                for c2, b, c in self.comultiplication.get(q, ()):
                    key = (name, p, b, c)
                    right_assoc[key] = right_assoc.get(key, self.field.of(0)) + c1 * c2
        left_assoc = {k: v for k, v in left_assoc.items() if v}
        right_assoc = {k: v for k, v in right_assoc.items() if v}
        if left_assoc != right_assoc:
            keys = set(left_assoc) ^ set(right_assoc) or set(left_assoc)
            witness = sorted(keys)[0]
            raise InconsistentPresentation(
                "comultiplication is not coassociative at %s" % (witness,))


def dual_coalgebra(t):
    """Reduced dual of a truncated algebra, as a coalgebra presentation.

    Needs complete structure data: an empty differential ledger, and either
    weight-homogeneous relations (so out-of-bound products cannot touch the
    stored basis) or a certified finite-dimensional truncation.  A dual whose
    splittings fail to descend in weight is rejected as NotConilpotent.
    """
    if not t.presentation.augmented:
        raise ValueError("the dual coalgebra needs an augmented input")
    if t.differential_ledger:
        degrees = sorted({e.degree for e in t.differential_ledger})
        raise UnsafeWindow(degrees,
                           "input differential is unknown at degrees %s" % degrees)
    degree_of = t.presentation.degree_of
    ideal = _ideal_basis(t)
    names = {e: "[%s]" % e for e in ideal}
    cogenerators = [Arrow(names[e], e.source, e.target, -degree_of(e)) for e in ideal]
    weights = {names[e]: t.qb.weight_of(e) for e in ideal}
    field = t.field
    differential = {}
    for f in ideal:
        for e, c in t.d_of(f).items():
            sign = field.of(-1 if (degree_of(e) + 1) % 2 else 1)
            differential.setdefault(names[e], []).append((sign * c, names[f]))
    homogeneous = _weight_homogeneous_relations(t.presentation)
    comultiplication = {}
    one = field.one()
    for p in ideal:
        for q in ideal:
            if p.target != q.source:
                continue
            product = t.product(PathAlgebraElement.from_path(p, one),
                                PathAlgebraElement.from_path(q, one))
            if product is None:
                if homogeneous:
                    continue
                raise ValueError(
                    "product %s * %s escapes the input weight bound and the "
                    "relations are not weight-homogeneous" % (p, q))
            for e, c in product.terms.items():
                sign = field.of(
                    -1 if (degree_of(p) * degree_of(q) + 1) % 2 else 1)
                comultiplication.setdefault(names[e], []).append(
                    (sign * c, names[p], names[q]))
    return CoalgebraPresentation(t.presentation.vertices, cogenerators,
                                 comultiplication=comultiplication,
                                 differential=differential,
                                 weights=weights, field=field)


def cobar(c, word_bound, window):
    """Free dg algebra on the shifted cogenerators of a conilpotent input.

    Each cogenerator moves up one degree; the differential combines the
    internal differential (negated) with the reduced comultiplication,
    weighted by the conilpotency grading.
    """
    arrows = [Arrow(g.name, g.source, g.target, g.degree + 1)
              for g in c.cogenerators]
    scratch = QuiverPresentation(c.vertices, arrows)
    field = c.field
    terms = {}

    def bump(name, path, coeff):
        bucket = terms.setdefault(name, {})
        s = bucket.get(path)
        s = coeff if s is None else s + coeff
        if s:
            bucket[path] = s
        else:
            bucket.pop(path, None)

    for name, entries in c.differential.items():
        for coeff, other in entries:
            bump(name, scratch.path([other]), field.of(-1) * coeff)
    for name, entries in c.comultiplication.items():
        for coeff, left, right in entries:
            degree_left = c.quiver.arrow(left).degree
            sign = field.of(-1 if degree_left % 2 else 1)
            bump(name, scratch.path([left, right]), sign * coeff)
    differential = {name: PathAlgebraElement(bucket)
                    for name, bucket in terms.items() if bucket}
    presentation = DgAlgebraPresentation(
        c.vertices, arrows, differential=differential,
        weights=dict(c.weights), field=field)
    return realize(presentation, window, word_bound)


@dataclass
class CompletenessReport:
    """Window-qualified comparison of an algebra with its double Koszul dual.

    kind is one of CompleteWithinWindow, MismatchAt, Inconclusive; rows maps
    each window degree to the two cohomology dimensions plus match, stable
    (agreement between word bounds Λ and Λ-1), and saturated (no word above
    the bound can land in this degree) flags.
    """

    kind: str
    degree: object = None
    dims: object = None
    rows: dict = dataclass_field(default_factory=dict)
    notes: list = dataclass_field(default_factory=list)


def _saturated_degrees(presentation, bound, degrees):
    generators = presentation.generators
    if not generators:
        return set(degrees)
    ratios = [Fraction(g.degree, presentation.weights[g.name]) for g in generators]
    rmin, rmax = min(ratios), max(ratios)
    out = set()
    for d in degrees:
        if rmin >= 0 and d < (bound + 1) * rmin:
            out.add(d)
        elif rmax <= 0 and d > (bound + 1) * rmax:
            out.add(d)
    return out


def completeness_report(t, word_bound, window):
    """Compare H(A) with H of the double dual bar construction on a window.

    The verdict is CompleteWithinWindow only when every degree matches and
    the double-dual dimensions are stable against lowering the word bound by
    one; a stable mismatch is reported as MismatchAt, and any truncation
    overflow or instability yields Inconclusive.  No global claim is made.
    """
    if word_bound < 2:
        raise ValueError("word bound must be >= 2 so stability can be checked")
    lo, hi = window
    try:
        algebra_dims = cohomology(t, window).dims
    except UnsafeWindow as err:
        return CompletenessReport(
            "Inconclusive",
            notes=["input truncation overflows inside the window at degrees %s"
                   % (err.degrees,)])

    def double_dual(bound):
        first = dual_bar(t, bound, window)
        second = dual_bar(first, bound, window)
        return second, cohomology(second, window).dims

    try:
        second, full_dims = double_dual(word_bound)
        _, prev_dims = double_dual(word_bound - 1)
    except UnsafeWindow as err:
        return CompletenessReport(
            "Inconclusive",
            notes=["double dual truncation overflows at degrees %s" % (err.degrees,)])
    degrees = list(range(lo, hi + 1))
    saturated = _saturated_degrees(second.presentation, word_bound, degrees)
    rows = {}
    for d in degrees:
        rows[d] = {
            "algebra": algebra_dims[d],
            "double_dual": full_dims[d],
            "match": algebra_dims[d] == full_dims[d],
            "stable": full_dims[d] == prev_dims[d],
            "saturated": d in saturated,
        }
    unstable = [d for d in degrees if not rows[d]["stable"]]
    if unstable:
        return CompletenessReport("Inconclusive", rows=rows,
                                  notes=["double dual dimensions still moving at degrees %s"
                                         % unstable])
    for d in degrees:
        if not rows[d]["match"]:
            return CompletenessReport("MismatchAt", degree=d,
                                      dims=(rows[d]["algebra"], rows[d]["double_dual"]),
                                      rows=rows)
    return CompletenessReport("CompleteWithinWindow", rows=rows)

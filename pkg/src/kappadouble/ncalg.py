"""Free associative algebra over :class:`Scalar` and a normal-ordering engine.

Words are tuples of generator ids.  A :class:`RewriteSystem` holds one rule
per out-of-order adjacent pair ``(g, h)`` (``weight(g) > weight(h)``) reading
``g h -> h g + remainder``.  Normal ordering swaps the leftmost descent first;
confluence is checked separately (:meth:`RewriteSystem.diamond`), never
assumed.
"""

from __future__ import annotations

import sys

from .alphabet import WEIGHTS, METRIC
from .scalars import ONE, ZERO, Scalar, get_order, truncation

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class MissingRule(KeyError):
    def __init__(self, g, h):
        super().__init__("no rewrite rule for out-of-order pair (%s, %s)" % (g, h))
        self.pair = (g, h)


class MissingImage(KeyError):
    pass


class RewriteBudgetExceeded(RuntimeError):
    pass


def _add_into(acc, key, coeff):
    if key in acc:
        coeff = acc[key] + coeff
        if not coeff:
            del acc[key]
            return
    elif not coeff:
        return
    acc[key] = coeff


class NCPoly:
    """Finite sum of Scalar-weighted words.  Immutable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for word, c in (terms or {}).items():
            c = Scalar.coerce(c)
            if c:
                clean[tuple(word)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def gen(cls, gid, coeff=ONE):
        return cls({(gid,): coeff})

    @classmethod
    def const(cls, coeff=ONE):
        return cls({(): coeff})

    @classmethod
    def word(cls, word, coeff=ONE):
        return cls({tuple(word): coeff})

    def items(self):
        return self._terms.items()

    def words(self):
        return self._terms.keys()

    def __getitem__(self, word):
        return self._terms.get(tuple(word), ZERO)

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Scalar)):
            other = NCPoly.const(Scalar.coerce(other))
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for w, c in other._terms.items():
            _add_into(acc, w, c)
        return NCPoly._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)) or type(other).__name__ == "Fraction":
            return self.scale(Scalar.coerce(other))
        if not isinstance(other, NCPoly):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)) or type(other).__name__ == "Fraction":
            return self.scale(Scalar.coerce(other))
        return NotImplemented

    def __pow__(self, n):
        out = NCPoly.const()
        for _ in range(n):
            out = out * self
        return out

    def scale(self, s):
        acc = {}
        for w, c in self._terms.items():
            _add_into(acc, w, c * s)
        return NCPoly._raw(acc)

    def map_scalars(self, fn):
        acc = {}
        for w, c in self._terms.items():
            _add_into(acc, w, fn(c))
        return NCPoly._raw(acc)

    def truncate(self, order):
        return self.map_scalars(lambda c: c.truncate(order))

    def classical_part(self):
        return self.map_scalars(lambda c: c.classical_part())

    def generators(self):
        return {g for w in self._terms for g in w}

    def max_length(self):
        return max((len(w) for w in self._terms), default=0)

    def lowest_lam(self):
        """Smallest lam power present, or None for the zero polynomial."""
        orders = [c.min_lam() for c in self._terms.values()]
        return min(orders) if orders else None

    def __str__(self):
        from .text import render_poly
        return render_poly(self)

    def __repr__(self):
        return "NCPoly(%s)" % (self,)


def _as_poly(x):
    if isinstance(x, NCPoly):
        return x
    if isinstance(x, (int, Scalar)) or type(x).__name__ == "Fraction":
        return NCPoly.const(Scalar.coerce(x))
    return None


ZERO_POLY = NCPoly()
ONE_POLY = NCPoly.const()


def gen(gid):
    return NCPoly.gen(gid)


def multiply(a, b):
    """Concatenation product; no reordering."""
    acc = {}
    for w1, c1 in a._terms.items():
        for w2, c2 in b._terms.items():
            _add_into(acc, w1 + w2, c1 * c2)
    return NCPoly._raw(acc)


class TensorPoly:
    """Finite sum of Scalar-weighted tuples of words (legs).

    The default arity is two (``a (x) b``); coassociativity checks use three.
    """

    __slots__ = ("_terms", "arity")

    def __init__(self, terms=None, arity=2):
        self.arity = arity
        clean = {}
        for words, c in (terms or {}).items():
            words = tuple(tuple(w) for w in words)
            if len(words) != arity:
                raise ValueError("expected %d legs, got %r" % (arity, words))
            c = Scalar.coerce(c)
            if c:
                clean[words] = c
        self._terms = clean

    @classmethod
    def _raw(cls, terms, arity):
        t = cls.__new__(cls)
        t._terms = terms
        t.arity = arity
        return t

    @classmethod
    def unit(cls, arity=2):
        return cls({((),) * arity: ONE}, arity)

    @classmethod
    def from_polys(cls, *legs, coeff=ONE):
        """Tensor product of NCPolys."""
        acc = {(): coeff}
        for leg in legs:
            nxt = {}
            for words, c in acc.items():
                for w, cw in leg.items():
                    _add_into(nxt, words + (w,), c * cw)
            acc = nxt
        return cls._raw(acc, len(legs))

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def __getitem__(self, words):
        return self._terms.get(tuple(words), ZERO)

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return self.arity == other.arity and self._terms == other._terms

    def __add__(self, other):
        acc = dict(self._terms)
        for k, c in other._terms.items():
            _add_into(acc, k, c)
        return TensorPoly._raw(acc, self.arity)

    def __neg__(self):
        return TensorPoly._raw({k: -c for k, c in self._terms.items()}, self.arity)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        acc = {}
        for k, c in self._terms.items():
            _add_into(acc, k, c * s)
        return TensorPoly._raw(acc, self.arity)

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(Scalar.coerce(other))
        if other.arity != self.arity:
            raise ValueError("arity mismatch")
        acc = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                _add_into(acc, key, c1 * c2)
        return TensorPoly._raw(acc, self.arity)

    def map_legs(self, fn):
        """Apply ``fn(word) -> NCPoly`` on every leg and expand."""
        acc = {}
        for words, c in self._terms.items():
            partial = {(): c}
            for w in words:
                image = fn(w)
                nxt = {}
                for key, ck in partial.items():
                    for w2, c2 in image.items():
                        _add_into(nxt, key + (w2,), ck * c2)
                partial = nxt
            for key, ck in partial.items():
                _add_into(acc, key, ck)
        return TensorPoly._raw(acc, self.arity)

    def truncate(self, order):
        acc = {}
        for k, c in self._terms.items():
            _add_into(acc, k, c.truncate(order))
        return TensorPoly._raw(acc, self.arity)

    def lowest_lam(self):
        orders = [c.min_lam() for c in self._terms.values()]
        return min(orders) if orders else None

    def __str__(self):
        from .text import render_tensor
        return render_tensor(self)

    def __repr__(self):
        return "TensorPoly(%s)" % (self,)


class RewriteSystem:
    """Commutation rules ``g h -> h g + remainder`` for ``weight(g) > weight(h)``."""

    def __init__(self, generators, order=None, name="", step_factor=200):
        self.generators = list(generators)
        self.weights = {gid: WEIGHTS[gid] for gid in self.generators}
        self.rules = {}
        self.order = get_order() if order is None else order
        self.name = name
        self.metric = METRIC
        self.step_factor = step_factor
        self._cache = {}
        self._steps = 0

    def copy(self, name=None):
        rs = RewriteSystem(self.generators, self.order, name or self.name, self.step_factor)
        rs.rules = dict(self.rules)
        return rs

    def merged(self, other, name=""):
        rs = RewriteSystem(list(dict.fromkeys(self.generators + other.generators)),
                           max(self.order, other.order), name)
        rs.rules = dict(self.rules)
        rs.rules.update(other.rules)
        return rs

    # -- rule entry --------------------------------------------------------
    def set_rule(self, g, h, remainder):
        if self.weights[g] <= self.weights[h]:
            raise ValueError("rule key (%s, %s) is not out of order" % (g, h))
        self.rules[(g, h)] = _as_poly(remainder)
        self._cache.clear()

    def set_commutator(self, a, b, value):
        """Record [a, b] = value for generators a, b."""
        value = _as_poly(value)
        if a == b:
            if value:
                raise ValueError("[%s, %s] must vanish" % (a, b))
            return
        if self.weights[a] > self.weights[b]:
            self.set_rule(a, b, value)
        else:
            self.set_rule(b, a, -value)

    def commute_all(self, gens_a, gens_b=None):
        """Declare every pair from the given sets commuting (unless a rule exists)."""
        gens_b = gens_a if gens_b is None else gens_b
        for a in gens_a:
            for b in gens_b:
                if a == b:
                    continue
                g, h = (a, b) if self.weights[a] > self.weights[b] else (b, a)
                self.rules.setdefault((g, h), ZERO_POLY)
        self._cache.clear()

    def rule(self, g, h):
        try:
            return self.rules[(g, h)]
        except KeyError:
            raise MissingRule(g, h) from None

    def bracket(self, a, b):
        """Stored value of [a, b] for two generators (no normal ordering)."""
        if a == b:
            return ZERO_POLY
        if self.weights[a] > self.weights[b]:
            return self.rule(a, b)
        return -self.rule(b, a)

    def finalize(self):
        """Normal-order every remainder in place."""
        with truncation(self.order):
            for key in sorted(self.rules, key=lambda k: (self.weights[k[0]], self.weights[k[1]])):
                self.rules[key] = self.normal_order(self.rules[key])
        self._cache.clear()
        return self

    # -- ordering ----------------------------------------------------------
    def is_ordered(self, word):
        w = self.weights
        return all(w[word[i]] <= w[word[i + 1]] for i in range(len(word) - 1))

    def is_normal(self, p):
        return all(self.is_ordered(word) for word in p.words())

    def _nf(self, word, budget):
        key = (word, budget)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        w = self.weights
        for i in range(len(word) - 1):
            if w[word[i]] > w[word[i + 1]]:
                break
        else:
            res = {word: ONE}
            self._cache[key] = res
            return res
        g, h = word[i], word[i + 1]
        remainder = self.rule(g, h)
        self._steps += 1
        acc = dict(self._nf(word[:i] + (h, g) + word[i + 2:], budget))
        head, tail = word[:i], word[i + 2:]
        for u, c in remainder.items():
            c = c.truncate(budget)
            if not c:
                continue
            sub = self._nf(head + u + tail, budget - c.min_lam())
            for w2, c2 in sub.items():
                _add_into(acc, w2, (c2 * c).truncate(budget))
        self._cache[key] = acc
        return acc

    def normal_order(self, p, max_steps=None):
        """Canonical ordered representative of ``p`` in the quotient algebra."""
        p = _as_poly(p)
        acc = {}
        self._steps = 0
        with truncation(self.order):
            for word, c in p.items():
                budget = self.order - c.min_lam()
                for w2, c2 in self._nf(word, budget).items():
                    _add_into(acc, w2, c2 * c)
                if max_steps is not None and self._steps > max_steps:
                    raise RewriteBudgetExceeded(
                        "normal ordering took %d swaps (budget %d)" % (self._steps, max_steps))
        return NCPoly._raw(acc)

    def step_budget(self, length):
        return self.step_factor * max(length, 1) ** 2 * (self.order + 1)

    def clear_cache(self):
        self._cache.clear()

    @property
    def last_steps(self):
        return self._steps

    def multiply(self, a, b):
        return self.normal_order(multiply(a, b))

    def commutator(self, a, b):
        a, b = _as_poly(a), _as_poly(b)
        return self.normal_order(multiply(a, b) - multiply(b, a))

    def jacobi(self, a, b, c):
        return (self.commutator(a, self.commutator(b, c))
                + self.commutator(b, self.commutator(c, a))
                + self.commutator(c, self.commutator(a, b)))

    def diamond(self, g, h, k):
        """Difference of the two resolutions of the overlap ``g h k``.

        Requires weight(g) > weight(h) > weight(k).  Zero means the overlap
        is resolvable (locally confluent).
        """
        first = (NCPoly.word((h, g, k)) + multiply(self.rule(g, h), NCPoly.gen(k)))
        second = (NCPoly.word((g, k, h)) + multiply(NCPoly.gen(g), self.rule(h, k)))
        return self.normal_order(first) - self.normal_order(second)

    def graded_degree_violations(self):
        """Rules whose remainder has a term of graded degree >= 2."""
        bad = []
        for key, rem in self.rules.items():
            for word, c in rem.items():
                if len(word) - c.min_lam() >= 2:
                    bad.append((key, word))
        return bad


def normal_order(p, rs):
    return rs.normal_order(p)


def commutator(a, b, rs):
    return rs.commutator(a, b)


def substitute(p, mapping, rs):
    """Homomorphic image of ``p`` under ``mapping`` (generator id -> NCPoly)."""
    total = {}
    with truncation(rs.order):
        for word, c in _as_poly(p).items():
            img = ONE_POLY
            for gid in word:
                if gid not in mapping:
                    raise MissingImage(gid)
                img = rs.normal_order(multiply(img, _as_poly(mapping[gid])))
            for w, c2 in img.items():
                _add_into(total, w, c2 * c)
    return NCPoly._raw(total)

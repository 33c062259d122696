"""Noncommutative polynomials over Q(s) and ordered rewrite systems.

Words are tuples of generator indices.  An alphabet lists generators in
increasing precedence; the monomial order compares weighted degree first,
then words lexicographically by precedence.  Every weight is positive, so
two distinct words of equal weight differ at some position and the order is
compatible with concatenation on both sides.
"""

from dataclasses import dataclass
from itertools import product

from .field import ONE, FieldElem, fsum
from .report import ConfluenceFailure


class Alphabet:
    def __init__(self, names, weights=None, star=None, central=()):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate generator names")
        self.index = {n: i for i, n in enumerate(self.names)}
        self.weights = tuple(weights or [1] * len(self.names))
        if len(self.weights) != len(self.names) or min(self.weights) < 1:
            raise ValueError("weights must be positive, one per generator")
        star = star or {n: n for n in self.names}
        self.star_index = tuple(self.index[star[n]] for n in self.names)
        for i, j in enumerate(self.star_index):
            if self.star_index[j] != i:
                raise ValueError(f"star is not an involution on {self.names[i]}")
        self.central = frozenset(self.index[n] for n in central)

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        return f"Alphabet({', '.join(self.names)})"

    def word(self, *names):
        return tuple(self.index[n] for n in names)

    def weight(self, w):
        return sum(self.weights[i] for i in w)

    def key(self, w):
        return (self.weight(w), w)

    def fmt_word(self, w):
        if not w:
            return "1"
        out = []
        i = 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            name = self.names[w[i]]
            out.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(out)


class NCPoly:
    """Finite sum of words with nonzero FieldElem coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = {w: FieldElem.coerce(c) for w, c in terms.items() if not FieldElem.coerce(c).is_zero()}

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def monomial(cls, w, c=ONE):
        return cls({tuple(w): c})

    @classmethod
    def scalar(cls, c):
        return cls({(): c})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, NCPoly):
            return x
        return cls.scalar(x)

    @classmethod
    def from_accumulator(cls, acc):
        terms = {}
        for w, cs in acc.items():
            c = fsum(cs) if len(cs) > 1 else cs[0]
            if not c.is_zero():
                terms[w] = c
        return cls._raw(terms)

    def is_zero(self):
        return not self.terms

    def is_scalar(self):
        return all(w == () for w in self.terms)

    def scalar_part(self):
        return self.terms.get((), FieldElem.coerce(0))

    def degree(self):
        return max((len(w) for w in self.terms), default=-1)

    def __add__(self, other):
        other = NCPoly.coerce(other)
        acc = {w: [c] for w, c in self.terms.items()}
        for w, c in other.terms.items():
            acc.setdefault(w, []).append(c)
        return NCPoly.from_accumulator(acc)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-NCPoly.coerce(other))

    def __rsub__(self, other):
        return NCPoly.coerce(other) - self

    def scale(self, c):
        c = FieldElem.coerce(c)
        if c.is_zero():
            return NCPoly()
        return NCPoly._raw({w: x * c for w, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        acc = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                acc.setdefault(w1 + w2, []).append(c1 * c2)
        return NCPoly.from_accumulator(acc)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(FieldElem.coerce(c).inverse())

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = NCPoly.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            try:
                other = NCPoly.coerce(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def map_coeffs(self, fn):
        return NCPoly({w: fn(c) for w, c in self.terms.items()})

    def map_words(self, fn):
        acc = {}
        for w, c in self.terms.items():
            for w2, c2 in fn(w).terms.items():
                acc.setdefault(w2, []).append(c * c2)
        return NCPoly.from_accumulator(acc)

    def leading(self, alphabet):
        w = max(self.terms, key=alphabet.key)
        return w, self.terms[w]

    def fmt(self, alphabet):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=alphabet.key, reverse=True):
            c = self.terms[w]
            cs = c.to_q_string()
            word = alphabet.fmt_word(w)
            if not w:
                parts.append(cs)
            elif c.is_one():
                parts.append(word)
            elif (-c).is_one():
                parts.append(f"-{word}")
            else:
                parts.append(f"({cs})*{word}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"NCPoly({self.terms!r})"


def star(p, alphabet):
    """Antihomomorphism: reverse each word and star each letter; coefficients are real."""
    si = alphabet.star_index
    return NCPoly._raw({tuple(si[i] for i in reversed(w)): c for w, c in p.terms.items()})


def _find(w, lead):
    n = len(lead)
    for i in range(len(w) - n + 1):
        if w[i : i + n] == lead:
            return i
    return -1


@dataclass(frozen=True)
class CriticalPair:
    word: tuple
    left: NCPoly
    right: NCPoly


class RewriteSystem:
    """Rules lead -> rhs with rhs strictly smaller; normal forms are memoised per word."""

    def __init__(self, alphabet, rules, name=""):
        self.alphabet = alphabet
        self.name = name
        self.rules = dict(rules)
        for lead, rhs in self.rules.items():
            if rhs.terms and alphabet.key(rhs.leading(alphabet)[0]) >= alphabet.key(lead):
                raise ValueError(f"rule {alphabet.fmt_word(lead)} is not decreasing")
        self._lengths = sorted({len(w) for w in self.rules})
        self._cache = {}

    @classmethod
    def from_relations(cls, alphabet, relations, name=""):
        """Orient and interreduce relations (each meaning p = 0) on leading words."""
        system = cls(alphabet, {}, name)
        pending = [NCPoly.coerce(p) for p in relations]
        while pending:
            p = system.normal_form(pending.pop(0))
            if p.is_zero():
                continue
            lead, c = p.leading(alphabet)
            if not lead:
                raise ValueError("relations imply 1 = 0")
            rhs = -(p - NCPoly.monomial(lead, c)) / c
            rules = {}
            for w, r in system.rules.items():
                if _find(w, lead) >= 0:
                    pending.append(NCPoly.monomial(w) - r)
                else:
                    rules[w] = r
            rules[lead] = rhs
            system = cls(alphabet, rules, name)
            system = cls(alphabet, {w: system._nf_without(w, r) for w, r in rules.items()}, name)
        return system

    def _nf_without(self, lead, rhs):
        other = RewriteSystem(self.alphabet, {w: r for w, r in self.rules.items() if w != lead})
        return other.normal_form(rhs)

    def reducible_at(self, w):
        for i in range(len(w)):
            for n in self._lengths:
                if i + n > len(w):
                    break
                if w[i : i + n] in self.rules:
                    return i, w[i : i + n]
        return None

    def is_normal(self, w):
        return self.reducible_at(w) is None

    def _nf_word(self, w):
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        found = self.reducible_at(w)
        if found is None:
            out = {w: ONE}
        else:
            i, lead = found
            pre, post = w[:i], w[i + len(lead) :]
            acc = {}
            for t, c in self.rules[lead].terms.items():
                for w2, c2 in self._nf_word(pre + t + post).items():
                    acc.setdefault(w2, []).append(c * c2)
            out = {}
            for w2, cs in acc.items():
                x = fsum(cs) if len(cs) > 1 else cs[0]
                if not x.is_zero():
                    out[w2] = x
        self._cache[w] = out
        return out

    def normal_form(self, p):
        p = NCPoly.coerce(p)
        acc = {}
        for w, c in p.terms.items():
            for w2, c2 in self._nf_word(w).items():
                acc.setdefault(w2, []).append(c * c2)
        return NCPoly.from_accumulator(acc)

    def nf_word(self, w):
        return NCPoly._raw(dict(self._nf_word(tuple(w))))

    def critical_pairs(self):
        """Overlaps uv/vx and inclusions of rule leads, each with its two one-step reducts."""
        out = []
        leads = sorted(self.rules, key=self.alphabet.key)
        for l1 in leads:
            for l2 in leads:
                # overlap: suffix of l1 equals prefix of l2
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] == l2[:k]:
                        word = l1 + l2[k:]
                        left = self.rules[l1] * NCPoly.monomial(l2[k:])
                        right = NCPoly.monomial(l1[:-k]) * self.rules[l2]
                        out.append(CriticalPair(word, left, right))
                if l1 != l2 and len(l2) < len(l1):
                    i = _find(l1, l2)
                    if i >= 0:
                        left = self.rules[l1]
                        right = NCPoly.monomial(l1[:i]) * self.rules[l2] * NCPoly.monomial(l1[i + len(l2) :])
                        out.append(CriticalPair(l1, left, right))
        return out

    def check_confluence(self):
        """Diamond check; raises ConfluenceFailure naming the first unresolved overlap."""
        pairs = self.critical_pairs()
        for cp in pairs:
            diff = self.normal_form(cp.left - cp.right)
            if not diff.is_zero():
                a = self.alphabet
                raise ConfluenceFailure(
                    f"overlap {a.fmt_word(cp.word)} does not resolve: difference {diff.fmt(a)}"
                )
        return len(pairs)

    def normal_words(self, max_len):
        """All irreducible words of length <= max_len, shortest first."""
        out = [()]
        layer = [()]
        for _ in range(max_len):
            nxt = []
            for w in layer:
                for g in range(len(self.alphabet)):
                    w2 = w + (g,)
                    if self.is_normal(w2):
                        nxt.append(w2)
            out.extend(nxt)
            layer = nxt
        return out

    def fmt_rules(self):
        a = self.alphabet
        return [f"{a.fmt_word(w)} -> {r.fmt(a)}" for w, r in sorted(self.rules.items(), key=lambda kv: a.key(kv[0]))]


def all_words(n_letters, length):
    return list(product(range(n_letters), repeat=length))

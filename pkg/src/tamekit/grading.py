"""Weight gradings on polynomial rings.

Two kinds are supported.  A Grading assigns an integer weight to each
variable and grades by exact weighted degree; a ResidueGrading grades
by weighted degree modulo a fixed modulus.  Both expose the same
homogeneity protocol, so the decomposition engines can run against
either.

normalize_weights puts a triple of weights into the canonical shape the
three-variable routines expect (gcd one, at most one negative weight and
it sits last, the rest weakly decreasing) while recording enough to
transport maps back and forth between the original and normalized
coordinates.
"""

from __future__ import annotations

from math import gcd

from .errors import (
    ArityMismatch,
    GcdPrecondition,
    MoreThanOneMixedSignPattern,
    NotHomogeneous,
    ZeroPolynomial,
)
from .maps import compose, perm_map
from .poly import Polynomial


def _check_weights(weights):
    weights = tuple(weights)
    if not weights:
        raise ArityMismatch("a grading needs at least one weight")
    for w in weights:
        if not isinstance(w, int) or isinstance(w, bool):
            raise ArityMismatch(f"weights must be ints, got {w!r}")
    return weights


class Grading:
    """Z-grading: each variable carries an integer weight."""

    __slots__ = ("weights",)

    def __init__(self, weights):
        self.weights = _check_weights(weights)

    @property
    def arity(self):
        return len(self.weights)

    def weight(self, exps):
        return sum(w * e for w, e in zip(self.weights, exps))

    def degree(self, poly):
        """Highest weight over the terms (ZeroPolynomial on zero)."""
        self._check_poly(poly)
        if poly.is_zero():
            raise ZeroPolynomial("the zero polynomial has no weighted degree")
        return max(self.weight(e) for e in poly.terms)

    def top_component(self, poly):
        """Sum of the terms of highest weight."""
        top = self.degree(poly)
        return Polynomial(
            poly.arity,
            {e: c for e, c in poly.terms.items() if self.weight(e) == top},
        )

    def is_homogeneous(self, poly):
        self._check_poly(poly)
        return len({self.weight(e) for e in poly.terms}) <= 1

    def homogeneous_degree(self, poly):
        self._check_poly(poly)
        if poly.is_zero():
            raise ZeroPolynomial("the zero polynomial has no weighted degree")
        found = {self.weight(e) for e in poly.terms}
        if len(found) != 1:
            raise NotHomogeneous(f"{poly} mixes weights {sorted(found)}")
        return found.pop()

    def is_graded_map(self, m):
        """Each coordinate is homogeneous of its variable's weight.

        Zero coordinates pass vacuously (they are homogeneous of every
        degree); a nonzero constant coordinate needs weight zero.
        """
        if m.arity != self.arity:
            raise ArityMismatch(
                f"map arity {m.arity} does not match grading arity {self.arity}"
            )
        for i, c in enumerate(m.coords):
            if c.is_zero():
                continue
            if not self.is_homogeneous(c) or self.degree(c) != self.weights[i]:
                return False
        return True

    def residue(self, modulus):
        return ResidueGrading(self.weights, modulus)

    def _check_poly(self, poly):
        if poly.arity != self.arity:
            raise ArityMismatch(
                f"polynomial arity {poly.arity} does not match grading arity {self.arity}"
            )

    def __eq__(self, other):
        if not isinstance(other, Grading):
            return NotImplemented
        return self.weights == other.weights

    def __hash__(self):
        return hash(("Z", self.weights))

    def __repr__(self):
        return f"Grading{self.weights}"


class ResidueGrading:
    """Grading by weighted degree modulo a fixed positive modulus."""

    __slots__ = ("weights", "modulus")

    def __init__(self, weights, modulus):
        if not isinstance(modulus, int) or modulus < 1:
            raise ArityMismatch(f"modulus must be a positive int, got {modulus!r}")
        self.modulus = modulus
        self.weights = tuple(w % modulus for w in _check_weights(weights))

    @property
    def arity(self):
        return len(self.weights)

    def weight(self, exps):
        return sum(w * e for w, e in zip(self.weights, exps)) % self.modulus

    def is_homogeneous(self, poly):
        self._check_poly(poly)
        return len({self.weight(e) for e in poly.terms}) <= 1

    def homogeneous_degree(self, poly):
        """The residue all terms share (NotHomogeneous if they differ)."""
        self._check_poly(poly)
        if poly.is_zero():
            raise ZeroPolynomial("the zero polynomial has no residue degree")
        found = {self.weight(e) for e in poly.terms}
        if len(found) != 1:
            raise NotHomogeneous(f"{poly} mixes residues {sorted(found)}")
        return found.pop()

    def is_graded_map(self, m):
        if m.arity != self.arity:
            raise ArityMismatch(
                f"map arity {m.arity} does not match grading arity {self.arity}"
            )
        for i, c in enumerate(m.coords):
            if c.is_zero():
                continue
            if not self.is_homogeneous(c) or self.homogeneous_degree(c) != self.weights[i]:
                return False
        return True

    def _check_poly(self, poly):
        if poly.arity != self.arity:
            raise ArityMismatch(
                f"polynomial arity {poly.arity} does not match grading arity {self.arity}"
            )

    def __eq__(self, other):
        if not isinstance(other, ResidueGrading):
            return NotImplemented
        return self.weights == other.weights and self.modulus == other.modulus

    def __hash__(self):
        return hash(("Zmod", self.modulus, self.weights))

    def __repr__(self):
        return f"ResidueGrading({self.weights}, mod {self.modulus})"


# ---------------------------------------------------------------------------
# canonical shape for weight triples

def _inverse_perm(perm):
    out = [0] * len(perm)
    for i, p in enumerate(perm):
        out[p] = i
    return tuple(out)


class NormalizedGrading:
    """Result of normalize_weights: the canonical weights plus the
    bookkeeping (permutation, sign flip, common divisor) needed to
    transport maps between the original and normalized variables.

    ``weights[i] == sign * original[permutation[i]] // divisor`` where
    sign is -1 when ``flipped`` else 1.
    """

    __slots__ = ("original", "weights", "permutation", "flipped", "divisor")

    def __init__(self, original, weights, permutation, flipped, divisor):
        self.original = tuple(original)
        self.weights = tuple(weights)
        self.permutation = tuple(permutation)
        self.flipped = flipped
        self.divisor = divisor

    def to_normalized(self, m):
        """Conjugate a map on the original variables into normalized ones."""
        r = perm_map(self.permutation)
        r_inv = perm_map(_inverse_perm(self.permutation))
        return compose(r, compose(m, r_inv))

    def to_original(self, m):
        r = perm_map(self.permutation)
        r_inv = perm_map(_inverse_perm(self.permutation))
        return compose(r_inv, compose(m, r))

    def grading(self):
        return Grading(self.weights)

    def original_grading(self):
        return Grading(self.original)

    def __eq__(self, other):
        if not isinstance(other, NormalizedGrading):
            return NotImplemented
        return (
            self.original == other.original
            and self.weights == other.weights
            and self.permutation == other.permutation
            and self.flipped == other.flipped
            and self.divisor == other.divisor
        )

    def __repr__(self):
        return (
            f"NormalizedGrading(original={self.original}, weights={self.weights}, "
            f"permutation={self.permutation}, flipped={self.flipped}, "
            f"divisor={self.divisor})"
        )


def normalize_weights(weights):
    """Canonicalize a weight triple.

    Divide by the gcd, negate if negatives outnumber positives, then
    permute: a single negative weight goes last with the other two in
    weakly decreasing order, and an all-nonnegative triple is stably
    sorted in decreasing order.
    """
    original = _check_weights(weights)
    if len(original) != 3:
        raise ArityMismatch("normalize_weights expects exactly three weights")
    divisor = gcd(gcd(abs(original[0]), abs(original[1])), abs(original[2]))
    if divisor == 0:
        divisor = 1
    scaled = [w // divisor for w in original]
    positives = sum(1 for w in scaled if w > 0)
    negatives = sum(1 for w in scaled if w < 0)
    flipped = positives < negatives
    if flipped:
        scaled = [-w for w in scaled]
    neg_idx = [i for i, w in enumerate(scaled) if w < 0]
    if not neg_idx:
        perm = tuple(sorted(range(3), key=lambda i: (-scaled[i], i)))
    elif len(neg_idx) == 1:
        k = neg_idx[0]
        others = [i for i in range(3) if i != k]
        if scaled[others[0]] < scaled[others[1]]:
            others.reverse()
        perm = (others[0], others[1], k)
    else:
        # cannot happen after the flip; kept as a hard guard
        raise MoreThanOneMixedSignPattern(f"unexpected sign pattern {scaled}")
    norm = tuple(scaled[p] for p in perm)
    return NormalizedGrading(original, norm, perm, flipped, divisor)


# ---------------------------------------------------------------------------
# threshold exponents for mixed-sign triples (a, b, -c), all entries positive

def q_hat(a, b, c):
    """Largest q with b*q < a and b*q ≡ a (mod c); may be non-positive.

    Needs gcd(b, c) == 1 so the congruence has solutions in every
    residue class.
    """
    if gcd(b, c) != 1:
        raise GcdPrecondition(f"gcd({b}, {c}) must be 1")
    q0 = (a * pow(b, -1, c)) % c
    cap = (a - 1) // b
    return q0 + c * ((cap - q0) // c)


def l_hat(a, b, c):
    """Smallest l >= 1 with a*l ≡ b (mod c).

    Needs gcd(a, c) == 1.  Always 1 <= l_hat <= c, with equality to c
    exactly when the residue solution is 0 (so in particular at c = 1).
    """
    if gcd(a, c) != 1:
        raise GcdPrecondition(f"gcd({a}, {c}) must be 1")
    l0 = (b * pow(a, -1, c)) % c
    return l0 if l0 else c


def plane_residue_grading(a, b, c):
    """The residue grading the plane restriction of a graded space map
    lives in when the space weights are (a, b, -c)."""
    return ResidueGrading((a, b), c)

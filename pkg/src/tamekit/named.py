"""Named example automorphisms, each verified against its inverse.

The registry holds the classical fixed examples plus a parametric
family: ``witness(a,b,c)`` builds the graded-wild witness for the
weights (a, b, -c), writing the third weight's magnitude so the name
stays free of signs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import UnknownName
from .maps import PolynomialMap, verify_inverse_pair, identity_map
from .poly import Polynomial

_X, _Y, _Z = Polynomial.variables(3)


def nagata_pair():
    """Nagata's automorphism and its inverse.

    The quadric w = x^2 - y*z is fixed, which is what makes the
    explicit inverse this short.
    """
    w = _X * _X - _Y * _Z
    nagata = PolynomialMap((_X + w * _Z, _Y + 2 * w * _X + w * w * _Z, _Z))
    inverse = PolynomialMap((_X - w * _Z, _Y - 2 * w * _X + w * w * _Z, _Z))
    assert verify_inverse_pair(nagata, inverse)
    return nagata, inverse


@dataclass(frozen=True)
class NamedExample:
    name: str
    map: PolynomialMap
    inverse: PolynomialMap
    notes: str


def _build_identity():
    ident = identity_map(3)
    return NamedExample("identity3", ident, ident, "The identity map in three variables.")


def _build_nagata():
    nagata, inverse = nagata_pair()
    return NamedExample(
        "nagata",
        nagata,
        inverse,
        "Nagata's automorphism: fixes the quadric x^2 - y*z, has Jacobian "
        "determinant 1, and is wild in three variables.",
    )


def _build_nagata_inverse():
    nagata, inverse = nagata_pair()
    return NamedExample(
        "nagata-inverse",
        inverse,
        nagata,
        "The inverse of Nagata's automorphism; it fixes the same quadric.",
    )


_BUILDERS = {
    "identity3": _build_identity,
    "nagata": _build_nagata,
    "nagata-inverse": _build_nagata_inverse,
}

_WITNESS_PATTERN = re.compile(r"witness\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\Z")


def example_names():
    """Registry names, the parametric family written with placeholders."""
    return sorted(_BUILDERS) + ["witness(a,b,c)"]


def get_example(name):
    """Look up a named example, building parametric witnesses on demand."""
    key = name.strip()
    builder = _BUILDERS.get(key)
    if builder is not None:
        return builder()
    match = _WITNESS_PATTERN.match(key)
    if match is not None:
        from .space import wild_witness  # deferred: space builds on this module too

        a, b, c = (int(s) for s in match.groups())
        witness = wild_witness((a, b, -c))
        witness.verify()
        return NamedExample(
            key,
            witness.map,
            witness.inverse,
            f"Graded-wild witness for the weights ({a}, {b}, {-c}); its "
            f"restricted drop term has total degree "
            f"{witness.certificate.violating_degree}, below the tame bound "
            f"{witness.certificate.threshold}.",
        )
    raise UnknownName(
        f"no example named {name!r}; known names: {', '.join(example_names())}"
    )

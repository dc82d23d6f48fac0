"""Polynomial vector fields on C^{3g}, stored by their coordinate images."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .polynomial import Polynomial, apply_images, mono_weight
from .variables import X, VarId, x_coordinates


class Derivation:
    """A weight-homogeneous derivation of Q[x_{i,j}].

    ``images[x]`` is the image of the coordinate ``x``; it must be
    homogeneous of weight ``weight(x) + self.weight`` (or zero).
    """

    __slots__ = ("genus", "weight", "images", "label")

    def __init__(self, genus: int, weight: int, images: Mapping[VarId, Polynomial],
                 label: str | None = None, *, check: bool = True):
        self.genus = genus
        self.weight = weight
        self.label = label
        coords = x_coordinates(genus)
        self.images = {v: images.get(v, Polynomial.zero(genus)) for v in coords}
        if check:
            extra = set(images) - set(coords)
            if extra:
                raise ValueError(f"images given for non-coordinates {sorted(extra)}")
            for v, img in self.images.items():
                if img.genus != genus:
                    raise ValueError(f"image of {v} has genus {img.genus}, expected {genus}")
                for m in img.terms:
                    if mono_weight(m) != v.weight + weight:
                        raise ValueError(
                            f"image of {v} is not homogeneous of weight {v.weight + weight}")
                    if any(u.kind != X for u, _ in m):
                        raise ValueError(f"image of {v} uses non-coordinate variables")

    @classmethod
    def zero(cls, genus: int, weight: int = 0) -> "Derivation":
        return cls(genus, weight, {}, check=False)

    def __call__(self, p: Polynomial) -> Polynomial:
        return self.apply(p)

    def apply(self, p: Polynomial) -> Polynomial:
        if p.genus != self.genus:
            raise ValueError(f"polynomial of genus {p.genus} vs derivation of genus {self.genus}")
        for v in p.variables():
            if v.kind != X:
                raise ValueError(f"derivation cannot act on {v}; eliminate it through pmap first")
        return apply_images(self.images, p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.genus == other.genus and self.images == other.images

    def __hash__(self):
        return hash((self.genus, frozenset(self.images.items())))

    def is_zero(self) -> bool:
        return all(not img for img in self.images.values())

    def _combine(self, other: "Derivation", sign: int) -> "Derivation":
        if other.genus != self.genus:
            raise ValueError("genus mismatch")
        if other.weight != self.weight and not (self.is_zero() or other.is_zero()):
            raise ValueError(f"cannot add derivations of weights {self.weight} and {other.weight}")
        w = self.weight if not self.is_zero() else other.weight
        imgs = {v: self.images[v] + (other.images[v] if sign > 0 else -other.images[v])
                for v in self.images}
        return Derivation(self.genus, w, imgs, check=False)

    def __add__(self, other: "Derivation") -> "Derivation":
        return self._combine(other, 1)

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self._combine(other, -1)

    def __neg__(self) -> "Derivation":
        return Derivation(self.genus, self.weight,
                          {v: -p for v, p in self.images.items()}, self.label, check=False)

    def times(self, coeff: Polynomial | int | Fraction) -> "Derivation":
        """The derivation ``coeff * self`` (a module operation, not composition)."""
        if isinstance(coeff, Polynomial):
            w = coeff.weight()
            if coeff.is_zero():
                return Derivation.zero(self.genus, self.weight)
            if w is None:
                raise ValueError("coefficient must be weight-homogeneous")
            return Derivation(self.genus, self.weight + w,
                              {v: coeff * p for v, p in self.images.items()}, check=False)
        return Derivation(self.genus, self.weight,
                          {v: p * coeff for v, p in self.images.items()}, check=False)

    def n_terms(self) -> int:
        return sum(len(p) for p in self.images.values())


def bracket(A: Derivation, B: Derivation) -> Derivation:
    """Commutator [A, B] = A o B - B o A, evaluated image-wise."""
    if A.genus != B.genus:
        raise ValueError("genus mismatch")
    imgs = {v: A.apply(B.images[v]) - B.apply(A.images[v]) for v in A.images}
    return Derivation(A.genus, A.weight + B.weight, imgs, check=False)

"""2×2 unimodular matrices and their action on the upper half-plane.

Pure value types: nothing here logs or holds state.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from amolab.utils.errors import BoundaryBlowup, NotElliptic

Scalar = Union[float, complex]

DET_DRIFT = 1e-12
POLE_FLOOR = 1e-300


@dataclass(frozen=True)
class Mat2:
    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_array(cls, array: np.ndarray) -> "Mat2":
        return cls(array[0, 0], array[0, 1], array[1, 0], array[1, 1])

    def to_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def is_real(self) -> bool:
        return all(not isinstance(entry, complex) or entry.imag == 0.0
                   for entry in (self.a, self.b, self.c, self.d))

    def det(self) -> Scalar:
        return self.a * self.d - self.b * self.c

    def trace(self) -> Scalar:
        return self.a + self.d

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def scaled(self, factor: Scalar) -> "Mat2":
        return Mat2(self.a * factor, self.b * factor, self.c * factor, self.d * factor)

    def inverse(self) -> "Mat2":
        det = self.det()
        return Mat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def renormalized(self) -> "Mat2":
        det = self.det()
        if abs(det - 1) <= DET_DRIFT:
            return self
        root = cmath.sqrt(det) if isinstance(det, complex) or det < 0 else math.sqrt(det)
        return self.scaled(1.0 / root)

    def frobenius_sq(self) -> float:
        return abs(self.a) ** 2 + abs(self.b) ** 2 + abs(self.c) ** 2 + abs(self.d) ** 2

    def max_abs_diff(self, other: "Mat2") -> float:
        return max(abs(self.a - other.a), abs(self.b - other.b),
                   abs(self.c - other.c), abs(self.d - other.d))


@dataclass(frozen=True)
class HPoint:
    re: float
    im: float

    def __post_init__(self):
        if not self.im > 0:
            raise ValueError(f"HPoint requires a positive imaginary part, got {self.im}")

    @classmethod
    def from_complex(cls, z: complex) -> "HPoint":
        return cls(float(z.real), float(z.imag))

    def to_complex(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"Interval requires lo <= hi, got [{self.lo}, {self.hi}]")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi


def mobius_act(A: Mat2, z: HPoint, allow_complex: bool = False) -> HPoint:
    if not allow_complex and not A.is_real:
        raise ValueError("complex matrices act on H only when allow_complex=True")

    w = z.to_complex()
    numerator = A.a * w + A.b
    denominator = A.c * w + A.d
    if abs(denominator) < POLE_FLOOR:
        raise BoundaryBlowup(f"pole of the Möbius map at z={w}")

    image = numerator / denominator
    if image.imag <= 0:
        raise BoundaryBlowup(f"image {image} left the upper half-plane")
    return HPoint.from_complex(image)


def phi(z: HPoint) -> float:
    return (1.0 + z.re * z.re + z.im * z.im) / (2.0 * z.im)


def hs_norm_sq(A: Mat2) -> float:
    return A.frobenius_sq()


def op_norm(A: Mat2) -> float:
    frob = A.frobenius_sq()
    det = abs(A.det())
    disc = max(frob * frob - 4.0 * det * det, 0.0)
    return math.sqrt((frob + math.sqrt(disc)) / 2.0)


def hyp_dist(z: HPoint, w: HPoint) -> float:
    gap = (z.re - w.re) ** 2 + (z.im - w.im) ** 2
    argument = 1.0 + gap / (2.0 * z.im * w.im)
    return math.acosh(max(argument, 1.0))


def rotation(theta: float) -> Mat2:
    angle = 2.0 * math.pi * theta
    cos, sin = math.cos(angle), math.sin(angle)
    return Mat2(cos, -sin, sin, cos)


def diag(a: float) -> Mat2:
    return Mat2(a, 0.0, 0.0, 1.0 / a)


def conjugate(B: Mat2, A: Mat2) -> Mat2:
    return B @ A @ B.inverse()


def elliptic_fixed_point(A: Mat2) -> HPoint:
    if not A.is_real:
        raise ValueError("elliptic_fixed_point needs a real matrix")

    a, b, c, d = (float(np.real(entry)) for entry in (A.a, A.b, A.c, A.d))
    tr = a + d
    det = a * d - b * c
    spread = 4.0 * det - tr * tr
    if spread <= 0.0:
        raise NotElliptic(f"|tr|={abs(tr)} is not below 2")
    if abs(c) < POLE_FLOOR:
        # upper-triangular unimodular matrices are never elliptic
        raise NotElliptic("c = 0 leaves no fixed point in H")

    return HPoint((a - d) / (2.0 * c), math.sqrt(spread) / (2.0 * abs(c)))


def upper_triangular_to(z: HPoint) -> Mat2:
    """Unimodular B with positive diagonal, B·i = z."""
    root = math.sqrt(z.im)
    return Mat2(root, z.re / root, 0.0, 1.0 / root)

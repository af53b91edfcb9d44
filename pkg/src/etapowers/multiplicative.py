"""Multiplicative representations ``a_n = f(A n + B) / scale`` of eta-power coefficients.

Each family's ``f`` is given on prime powers. Inert residue classes use
explicit tables; split classes run the degree-2 Hecke recurrence

    f(p^r) = f(p) f(p^(r-1)) - s p^w f(p^(r-2))

from ``f(p^0) = 1`` and the closed-form ``f(p)``, with ``s = +1`` except for
the fourteenth power at ``p = 7 mod 12`` where ``s = -1``. Everything is exact
integer arithmetic; the fourteenth power lives in ``Z[sqrt(-3)]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from .arithmetic import QuadReps, ResidueFlags, factorize, quad_reps, residue_flags
from .errors import FormulaError
from .series import EtaProduct


@dataclass(frozen=True)
class QuadIntSqrtMinus3:
    """``a + b*sqrt(-3)`` with integer ``a`` and ``b``."""

    a: int
    b: int = 0

    def __add__(self, other):
        other = _qi(other)
        return QuadIntSqrtMinus3(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadIntSqrtMinus3(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-_qi(other))

    def __rsub__(self, other):
        return _qi(other) - self

    def __mul__(self, other):
        other = _qi(other)
        return QuadIntSqrtMinus3(self.a * other.a - 3 * self.b * other.b,
                                 self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadIntSqrtMinus3):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    @property
    def is_real(self) -> bool:
        return self.b == 0

    @property
    def is_imaginary(self) -> bool:
        return self.a == 0

    def norm(self) -> int:
        return self.a * self.a + 3 * self.b * self.b

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt(-3))"


def _qi(x) -> QuadIntSqrtMinus3:
    return x if isinstance(x, QuadIntSqrtMinus3) else QuadIntSqrtMinus3(int(x), 0)


Value = Union[int, QuadIntSqrtMinus3]


@dataclass(frozen=True)
class FamilySpec:
    """One eta power (or product) with its multiplicative representation.

    ``split(p, reps, flags)`` returns ``(f(p), s)`` for primes handled by the
    recurrence, or ``None``; ``table(p, r, flags)`` handles every other prime.
    """

    name: str
    eta: EtaProduct
    A: int
    B: int
    scale: Value
    weight_shift: int
    split: Callable
    table: Callable
    sign_rule: str = ""

    def argument(self, n: int) -> int:
        return self.A * n + self.B


def _even(r, value):
    return value if r % 2 == 0 else 0


# -- tables and initial conditions, one pair per family ---------------------

def _l1_table(p, r, flags):
    if p % 12 in (1, 11):
        return _even(r, 1)
    if p % 12 in (5, 7):
        return _even(r, (-1) ** (r // 2))
    return 0


def _l2_table(p, r, flags):
    m = p % 12
    if m in (7, 11):
        return _even(r, 1)
    if m == 5:
        return _even(r, (-1) ** (r // 2))
    if m == 1:
        return (r + 1) if flags.quartic == 1 else (-1) ** r * (r + 1)
    return 0


def _l2v1_table(p, r, flags):
    if p == 2:
        return 1 if r == 1 else 0
    m = p % 8
    if m in (5, 7):
        return _even(r, 1)
    if m == 3:
        return _even(r, (-1) ** (r // 2))
    if m == 1:
        return (r + 1) if flags.octic == 1 else (-1) ** r * (r + 1)
    return 0


def _l2v2_table(p, r, flags):
    if p % 6 == 5:
        return _even(r, 1)
    if p % 6 == 1:
        if flags.cubic:
            return r + 1
        return (1, -1, 0)[r % 3]
    return 0


def _l3_table(p, r, flags):
    if p % 4 == 1:
        return _even(r, p ** (r // 2))
    if p % 4 == 3:
        return _even(r, (-1) ** (r // 2) * p ** (r // 2))
    return 0


def _no_split(p, reps, flags):
    return None


def _l4_table(p, r, flags):
    if p % 6 == 5:
        return _even(r, (-1) ** (r // 2) * p ** (r // 2))
    return 0


def _delta_sign(x):
    # -1 when x != 1 mod 3; applied to odd powers only
    return 1 if x % 3 == 1 else -1


def _l4_split(p, reps, flags):
    if p % 6 != 1:
        return None
    x, _ = _rep(reps, "xy")
    return _delta_sign(x) * 2 * x, 1


def _l4v1_table(p, r, flags):
    if p % 4 == 3:
        return _even(r, (-1) ** (r // 2) * p ** (r // 2))
    return 0


def _l4v1_split(p, reps, flags):
    if p % 4 != 1:
        return None
    u, v = _rep(reps, "uv")
    eps = (-1) ** ((u + v - 1) // 2)
    return eps * 2 * u, 1


def _l4v2_table(p, r, flags):
    if p % 3 == 2:
        return _even(r, (-1) ** (r // 2) * p ** (r // 2))
    return 0


def _l4v2_split(p, reps, flags):
    if p % 3 != 1:
        return None
    z, _ = _rep(reps, "zw")
    # sign chosen by z mod 3, see DESIGN notes in the README
    sign = -1 if z % 3 == 1 else 1
    return sign * z, 1


def _l6_table(p, r, flags):
    if p % 4 == 3:
        return _even(r, p ** r)
    return 0


def _l6_split(p, reps, flags):
    if p % 4 != 1:
        return None
    u, v = _rep(reps, "uv")
    return 2 * (u * u - v * v), 1


def _l8_table(p, r, flags):
    if p % 3 == 2:
        return _even(r, (-1) ** (r // 2) * p ** (3 * r // 2))
    return 0


def _l8_split(p, reps, flags):
    if p % 6 != 1:
        return None
    x, y = _rep(reps, "xy")
    return _delta_sign(x) * 2 * x * (x * x - 9 * y * y), 1


def phi(u: int, v: int) -> int:
    if (u % 6 == 1) != (v % 6 == 4):
        return -1
    return 1


def theta(u: int) -> int:
    return 1 if u % 6 == 3 else -1


def psi(x: int, y: int) -> int:
    if (x % 6 == 2) != (y % 4 == 1):
        return -1
    return 1


def omega(x: int, y: int) -> int:
    if x % 12 in (5, 7):
        return (-1) ** (y // 2)
    return (-1) ** (y // 2 + 1)


def _l10_table(p, r, flags):
    if p % 12 in (7, 11):
        return _even(r, p ** (2 * r))
    return 0


def _l10_split(p, reps, flags):
    if p % 12 == 5:
        u, v = _rep(reps, "uv")
        return 8 * phi(u, v) * u * v * (u * u - v * v), 1
    if p % 12 == 1:
        u, v = _rep(reps, "uv")
        return 2 * theta(u) * (2 * u * v + u * u - v * v) * (2 * u * v + v * v - u * u), 1
    return None


def _l14_table(p, r, flags):
    if p % 12 == 5:
        return QuadIntSqrtMinus3(_even(r, (-1) ** (r // 2) * p ** (3 * r)))
    if p % 12 == 11:
        return QuadIntSqrtMinus3(_even(r, p ** (3 * r)))
    return QuadIntSqrtMinus3(0)


def _l14_split(p, reps, flags):
    if p % 12 == 7:
        x, y = _rep(reps, "xy")
        b = 12 * (-1) ** ((p - 7) // 12) * psi(x, y) * x * y * (x * x - y * y) * (9 * y * y - x * x)
        return QuadIntSqrtMinus3(0, b), -1
    if p % 12 == 1:
        x, y = _rep(reps, "xy")
        t = x * x - 3 * y * y
        a = 2 * omega(x, y) * t * (6 * x * y + t) * (6 * x * y - t)
        return QuadIntSqrtMinus3(a), 1
    return None


def _rep(reps: QuadReps, kind: str) -> tuple:
    value = getattr(reps, kind)
    if value is None:
        raise FormulaError(f"prime {reps.p} lacks the {kind} representation")
    return value


def _power(ell):
    return EtaProduct.power(ell)


FAMILIES = {
    f.name: f
    for f in [
        FamilySpec("L1", _power(1), 24, 1, 1, 0, _no_split, _l1_table),
        FamilySpec("L2", _power(2), 12, 1, 1, 0, _no_split, _l2_table, "quartic"),
        FamilySpec("L2V1", EtaProduct([(1, 1), (2, 1)]), 8, 1, 1, 0, _no_split, _l2v1_table, "octic"),
        FamilySpec("L2V2", EtaProduct([(1, 1), (3, 1)]), 6, 1, 1, 0, _no_split, _l2v2_table, "cubic"),
        FamilySpec("L3", _power(3), 8, 1, 1, 1, _no_split, _l3_table),
        FamilySpec("L4", _power(4), 6, 1, 1, 1, _l4_split, _l4_table, "delta"),
        FamilySpec("L4V1", EtaProduct([(1, 2), (2, 2)]), 4, 1, 1, 1, _l4v1_split, _l4v1_table, "epsilon"),
        FamilySpec("L4V2", EtaProduct([(1, 2), (3, 2)]), 3, 1, 1, 1, _l4v2_split, _l4v2_table, "delta-tilde"),
        FamilySpec("L6", _power(6), 4, 1, 1, 2, _l6_split, _l6_table),
        FamilySpec("L8", _power(8), 3, 1, 1, 3, _l8_split, _l8_table, "delta"),
        FamilySpec("L10", _power(10), 12, 5, 48, 4, _l10_split, _l10_table, "phi,theta"),
        FamilySpec("L14", _power(14), 12, 7, QuadIntSqrtMinus3(0, 360), 6, _l14_split, _l14_table, "psi,omega"),
    ]
}

# powers with no multiplicative representation here (series only)
SERIES_ONLY = {"L12": _power(12), "L24": _power(24), "L26": _power(26)}


def family_eta(name: str) -> EtaProduct:
    if name in FAMILIES:
        return FAMILIES[name].eta
    if name in SERIES_ONLY:
        return SERIES_ONLY[name]
    raise KeyError(f"unknown family {name!r}")


def _family(family) -> FamilySpec:
    return FAMILIES[family] if isinstance(family, str) else family


def _flags(p: int) -> Optional[ResidueFlags]:
    return residue_flags(p) if p > 2 else None


def f_prime(family, p: int, reps: Optional[QuadReps] = None, flags=None) -> Value:
    """``f(p)``: the initial condition of the recurrence (or the table at r = 1)."""
    return f_prime_power(family, p, 1, reps, flags)


def f_prime_power(family, p: int, r: int, reps: Optional[QuadReps] = None, flags=None) -> Value:
    """``f(p^r)`` for the family's multiplicative function."""
    fam = _family(family)
    complex_valued = isinstance(fam.scale, QuadIntSqrtMinus3)
    if r == 0:
        return QuadIntSqrtMinus3(1) if complex_valued else 1
    if p in (2, 3) and fam.name in ("L10", "L14"):
        return QuadIntSqrtMinus3(0) if complex_valued else 0
    reps = reps if reps is not None else quad_reps(p)
    flags = flags if flags is not None else _flags(p)
    init = fam.split(p, reps, flags)
    if init is None:
        return fam.table(p, r, flags)
    fp, s = init
    w = p ** fam.weight_shift * s
    prev, cur = (QuadIntSqrtMinus3(1) if complex_valued else 1), fp
    for _ in range(r - 1):
        prev, cur = cur, fp * cur - w * prev
    return cur


def f_of(family, m: int) -> Value:
    """``f(m)`` assembled multiplicatively over the factorization of ``m``."""
    fam = _family(family)
    if m < 1:
        raise ValueError(f"f is defined on positive integers, got {m}")
    value = QuadIntSqrtMinus3(1) if isinstance(fam.scale, QuadIntSqrtMinus3) else 1
    for p, e in factorize(m):
        value = value * f_prime_power(fam, p, e)
        if value == 0:
            break
    return value


def coefficient_via_f(family, n: int) -> int:
    """Series coefficient ``a_n`` computed as ``f(A n + B) / scale``."""
    fam = _family(family)
    value = f_of(fam, fam.argument(n))
    if isinstance(fam.scale, QuadIntSqrtMinus3):
        if not isinstance(value, QuadIntSqrtMinus3):
            value = QuadIntSqrtMinus3(value)
        if value.a != 0 or value.b % fam.scale.b:
            raise FormulaError(f"{fam.name}: f({fam.argument(n)}) = {value} is not a multiple of {fam.scale}")
        return value.b // fam.scale.b
    if value % fam.scale:
        raise FormulaError(f"{fam.name}: f({fam.argument(n)}) = {value} not divisible by {fam.scale}")
    return value // fam.scale


L26_DENOMINATOR = 1019304


def coefficient_26(p: int) -> int:
    """Coefficient ``a_((p-13)/12)`` of ``prod (1 - q^m)^26`` for a prime ``p = 1 mod 12``."""
    if p % 12 != 1 or p < 13:
        raise ValueError(f"coefficient_26 needs a prime p = 1 mod 12, got {p}")
    reps = quad_reps(p)
    u, v = _rep(reps, "uv")
    x, y = _rep(reps, "xy")
    kappa = u if u % 3 == 0 else v
    product = ((u * u - x * x) * (v * v - x * x)
               * ((2 * u + x) ** 2 - 9 * y * y) * ((2 * u - x) ** 2 - 9 * y * y)
               * ((2 * v + x) ** 2 - 9 * y * y) * ((2 * v - x) ** 2 - 9 * y * y))
    if product % L26_DENOMINATOR:
        raise FormulaError(f"26th-power product at p={p} not divisible by {L26_DENOMINATOR}")
    return (-1) ** kappa * product // L26_DENOMINATOR

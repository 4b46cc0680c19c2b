from __future__ import annotations

import operator
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from sympy.functions.combinatorial.numbers import partition
from sympy.polys.densearith import dup_add, dup_div, dup_mul, dup_neg, dup_sub
from sympy.polys.domains import ZZ
from sympy.polys.factortools import dup_zz_cyclotomic_poly

from exceptions import InputError

Parts = Tuple[int, ...]


# ---------------------------------------------------------------------------
# Integer polynomials
# ---------------------------------------------------------------------------

class IntegerPolynomial(BaseModel):
    """Dense univariate polynomial with arbitrary-precision integer coefficients.

    Coefficients are stored lowest degree first; the zero polynomial is the empty tuple.
    Arithmetic is delegated to sympy's dense ``dup_*`` routines over ``ZZ``.
    """

    model_config = ConfigDict(frozen=True)

    coefficients: Tuple[int, ...] = ()

    @field_validator("coefficients", mode="before")
    @classmethod
    def _exact_integers(cls, value: Any) -> Tuple[int, ...]:
        # operator.index rejects floats and Fractions but accepts gmpy integers
        return tuple(operator.index(c) for c in value)

    @field_validator("coefficients")
    @classmethod
    def _strip_trailing_zeros(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        coefficients = list(value)
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        return tuple(coefficients)

    @classmethod
    def of(cls, *coefficients: int) -> IntegerPolynomial:
        return cls(coefficients=coefficients)

    @classmethod
    def from_dup(cls, f: List[Any]) -> IntegerPolynomial:
        """Build from a sympy dense list (highest degree first)."""
        return cls(coefficients=tuple(int(c) for c in reversed(f)))

    def to_dup(self) -> List[Any]:
        return [ZZ(c) for c in reversed(self.coefficients)]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading_coefficient(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def coefficient(self, i: int) -> int:
        return self.coefficients[i] if 0 <= i < len(self.coefficients) else 0

    def __call__(self, x: int | Fraction) -> int | Fraction:
        value: int | Fraction = 0
        for c in reversed(self.coefficients):
            value = value * x + c
        return value

    @staticmethod
    def _coerce(other: IntegerPolynomial | int) -> IntegerPolynomial:
        if isinstance(other, IntegerPolynomial):
            return other
        return IntegerPolynomial.of(other)

    def __add__(self, other: IntegerPolynomial | int) -> IntegerPolynomial:
        return IntegerPolynomial.from_dup(dup_add(self.to_dup(), self._coerce(other).to_dup(), ZZ))

    __radd__ = __add__

    def __sub__(self, other: IntegerPolynomial | int) -> IntegerPolynomial:
        return IntegerPolynomial.from_dup(dup_sub(self.to_dup(), self._coerce(other).to_dup(), ZZ))

    def __neg__(self) -> IntegerPolynomial:
        return IntegerPolynomial.from_dup(dup_neg(self.to_dup(), ZZ))

    def __mul__(self, other: IntegerPolynomial | int) -> IntegerPolynomial:
        return IntegerPolynomial.from_dup(dup_mul(self.to_dup(), self._coerce(other).to_dup(), ZZ))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> IntegerPolynomial:
        result = IntegerPolynomial.of(1)
        for _ in range(exponent):
            result = result * self
        return result

    def divmod(self, divisor: IntegerPolynomial) -> Tuple[IntegerPolynomial, IntegerPolynomial]:
        """Division with remainder over ZZ; exact whenever ``divisor`` has unit leading coefficient."""
        q, r = dup_div(self.to_dup(), divisor.to_dup(), ZZ)
        return IntegerPolynomial.from_dup(q), IntegerPolynomial.from_dup(r)

    def substitute_power(self, k: int) -> IntegerPolynomial:
        """Return p(z^k)."""
        coefficients = [0] * (k * self.degree + 1) if self.coefficients else []
        for i, c in enumerate(self.coefficients):
            coefficients[k * i] = c
        return IntegerPolynomial(coefficients=coefficients)

    def derivative(self) -> IntegerPolynomial:
        return IntegerPolynomial(coefficients=[i * c for i, c in enumerate(self.coefficients)][1:])

    def to_string(self, var: str = "z", descending: bool = False) -> str:
        """Human-readable form such as ``1+4z+z^2`` (or ``4t^2+3t+1`` when descending)."""
        if self.is_zero:
            return "0"
        order = range(self.degree, -1, -1) if descending else range(self.degree + 1)
        text = ""
        for i in order:
            c = self.coefficients[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if i == 0:
                term = str(magnitude)
            else:
                power = var if i == 1 else f"{var}^{i}"
                term = power if magnitude == 1 else f"{magnitude}{power}"
            text += term if not text and sign == "+" else sign + term
        return text

    def __str__(self) -> str:
        return self.to_string()


@lru_cache(maxsize=None)
def psi_factor(d: int) -> IntegerPolynomial:
    """The denominator building block Ψ_d: 1 - z for d = 1, the cyclotomic Φ_d otherwise.

    With this sign choice 1 - z^a is exactly the product of Ψ_d over the divisors d of a,
    and every Ψ_d has constant term 1.
    """
    if d < 1:
        raise InputError(f"cyclotomic index must be positive, got {d}")
    poly = IntegerPolynomial.from_dup(dup_zz_cyclotomic_poly(d, ZZ))
    return -poly if d == 1 else poly


# ---------------------------------------------------------------------------
# Combinatorial types
# ---------------------------------------------------------------------------

class CycleType(BaseModel):
    """Integer partition λ = (ℓ_1, ..., ℓ_m) of n, kept weakly decreasing."""

    model_config = ConfigDict(frozen=True)

    parts: Parts

    @field_validator("parts")
    @classmethod
    def _canonical(cls, value: Parts) -> Parts:
        if not value:
            raise ValueError("a cycle type needs at least one part")
        if any(part < 1 for part in value):
            raise ValueError(f"cycle lengths must be positive, got {value}")
        return tuple(sorted(value, reverse=True))

    @classmethod
    def of(cls, *parts: int) -> CycleType:
        try:
            return cls(parts=parts)
        except ValidationError as exc:
            raise InputError(f"invalid cycle type {parts}: {exc.errors()[0]['msg']}") from exc

    @classmethod
    def parse(cls, text: str) -> CycleType:
        """Parse a comma-separated multiset of cycle lengths such as ``"1,2,1"``."""
        try:
            parts = tuple(int(piece) for piece in text.split(",") if piece.strip())
        except ValueError as exc:
            raise InputError(f"cycle type must be comma-separated integers, got {text!r}") from exc
        return cls.of(*parts)

    @classmethod
    def identity(cls, n: int) -> CycleType:
        return cls.of(*([1] * n))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def m(self) -> int:
        return len(self.parts)

    def label(self) -> str:
        return "(" + ",".join(str(part) for part in self.parts) + ")"

    def __str__(self) -> str:
        return self.label()


class SetPartition(BaseModel):
    """Set partition of {1, ..., m}; blocks ascending, ordered by minimum element."""

    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=1)
    blocks: Tuple[Tuple[int, ...], ...]

    @model_validator(mode="before")
    @classmethod
    def _canonical_form(cls, data: Any) -> Any:
        if isinstance(data, dict) and "blocks" in data:
            blocks = [tuple(sorted(block)) for block in data["blocks"]]
            blocks.sort(key=lambda block: block[0] if block else 0)
            data = {**data, "blocks": tuple(blocks)}
        return data

    @model_validator(mode="after")
    def _covers_ground_set(self) -> SetPartition:
        if any(not block for block in self.blocks):
            raise ValueError("set partitions have no empty block")
        elements = [j for block in self.blocks for j in block]
        if len(elements) != len(set(elements)):
            raise ValueError(f"blocks of {self.blocks} are not disjoint")
        if set(elements) != set(range(1, self.m + 1)):
            raise ValueError(f"{self.blocks} does not partition {{1..{self.m}}}")
        return self

    @classmethod
    def of(cls, m: int, blocks: Any) -> SetPartition:
        try:
            return cls(m=m, blocks=blocks)
        except ValidationError as exc:
            raise InputError(f"invalid set partition {blocks}: {exc.errors()[0]['msg']}") from exc

    @classmethod
    def one_block(cls, m: int) -> SetPartition:
        return cls(m=m, blocks=(tuple(range(1, m + 1)),))

    @classmethod
    def singletons(cls, m: int) -> SetPartition:
        return cls(m=m, blocks=tuple((j,) for j in range(1, m + 1)))

    def __len__(self) -> int:
        return len(self.blocks)

    def label(self) -> str:
        """Table-style label, ``12|3``; elements are comma-separated once m ≥ 10."""
        joiner = "," if self.m >= 10 else ""
        return "|".join(joiner.join(str(j) for j in block) for block in self.blocks)

    def __str__(self) -> str:
        return self.label()


def component_labels(m: int, edges: Tuple[Tuple[int, int], ...]) -> Optional[List[int]]:
    """Union-find over vertices 1..m; returns the root of each vertex, or None on a cycle."""
    parent = list(range(m + 1))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri == rj:
            return None
        parent[max(ri, rj)] = min(ri, rj)
    return [find(i) for i in range(m + 1)]


class Forest(BaseModel):
    """Labeled forest on the vertex set {1, ..., m}."""

    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=1)
    edges: Tuple[Tuple[int, int], ...] = ()

    @field_validator("edges", mode="before")
    @classmethod
    def _sorted_edges(cls, value: Any) -> Any:
        return tuple(sorted((min(i, j), max(i, j)) for i, j in value))

    @model_validator(mode="after")
    def _acyclic(self) -> Forest:
        for i, j in self.edges:
            if not 1 <= i < j <= self.m:
                raise ValueError(f"edge {(i, j)} is not a pair of distinct vertices in 1..{self.m}")
        if component_labels(self.m, self.edges) is None:
            raise ValueError(f"edges {self.edges} contain a cycle")
        return self

    def degree(self, vertex: int) -> int:
        return sum(1 for edge in self.edges if vertex in edge)

    def components(self) -> SetPartition:
        labels = component_labels(self.m, self.edges)
        blocks: Dict[int, List[int]] = {}
        for vertex in range(1, self.m + 1):
            blocks.setdefault(labels[vertex], []).append(vertex)
        return SetPartition(m=self.m, blocks=tuple(tuple(block) for block in blocks.values()))


# ---------------------------------------------------------------------------
# Quasipolynomials and rational functions
# ---------------------------------------------------------------------------

class Quasipolynomial(BaseModel):
    """Period-2 quasipolynomial: ``even_branch`` on even t, ``odd_branch`` on odd t."""

    model_config = ConfigDict(frozen=True)

    even_branch: IntegerPolynomial
    odd_branch: IntegerPolynomial

    def __call__(self, t: int) -> int:
        branch = self.even_branch if t % 2 == 0 else self.odd_branch
        return branch(t)

    @property
    def period(self) -> int:
        return 1 if self.even_branch == self.odd_branch else 2

    def to_string(self, var: str = "t") -> str:
        even = self.even_branch.to_string(var, descending=True)
        if self.period == 1:
            return even
        odd = self.odd_branch.to_string(var, descending=True)
        return f"{even} if {var} even; {odd} if {var} odd"


class RationalFunction(BaseModel):
    """Numerator over a factored denominator ∏ Ψ_d^e.

    ``denominator_factors`` holds pairs (d, e) with e ≥ 1, sorted by d. Since every Ψ_d has
    constant term 1 the sign of the function lives entirely in the numerator.
    """

    model_config = ConfigDict(frozen=True)

    numerator: IntegerPolynomial
    denominator_factors: Tuple[Tuple[int, int], ...] = ()

    @field_validator("denominator_factors", mode="before")
    @classmethod
    def _merge_factors(cls, value: Any) -> Any:
        exponents: Dict[int, int] = {}
        for d, e in value:
            exponents[d] = exponents.get(d, 0) + e
        return tuple((d, e) for d, e in sorted(exponents.items()) if e != 0)

    @field_validator("denominator_factors")
    @classmethod
    def _positive_factors(cls, value: Tuple[Tuple[int, int], ...]) -> Tuple[Tuple[int, int], ...]:
        for d, e in value:
            if d < 1 or e < 1:
                raise ValueError(f"denominator factor (Ψ_{d})^{e} is not allowed")
        return value

    def denominator(self) -> IntegerPolynomial:
        result = IntegerPolynomial.of(1)
        for d, e in self.denominator_factors:
            result = result * psi_factor(d) ** e
        return result

    def pole_order(self, d: int) -> int:
        return dict(self.denominator_factors).get(d, 0)

    def to_string(self, var: str = "z") -> str:
        numerator = self.numerator.to_string(var)
        if not self.denominator_factors:
            return numerator
        pieces = []
        for d, e in self.denominator_factors:
            if d == 1:
                base = f"(1-{var})"
            elif d == 2:
                base = f"(1+{var})"
            else:
                base = f"({psi_factor(d).to_string(var)})"
            pieces.append(base if e == 1 else f"{base}^{e}")
        if sum(1 for c in self.numerator.coefficients if c != 0) > 1:
            numerator = f"({numerator})"
        return f"{numerator}/({''.join(pieces)})" if len(pieces) > 1 else f"{numerator}/{pieces[0]}"

    def __str__(self) -> str:
        return self.to_string()


class PartialFractionTail(BaseModel):
    """rf = polynomial_part + Σ_j tail_numerators[j-1] / (1+z)^j."""

    model_config = ConfigDict(frozen=True)

    polynomial_part: IntegerPolynomial
    tail_numerators: Tuple[int, ...] = ()


# ---------------------------------------------------------------------------
# Characters
# ---------------------------------------------------------------------------

def _check_partition_keys(n: int, keys: Any) -> None:
    keys = list(keys)
    for key in keys:
        if sum(key) != n or list(key) != sorted(key, reverse=True) or any(p < 1 for p in key):
            raise ValueError(f"{key} is not a partition of {n}")
    classes = int(partition(n))
    if len(set(keys)) != classes:
        raise ValueError(f"class function on S_{n} must be defined on all {classes} classes")


class ClassFunction(BaseModel):
    """Integer-valued function on the conjugacy classes of S_n, keyed by cycle-type parts."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    values: Dict[Parts, int]

    @model_validator(mode="after")
    def _defined_on_every_class(self) -> ClassFunction:
        _check_partition_keys(self.n, self.values.keys())
        return self

    def __call__(self, cycle_type: CycleType | Parts) -> int:
        parts = cycle_type.parts if isinstance(cycle_type, CycleType) else tuple(cycle_type)
        return self.values[parts]

    def __add__(self, other: ClassFunction) -> ClassFunction:
        return ClassFunction(n=self.n, values={k: v + other.values[k] for k, v in self.values.items()})

    def scale(self, factor: int) -> ClassFunction:
        return ClassFunction(n=self.n, values={k: factor * v for k, v in self.values.items()})


class CharacterDecomposition(BaseModel):
    """Virtual character as irrep label (partition of n) -> integer multiplicity."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    multiplicities: Dict[Parts, int]

    @property
    def is_effective(self) -> bool:
        return all(mult >= 0 for mult in self.multiplicities.values())

    def nonzero(self) -> Dict[Parts, int]:
        return {mu: mult for mu, mult in self.multiplicities.items() if mult != 0}

    def multiplicity(self, mu: Parts) -> int:
        return self.multiplicities.get(tuple(mu), 0)


class PhiData(BaseModel):
    """The equivariant φ-series of Π_n, coefficientwise and with its (1+z)-power tail.

    φ = Σ_{i<tail_start} φ_i z^i + Σ_j T_j·G_j(z), where G_j = Σ_{i≥s} (-1)^(i-s)·C(i+j-1, j-1)·z^i,
    s = tail_start and T_j = tail_characters[j-1].
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    polynomial_coefficients: Tuple[ClassFunction, ...]
    decompositions: Tuple[CharacterDecomposition, ...]
    tail_start: int
    tail: Dict[Parts, Tuple[int, ...]]
    tail_characters: Tuple[ClassFunction, ...] = ()
    tail_decompositions: Tuple[CharacterDecomposition, ...] = ()
    is_polynomial: bool
    is_effective: bool

    @model_validator(mode="after")
    def _effective_implies_polynomial(self) -> PhiData:
        if self.is_effective and not self.is_polynomial:
            raise ValueError("an effective φ-series is necessarily a polynomial")
        return self


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

class OracleComparison(BaseModel):
    cycle_type: Parts
    t: int
    oracle_count: int
    formula_value: int

    @property
    def match(self) -> bool:
        return self.oracle_count == self.formula_value


class OracleSweepReport(BaseModel):
    n_max: int
    t_max: int
    comparisons: List[OracleComparison] = []

    @property
    def mismatches(self) -> List[OracleComparison]:
        return [c for c in self.comparisons if not c.match]

    @property
    def passed(self) -> bool:
        return not self.mismatches


class Verdict(BaseModel):
    n: int
    is_polynomial: bool
    is_effective: bool
    non_polynomial_witness: Optional[Parts] = None
    # (where, irrep label, multiplicity), where is "phi_i" or "tail_j"
    negative_multiplicity_witness: Optional[Tuple[str, Parts, int]] = None


class ConjectureReport(BaseModel):
    conjecture: str
    scope: str
    passed: bool
    details: List[str] = []
    decomposition: Optional[Dict[Parts, int]] = None


def _assert_exact_leaves(value: Any, path: str = "results") -> None:
    if isinstance(value, dict):
        for key, item in value.items():
            _assert_exact_leaves(item, f"{path}.{key}")
    elif isinstance(value, list):
        for i, item in enumerate(value):
            _assert_exact_leaves(item, f"{path}[{i}]")
    elif isinstance(value, bool) or value is None or isinstance(value, str):
        return
    else:
        raise ValueError(f"{path} must hold exact decimal strings, found {type(value).__name__}")


class ReportDocument(BaseModel):
    """Machine-readable output of one command; every number is an exact decimal string."""

    command: str
    inputs: Dict[str, Any] = {}
    results: Dict[str, Any] = {}
    oracle: Optional[Dict[str, Any]] = None

    @model_validator(mode="after")
    def _exact_numbers(self) -> ReportDocument:
        _assert_exact_leaves(self.inputs, "inputs")
        _assert_exact_leaves(self.results, "results")
        if self.oracle is not None:
            _assert_exact_leaves(self.oracle, "oracle")
        return self

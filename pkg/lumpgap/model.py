# lumpgap/model.py
"""
The six-state block-structured symmetric chain.

States 0..5 form the true blocks {0,1}, {2,3}, {4,5}. Inside block i the chain
moves with the 2x2 matrix [[a_i, b_i], [b_i, a_i]]; between blocks i and j every
entry equals c_ij. Symmetry makes the chain reversible for the uniform law and
the block partition is lumpable, so spec(P) splits into the quotient spectrum
{1, kappa2, kappa3} and the local modes beta_r = a_r - b_r.
"""
import math
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union

import numpy as np

from .compression import relaxed_benchmark
from .config import MAX_MODEL_MAGNITUDE, ROW_SUM_TOL, SHORTCUT_TOL, TIE_TOL
from .errors import ConstraintViolationError, InternalConsistencyError, ModelParseError
from .linalg import SymMatrix, eigen_symmetric, multiply
from .partitions import TRUE_BLOCKS

MODEL_KEYS: Tuple[str, ...] = ("a1", "b1", "a2", "b2", "a3", "b3", "c12", "c13", "c23")

ROW_CONSTRAINTS: Tuple[str, ...] = (
    "row 1: a1 + b1 + 2*c12 + 2*c13 = 1",
    "row 2: a2 + b2 + 2*c12 + 2*c23 = 1",
    "row 3: a3 + b3 + 2*c13 + 2*c23 = 1",
)


@dataclass(frozen=True)
class BlockModelParams:
    """The nine scalars defining P. `decimals` keeps the exact strings a model file held."""
    a: Tuple[float, float, float]
    b: Tuple[float, float, float]
    c12: float
    c13: float
    c23: float
    decimals: Optional[Tuple[Tuple[str, str], ...]] = field(default=None, compare=False, repr=False)

    @classmethod
    def from_decimal_strings(cls, values: Mapping[str, str]) -> "BlockModelParams":
        d = {k: Decimal(str(values[k]).strip()) for k in MODEL_KEYS}
        return cls(
            a=(float(d["a1"]), float(d["a2"]), float(d["a3"])),
            b=(float(d["b1"]), float(d["b2"]), float(d["b3"])),
            c12=float(d["c12"]), c13=float(d["c13"]), c23=float(d["c23"]),
            decimals=tuple((k, str(values[k]).strip()) for k in MODEL_KEYS),
        )

    def coupling(self, i: int, j: int) -> float:
        """c_ij for 1-based blocks i != j."""
        pair = tuple(sorted((i, j)))
        return {(1, 2): self.c12, (1, 3): self.c13, (2, 3): self.c23}[pair]

    def as_dict(self) -> Dict[str, float]:
        return {
            "a1": self.a[0], "b1": self.b[0], "a2": self.a[1], "b2": self.b[1],
            "a3": self.a[2], "b3": self.b[2], "c12": self.c12, "c13": self.c13, "c23": self.c23,
        }

    def as_strings(self) -> Dict[str, str]:
        """Decimal strings for report echo; floats fall back to repr."""
        if self.decimals is not None:
            return dict(self.decimals)
        return {k: repr(v) for k, v in self.as_dict().items()}


@dataclass(frozen=True)
class ConstraintCheck:
    name: str
    residual: float
    passed: bool


def row_residuals(params: BlockModelParams) -> Tuple[float, float, float]:
    a, b = params.a, params.b
    c12, c13, c23 = params.c12, params.c13, params.c23
    return (
        math.fsum([a[0], b[0], 2 * c12, 2 * c13, -1.0]),
        math.fsum([a[1], b[1], 2 * c12, 2 * c23, -1.0]),
        math.fsum([a[2], b[2], 2 * c13, 2 * c23, -1.0]),
    )


def _bound_violations(params: BlockModelParams) -> List[Tuple[str, float]]:
    out = []
    for key, value in params.as_dict().items():
        if not (0.0 <= value <= 1.0):
            excess = -value if value < 0.0 else value - 1.0
            out.append((f"{key} in [0, 1]", excess))
    return out


def check_constraints(params: BlockModelParams) -> List[ConstraintCheck]:
    """Per-constraint diagnostics; never raises."""
    checks = [
        ConstraintCheck(name, res, abs(res) <= ROW_SUM_TOL)
        for name, res in zip(ROW_CONSTRAINTS, row_residuals(params))
    ]
    bounds = _bound_violations(params)
    worst = max((v for _, v in bounds), default=0.0)
    checks.append(ConstraintCheck("all entries in [0, 1]", worst, not bounds))
    return checks


def validate(params: BlockModelParams) -> BlockModelParams:
    """Return params unchanged, or raise naming every violated constraint."""
    violations = _bound_violations(params)
    for name, res in zip(ROW_CONSTRAINTS, row_residuals(params)):
        if abs(res) > ROW_SUM_TOL:
            violations.append((name, res))
    if violations:
        raise ConstraintViolationError(violations)
    return params


def parse_model(text: str, path: Optional[str] = None) -> BlockModelParams:
    """Parse the flat `key = value` model format (comments start with '#')."""
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        sep = "=" if "=" in line else (":" if ":" in line else None)
        if sep is None:
            raise ModelParseError(f"expected 'key = value', got {raw.strip()!r}", path, lineno)
        key, value = (part.strip() for part in line.split(sep, 1))
        if key not in MODEL_KEYS:
            raise ModelParseError(f"unknown key {key!r}", path, lineno, key)
        if key in values:
            raise ModelParseError(f"duplicate key {key!r}", path, lineno, key)
        try:
            number = Decimal(value)
        except InvalidOperation:
            raise ModelParseError(f"value for {key!r} is not a decimal number: {value!r}",
                                  path, lineno, key) from None
        if not number.is_finite() or not math.isfinite(float(number)):
            raise ModelParseError(f"value for {key!r} must be finite, got {value!r}", path, lineno, key)
        if abs(float(number)) > MAX_MODEL_MAGNITUDE:
            raise ModelParseError(f"value for {key!r} is out of range: {value!r}", path, lineno, key)
        values[key] = value

    for key in MODEL_KEYS:
        if key not in values:
            raise ModelParseError(f"missing key {key!r}", path, key=key)
    return BlockModelParams.from_decimal_strings(values)


def load_model(path: Union[str, Path]) -> BlockModelParams:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ModelParseError(f"cannot read model file: {e}", str(path)) from None
    return parse_model(text, str(path))


def build_P(params: BlockModelParams) -> SymMatrix:
    p = np.zeros((6, 6))
    for i, (s, t) in enumerate(TRUE_BLOCKS):
        p[s, s] = p[t, t] = params.a[i]
        p[s, t] = p[t, s] = params.b[i]
    for i in range(3):
        for j in range(i + 1, 3):
            c = params.coupling(i + 1, j + 1)
            for s in TRUE_BLOCKS[i]:
                for t in TRUE_BLOCKS[j]:
                    p[s, t] = p[t, s] = c
    return SymMatrix(p)


def build_T(params: BlockModelParams) -> SymMatrix:
    """T = P^2."""
    P = build_P(params)
    return multiply(P, P)


def quotient_K(params: BlockModelParams) -> SymMatrix:
    k = np.diag([params.a[i] + params.b[i] for i in range(3)])
    for i in range(3):
        for j in range(i + 1, 3):
            k[i, j] = k[j, i] = 2.0 * params.coupling(i + 1, j + 1)
    return SymMatrix(k)


def quotient_L(params: BlockModelParams) -> SymMatrix:
    """L = K^2."""
    K = quotient_K(params)
    return multiply(K, K)


def macro_local_basis() -> np.ndarray:
    """Columns u_1, u_2, u_3, w_1, w_2, w_3 (orthonormal)."""
    basis = np.zeros((6, 6))
    root = 1.0 / np.sqrt(2.0)
    for i, (s, t) in enumerate(TRUE_BLOCKS):
        basis[s, i] = basis[t, i] = root
        basis[s, 3 + i] = root
        basis[t, 3 + i] = -root
    return basis


def block_diagonalize(params: BlockModelParams) -> np.ndarray:
    """B^T P B; equals diag(K, beta_1, beta_2, beta_3) up to rounding."""
    basis = macro_local_basis()
    return basis.T @ build_P(params).entries @ basis


@dataclass(frozen=True)
class SpectralSummary:
    """Macro eigenvalues, local modes and the relaxed benchmark of one model.

    `argmax` holds the 1-based blocks r with t_r within TIE_TOL of t_star.
    """
    kappa2: float
    kappa3: float
    beta: Tuple[float, float, float]
    t: Tuple[float, float, float]
    t_star: float
    argmax: Tuple[int, ...]
    relaxed_benchmark: float
    spectrum_T: Tuple[float, ...]

    @property
    def a1_holds(self) -> bool:
        return self.kappa2 ** 2 > self.t_star > self.kappa3 ** 2


def derive_spectral(params: BlockModelParams) -> SpectralSummary:
    K = quotient_K(params)
    k_values = eigen_symmetric(K).eigenvalues
    kappa2, kappa3 = float(k_values[1]), float(k_values[2])

    beta = tuple(params.a[r] - params.b[r] for r in range(3))
    t = tuple(x * x for x in beta)
    t_star = max(t)
    argmax = tuple(r + 1 for r in range(3) if t_star - t[r] < TIE_TOL)

    T = build_T(params)
    relaxed = relaxed_benchmark(T, 3)
    summary = SpectralSummary(
        kappa2=kappa2, kappa3=kappa3, beta=beta, t=t, t_star=t_star, argmax=argmax,
        relaxed_benchmark=relaxed,
        spectrum_T=tuple(float(x) for x in eigen_symmetric(T).eigenvalues),
    )
    if summary.a1_holds:
        shortcut = kappa2 ** 2 * t_star
        if abs(relaxed - shortcut) > SHORTCUT_TOL:
            raise InternalConsistencyError(
                f"relaxed benchmark {relaxed!r} differs from kappa2^2 * t_* = {shortcut!r}",
                abs(relaxed - shortcut),
            )
    return summary


@dataclass(frozen=True)
class RegimeReport:
    """Local-mode-dominated ordering (A1) and nondegeneracy (A2) with their margins."""
    a1: bool
    a1_upper_margin: float
    a1_lower_margin: float
    a2: bool
    a2_margins: Tuple[Tuple[int, float], ...]

    @property
    def holds(self) -> bool:
        return self.a1 and self.a2


def check_regime(s: SpectralSummary, L: SymMatrix) -> RegimeReport:
    k2, k3 = s.kappa2 ** 2, s.kappa3 ** 2
    upper = k2 - s.t_star
    lower = s.t_star - k3
    margins = tuple((r, k2 - (3.0 * L[r - 1, r - 1] - 1.0) / 2.0) for r in s.argmax)
    return RegimeReport(
        a1=upper > 0.0 and lower > 0.0,
        a1_upper_margin=upper,
        a1_lower_margin=lower,
        a2=all(m > 0.0 for _, m in margins),
        a2_margins=margins,
    )

"""Dense symmetric and Hermitian spectra, inertia and spectral splitting."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

import numpy as np

from penergy import _eigen

MAX_ORDER = 4096
EXACT_MAX_ORDER = 64
EXACT_MAX_BITS = 4096
EPS = float(np.finfo(np.float64).eps)


class NotSymmetricError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


class PrecisionError(ArithmeticError):
    pass


def default_tol(n: int) -> float:
    """Relative zero-classification tolerance for an order-``n`` matrix."""
    return 64.0 * EPS * max(n, 1)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SymmetricMatrix:
    """Dense real symmetric matrix; symmetry is checked exactly."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix has non-finite entries")
        if not np.array_equal(a, a.T):
            raise NotSymmetricError("matrix is not symmetric")
        object.__setattr__(self, "entries", _frozen(a))

    @classmethod
    def symmetrized(cls, a) -> SymmetricMatrix:
        a = np.asarray(a, dtype=np.float64)
        return cls(0.5 * (a + a.T))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def scale(self) -> float:
        """Max absolute row sum, an upper bound on the spectral radius."""
        return float(np.abs(self.entries).sum(axis=1).max())

    def __eq__(self, other):
        if not isinstance(other, SymmetricMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """``X + iY`` with ``X`` symmetric and ``Y`` antisymmetric."""

    real_part: np.ndarray
    imag_part: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.real_part, dtype=np.float64)
        y = np.asarray(self.imag_part, dtype=np.float64)
        if x.ndim != 2 or x.shape[0] != x.shape[1] or x.shape != y.shape or x.shape[0] < 1:
            raise ValueError("real and imaginary parts must be equal-sized square matrices")
        if not np.array_equal(x, x.T):
            raise NotSymmetricError("real part is not symmetric")
        if not np.array_equal(y, -y.T):
            raise NotSymmetricError("imaginary part is not antisymmetric")
        object.__setattr__(self, "real_part", _frozen(x))
        object.__setattr__(self, "imag_part", _frozen(y))

    @classmethod
    def from_complex(cls, h) -> HermitianMatrix:
        h = np.asarray(h, dtype=np.complex128)
        h = 0.5 * (h + h.conj().T)
        return cls(h.real, h.imag)

    @property
    def n(self) -> int:
        return self.real_part.shape[0]

    def to_complex(self) -> np.ndarray:
        return self.real_part + 1j * self.imag_part


class Inertia(NamedTuple):
    n_pos: int
    n_zero: int
    n_neg: int


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues in non-increasing order plus the scale used for tolerances."""

    values: np.ndarray
    scale: float

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64).ravel()
        if np.any(np.diff(v) > 0):
            raise ValueError("spectrum values must be non-increasing")
        if self.scale < 0:
            raise ValueError("scale must be non-negative")
        object.__setattr__(self, "values", _frozen(v))
        object.__setattr__(self, "scale", float(self.scale))

    @classmethod
    def from_values(cls, values: Iterable[float], scale: float | None = None) -> Spectrum:
        v = np.sort(np.asarray(list(values), dtype=np.float64))[::-1]
        if scale is None:
            scale = float(np.abs(v).max()) if v.size else 0.0
        return cls(v, scale)

    def __len__(self):
        return self.values.shape[0]

    def __iter__(self):
        return iter(self.values.tolist())

    @property
    def threshold(self) -> float:
        return default_tol(len(self)) * self.scale

    def near_zero(self, tol: float | None = None, factor: float = 10.0) -> bool:
        """True when some eigenvalue sits within ``factor`` times the zero band."""
        if tol is None:
            tol = default_tol(len(self))
        return bool(np.any(np.abs(self.values) <= factor * tol * self.scale))


def _check_order(n: int, cap: int):
    if n > cap:
        raise ValueError(f"matrix order {n} exceeds cap {cap}")


def eigenvalues(m: SymmetricMatrix, cap: int = MAX_ORDER) -> Spectrum:
    """All eigenvalues of ``m``, non-increasing."""
    _check_order(m.n, cap)
    d, status = _eigen.symmetric_eigvals(np.ascontiguousarray(m.entries))
    if status:
        raise ConvergenceError(f"QL iteration did not converge for eigenvalue {status - 1}")
    return Spectrum(np.sort(d)[::-1], m.scale)


def eigh(m: SymmetricMatrix, cap: int = MAX_ORDER) -> tuple[Spectrum, np.ndarray]:
    """Eigenvalues (non-increasing) and matching orthonormal eigenvector columns."""
    _check_order(m.n, cap)
    d, z, status = _eigen.symmetric_eigh(np.ascontiguousarray(m.entries))
    if status:
        raise ConvergenceError(f"QL iteration did not converge for eigenvalue {status - 1}")
    order = np.argsort(d, kind="stable")[::-1]
    return Spectrum(d[order], m.scale), z[:, order]


def raw_eigenvalues(a: np.ndarray) -> np.ndarray:
    """Unsorted eigenvalues of a contiguous float64 symmetric array.

    Skips validation; used by the fuzzing loops where the input is
    symmetric by construction.
    """
    d, status = _eigen.symmetric_eigvals(a)
    if status:
        raise ConvergenceError(f"QL iteration did not converge for eigenvalue {status - 1}")
    return d


def inertia(s: Spectrum, tol: float | None = None) -> Inertia:
    if tol is None:
        tol = default_tol(len(s))
    if tol < 0:
        raise ValueError("tol must be non-negative")
    thr = tol * s.scale
    v = s.values
    pos = int(np.count_nonzero(v > thr))
    neg = int(np.count_nonzero(v < -thr))
    return Inertia(pos, len(v) - pos - neg, neg)


def exact_inertia(m: SymmetricMatrix, max_bits: int = EXACT_MAX_BITS) -> Inertia:
    """Exact signature of an integer symmetric matrix.

    Symmetric congruence elimination over the rationals with 1x1 pivots
    on nonzero diagonal entries and 2x2 pivots on zero-diagonal pairs.
    """
    n = m.n
    if n > EXACT_MAX_ORDER:
        raise ValueError(f"exact inertia supports order <= {EXACT_MAX_ORDER}")
    a = m.entries
    if not np.array_equal(a, np.round(a)):
        raise ValueError("exact inertia needs integer entries")
    w = [[Fraction(int(x)) for x in row] for row in a]
    pos = neg = 0
    idx = list(range(n))
    while idx:
        piv = next((i for i in idx if w[i][i] != 0), None)
        if piv is not None:
            d = w[piv][piv]
            if d > 0:
                pos += 1
            else:
                neg += 1
            idx.remove(piv)
            col = [w[i][piv] for i in idx]
            for a_i, i in enumerate(idx):
                if col[a_i] == 0:
                    continue
                f = col[a_i] / d
                row = w[i]
                prow = w[piv]
                for j in idx:
                    row[j] -= f * prow[j]
        else:
            pair = next(((i, j) for i in idx for j in idx if i < j and w[i][j] != 0), None)
            if pair is None:
                break
            i0, j0 = pair
            # [[0, b], [b, 0]] has one positive and one negative eigenvalue
            pos += 1
            neg += 1
            b = w[i0][j0]
            idx.remove(i0)
            idx.remove(j0)
            # inverse of [[a_ii, b], [b, a_jj]] with a_ii = a_jj = 0 is [[0, 1/b], [1/b, 0]]
            ci = [w[r][i0] for r in idx]
            cj = [w[r][j0] for r in idx]
            for a_r, r in enumerate(idx):
                for a_s, s in enumerate(idx):
                    w[r][s] -= (ci[a_r] * cj[a_s] + cj[a_r] * ci[a_s]) / b
        for i in idx:
            for j in idx:
                x = w[i][j]
                if x.numerator.bit_length() > max_bits or x.denominator.bit_length() > max_bits:
                    raise PrecisionError("rational entries exceeded the configured precision")
    return Inertia(pos, n - pos - neg, neg)


def spectral_parts(m: SymmetricMatrix, tol: float | None = None) -> tuple[SymmetricMatrix, SymmetricMatrix]:
    """Split ``m = B - C`` into its positive and negative spectral parts."""
    s, z = eigh(m)
    if tol is None:
        tol = default_tol(m.n)
    thr = tol * s.scale
    lam = s.values
    pos = np.where(lam > thr, lam, 0.0)
    neg = np.where(lam < -thr, -lam, 0.0)
    b = (z * pos) @ z.T
    c = (z * neg) @ z.T
    return SymmetricMatrix.symmetrized(b), SymmetricMatrix.symmetrized(c)


def hermitian_embed(h: HermitianMatrix) -> SymmetricMatrix:
    """Real ``2n x 2n`` matrix ``[[X, -Y], [Y, X]]`` whose spectrum doubles ``h``'s."""
    x, y = h.real_part, h.imag_part
    return SymmetricMatrix(np.block([[x, -y], [y, x]]))


def principal_submatrix(m, keep: Iterable[int]):
    """Rows and columns of ``m`` restricted to ``keep`` (order preserved)."""
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("keep must be non-empty")
    if keep[0] < 0 or keep[-1] >= m.n:
        raise IndexError("index out of range")
    ix = np.ix_(keep, keep)
    if isinstance(m, HermitianMatrix):
        return HermitianMatrix(m.real_part[ix], m.imag_part[ix])
    return SymmetricMatrix(m.entries[ix])


def read_matrix(text: str) -> SymmetricMatrix:
    """Parse the matrix text format: ``n`` then ``n`` whitespace-separated rows."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    n = int(lines[0])
    rows = [ln.split() for ln in lines[1:]]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"expected {n} rows of {n} entries")
    integral = all(_is_int(tok) for r in rows for tok in r)
    a = np.array([[float(tok) for tok in r] for r in rows])
    if integral:
        if not np.array_equal(a, a.T):
            raise NotSymmetricError("integer matrix is not exactly symmetric")
        return SymmetricMatrix(a)
    big = max(float(np.abs(a).max()), 1.0)
    if np.abs(a - a.T).max() > 1e-12 * big:
        raise NotSymmetricError("matrix is not symmetric within 1e-12 relative")
    return SymmetricMatrix.symmetrized(a)


def _is_int(tok: str) -> bool:
    try:
        int(tok)
    except ValueError:
        return False
    return True


def format_matrix(m: SymmetricMatrix) -> str:
    a = m.entries
    if np.array_equal(a, np.round(a)):
        body = [" ".join(str(int(x)) for x in row) for row in a]
    else:
        body = [" ".join(repr(float(x)) for x in row) for row in a]
    return "\n".join([str(m.n), *body]) + "\n"

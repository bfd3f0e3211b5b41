"""
Symmetric tridiagonal eigensolver (Sturm bisection + inverse iteration) and Gauss quadrature
"""

import logging
import math
from typing import List, Sequence, Tuple

import numpy as np
from numpy.linalg import LinAlgError
from scipy.linalg import eigh_tridiagonal

from errors import DomainError, EigensolverError, InvalidRecurrenceError, NonFiniteInputError
from schemas import DiscreteMeasure, RecurrenceSpec, SpectrumResult, SymTridiag
from settings import get_settings
from solver.opoly import check_coefficients

logger = logging.getLogger(__name__)


def split_blocks(T: SymTridiag) -> List[Tuple[int, int]]:
    """Index ranges [start, stop) separated by exactly zero off-diagonals"""
    cuts = np.flatnonzero(T.off == 0.0) + 1
    edges = [0, *cuts.tolist(), T.size]
    return list(zip(edges[:-1], edges[1:]))


def _solve_block(d: np.ndarray, e: np.ndarray, want_vectors: bool):
    if len(d) == 1:
        return d.copy(), np.ones((1, 1)) if want_vectors else None
    try:
        if want_vectors:
            return eigh_tridiagonal(d, e, lapack_driver="stebz")
        return eigh_tridiagonal(d, e, eigvals_only=True, lapack_driver="stebz"), None
    except (LinAlgError, ValueError) as exc:
        raise EigensolverError(f"tridiagonal eigensolver failed on block of size {len(d)}: {exc}")


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    # first component nonnegative; fall back to the largest entry when it is exactly zero
    lead = vectors[0].copy()
    zero = lead == 0
    if np.any(zero):
        idx = np.argmax(np.abs(vectors[:, zero]), axis=0)
        lead[zero] = vectors[idx, np.flatnonzero(zero)]
    return vectors * np.where(lead < 0, -1.0, 1.0)[None, :]


def residual_norms(T: SymTridiag, result: SpectrumResult) -> np.ndarray:
    """||T v - eps v||_inf for every returned pair"""
    if result.eigenvectors is None:
        raise ValueError("spectrum has no eigenvectors")
    v = result.eigenvectors
    return np.max(np.abs(T.matvec(v) - v * result.eigenvalues[None, :]), axis=0)


def _check_residuals(T: SymTridiag, result: SpectrumResult) -> None:
    worst = float(residual_norms(T, result).max())
    bound = get_settings().residual_tol * max(T.norm_inf(), 1.0)
    if worst > bound:
        raise EigensolverError(f"eigenpair residual {worst:.3e} exceeds {bound:.3e}")


def eigendecompose(T: SymTridiag, want_vectors: bool = False, check: bool = True) -> SpectrumResult:
    """All eigenvalues ascending; eigenvectors as columns when requested"""
    if not (np.all(np.isfinite(T.diag)) and np.all(np.isfinite(T.off))):
        raise NonFiniteInputError("matrix has non-finite entries")
    cap = get_settings().max_vector_basis_size
    if want_vectors and T.size > cap:
        raise DomainError(
            f"all {T.size} eigenvectors of a {T.size} x {T.size} matrix exceed the dense limit {cap}; "
            "ask eigenpairs for the levels needed"
        )
    blocks = split_blocks(T)
    if len(blocks) > 1:
        logger.debug("matrix of size %d splits into %d blocks", T.size, len(blocks))

    values = np.empty(T.size)
    vectors = np.zeros((T.size, T.size)) if want_vectors else None
    for start, stop in blocks:
        w, v = _solve_block(T.diag[start:stop], T.off[start : stop - 1], want_vectors)
        values[start:stop] = w
        if want_vectors:
            vectors[start:stop, start:stop] = v

    order = np.argsort(values, kind="stable")
    values = values[order]
    if want_vectors:
        vectors = _fix_signs(vectors[:, order])

    result = SpectrumResult(eigenvalues=values, eigenvectors=vectors)
    if want_vectors and check:
        _check_residuals(T, result)
    return result


def eigenpairs(T: SymTridiag, indices: Sequence[int], check: bool = True) -> SpectrumResult:
    """
    Eigenpairs lo..hi of the ascending spectrum, lo and hi the extreme requested indices.
    Bisection finds the values, inverse iteration the vectors, so memory stays N x (hi - lo + 1).
    """
    if not (np.all(np.isfinite(T.diag)) and np.all(np.isfinite(T.off))):
        raise NonFiniteInputError("matrix has non-finite entries")
    if len(indices) == 0:
        raise ValueError("no eigenpairs requested")
    lo, hi = int(min(indices)), int(max(indices))
    if lo < 0 or hi >= T.size:
        raise ValueError(f"indices {lo}..{hi} outside a {T.size} x {T.size} matrix")
    if T.size == 1:
        values, vectors = T.diag.copy(), np.ones((1, 1))
    else:
        try:
            values, vectors = eigh_tridiagonal(
                T.diag, T.off, select="i", select_range=(lo, hi), lapack_driver="stebz"
            )
        except (LinAlgError, ValueError) as exc:
            raise EigensolverError(f"selected eigenpairs {lo}..{hi} failed: {exc}")

    result = SpectrumResult(eigenvalues=values, eigenvectors=_fix_signs(vectors))
    if check:
        _check_residuals(T, result)
    return result


def jacobi_matrix(rec: RecurrenceSpec, N: int) -> SymTridiag:
    """Symmetric form of the recursion: diag a_n/c_n, off b_n / sqrt(c_n c_{n+1})"""
    c = np.array([rec.c(n) for n in range(N)], dtype=np.float64)
    if np.any(c <= 0):
        n_bad = int(np.flatnonzero(c <= 0)[0])
        raise InvalidRecurrenceError(
            f"{rec.family_label}: c_{n_bad} = {c[n_bad]} cannot be symmetrized", constraint="c_n > 0"
        )
    for n in range(N - 1):
        check_coefficients(rec, n)
    a = np.array([rec.a(n) for n in range(N)], dtype=np.float64)
    b = np.array([rec.b(n) for n in range(N - 1)], dtype=np.float64)
    return SymTridiag(diag=a / c, off=b / np.sqrt(c[:-1] * c[1:]))


def gauss_from_recurrence(rec: RecurrenceSpec, N: int) -> DiscreteMeasure:
    """Golub-Welsch: nodes are Jacobi-matrix eigenvalues, weights squared first components"""
    T = jacobi_matrix(rec, N)
    spectrum = eigendecompose(T, want_vectors=True)
    v = spectrum.eigenvectors
    weights = v[0] ** 2
    weights = weights / weights.sum()
    # eigenvector ratios give P_n at the nodes without running the recursion forward
    c = np.array([rec.c(n) for n in range(N)], dtype=np.float64)
    weighted = v * np.sqrt(c[0] / c)[:, None]
    return DiscreteMeasure(nodes=spectrum.eigenvalues, weights=weights, weighted_polys=weighted)


def moments_from_matrix(T: SymTridiag, m_max: int) -> np.ndarray:
    """(e_0, T^m e_0) for m = 0..m_max"""
    e = np.zeros(T.size)
    e[0] = 1.0
    out = [1.0]
    v = e
    for _ in range(m_max):
        v = T.matvec(v)
        out.append(float(v[0]))
    return np.array(out)


def spectral_spacing(values: np.ndarray) -> float:
    if len(values) < 2:
        return math.inf
    return float(np.min(np.diff(values)))


def lowest_eigenvalues(T: SymTridiag, k: int) -> np.ndarray:
    """The k smallest eigenvalues by bisection only"""
    if not 1 <= k <= T.size:
        raise ValueError(f"cannot take {k} eigenvalues of a {T.size} x {T.size} matrix")
    if T.size == 1:
        return T.diag.copy()
    try:
        return eigh_tridiagonal(
            T.diag, T.off, eigvals_only=True, select="i", select_range=(0, k - 1), lapack_driver="stebz"
        )
    except (LinAlgError, ValueError) as exc:
        raise EigensolverError(f"bisection failed for the {k} lowest eigenvalues: {exc}")

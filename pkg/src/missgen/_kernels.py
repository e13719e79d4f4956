"""Hot enumeration kernels, in a numba flavour and a pure-numpy flavour.

Both flavours take and return the same arrays. The numba one is used when
numba imports and ``MISSGEN_DISABLE_NUMBA`` is unset (or "0"); setting it to
anything else forces the numpy path, which is also what the test-suite uses to
cross-check the compiled loops.

Element arrays are int64 and products are formed before reduction, so moduli
must stay below 2**31.
"""

from __future__ import annotations

import os

import numpy as np

MAX_MODULUS = 2**31 - 1


def _numba_requested() -> bool:
    return os.environ.get("MISSGEN_DISABLE_NUMBA", "0") in ("", "0")


try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


# --------------------------------------------------------------------------
# numpy flavour
# --------------------------------------------------------------------------


class numpy_impl:
    @staticmethod
    def powmod_array(bases, exp, m):
        bases = np.asarray(bases, dtype=np.int64) % m
        result = np.ones_like(bases)
        while exp:
            if exp & 1:
                result = result * bases % m
            bases = bases * bases % m
            exp >>= 1
        return result

    @staticmethod
    def _chunks(n_rows, n_cols):
        step = max(1, 4_000_000 // max(1, n_cols))
        for start in range(0, n_rows, step):
            yield start, min(n_rows, start + step)

    @staticmethod
    def missing_rows(p, gen_mask, residues, gens, ginvs):
        out = np.zeros((len(gens), p), dtype=np.bool_)
        for lo, hi in numpy_impl._chunks(len(gens), len(residues)):
            a = gens[lo:hi, None] * residues[None, :] % p
            b = ginvs[lo:hi, None] * residues[None, :] % p
            ok = gen_mask[a] & gen_mask[b]
            rows = np.broadcast_to(np.arange(hi - lo)[:, None], a.shape)[ok]
            covered = np.zeros((hi - lo, p), dtype=np.bool_)
            covered[rows, a[ok]] = True
            covered[rows, b[ok]] = True
            out[lo:hi] = gen_mask[None, :] & ~covered
        return out

    @staticmethod
    def ni_rows(p, ngnr_mask, residues, gens, ginvs):
        out = np.zeros((len(gens), p), dtype=np.bool_)
        for lo, hi in numpy_impl._chunks(len(gens), len(residues)):
            a = gens[lo:hi, None] * residues[None, :] % p
            b = ginvs[lo:hi, None] * residues[None, :] % p
            ok = ngnr_mask[a] & ngnr_mask[b]
            rows = np.broadcast_to(np.arange(hi - lo)[:, None], a.shape)[ok]
            cols = np.broadcast_to(residues[None, :], a.shape)[ok]
            out[lo + rows, cols] = True
        return out

    @staticmethod
    def exponent_mask(n, kind):
        x = np.arange(n, dtype=np.int64)
        if kind == 0:
            mask = (
                (np.gcd(x, n) == 1)
                & (np.gcd(np.abs(x - 2), n) > 1)
                & (np.gcd(x + 2, n) > 1)
            )
        else:
            mask = (
                (x % 2 == 0)
                & (np.gcd(np.abs(x - 1), n) > 1)
                & (np.gcd(x + 1, n) > 1)
            )
        mask[0] = False
        return mask


# --------------------------------------------------------------------------
# numba flavour
# --------------------------------------------------------------------------

if numba is not None:
    _jit = numba.njit(cache=True, nogil=True)

    @_jit
    def _gcd(a, b):
        if a < 0:
            a = -a
        while b:
            a, b = b, a % b
        return a

    @_jit
    def _powmod_array(bases, exp, m):
        out = np.empty_like(bases)
        for k in range(bases.shape[0]):
            b = bases[k] % m
            e = exp
            r = 1
            while e:
                if e & 1:
                    r = r * b % m
                b = b * b % m
                e >>= 1
            out[k] = r
        return out

    @_jit
    def _missing_rows(p, gen_mask, residues, gens, ginvs):
        out = np.zeros((gens.shape[0], p), dtype=np.bool_)
        for row in range(gens.shape[0]):
            g = gens[row]
            gi = ginvs[row]
            for k in range(p):
                out[row, k] = gen_mask[k]
            for r in residues:
                a = g * r % p
                b = gi * r % p
                if gen_mask[a] and gen_mask[b]:
                    out[row, a] = False
                    out[row, b] = False
        return out

    @_jit
    def _ni_rows(p, ngnr_mask, residues, gens, ginvs):
        out = np.zeros((gens.shape[0], p), dtype=np.bool_)
        for row in range(gens.shape[0]):
            g = gens[row]
            gi = ginvs[row]
            for r in residues:
                if ngnr_mask[g * r % p] and ngnr_mask[gi * r % p]:
                    out[row, r] = True
        return out

    @_jit
    def _exponent_mask(n, kind):
        out = np.zeros(n, dtype=np.bool_)
        for x in range(1, n):
            if kind == 0:
                out[x] = (
                    _gcd(x, n) == 1 and _gcd(x - 2, n) > 1 and _gcd(x + 2, n) > 1
                )
            else:
                out[x] = x % 2 == 0 and _gcd(x - 1, n) > 1 and _gcd(x + 1, n) > 1
        return out

    class numba_impl:
        powmod_array = staticmethod(
            lambda bases, exp, m: _powmod_array(np.asarray(bases, dtype=np.int64), exp, m)
        )
        missing_rows = staticmethod(_missing_rows)
        ni_rows = staticmethod(_ni_rows)
        exponent_mask = staticmethod(_exponent_mask)

else:  # pragma: no cover
    numba_impl = None


def backend():
    """The implementation currently selected: ``numba_impl`` or ``numpy_impl``."""
    if numba_impl is not None and _numba_requested():
        return numba_impl
    return numpy_impl


def backend_name() -> str:
    return "numba" if backend() is numba_impl else "numpy"


def _check_modulus(m):
    if m > MAX_MODULUS:
        raise OverflowError(f"modulus {m} exceeds the int64 kernel limit {MAX_MODULUS}")


def powmod_array(bases, exp: int, m: int) -> np.ndarray:
    _check_modulus(m)
    return backend().powmod_array(bases, int(exp), int(m))


def missing_rows(p, gen_mask, residues, gens, ginvs) -> np.ndarray:
    """Row k is the membership mask of M(gens[k]) over ``range(p)``."""
    _check_modulus(p)
    return backend().missing_rows(
        int(p),
        np.ascontiguousarray(gen_mask, dtype=np.bool_),
        np.ascontiguousarray(residues, dtype=np.int64),
        np.ascontiguousarray(gens, dtype=np.int64),
        np.ascontiguousarray(ginvs, dtype=np.int64),
    )


def ni_rows(p, ngnr_mask, residues, gens, ginvs) -> np.ndarray:
    """Row k is the membership mask of NI(gens[k]) over ``range(p)``."""
    _check_modulus(p)
    return backend().ni_rows(
        int(p),
        np.ascontiguousarray(ngnr_mask, dtype=np.bool_),
        np.ascontiguousarray(residues, dtype=np.int64),
        np.ascontiguousarray(gens, dtype=np.int64),
        np.ascontiguousarray(ginvs, dtype=np.int64),
    )


def exponent_mask(n: int, kind: str) -> np.ndarray:
    """Membership mask over ``range(n)`` of the exponent set ``A(n)`` or ``B(n)``."""
    _check_modulus(n)
    return backend().exponent_mask(int(n), 0 if kind == "A" else 1)

"""Vectorized point scans over finite fields.

Projective representatives are normalized so the first nonzero coordinate
is 1; scanning by the position of that leading 1 covers P^n exactly once.
Prime fields use direct mod-p numpy arithmetic; small extension fields go
through precomputed multiplication/addition tables indexed by element number.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .errors import EnumerationTooLarge
from .fields import ExtField, Field, PrimeField
from .poly import NVARS, Poly

DEFAULT_POINT_CAP = 17        # scan full P^7 only for fields with q <= 17
SUBSPACE_CAP = 300            # linear-subspace scans allow larger fields
_CHUNK = 1 << 20


def worker_count():
    env = os.environ.get("Q8CY_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def projective_size(q, nvars):
    return (q**nvars - 1) // (q - 1)


def quadric_term_table(f: Poly):
    """A quadric as [(coeff, i, j)] with monomial x_i * x_j (i <= j)."""
    terms = []
    for m, c in f.terms.items():
        nz = [(v, e) for v, e in enumerate(m) if e]
        if sum(e for _, e in nz) != 2:
            raise ValueError("term table only supports homogeneous quadrics")
        if len(nz) == 1:
            i = j = nz[0][0]
        else:
            (i, _), (j, _) = nz
        terms.append((c, i, j))
    return terms


def _fill_points(idx, q, positions, li, dtype):
    pts = np.zeros((idx.shape[0], NVARS), dtype=dtype)
    pts[:, positions[li]] = 1
    rest = positions[li + 1:]
    v = idx
    for pos in rest:
        pts[:, pos] = (v % q).astype(dtype)
        v = v // q
    return pts


def _scan_chunk_prime(pts, term_tables, p):
    """Rows of pts where every quadric vanishes mod p."""
    alive = pts
    for terms in term_tables:
        if alive.shape[0] == 0:
            break
        cols = alive.astype(np.int32)
        acc = np.zeros(alive.shape[0], dtype=np.int32)
        for c, i, j in terms:
            acc += c * cols[:, i] * cols[:, j]
        alive = alive[acc % p == 0]
    return alive


def solutions_prime(quadrics, p, positions=None, chunk=_CHUNK, workers=1,
                    progress=None):
    """All projective representatives over F_p (restricted to the given
    coordinate positions) where every quadric vanishes."""
    positions = list(range(NVARS)) if positions is None else list(positions)
    term_tables = [quadric_term_table(f) for f in quadrics]
    tasks = []
    n = len(positions)
    for li in range(n):
        total = p ** (n - 1 - li)
        start = 0
        while start < total:
            stop = min(start + chunk, total)
            tasks.append((li, start, stop))
            start = stop
    if workers > 1 and len(tasks) > 1:
        args = [(t, p, positions, term_tables) for t in tasks]
        out = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for sols in pool.map(_prime_task, args):
                out.extend(sols)
        return out
    out = []
    for task in tasks:
        out.extend(_prime_task((task, p, positions, term_tables)))
        if progress:
            progress(task)
    return out


def _prime_task(packed):
    (li, start, stop), p, positions, term_tables = packed
    idx = np.arange(start, stop, dtype=np.int64)
    pts = _fill_points(idx, p, positions, li, np.int16)
    alive = _scan_chunk_prime(pts, term_tables, p)
    return [tuple(int(x) for x in row) for row in alive]


class FieldTables:
    """Dense multiplication/addition tables for one small finite field.

    Elements are addressed by their enumeration index; index 0 is zero and,
    for prime fields, the index equals the residue.
    """

    def __init__(self, field: Field):
        q = field.size()
        if q is None or q > SUBSPACE_CAP:
            raise EnumerationTooLarge(
                f"field of size {q} is above the table cap {SUBSPACE_CAP}")
        self.field = field
        self.q = q
        elems = list(field.elements())
        self.elements = elems
        self.index = {e: i for i, e in enumerate(elems)}
        self.mul = np.zeros((q, q), dtype=np.int32)
        self.add = np.zeros((q, q), dtype=np.int32)
        for a in range(q):
            for b in range(q):
                self.mul[a, b] = self.index[field.mul(elems[a], elems[b])]
                self.add[a, b] = self.index[field.add(elems[a], elems[b])]


def solutions_tabulated(quadrics, tables: FieldTables, positions=None,
                        chunk=_CHUNK):
    """Projective solutions over a tabulated field, as payload tuples."""
    positions = list(range(NVARS)) if positions is None else list(positions)
    term_tables = []
    for f in quadrics:
        terms = [(tables.index[c], i, j) for c, i, j in quadric_term_table(f)]
        term_tables.append(terms)
    q = tables.q
    mul = tables.mul
    add = tables.add
    out = []
    n = len(positions)
    one_idx = tables.index[tables.field.one]
    for li in range(n):
        total = q ** (n - 1 - li)
        start = 0
        while start < total:
            stop = min(start + chunk, total)
            idx = np.arange(start, stop, dtype=np.int64)
            pts = _fill_points(idx, q, positions, li, np.int32)
            if one_idx != 1:
                pts[:, positions[li]] = one_idx
            alive = pts
            for terms in term_tables:
                if alive.shape[0] == 0:
                    break
                acc = np.zeros(alive.shape[0], dtype=np.int32)
                for ci, i, j in terms:
                    acc = add[acc, mul[ci, mul[alive[:, i], alive[:, j]]]]
                alive = alive[acc == 0]
            for row in alive:
                out.append(tuple(tables.elements[int(x)] for x in row))
            start = stop
    return out


def scan_solutions(quadrics, field: Field, positions=None, chunk=_CHUNK,
                   workers=1, cap=None):
    """Dispatch a projective solution scan for any supported finite field.

    Returns canonical representatives (first nonzero coordinate equals one)
    as tuples of field payloads.
    """
    q = field.size()
    if q is None:
        raise EnumerationTooLarge("cannot enumerate an infinite field")
    npos = NVARS if positions is None else len(positions)
    limit = cap if cap is not None else (
        DEFAULT_POINT_CAP if npos == NVARS else SUBSPACE_CAP)
    if q > limit:
        raise EnumerationTooLarge(
            f"field size {q} above the cap {limit} for a {npos}-coordinate scan")
    if isinstance(field, PrimeField):
        return solutions_prime(quadrics, field.p, positions, chunk, workers)
    if isinstance(field, ExtField):
        return solutions_tabulated(quadrics, FieldTables(field), positions, chunk)
    raise EnumerationTooLarge(f"unsupported field {field.name()} for scans")


# -- projective group orbits --------------------------------------------------

def apply_matrix(mat, x, field):
    out = []
    for v in range(NVARS):
        acc = field.zero
        row = mat[v]
        for w in range(NVARS):
            if row[w] != field.zero and x[w] != field.zero:
                acc = field.add(acc, field.mul(row[w], x[w]))
        out.append(acc)
    return tuple(out)


def canonicalize(x, field):
    """Scale so the first nonzero coordinate is one; None for the zero tuple."""
    for v in range(NVARS):
        if x[v] != field.zero:
            inv = field.inv(x[v])
            return tuple(field.mul(inv, c) for c in x)
    return None


def orbit(x, matrices, field):
    """The projective orbit of a canonical point under a list of matrices."""
    return {canonicalize(apply_matrix(m, x, field), field) for m in matrices}


def orbit_histogram(points, matrices, field):
    """Histogram of orbit sizes over a list of canonical points."""
    seen = set()
    hist = {}
    for x in points:
        if x in seen:
            continue
        orb = orbit(x, matrices, field)
        seen |= orb
        hist[len(orb)] = hist.get(len(orb), 0) + 1
    return hist

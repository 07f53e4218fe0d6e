"""Tiny exact linear algebra over a Field: rank and row reduction."""

from __future__ import annotations


def matrix_rank(rows, field):
    """Rank of a matrix given as a list of rows of field payloads."""
    rows = [list(r) for r in rows]
    zero = field.zero
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] != zero:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(inv, x) for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != zero:
                factor = rows[r][col]
                rows[r] = [field.sub(x, field.mul(factor, y))
                           for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank

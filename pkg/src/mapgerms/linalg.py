"""Sparse exact row echelon forms over QQ.

Rows are dicts ``column -> mpq``.  The pivot of a row is its largest column
index, so callers encode priority in the column numbering: columns that should
be eliminated first get the highest indices.
"""
from __future__ import annotations

import heapq
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import mpq

Row = Dict[int, mpq]


def _axpy(row: Row, scale, other: Row, skip: int) -> None:
    """row -= scale * other, ignoring column ``skip``."""
    for k, x in other.items():
        if k == skip:
            continue
        v = row.get(k, 0) - scale * x
        if v:
            row[k] = v
        else:
            row.pop(k, None)


class Echelon:
    """Incremental echelon basis of a row space.

    With ``track=True`` each stored row also remembers its expression in the
    inserted rows, so :meth:`solve` can return explicit combinations.
    """

    def __init__(self, track: bool = False):
        self.pivots: Dict[int, Row] = {}
        self.track = track
        self._tags: Dict[int, Row] = {}
        self._count = 0

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Row, full: bool = True, tag: Optional[Row] = None):
        """Reduce ``row`` by the stored pivots.

        Returns the remainder (and the updated tag when tracking).  With
        ``full=False`` the loop stops at the first non-pivot column.
        """
        row = {k: mpq(v) for k, v in row.items() if v}
        heap = [-k for k in row]
        heapq.heapify(heap)
        seen = set()
        out: Row = {}
        while heap:
            c = -heapq.heappop(heap)
            if c in seen:
                continue
            seen.add(c)
            v = row.get(c)
            if not v:
                continue
            prow = self.pivots.get(c)
            if prow is None:
                out[c] = v
                if not full:
                    for k, x in row.items():
                        if k < c:
                            out[k] = x
                    break
                continue
            for k, x in prow.items():
                if k == c:
                    continue
                nv = row.get(k, 0) - v * x
                if nv:
                    if k not in row or not row[k]:
                        heapq.heappush(heap, -k)
                        seen.discard(k)
                    row[k] = nv
                else:
                    row.pop(k, None)
            row.pop(c, None)
            if tag is not None:
                _axpy(tag, v, self._tags[c], skip=-1)
        if tag is not None:
            return out, tag
        return out

    def add(self, row: Row) -> bool:
        """Insert a row; returns True when it enlarged the row space."""
        idx = self._count
        self._count += 1
        tag = {idx: mpq(1)} if self.track else None
        res = self.reduce(row, full=False, tag=tag)
        if self.track:
            res, tag = res
        if not res:
            return False
        c = max(res)
        inv = 1 / res[c]
        res = {k: v * inv for k, v in res.items()}
        self.pivots[c] = res
        if self.track:
            self._tags[c] = {k: v * inv for k, v in tag.items()}
        return True

    def add_or_relation(self, row: Row) -> Optional[Row]:
        """Insert a row, or return the relation among inserted rows it completes.

        Needs ``track=True``.  The relation maps insertion index to coefficient
        and sums the inserted rows to zero.
        """
        if not self.track:
            raise ValueError("echelon was built without tracking")
        idx = self._count
        self._count += 1
        res, tag = self.reduce(row, full=False, tag={idx: mpq(1)})
        if not res:
            return {k: v for k, v in tag.items() if v}
        c = max(res)
        inv = 1 / res[c]
        self.pivots[c] = {k: v * inv for k, v in res.items()}
        self._tags[c] = {k: v * inv for k, v in tag.items()}
        return None

    def extend(self, rows: Iterable[Row]) -> int:
        return sum(1 for r in rows if self.add(r))

    def contains(self, row: Row) -> bool:
        return not self.reduce(row, full=False)

    def solve(self, row: Row) -> Optional[Row]:
        """Coefficients c with sum c_i * inserted_row_i == row, or None."""
        if not self.track:
            raise ValueError("echelon was built without tracking")
        res, tag = self.reduce(row, full=False, tag={})
        if res:
            return None
        return {k: -v for k, v in tag.items() if v}

    def pivot_columns(self) -> List[int]:
        return sorted(self.pivots)

    def cobasis(self, columns: Iterable[int]) -> List[int]:
        """Columns of ``columns`` that are not pivots, in ascending order."""
        return sorted(c for c in set(columns) if c not in self.pivots)


def rank_of(rows: Sequence[Row]) -> int:
    e = Echelon()
    e.extend(rows)
    return e.rank


def dense_rank(matrix: Sequence[Sequence]) -> int:
    """Rank of a dense rational matrix."""
    rows = []
    for r in matrix:
        rows.append({j: mpq(v) for j, v in enumerate(r) if v})
    return rank_of(rows)


def nullspace(matrix: Sequence[Sequence]) -> List[Tuple[mpq, ...]]:
    """Basis of the right kernel {v : M v = 0} of a dense rational matrix."""
    m = [[mpq(v) for v in r] for r in matrix]
    ncols = len(m[0]) if m else 0
    pivcols: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivcols.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivcols]
    basis = []
    for fc in free:
        v = [mpq(0)] * ncols
        v[fc] = mpq(1)
        for i, pc in enumerate(pivcols):
            v[pc] = -m[i][fc]
        basis.append(tuple(v))
    return basis

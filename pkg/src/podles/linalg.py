"""Small exact linear algebra over Q(s): row echelon forms, rank and
reduction of vectors modulo a span.  Vectors are dicts index -> QScalar."""

from .scalars import ZERO


class Echelon:
    """Incrementally built reduced basis of a span of sparse vectors."""

    def __init__(self):
        self.rows = []      # list of (pivot index, vector with pivot 1)

    def reduce(self, vec):
        v = {k: c for k, c in vec.items() if c}
        for piv, row in self.rows:
            cf = v.get(piv)
            if cf:
                for k, c in row.items():
                    nv = v.get(k, ZERO) - cf * c
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
        return v

    def add(self, vec):
        """Insert vec; returns True if it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = min(v)
        inv = v[piv].inverse()
        v = {k: c * inv for k, c in v.items()}
        # keep earlier rows reduced against the new pivot
        new_rows = []
        for p, row in self.rows:
            cf = row.get(piv)
            if cf:
                row = dict(row)
                for k, c in v.items():
                    nv = row.get(k, ZERO) - cf * c
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
            new_rows.append((p, row))
        new_rows.append((piv, v))
        self.rows = new_rows
        return True

    @property
    def rank(self):
        return len(self.rows)

    def contains(self, vec):
        return not self.reduce(vec)


def exact_rank(vectors):
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank

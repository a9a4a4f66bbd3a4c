"""Flat parameter vectors with a named offset table.

All learnable weights of a policy or value function live in one contiguous
float64 vector; the layout maps slot names to (offset, shape) so that
flatten/unflatten round-trips are bit-identical.
"""

from __future__ import annotations

import numpy as np


class ParamLayout:
    """Immutable mapping from slot names to contiguous ranges of a flat vector."""

    def __init__(self, slots):
        # slots: sequence of (name, shape) pairs
        self.names = []
        self.shapes = {}
        self.offsets = {}
        off = 0
        for name, shape in slots:
            if name in self.shapes:
                raise ValueError(f"duplicate slot name {name!r}")
            shape = tuple(int(s) for s in shape)
            self.names.append(name)
            self.shapes[name] = shape
            self.offsets[name] = off
            off += int(np.prod(shape)) if shape else 1
        self.size = off

    def zeros(self):
        return np.zeros(self.size)

    def flatten(self, arrays):
        """Concatenate a dict of named arrays into one flat vector."""
        vec = np.empty(self.size)
        for name in self.names:
            a = np.asarray(arrays[name], dtype=np.float64)
            if a.shape != self.shapes[name]:
                raise ValueError(
                    f"slot {name!r}: expected shape {self.shapes[name]}, got {a.shape}"
                )
            off = self.offsets[name]
            vec[off:off + a.size] = a.ravel()
        return vec

    def unflatten(self, vec):
        """Split a flat vector into named views (no copies)."""
        vec = np.asarray(vec)
        if vec.shape != (self.size,):
            raise ValueError(f"expected vector of length {self.size}, got {vec.shape}")
        out = {}
        for name in self.names:
            off = self.offsets[name]
            shape = self.shapes[name]
            n = int(np.prod(shape)) if shape else 1
            out[name] = vec[off:off + n].reshape(shape)
        return out

    def view(self, vec, name):
        """View of a single named slot inside `vec`."""
        off = self.offsets[name]
        shape = self.shapes[name]
        n = int(np.prod(shape)) if shape else 1
        return np.asarray(vec)[off:off + n].reshape(shape)

    def slice_range(self, name):
        off = self.offsets[name]
        shape = self.shapes[name]
        n = int(np.prod(shape)) if shape else 1
        return off, off + n

    def to_table(self):
        """JSON-friendly offset table."""
        return [
            {"name": n, "offset": self.offsets[n], "shape": list(self.shapes[n])}
            for n in self.names
        ]

    @classmethod
    def from_table(cls, table):
        return cls([(row["name"], tuple(row["shape"])) for row in table])

    def __eq__(self, other):
        return (
            isinstance(other, ParamLayout)
            and self.names == other.names
            and self.shapes == other.shapes
        )

    def __repr__(self):
        return f"ParamLayout({self.size} params, {len(self.names)} slots)"

"""Ordered attribute universes and their bit-vector encoding.

Attribute sets are fixed-width bit vectors over a declared total order.  The
first attribute of the order is mapped to the most significant bit, so plain
integer comparison of two masks is exactly the lectic order: A is lectically
smaller than B iff the first attribute (per the order) on which they differ
belongs to B.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .errors import InputError

__all__ = ["AttributeOrder"]


class AttributeOrder:
    """A total order on a finite attribute universe, with mask conversions."""

    __slots__ = ("attributes", "_bit", "full_mask")

    def __init__(self, attributes: Sequence[str]):
        attrs = tuple(attributes)
        if len(set(attrs)) != len(attrs):
            raise InputError("attribute order contains duplicates")
        self.attributes = attrs
        n = len(attrs)
        # position p gets bit n-1-p: earlier attributes are more significant
        self._bit = {name: 1 << (n - 1 - p) for p, name in enumerate(attrs)}
        self.full_mask = (1 << n) - 1

    def __len__(self) -> int:
        return len(self.attributes)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AttributeOrder) and self.attributes == other.attributes

    def __hash__(self) -> int:
        return hash(self.attributes)

    def __repr__(self) -> str:
        return f"AttributeOrder({list(self.attributes)!r})"

    def bit(self, name: str) -> int:
        try:
            return self._bit[name]
        except KeyError:
            raise InputError(f"unknown attribute {name!r}") from None

    def mask(self, names: Iterable[str]) -> int:
        m = 0
        for name in names:
            m |= self.bit(name)
        return m

    def names(self, mask: int) -> frozenset[str]:
        return frozenset(a for a in self.attributes if self._bit[a] & mask)

    def sorted_names(self, mask: int) -> tuple[str, ...]:
        """Members of ``mask`` in declared order."""
        return tuple(a for a in self.attributes if self._bit[a] & mask)

    def reorder(self, attributes: Sequence[str]) -> "AttributeOrder":
        """A new order over the same universe; raises if it is not a permutation."""
        if set(attributes) != set(self.attributes) or len(attributes) != len(self.attributes):
            raise InputError("new order must be a permutation of the universe")
        return AttributeOrder(attributes)

    def lectic_less(self, a: int, b: int) -> bool:
        """Lectic comparison of two masks; plain integer order by construction."""
        return a < b

    def prefix_mask(self, name: str) -> int:
        """Mask of all attributes strictly before ``name`` in the order."""
        bit = self.bit(name)
        return self.full_mask & ~((bit << 1) - 1)

"""Static centered interval tree for stabbing queries."""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Generic, List, Optional, Sequence, Tuple, TypeVar

T = TypeVar("T")


class _Node:
    __slots__ = ("center", "by_lo", "los", "by_hi", "his", "left", "right")

    def __init__(self, center, by_lo, by_hi, left, right):
        self.center = center
        self.by_lo = by_lo  # ascending lo
        self.los = [iv[0] for iv in by_lo]
        self.by_hi = by_hi  # descending hi, stored as ascending -hi
        self.his = [-iv[1] for iv in by_hi]
        self.left = left
        self.right = right


class IntervalTree(Generic[T]):
    """Closed intervals ``[lo, hi]`` with payloads.

    Built once in O(n log n); ``stab(x)`` reports every interval containing
    ``x`` in O(log n + k).
    """

    def __init__(self, intervals: Sequence[Tuple[float, float, T]] = ()):
        items = [iv for iv in intervals if iv[0] <= iv[1]]
        self._size = len(items)
        self._root = self._build(items)

    def __len__(self) -> int:
        return self._size

    @staticmethod
    def _build(items) -> Optional[_Node]:
        if not items:
            return None
        ends = sorted(e for iv in items for e in (iv[0], iv[1]))
        center = ends[len(ends) // 2]
        here, lows, highs = [], [], []
        for iv in items:
            if iv[1] < center:
                lows.append(iv)
            elif iv[0] > center:
                highs.append(iv)
            else:
                here.append(iv)
        by_lo = sorted(here, key=lambda iv: iv[0])
        by_hi = sorted(here, key=lambda iv: -iv[1])
        return _Node(center, by_lo, by_hi, IntervalTree._build(lows), IntervalTree._build(highs))

    def stab(self, x: float) -> List[Tuple[float, float, T]]:
        out = []
        node = self._root
        while node is not None:
            if x < node.center:
                k = bisect_right(node.los, x)
                out.extend(node.by_lo[:k])
                node = node.left
            elif x > node.center:
                k = bisect_right(node.his, -x)
                out.extend(node.by_hi[:k])
                node = node.right
            else:
                out.extend(node.by_lo)
                break
        return out

"""Union-find with undo, for backtracking searches."""

from __future__ import annotations

from typing import Hashable, Iterable


class RollbackUnionFind:
    """Union by size without path compression, so every union can be undone."""

    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent: dict = {}
        self.size: dict = {}
        self.history: list = []
        self.components = 0
        for x in items:
            self.add(x)

    def add(self, x) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1
            self.components += 1

    def find(self, x):
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            self.history.append(None)
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        self.history.append((ra, rb))
        return True

    def snapshot(self) -> int:
        return len(self.history)

    def rollback(self, mark: int) -> None:
        while len(self.history) > mark:
            step = self.history.pop()
            if step is None:
                continue
            ra, rb = step
            self.parent[rb] = rb
            self.size[ra] -= self.size[rb]
            self.components += 1

    def connected(self, a, b) -> bool:
        return self.find(a) == self.find(b)

"""k-uniform hypergraphs on vertex set {1, ..., n}.

Edges are canonical sorted k-tuples.  Internally every edge is a single
integer: its colexicographic rank among all k-subsets, so that the
complete hypergraph is simply the code range [0, C(n,k)) and membership
tests are binary searches in a sorted uint64 array.  The vertex matrix
(one row per edge, ascending 0-based vertices) is materialized lazily
for the vectorized paths.

Includes the H(n;p) sampler, the one-edge-at-a-time random process, the
facet/clique/divisibility operations, and the two pseudo-randomness
measurements (typicality defect, affine boundedness) used to monitor
nibble leaves.
"""

from __future__ import annotations

import json
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import rng

# domain tags for key derivation
_DOM_EDGE_UNIFORMS = 0x48594752  # shared by sample_hnp and ProcessStream
_DOM_TYPICALITY = 0x54595053


def comb_table(n: int, k: int) -> np.ndarray:
    """CT[v, j] = C(v, j) for 0 <= v <= n, 0 <= j <= k (int64)."""
    ct = np.zeros((n + 1, k + 1), dtype=np.int64)
    ct[:, 0] = 1
    for j in range(1, k + 1):
        ct[1:, j] = np.cumsum(ct[:-1, j - 1])
    return ct


def rank_colex(verts: np.ndarray, ct: np.ndarray) -> np.ndarray:
    """Colex ranks of sorted 0-based vertex rows (m, k) -> (m,) uint64."""
    v = np.atleast_2d(verts)
    k = v.shape[1]
    r = np.zeros(v.shape[0], dtype=np.int64)
    for j in range(k):
        r += ct[v[:, j], j + 1]
    return r.astype(np.uint64)


def unrank_colex(codes: np.ndarray, k: int, ct: np.ndarray) -> np.ndarray:
    """Inverse of rank_colex: (m,) codes -> (m, k) sorted 0-based vertices."""
    r = np.asarray(codes, dtype=np.int64).copy()
    m = r.shape[0]
    out = np.zeros((m, k), dtype=np.uint16)
    for j in range(k, 0, -1):
        v = np.searchsorted(ct[:, j], r, side="right") - 1
        out[:, j - 1] = v
        r -= ct[v, j]
    return out


class Hypergraph:
    """Immutable-after-build k-uniform hypergraph; queries are read-only."""

    def __init__(self, n: int, k: int, codes: np.ndarray):
        if not 1 <= k <= n:
            raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
        self.n = n
        self.k = k
        self.codes = np.sort(np.asarray(codes, dtype=np.uint64))
        if self.codes.size and int(self.codes[-1]) >= comb(n, k):
            raise ValueError("edge code out of range")
        if self.codes.size != np.unique(self.codes).size:
            raise ValueError("duplicate edges")
        self._ct = comb_table(n, max(k, 2))
        self._verts: np.ndarray | None = None
        self._edge_set: frozenset | None = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, k: int, edges: Iterable[Sequence[int]]) -> "Hypergraph":
        ct = comb_table(n, k)
        rows = []
        for e in edges:
            t = sorted(e)
            if len(t) != k or len(set(t)) != k or t[0] < 1 or t[-1] > n:
                raise ValueError(f"bad edge {e!r} for n={n}, k={k}")
            rows.append([v - 1 for v in t])
        if not rows:
            return cls(n, k, np.empty(0, dtype=np.uint64))
        return cls(n, k, rank_colex(np.array(rows, dtype=np.int64), ct))

    @classmethod
    def complete(cls, n: int, k: int) -> "Hypergraph":
        return cls(n, k, np.arange(comb(n, k), dtype=np.uint64))

    @classmethod
    def empty(cls, n: int, k: int) -> "Hypergraph":
        return cls(n, k, np.empty(0, dtype=np.uint64))

    # -- basic queries --------------------------------------------------------

    def __len__(self) -> int:
        return int(self.codes.size)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        for row in self.verts():
            yield tuple(int(v) + 1 for v in row)

    def __contains__(self, edge: Sequence[int]) -> bool:
        t = sorted(edge)
        if len(t) != self.k or t[0] < 1 or t[-1] > self.n:
            return False
        code = rank_colex(np.array([[v - 1 for v in t]]), self._ct)[0]
        i = np.searchsorted(self.codes, code)
        return bool(i < self.codes.size and self.codes[i] == code)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Hypergraph) and self.n == other.n
                and self.k == other.k and np.array_equal(self.codes, other.codes))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, k={self.k}, edges={len(self)})"

    def contains_codes(self, codes: np.ndarray) -> np.ndarray:
        """Vectorized membership for an array of edge codes."""
        idx = np.searchsorted(self.codes, codes)
        idx = np.minimum(idx, max(self.codes.size - 1, 0))
        if self.codes.size == 0:
            return np.zeros(len(codes), dtype=bool)
        return self.codes[idx] == codes

    def verts(self) -> np.ndarray:
        """(m, k) matrix of sorted 0-based vertices, one row per edge."""
        if self._verts is None:
            self._verts = unrank_colex(self.codes, self.k, self._ct)
        return self._verts

    def edge_set(self) -> frozenset:
        if self._edge_set is None:
            self._edge_set = frozenset(self)
        return self._edge_set

    def density(self) -> float:
        return len(self) / comb(self.n, self.k)

    # -- facets ----------------------------------------------------------------

    def facet_codes_per_edge(self) -> np.ndarray:
        """(m, k) matrix: row i holds the colex codes of edge i's facets."""
        v = self.verts()
        m, k = v.shape
        out = np.zeros((m, k), dtype=np.uint64)
        ct = self._ct
        for drop in range(k):
            r = np.zeros(m, dtype=np.int64)
            pos = 0
            for j in range(k):
                if j == drop:
                    continue
                r += ct[v[:, j], pos + 1]
                pos += 1
            out[:, drop] = r.astype(np.uint64)
        return out

    def facets_of(self) -> "Hypergraph":
        """The (k-1)-uniform hypergraph of facets covered by some edge."""
        if self.k < 2:
            raise ValueError("facets need k >= 2")
        codes = np.unique(self.facet_codes_per_edge().ravel()) if len(self) else np.empty(0, dtype=np.uint64)
        return Hypergraph(self.n, self.k - 1, codes)

    def facet_adjacency(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """CSR index facet code -> edge row ids.

        Returns (facet_codes, offsets, edge_rows): edges containing
        facet_codes[i] are edge_rows[offsets[i]:offsets[i+1]].
        """
        fc = self.facet_codes_per_edge().ravel()
        edge_ids = np.repeat(np.arange(len(self)), self.k)
        order = np.argsort(fc, kind="stable")
        fc, edge_ids = fc[order], edge_ids[order]
        uniq, starts = np.unique(fc, return_index=True)
        offsets = np.append(starts, fc.size)
        return uniq, offsets, edge_ids

    def k_cliques(self) -> "Hypergraph":
        """All (k+1)-sets whose every k-subset is an edge (K_{k+1} of self)."""
        target = self.k + 1
        if target > self.n:
            return Hypergraph.empty(self.n, min(target, self.n))
        if self.k == 2:
            # graph triangles via adjacency bitmasks
            adj = [0] * (self.n + 1)
            for u, v in self:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            rows = []
            for u, v in self:
                common = adj[u] & adj[v] & ~((1 << (v + 1)) - 1)
                while common:
                    w = common & -common
                    rows.append((u, v, w.bit_length() - 1))
                    common ^= w
            return Hypergraph.from_edges(self.n, 3, rows)
        es = self.edge_set()
        rows = []
        for f in es:
            top = f[-1]
            for v in range(top + 1, self.n + 1):
                cand = f + (v,)
                if all(cand[:i] + cand[i + 1:] in es for i in range(self.k)):
                    rows.append(cand)
        return Hypergraph.from_edges(self.n, target, rows)

    # -- arithmetic conditions ---------------------------------------------------

    def is_k_divisible(self, k: int | None = None) -> bool:
        """Necessary divisibility for a K_k-decomposition of this (k-1)-uniform graph.

        For every i-set S, 0 <= i <= k-1, (k-i) must divide the number of
        edges containing S.
        """
        if k is None:
            k = self.k + 1
        if k != self.k + 1:
            raise ValueError("divisibility is asked of a (k-1)-uniform hypergraph")
        v = self.verts()
        for i in range(0, self.k):  # i = k-1 gives divisor 1
            div = k - i
            if div == 1:
                continue
            if i == 0:
                if len(self) % div:
                    return False
                continue
            counts: np.ndarray
            if i == 1:
                counts = np.bincount(v.ravel(), minlength=self.n)
            else:
                ct = self._ct
                acc = []
                for cols in combinations(range(self.k), i):
                    r = np.zeros(len(self), dtype=np.int64)
                    for pos, c in enumerate(cols):
                        r += ct[v[:, c], pos + 1]
                    acc.append(r)
                counts = np.bincount(np.concatenate(acc), minlength=comb(self.n, i)) if acc else np.zeros(0)
            if np.any(counts % div):
                return False
        return True

    # -- pseudo-randomness measurements -------------------------------------------

    def typicality_defect(self, h: int, sample_cap: int = 10**6, seed: int = 0) -> float:
        """Smallest c such that this (k-1)-uniform graph is (c,h)-typical.

        Joint neighborhoods of up to h distinct (k-2)-sets are compared
        with d^l * n.  Exhaustive while the number of l-tuples stays
        below sample_cap, sampled (reported value then a lower bound)
        beyond that.
        """
        if len(self) == 0:
            raise ValueError("density zero")
        km2 = self.k - 1  # size of the S sets for a (k-1)-uniform graph is (k-2) w.r.t. k
        d = self.density()
        # neighborhood bitmask for every (k-2)-set that appears in an edge
        masks: dict[tuple[int, ...], int] = {}
        for e in self:
            for i in range(self.k):
                s = e[:i] + e[i + 1:]
                rest = e[i]
                masks[s] = masks.get(s, 0) | (1 << rest)
        all_sets = list(combinations(range(1, self.n + 1), km2 - 0)) if km2 else [()]
        # (k-2)-sets relative to decomposition into K_k: for a (k-1)-uniform
        # graph the sets have size k-2 = self.k - 1.
        defect = 0.0
        for ell in range(1, h + 1):
            total = comb(len(all_sets), ell)
            if total <= sample_cap:
                tuples = combinations(range(len(all_sets)), ell)
            else:
                key = rng.derive_key(seed, _DOM_TYPICALITY, ell)
                tuples = (
                    tuple(sorted(rng.randbelow(key, t * ell + j, len(all_sets)) for j in range(ell)))
                    for t in range(sample_cap)
                )
            expected = (d ** ell) * self.n
            for idxs in tuples:
                if len(set(idxs)) != ell:
                    continue
                inter = ~0
                for i in idxs:
                    inter &= masks.get(all_sets[i], 0)
                    if not inter:
                        break
                cnt = bin(inter & ((1 << (self.n + 1)) - 1)).count("1") if inter else 0
                defect = max(defect, abs(cnt / expected - 1.0))
        return defect

    def affine_bound_C(self, injection) -> float:
        """Measured affine-boundedness constant of the injected facet image.

        Maximum over all affine lines A in F^(k-1) of
        |A ∩ S| * |F|^(k-1) / (|A| * |S|) where S is the set of facet
        vectors under the injection.  Lines suffice: any higher
        dimensional affine space partitions into lines.
        """
        if len(self) == 0:
            raise ValueError("empty hypergraph")
        field = injection.field
        q = field.order
        dim = self.k  # vectors live in F^(k) for a k-uniform graph used as facets
        vals = injection.values  # 0-based vertex -> field value
        pts = vals[self.verts().astype(np.int64)]  # (m, dim) uint32
        m = pts.shape[0]
        best = 0
        # directions in projective normal form: first nonzero coordinate = 1
        for pivot in range(dim):
            tails = np.zeros((1, 0), dtype=np.uint32)
            free = dim - pivot - 1
            for _ in range(free):
                reps = tails.shape[0]
                nxt = np.repeat(tails, q, axis=0)
                col = np.tile(np.arange(q, dtype=np.uint32), reps)[:, None]
                tails = np.hstack([nxt, col])
            for tail in tails:
                # line id: zero out the pivot coordinate
                ids = np.zeros(m, dtype=np.int64)
                mult = 1
                for j in range(dim):
                    if j < pivot:
                        coord = pts[:, j]
                    elif j == pivot:
                        continue
                    else:
                        s = int(tail[j - pivot - 1])
                        coord = pts[:, j].astype(np.uint32)
                        if s:
                            coord = coord ^ field.mul_scalar_vec(np.uint32(s), pts[:, pivot].astype(np.uint32))
                    ids = ids * q + coord.astype(np.int64)
                    mult += 1
                cnt = np.bincount(ids).max() if m else 0
                best = max(best, int(cnt))
        return best * (q ** (dim - 1)) / (q * m)

    # -- persistence ------------------------------------------------------------

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(f"{self.n} {self.k}\n")
            for e in self:
                fh.write(" ".join(map(str, e)) + "\n")

    @classmethod
    def load(cls, path) -> "Hypergraph":
        with open(path) as fh:
            first = fh.readline().split()
            if len(first) != 2:
                raise ValueError(f"bad header in {path}")
            n, k = int(first[0]), int(first[1])
            edges = [tuple(map(int, line.split())) for line in fh if line.strip()]
        return cls.from_edges(n, k, edges)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "k": self.k, "edges": [list(e) for e in self]})

    @classmethod
    def from_json(cls, text: str) -> "Hypergraph":
        obj = json.loads(text)
        return cls.from_edges(obj["n"], obj["k"], obj["edges"])


# -- random models ------------------------------------------------------------


def _edge_uniforms(n: int, k: int, seed: int) -> np.ndarray:
    key = rng.derive_key(seed, _DOM_EDGE_UNIFORMS, n, k)
    return rng.uniform_array(key, np.arange(comb(n, k), dtype=np.uint64))


def sample_hnp(n: int, k: int, p: float, seed: int) -> Hypergraph:
    """H(n;p): every k-set independently with probability p.

    The per-edge uniform is keyed by (seed, edge code), so samples at
    p1 <= p2 under the same seed are nested, and agree with the prefix
    of ProcessStream(n, k, seed).
    """
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    if p == 1.0:
        return Hypergraph.complete(n, k)
    u = _edge_uniforms(n, k, seed)
    return Hypergraph(n, k, np.flatnonzero(u < p).astype(np.uint64))


class ProcessStream:
    """The random k-set process: all C(n,k) edges in uniformly random order.

    Driven by the same per-edge uniforms as sample_hnp, consumed in
    increasing order, so the first |{u < p}| edges form exactly H(n;p).
    """

    def __init__(self, n: int, k: int, seed: int):
        self.n = n
        self.k = k
        self.seed = seed
        self.total = comb(n, k)
        u = _edge_uniforms(n, k, seed)
        self.order = np.argsort(u, kind="stable").astype(np.uint64)
        self.t = 0
        self._ct = comb_table(n, k)

    def next_edge(self) -> tuple[int, ...]:
        if self.t >= self.total:
            raise StopIteration("process stream exhausted")
        code = self.order[self.t]
        self.t += 1
        row = unrank_colex(np.array([code]), self.k, self._ct)[0]
        return tuple(int(v) + 1 for v in row)

    def accumulated(self) -> Hypergraph:
        return Hypergraph(self.n, self.k, self.order[: self.t].copy())


def process_next(stream: ProcessStream) -> tuple[tuple[int, ...], ProcessStream]:
    """Draw the next edge; the stream's step counter advances."""
    return stream.next_edge(), stream

"""Independent checks on expanded parity-check matrices.

Nothing here looks at exponent matrices: the girth oracle runs a plain
breadth-first search on the bipartite Tanner graph of the binary matrix.
"""

from __future__ import annotations

from collections import deque
from typing import Optional

from .exponent import ParameterError, ParityCheckMatrix


def _adjacency(H: ParityCheckMatrix):
    csr = H.matrix.tocsr()
    csc = H.matrix.tocsc()
    var_to_chk = [csc.indices[csc.indptr[j]:csc.indptr[j + 1]] for j in range(H.shape[1])]
    chk_to_var = [csr.indices[csr.indptr[i]:csr.indptr[i + 1]] for i in range(H.shape[0])]
    return var_to_chk, chk_to_var


def tanner_girth_oracle(H: ParityCheckMatrix, cap: int = 12) -> Optional[int]:
    """Exact girth by BFS from every variable node, or ``None`` if above ``cap``.

    Every cycle contains a variable node, and BFS rooted on a node of a
    shortest cycle closes it at exactly its length, so the minimum over all
    roots is the girth.
    """
    if cap % 2 or cap < 4:
        raise ParameterError("cap must be even and >= 4")
    v2c, c2v = _adjacency(H)
    nv = H.shape[1]
    best = cap + 1
    # node ids: variables 0..nv-1, checks nv..
    for root in range(nv):
        dist = {root: 0}
        parent = {root: -1}
        q = deque([root])
        while q:
            u = q.popleft()
            du = dist[u]
            if 2 * du >= best:
                break
            nbrs = v2c[u] + nv if u < nv else c2v[u - nv]
            for w in nbrs:
                w = int(w)
                if w == parent[u]:
                    continue
                if w in dist:
                    best = min(best, du + dist[w] + 1)
                else:
                    dist[w] = du + 1
                    parent[w] = u
                    q.append(w)
    return None if best > cap else best

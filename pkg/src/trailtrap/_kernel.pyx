# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled game-tree search kernel.

Exact win/loss search over states (used-edge mask, both positions, turn).
The 128-bit edge mask is carried as two 64-bit words. Memoization uses a
direct-mapped open-addressing table with replace-on-collision; retention is
best-effort and never affects soundness because the game is acyclic (every
move adds an edge to the mask).
"""

from libc.stdlib cimport calloc, free

KERNEL_NAME = "compiled"

cdef struct Entry:
    unsigned long long lo
    unsigned long long hi
    # meta layout: pos1 | pos2<<8 | turn<<16 | occupied<<17 | value<<18
    unsigned int meta


cdef inline unsigned long long _mix(unsigned long long x) nogil:
    x ^= x >> 33
    x *= <unsigned long long>0xFF51AFD7ED558CCD
    x ^= x >> 33
    x *= <unsigned long long>0xC4CEB9FE1A85EC53
    x ^= x >> 33
    return x


cdef class Searcher:
    cdef int n
    cdef int* off
    cdef int* eidx
    cdef int* enbr
    cdef Entry* table
    cdef unsigned long long slot_mask
    cdef long long budget
    cdef public long long nodes

    def __cinit__(self, adj, int tt_bits, long long budget):
        cdef int n = len(adj)
        cdef int total = 0
        for pairs in adj:
            total += len(pairs)
        self.n = n
        self.off = <int*>calloc(n + 1, sizeof(int))
        self.eidx = <int*>calloc(max(total, 1), sizeof(int))
        self.enbr = <int*>calloc(max(total, 1), sizeof(int))
        if self.off == NULL or self.eidx == NULL or self.enbr == NULL:
            raise MemoryError()
        cdef int k = 0
        cdef int v
        for v in range(n):
            self.off[v] = k
            for e, nb in adj[v]:
                self.eidx[k] = e
                self.enbr[k] = nb
                k += 1
        self.off[n] = k
        cdef unsigned long long slots = (<unsigned long long>1) << tt_bits
        self.table = <Entry*>calloc(slots, sizeof(Entry))
        if self.table == NULL:
            raise MemoryError()
        self.slot_mask = slots - 1
        self.budget = budget
        self.nodes = 0

    def __dealloc__(self):
        if self.off != NULL:
            free(self.off)
        if self.eidx != NULL:
            free(self.eidx)
        if self.enbr != NULL:
            free(self.enbr)
        if self.table != NULL:
            free(self.table)

    def search_root(self, mask, int p1, int p2, int turn):
        """1 if the player to move wins, 0 if they lose, -1 on budget blow."""
        cdef unsigned long long lo = mask & 0xFFFFFFFFFFFFFFFF
        cdef unsigned long long hi = mask >> 64
        return self._search(lo, hi, p1, p2, turn)

    cdef int _search(self, unsigned long long lo, unsigned long long hi,
                     int p1, int p2, int turn):
        self.nodes += 1
        if self.nodes > self.budget:
            return -1
        cdef unsigned int meta = (<unsigned int>p1 | (<unsigned int>p2 << 8)
                                  | (<unsigned int>turn << 16))
        cdef unsigned long long h = _mix(lo ^ _mix(hi ^ (<unsigned long long>meta)))
        cdef Entry* ent = &self.table[h & self.slot_mask]
        if (ent.meta >> 17) & 1:
            if ent.lo == lo and ent.hi == hi and (ent.meta & 0x1FFFF) == meta:
                return (ent.meta >> 18) & 1
        cdef int pos = p1 if turn == 0 else p2
        cdef int res = 0
        cdef int i, e, nb, sub
        cdef unsigned long long nlo, nhi
        for i in range(self.off[pos], self.off[pos + 1]):
            e = self.eidx[i]
            if e < 64:
                if (lo >> e) & 1:
                    continue
                nlo = lo | ((<unsigned long long>1) << e)
                nhi = hi
            else:
                if (hi >> (e - 64)) & 1:
                    continue
                nlo = lo
                nhi = hi | ((<unsigned long long>1) << (e - 64))
            nb = self.enbr[i]
            if turn == 0:
                sub = self._search(nlo, nhi, nb, p2, 1)
            else:
                sub = self._search(nlo, nhi, p1, nb, 0)
            if sub < 0:
                return -1
            if sub == 0:
                res = 1
                break
        ent.lo = lo
        ent.hi = hi
        ent.meta = meta | (<unsigned int>1 << 17) | (<unsigned int>res << 18)
        return res

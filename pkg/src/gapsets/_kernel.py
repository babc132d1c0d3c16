"""Compiled depth-first counting kernel.

Same walk as `gapsets.tree`, restated for numba: the gap set along the
current root-to-node path lives in one shared uint8 flag array (each
tree edge adds exactly one gap, so push sets a flag and pop clears it),
and the stack is four parallel int64 arrays holding multiplicity,
conductor, candidate cursor and the flag to clear on pop.  Counts land
in an int64 cube indexed (genus, depth, multiplicity).

The function releases the GIL, so independent subtrees can run on
plain Python threads; callers must pass each call its own flag array
and counts buffer.
"""

import numpy as np
from numba import njit


@njit(
    "void(uint8[:], int64, int64, int64, int64, int64, int64, int64[:, :, :])",
    cache=True,
    nogil=True,
)
def count_dfs(gapflag, m0, c0, g0, gmax, depth_cap, mult_cap, counts):
    """Count the subtree rooted at (gapflag, m0, c0, g0), root included.

    gapflag must hold exactly the root's gaps and have room for indices
    up to 3 * gmax (largest candidate); it is restored on return.
    depth_cap / mult_cap of -1 mean unpruned.
    """
    slots = gmax - g0 + 2
    st_m = np.empty(slots, np.int64)
    st_c = np.empty(slots, np.int64)
    st_a = np.empty(slots, np.int64)
    st_added = np.empty(slots, np.int64)

    st_m[0] = m0
    st_c[0] = c0
    st_a[0] = c0
    st_added[0] = -1
    counts[g0, (c0 + m0 - 1) // m0, m0] += 1

    top = 0
    while top >= 0:
        a = st_a[top]
        m = st_m[top]
        if g0 + top >= gmax or a >= st_c[top] + m:
            if st_added[top] >= 0:
                gapflag[st_added[top]] = 0
            top -= 1
            continue
        st_a[top] = a + 1
        ok = True
        for x in range(m, (a >> 1) + 1):
            if gapflag[x] == 0 and gapflag[a - x] == 0:
                ok = False
                break
        if not ok:
            continue
        cm = m + 1 if a == m else m
        if mult_cap >= 0 and cm > mult_cap:
            continue
        cc = a + 1
        q = (cc + cm - 1) // cm
        if depth_cap >= 0 and q > depth_cap:
            continue
        counts[g0 + top + 1, q, cm] += 1
        top += 1
        st_m[top] = cm
        st_c[top] = cc
        st_a[top] = cc
        st_added[top] = a
        gapflag[a] = 1

# cython: language_level=3
# cython: boundscheck=False, wraparound=False
"""Compiled kernels for the hot inner loops.

Same contract as `permwit._kernels_py`: image tables are `bytes`,
table[x] is the 0-based image of 0-based point x, and products are
left-action composes (result[x] = a[b[x]]).  Iteration order matches the
pure lane exactly so both produce byte-identical results.
"""

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize, PyBytes_GET_SIZE


cdef inline bytes _compose_raw(const unsigned char *a, const unsigned char *b, Py_ssize_t n):
    out = PyBytes_FromStringAndSize(NULL, n)
    cdef unsigned char *po = <unsigned char *> PyBytes_AS_STRING(out)
    cdef Py_ssize_t i
    for i in range(n):
        po[i] = a[b[i]]
    return out


def compose(bytes a not None, bytes b not None):
    """Table of the left-action product: result[x] = a[b[x]]."""
    cdef Py_ssize_t n = PyBytes_GET_SIZE(a)
    if PyBytes_GET_SIZE(b) != n:
        raise ValueError("degree mismatch")
    return _compose_raw(<const unsigned char *> PyBytes_AS_STRING(a),
                        <const unsigned char *> PyBytes_AS_STRING(b), n)


def inverse(bytes a not None):
    cdef Py_ssize_t n = PyBytes_GET_SIZE(a)
    cdef const unsigned char *pa = <const unsigned char *> PyBytes_AS_STRING(a)
    out = PyBytes_FromStringAndSize(NULL, n)
    cdef unsigned char *po = <unsigned char *> PyBytes_AS_STRING(out)
    cdef Py_ssize_t i
    for i in range(n):
        po[pa[i]] = <unsigned char> i
    return out


def orbit(int start, gens):
    """Closure of a single 0-based point under the generator tables."""
    cdef list tables = list(gens)
    cdef unsigned char[256] seen
    cdef int stack[256]
    cdef Py_ssize_t depth = 0
    cdef int x, y
    cdef bytes g
    cdef const unsigned char *pg
    for x in range(256):
        seen[x] = 0
    seen[start] = 1
    stack[0] = start
    depth = 1
    result = {start}
    while depth > 0:
        depth -= 1
        x = stack[depth]
        for g in tables:
            pg = <const unsigned char *> PyBytes_AS_STRING(g)
            y = pg[x]
            if not seen[y]:
                seen[y] = 1
                stack[depth] = y
                depth += 1
                result.add(y)
    return result


def close_elements(int degree, gens, limit):
    """All elements of the group generated by `gens`, in BFS order.

    Starts from the identity and left-multiplies by generators in order.
    Returns None as soon as more than `limit` elements appear.
    """
    cdef list tables = list(gens)
    cdef Py_ssize_t n = degree
    cdef Py_ssize_t lim = limit
    cdef Py_ssize_t head = 0
    cdef bytes ident = bytes(range(degree))
    cdef set seen = {ident}
    cdef list order = [ident]
    cdef bytes x, g, y
    while head < len(order):
        x = <bytes> order[head]
        head += 1
        for g in tables:
            y = _compose_raw(<const unsigned char *> PyBytes_AS_STRING(g),
                             <const unsigned char *> PyBytes_AS_STRING(x), n)
            if y not in seen:
                if len(order) >= lim:
                    return None
                seen.add(y)
                order.append(y)
    return order


def conjugacy_orbit(bytes x not None, gens, invs):
    """Closure of x under conjugation by the given generator/inverse pairs."""
    cdef list pairs = list(zip(gens, invs))
    cdef Py_ssize_t n = PyBytes_GET_SIZE(x)
    cdef set seen = {x}
    cdef list stack = [x]
    cdef bytes e, g, inv, gx, y
    while stack:
        e = <bytes> stack.pop()
        for g, inv in pairs:
            gx = _compose_raw(<const unsigned char *> PyBytes_AS_STRING(g),
                              <const unsigned char *> PyBytes_AS_STRING(e), n)
            y = _compose_raw(<const unsigned char *> PyBytes_AS_STRING(gx),
                             <const unsigned char *> PyBytes_AS_STRING(inv), n)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen

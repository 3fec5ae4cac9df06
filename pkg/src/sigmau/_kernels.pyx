# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Must stay numerically in step with _kernels_py."""

from libc.math cimport sqrt, log1p, fabs

cdef double _EPS = 1e-13


cdef inline bint _inside(double cx, double cy, double r, double x, double y):
    cdef double dx = x - cx
    cdef double dy = y - cy
    return sqrt(dx * dx + dy * dy) <= r * (1.0 + _EPS)


cdef inline void _diameter(double ax, double ay, double bx, double by, double* c):
    c[0] = 0.5 * (ax + bx)
    c[1] = 0.5 * (ay + by)
    c[2] = 0.5 * sqrt((ax - bx) * (ax - bx) + (ay - by) * (ay - by))


cdef void _circum(double ax, double ay, double bx, double by,
                  double cx, double cy, double* c):
    cdef double bxr = bx - ax, byr = by - ay, cxr = cx - ax, cyr = cy - ay
    cdef double d = 2.0 * (bxr * cyr - byr * cxr)
    cdef double b2, c2, ux, uy, dab, dac, dbc
    if d == 0.0:
        # collinear: the farthest pair spans the circle
        dab = bxr * bxr + byr * byr
        dac = cxr * cxr + cyr * cyr
        dbc = (cx - bx) * (cx - bx) + (cy - by) * (cy - by)
        if dab >= dac and dab >= dbc:
            _diameter(ax, ay, bx, by, c)
        elif dac >= dbc:
            _diameter(ax, ay, cx, cy, c)
        else:
            _diameter(bx, by, cx, cy, c)
        return
    b2 = bxr * bxr + byr * byr
    c2 = cxr * cxr + cyr * cyr
    ux = (cyr * b2 - byr * c2) / d
    uy = (bxr * c2 - cxr * b2) / d
    c[0] = ax + ux
    c[1] = ay + uy
    c[2] = sqrt(ux * ux + uy * uy)


def min_enclosing_circle(const double[:] xs, const double[:] ys):
    """Incremental smallest enclosing circle over points in the given order."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double c[3]
    if n == 0:
        raise ValueError("no points")
    c[0] = xs[0]; c[1] = ys[0]; c[2] = 0.0
    for i in range(1, n):
        if _inside(c[0], c[1], c[2], xs[i], ys[i]):
            continue
        c[0] = xs[i]; c[1] = ys[i]; c[2] = 0.0
        for j in range(i):
            if _inside(c[0], c[1], c[2], xs[j], ys[j]):
                continue
            _diameter(xs[i], ys[i], xs[j], ys[j], c)
            for k in range(j):
                if _inside(c[0], c[1], c[2], xs[k], ys[k]):
                    continue
                _circum(xs[i], ys[i], xs[j], ys[j], xs[k], ys[k], c)
    return c[0], c[1], c[2]


cdef inline double _log_factor(double lr, double li, double zr, double zi):
    # log|1 - w| + Re(w), w = z / lambda
    cdef double den = lr * lr + li * li
    cdef double u = (zr * lr + zi * li) / den
    cdef double v = (zi * lr - zr * li) / den
    return 0.5 * log1p(-2.0 * u + u * u + v * v) + u


def log_abs_product(const double[:] lam_re, const double[:] lam_im, double zr, double zi):
    """Neumaier-compensated sum of genus-1 log factors for one evaluation point."""
    cdef Py_ssize_t n = lam_re.shape[0]
    cdef Py_ssize_t k
    cdef double s = 0.0, comp = 0.0, x, t
    for k in range(n):
        x = _log_factor(lam_re[k], lam_im[k], zr, zi)
        t = s + x
        if fabs(s) >= fabs(x):
            comp += (s - t) + x
        else:
            comp += (x - t) + s
        s = t
    return s + comp

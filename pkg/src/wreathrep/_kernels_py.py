"""Pure-Python term-map kernels.

A term map is a ``dict`` from exponent tuples to nonzero residues mod p.
Every function returns a fresh dict and never mutates its inputs.
"""


def add_terms(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        s = (out.get(e, 0) + c) % p
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def sub_terms(a, b, p):
    out = dict(a)
    for e, c in b.items():
        s = (out.get(e, 0) - c) % p
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def scale_terms(a, c, p):
    c %= p
    if not c:
        return {}
    return {e: (v * c) % p for e, v in a.items()}


def mul_terms(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = {}
    for e1, c1 in b.items():
        for e2, c2 in a.items():
            e = tuple([x + y for x, y in zip(e1, e2)])
            out[e] = (out.get(e, 0) + c1 * c2) % p
    return {e: c for e, c in out.items() if c}


def shift_terms(a, v):
    return {tuple([x + y for x, y in zip(e, v)]): c for e, c in a.items()}


def subst_terms(a, matrix, p):
    # exponent row vector e maps to e * matrix
    d_out = len(matrix[0]) if matrix else 0
    cols = range(d_out)
    out = {}
    for e, c in a.items():
        img = tuple([sum(e[k] * matrix[k][l] for k in range(len(e))) for l in cols])
        out[img] = (out.get(img, 0) + c) % p
    return {e: c for e, c in out.items() if c}

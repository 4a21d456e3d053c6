"""Shared helpers: seeded random sample builders and independent oracles."""
import itertools
from fractions import Fraction

from hyperwedge.indices import Window
from hyperwedge.multivector import Covector, Multivector, RationalMatrix, contract, wedge


def random_vector(rng, window, bound=9):
    """Dense grade-1 multivector with integer entries in [-bound, bound]."""
    terms = {}
    for i in window.elements():
        c = rng.randint(-bound, bound)
        if c:
            terms[(i,)] = Fraction(c)
    return Multivector(window, 1, terms)


def random_multivector(rng, window, grade, max_terms=4, bound=9):
    """Sparse random element: up to max_terms basis wedges, integer coefficients."""
    if grade == 0:
        return Multivector(window, 0, {(): Fraction(rng.randint(-bound, bound))})
    combos = list(itertools.combinations(window.elements(), grade))
    picks = rng.sample(combos, min(max_terms, len(combos)))
    terms = {}
    for I in picks:
        c = rng.randint(-bound, bound)
        if c:
            terms[I] = Fraction(c)
    return Multivector(window, grade, terms)


def random_decomposable(rng, window, grade, bound=9):
    while True:
        out = Multivector(window, 0, {(): Fraction(1)})
        for _ in range(grade):
            out = wedge(out, random_vector(rng, window, bound))
        if not out.is_zero():
            return out


def random_matrix(rng, window, bound=5):
    labels = window.elements()
    rows = [[Fraction(rng.randint(-bound, bound)) for _ in labels] for _ in labels]
    return RationalMatrix(window, rows)


def random_invertible(rng, window, bound=5):
    while True:
        m = random_matrix(rng, window, bound)
        if m.det() != 0:
            return m


def random_covector(rng, window, bound=9):
    coeffs = {i: Fraction(rng.randint(-bound, bound)) for i in window.elements()}
    return Covector(window, {i: c for i, c in coeffs.items() if c})


# ---------------------------------------------------------------- oracles

def perm_sign_oracle(seq):
    """Parity via explicit inversion count over positions (assumes no repeats)."""
    items = list(seq)
    inv = sum(
        1
        for a in range(len(items))
        for b in range(a + 1, len(items))
        if items[a] > items[b]
    )
    return -1 if inv % 2 else 1


def det_oracle(matrix):
    """Permutation-expansion determinant; only sane for small matrices."""
    labels = matrix.window.elements()
    n = len(labels)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        term = perm_sign_oracle(perm)
        prod = Fraction(1)
        for i, j in enumerate(perm):
            prod *= matrix.entry(labels[i], labels[j])
        total += term * prod
    return total


def rank_oracle(matrix):
    """Largest size of a nonvanishing minor, by brute force."""
    labels = matrix.window.elements()
    n = len(labels)
    for size in range(n, 0, -1):
        for rows in itertools.combinations(labels, size):
            for cols in itertools.combinations(labels, size):
                sub_window = Window(0, size)
                sub = RationalMatrix(
                    sub_window,
                    [[matrix.entry(r, c) for c in cols] for r in rows],
                )
                if det_oracle(sub) != 0:
                    return size
    return 0


def is_decomposable_oracle(v):
    """Classical criterion: every single contraction wedged back in vanishes."""
    if v.is_zero() or v.grade <= 1:
        return True
    for i in v.window.elements():
        f = Covector.dual_basis(v.window, i)
        if not wedge(contract(f, v), v).is_zero():
            return False
    return True

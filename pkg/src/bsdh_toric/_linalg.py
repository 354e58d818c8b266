"""Small exact linear algebra over the integers and rationals."""

from fractions import Fraction


class SingularMatrixError(ArithmeticError):
    pass


def det_bareiss(rows):
    """Determinant of a square integer matrix by fraction-free elimination."""
    a = [list(map(int, row)) for row in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for s in range(k + 1, n):
                if a[s][k] != 0:
                    a[k], a[s] = a[s], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve(rows, rhs):
    """Solve ``rows @ x = rhs`` exactly; returns a list of Fractions.

    Raises SingularMatrixError when the system has no unique solution.
    """
    n = len(rows)
    a = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [a[i][n] / a[i][i] for i in range(n)]


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def matvec(rows, v):
    return [sum(x * y for x, y in zip(row, v)) for row in rows]


def as_int(x):
    """Convert an integral Fraction to int, raising if it is not integral."""
    x = Fraction(x)
    if x.denominator != 1:
        raise ValueError(f"{x} is not an integer")
    return x.numerator

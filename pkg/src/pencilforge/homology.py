"""Homology of the genus-g surface in the hyperelliptic chain model.

Fixed symplectic basis a_1..a_g, b_1..b_g of H1(Sigma_g; Z), coordinates
(a_1..a_g, b_1..b_g), with pairing <a_i, b_i> = 1.  The chain curves
c_1..c_{2g+1} of the hyperelliptic model get the classes

    c_{2k-1} = a_k - a_{k-1}   (a_0 = a_{g+1} = 0),
    c_{2k}   = b_k,

so that consecutive chain classes pair to 1, distant ones to 0, and the
odd-position classes sum to zero, as they must on the double cover of the
sphere.  A right-handed Dehn twist about a curve of class v acts on
homology by the transvection x -> x + <x, v> v.
"""

from __future__ import annotations

from typing import Optional

from .intmat import Matrix, Vector, identity, mat_mul, primitive


def basis_vector(g: int, kind: str, k: int) -> Vector:
    """The class a_k or b_k (1-indexed) on Sigma_g."""
    v = [0] * (2 * g)
    if kind == "a":
        v[k - 1] = 1
    elif kind == "b":
        v[g + k - 1] = 1
    else:
        raise ValueError("kind must be 'a' or 'b'")
    return v


def pairing(g: int, u: Vector, v: Vector) -> int:
    """Symplectic intersection pairing <u, v>."""
    return sum(u[i] * v[g + i] - u[g + i] * v[i] for i in range(g))


def sp_form(g: int) -> Matrix:
    """The Gram matrix J = [[0, I], [-I, 0]] of the pairing."""
    j = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        j[i][g + i] = 1
        j[g + i][i] = -1
    return j


def is_symplectic(g: int, m: Matrix) -> bool:
    from .intmat import transpose
    j = sp_form(g)
    return mat_mul(mat_mul(transpose(m), j), m) == j


def transvection(g: int, v: Vector) -> Matrix:
    """Matrix of x -> x + <x, v> v in the fixed basis (columns are images)."""
    n = 2 * g
    t = identity(n)
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        c = pairing(g, e, v)
        if c:
            for i in range(n):
                t[i][j] += c * v[i]
    return t


def sp_product(g: int, classes: list[Vector]) -> Matrix:
    """Product of transvections in word order (first twist leftmost)."""
    m = identity(2 * g)
    for v in classes:
        m = mat_mul(m, transvection(g, v))
    return m


def chain_class(g: int, j: int) -> Vector:
    """Homology class of the j-th chain curve c_j, 1 <= j <= 2g+1."""
    if not 1 <= j <= 2 * g + 1:
        raise ValueError(f"chain index {j} out of range for genus {g}")
    v = [0] * (2 * g)
    if j % 2 == 1:
        k = (j + 1) // 2  # c_{2k-1} = a_k - a_{k-1}
        if k <= g:
            v[k - 1] = 1
        if k - 1 >= 1:
            v[k - 2] = -1
    else:
        k = j // 2
        v[g + k - 1] = 1
    return v


def solve_twist_square(g: int, m: Matrix) -> Optional[Vector]:
    """Solve T_v^2 = m for a class v, i.e. m(x) = x + 2 <x, v> v.

    Returns a primitive representative (v and -v give the same twist), the
    zero vector when m is the identity, and None when no solution exists.
    """
    n = 2 * g
    if m == identity(n):
        return [0] * n
    # every column of m - I must be an integer multiple of v
    diff = [[m[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    v: Optional[Vector] = None
    for j in range(n):
        col = [diff[i][j] for i in range(n)]
        if any(col):
            v = primitive(col)
            break
    if v is None:
        return None
    t2 = mat_mul(transvection(g, v), transvection(g, v))
    if t2 == m:
        return v
    return None

"""Independent sympy oracle for the derived values frozen into the C++ tests.

Run: python3 tests/oracle/derive.py
"""
import math

import sympy as sp

s = sp.symbols("s")

F1 = sp.Matrix([[2, 1, 1, 0, 0, 0, 0], [1, 3, 1, 1, 0, 0, 0], [1, 1, 2, 1, 0, 0, 0], [0, 1, 1, 1, 0, 0, 0],
                [0, 0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0, 0], [0, 1, 0, 0, 0, 0, 1]])
G1 = sp.Matrix([[1, 1, 1, 0, 0, 0, 1], [0, 3, 2, 2, 0, 1, 1], [1, 2, 3, 2, 0, 0, 0], [0, 2, 2, 2, 0, 0, 0],
                [0, 0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1, 0]])
F2 = sp.Matrix([[1, 1, 1, 1, 1], [0, 1, 1, 0, 1], [1, 1, 1, 1, 1], [0, 1, 1, 0, 1], [1, 0, 1, 0, 0], [0, 0, 1, 1, 1]])
G2 = sp.Matrix([[1, 2, 2, 1, 2], [0, 2, 2, 0, 2], [1, 2, 2, 2, 3], [0, 2, 3, 1, 3], [0, 0, 0, 0, 0], [1, 0, 1, 0, 0]])
P2 = sp.Matrix([[1, -1, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [-1, 0, 1, 0, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1],
                [0, -1, 0, 1, 0, 0]])
Q2 = sp.Matrix([[0, 0, 1, 1, -1], [1, 1, -1, -1, 0], [0, 0, -1, 0, 1], [1, 0, -1, -1, 1], [-1, 0, 2, 1, -1]])


def toeplitz_kernel_dims(F, G, kmax):
    """dim ker of the block Toeplitz matrix of sF-G for degrees 0..kmax (right null space)."""
    m, n = F.shape
    dims = []
    for k in range(kmax + 1):
        T = sp.zeros((k + 2) * m, (k + 1) * n)
        for j in range(k + 1):
            T[j * m:(j + 1) * m, j * n:(j + 1) * n] = -G
            T[(j + 1) * m:(j + 2) * m, j * n:(j + 1) * n] = F
        dims.append(T.shape[1] - T.rank())
    return dims


def minimal_indices(dims):
    """Minimal indices from kernel dimensions: #indices <= k equals dims[k] - dims[k-1] increments."""
    out, counted = [], 0
    for k, dk in enumerate(dims):
        # number of independent solutions of degree <= k = sum_{eps<=k} (k - eps + 1)
        have = sum(k - e + 1 for e in out)
        for _ in range(dk - have):
            out.append(k)
    return out


def normal_rank(F, G):
    return (s * F - G).rank()


print("rank F2 =", F2.rank())
print("normal rank ex1 =", normal_rank(F1, G1), "ex2 =", normal_rank(F2, G2))
print("det(sF1-G1) =", sp.expand((s * F1 - G1).det()))
print("cmi ex1 =", minimal_indices(toeplitz_kernel_dims(F1, G1, 5)))
print("rmi ex1 =", minimal_indices(toeplitz_kernel_dims(F1.T, G1.T, 5)))
print("cmi ex2 =", minimal_indices(toeplitz_kernel_dims(F2, G2, 4)))
print("rmi ex2 =", minimal_indices(toeplitz_kernel_dims(F2.T, G2.T, 4)))
minors = [sp.factor((s * F1 - G1).extract([i for i in range(7) if i != a], [j for j in range(7) if j != b]).det())
          for a in range(7) for b in range(7)]
print("gcd of 6x6 minors ex1 =", sp.factor(sp.gcd_list([m for m in minors if m != 0])))
print("PFQ ex2 =", (P2 * F2 * Q2).tolist())
print("PGQ ex2 =", (P2 * G2 * Q2).tolist())
print("det P2 =", P2.det(), "det Q2 =", Q2.det())
print("Q2^-1 =", Q2.inv().tolist())
print("det(s*diag(1,0)+I) =", sp.expand((s * sp.diag(1, 0) + sp.eye(2)).det()))
for t in (0.5, 1.0):
    print(f"Y({t}) =", [0.0, math.exp(t) - 2 * math.exp(2 * t), 0.0, math.exp(t), -math.exp(t)])
print("rk4 target diag(1,2), Z0=[1,-2], t=1:", [math.e, -2 * math.exp(2)])

A0, A1, A2 = (sp.Matrix(2, 2, sp.symbols(f"a{k}_0:4")) for k in range(3))
F = sp.diag(sp.eye(2), A2)
G = sp.Matrix(sp.BlockMatrix([[sp.zeros(2), sp.eye(2)], [-A0, -A1]]))
y1, y2 = sp.Matrix(sp.symbols("y1:3")), sp.Matrix(sp.symbols("z1:3"))
dy1, dy2 = sp.Matrix(sp.symbols("dy1:3")), sp.Matrix(sp.symbols("dz1:3"))
lhs = F * sp.Matrix.vstack(dy1, dy2) - G * sp.Matrix.vstack(y1, y2)
chain = sp.Matrix.vstack(dy1 - y2, A2 * dy2 + A1 * y2 + A0 * y1)
print("n=2 companion identity holds:", sp.simplify(lhs - chain) == sp.zeros(4, 1))

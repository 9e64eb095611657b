"""Fast-forwarding OGD for losses quadratic in the weights.

When the loss is a quadratic form in w, each training point's gradient
step is an affine map of the weight vector, so one step is a matrix in
homogeneous (d+1)-coordinates, one full pass is the product of its step
matrices, and tau iterations collapse to matrix exponentiation by
squaring: O(T + log tau) multiplications in total.

This is also why such models cannot express the circuit constructions the
hinge and ReLU families support: composing affine maps stays affine, and
no affine map realizes NAND on +/-1 inputs (``nand_affine_fit`` shows the
4-constraint system is infeasible).

Exact rational entries grow under repeated squaring; for huge tau the
modular variant does the same computation over the integers mod a prime.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .rationals import ONE, ZERO, SparseVec, bit_length, format_rat

Matrix = list[list[Fraction]]
Vector = list[Fraction]


class ModulusError(ArithmeticError):
    """A denominator is not invertible modulo the chosen prime."""


class PrecisionOverflow(ArithmeticError):
    """Exact entries exceeded the bit budget; use the modular mode."""


@dataclass
class OpCounter:
    matmuls: int = 0
    matvecs: int = 0


@dataclass(frozen=True)
class QuadraticLoss:
    """loss(w) = w.A(x,y).w + b(x,y).w + c(x,y) with A symmetric.

    The coefficient functions may be arbitrary functions of the training
    point; the built-in least-squares constructor covers
    (y - w.x)^2 = (w.x)^2 - 2y(w.x) + y^2.
    """

    dim: int
    a_fn: Callable[[SparseVec, Fraction], Matrix]
    b_fn: Callable[[SparseVec, Fraction], Vector]
    c_fn: Callable[[SparseVec, Fraction], Fraction]
    name: str = "quadratic"

    @classmethod
    def least_squares(cls, dim: int) -> "QuadraticLoss":
        def a_fn(x: SparseVec, y: Fraction) -> Matrix:
            dense = [x.get(i) for i in range(dim)]
            return [[dense[i] * dense[j] for j in range(dim)] for i in range(dim)]

        def b_fn(x: SparseVec, y: Fraction) -> Vector:
            return [-2 * y * x.get(i) for i in range(dim)]

        def c_fn(x: SparseVec, y: Fraction) -> Fraction:
            return y * y

        return cls(dim, a_fn, b_fn, c_fn, name="least-squares")


@dataclass(frozen=True)
class AffineStep:
    """Homogeneous (d+1)x(d+1) step matrix; last row stays (0,...,0,1)."""

    m: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.m) - 1

    def apply(self, w: Sequence[Fraction]) -> Vector:
        vec = list(w) + [ONE]
        out = [sum(row[j] * vec[j] for j in range(len(vec))) for row in self.m[:-1]]
        return out


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix, counter: OpCounter | None = None) -> Matrix:
    if counter is not None:
        counter.matmuls += 1
    n, k, m = len(a), len(b), len(b[0])
    bt = [[b[r][c] for r in range(k)] for c in range(m)]
    return [[sum(row[i] * col[i] for i in range(k)) for col in bt] for row in a]


def matvec(a: Matrix, v: Vector, counter: OpCounter | None = None) -> Vector:
    if counter is not None:
        counter.matvecs += 1
    return [sum(row[i] * v[i] for i in range(len(v))) for row in a]


def build_step_matrix(
    loss: QuadraticLoss, x: SparseVec, y: Fraction, eta: Fraction
) -> AffineStep:
    """M = I_{d+1} - eta * [[2A, b], [0, 0]] so (w', 1) = M (w, 1)."""
    d = loss.dim
    a = loss.a_fn(x, y)
    b = loss.b_fn(x, y)
    m = identity(d + 1)
    for i in range(d):
        for j in range(d):
            m[i][j] -= eta * 2 * a[i][j]
        m[i][d] -= eta * b[i]
    return AffineStep(tuple(tuple(row) for row in m))


def simulate_quadratic(
    loss: QuadraticLoss,
    points: Sequence[tuple[SparseVec, Fraction]],
    w1: Sequence[Fraction],
    eta: Fraction,
    tau: int,
) -> Vector:
    """Naive per-step oracle: w <- w - eta*(2*A*w + b), cycling the points."""
    w = list(w1)
    d = loss.dim
    for t in range(tau - 1):
        x, y = points[t % len(points)]
        a = loss.a_fn(x, y)
        b = loss.b_fn(x, y)
        grad = [2 * sum(a[i][j] * w[j] for j in range(d)) + b[i] for i in range(d)]
        w = [w[i] - eta * grad[i] for i in range(d)]
    return w


def _mat_pow(m: Matrix, e: int, counter: OpCounter | None, bit_cap: int | None) -> Matrix:
    """Exponentiation by squaring: at most 2*ceil(log2 e) multiplications."""
    result: Matrix | None = None
    base = m
    while e > 0:
        if e & 1:
            result = base if result is None else matmul(result, base, counter)
        e >>= 1
        if e:
            base = matmul(base, base, counter)
            if bit_cap is not None:
                worst = max(bit_length(v) for row in base for v in row)
                if worst > bit_cap:
                    raise PrecisionOverflow(
                        f"matrix entries reached {worst} bits (cap {bit_cap}); "
                        "use the modular mode for this tau"
                    )
    return result if result is not None else identity(len(m))


def fast_forward(
    loss: QuadraticLoss,
    points: Sequence[tuple[SparseVec, Fraction]],
    w1: Sequence[Fraction],
    eta: Fraction,
    tau: int,
    counter: OpCounter | None = None,
    bit_cap: int | None = 1_000_000,
) -> Vector:
    """Exact w^tau (the state after tau - 1 steps cycling through the points).

    Builds the pass matrix with T-1 multiplications, raises it to the number
    of whole passes by squaring, applies the leftover step matrices, and
    finally hits the start vector: O(T + log tau) multiplications.
    """
    if tau < 1:
        raise ValueError("tau must be >= 1")
    if tau == 1 or not points:
        return list(w1)
    t_count = len(points)
    steps = [build_step_matrix(loss, x, y, eta) for x, y in points]
    mats = [list(map(list, s.m)) for s in steps]

    total_steps = tau - 1
    full_passes, remainder = divmod(total_steps, t_count)

    acc: Matrix | None = None
    if full_passes > 0:
        cycle = mats[0]
        for m in mats[1:]:
            cycle = matmul(m, cycle, counter)  # later steps compose on the left
        acc = _mat_pow(cycle, full_passes, counter, bit_cap)
    for i in range(remainder):
        acc = mats[i] if acc is None else matmul(mats[i], acc, counter)
    vec = list(w1) + [ONE]
    out = matvec(acc, vec, counter)
    return out[:-1]


def _to_mod(value: Fraction, prime: int) -> int:
    den = value.denominator % prime
    if den == 0:
        raise ModulusError(f"denominator of {format_rat(value)} vanishes mod {prime}")
    return (value.numerator % prime) * pow(den, -1, prime) % prime


def fast_forward_mod(
    loss: QuadraticLoss,
    points: Sequence[tuple[SparseVec, Fraction]],
    w1: Sequence[Fraction],
    eta: Fraction,
    tau: int,
    prime: int,
    counter: OpCounter | None = None,
) -> list[int]:
    """Same computation with every entry reduced mod a prime: a verification
    mode whose entries stay bounded no matter how large tau is."""
    if tau < 1:
        raise ValueError("tau must be >= 1")
    if prime < 2:
        raise ModulusError("modulus must be a prime >= 2")
    if tau == 1 or not points:
        return [_to_mod(Fraction(w), prime) for w in w1]
    t_count = len(points)
    mats = []
    for x, y in points:
        step = build_step_matrix(loss, x, y, eta)
        mats.append([[_to_mod(v, prime) for v in row] for row in step.m])

    def mul(a, b):
        if counter is not None:
            counter.matmuls += 1
        n = len(a)
        bt = [[b[r][c] for r in range(n)] for c in range(n)]
        return [[sum(ra[i] * cb[i] for i in range(n)) % prime for cb in bt] for ra in a]

    total_steps = tau - 1
    full_passes, remainder = divmod(total_steps, t_count)
    acc = None
    if full_passes > 0:
        cycle = mats[0]
        for m in mats[1:]:
            cycle = mul(m, cycle)
        e = full_passes
        result = None
        base = cycle
        while e > 0:
            if e & 1:
                result = base if result is None else mul(result, base)
            e >>= 1
            if e:
                base = mul(base, base)
        acc = result
    for i in range(remainder):
        acc = mats[i] if acc is None else mul(mats[i], acc)
    vec = [_to_mod(Fraction(w), prime) for w in w1] + [1]
    out = [sum(row[i] * vec[i] for i in range(len(vec))) % prime for row in acc]
    return out[:-1]


def compose(later: AffineStep, earlier: AffineStep) -> AffineStep:
    """Applying ``earlier`` then ``later`` equals this single affine step."""
    product = matmul([list(r) for r in later.m], [list(r) for r in earlier.m])
    return AffineStep(tuple(tuple(row) for row in product))


def solve_affine_fit(
    io_pairs: Sequence[tuple[Sequence[Fraction], Fraction]]
) -> Vector | None:
    """Least-structure affine interpolation: find coefficients (p..., r) with
    p.inputs + r = output for every pair, or None if the system is infeasible.
    Exact Gaussian elimination; used to witness which functions affine
    dynamics can and cannot encode."""
    n_vars = len(io_pairs[0][0]) + 1
    rows = [list(inp) + [ONE, out] for inp, out in io_pairs]
    pivot_cols: list[int] = []
    r = 0
    for col in range(n_vars):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        rows[r] = [v / rows[r][col] for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(col)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][-1] != 0:
            return None  # 0 = nonzero: infeasible
    solution = [ZERO] * n_vars
    for row_idx, col in enumerate(pivot_cols):
        solution[col] = rows[row_idx][-1]
    return solution


def nand_affine_fit() -> Vector | None:
    """The NAND truth table over +/-1 as an affine-fit instance; returns None
    because the system is infeasible (gates are nonlinear, so affine-step
    models cannot simulate circuits)."""
    pairs = [
        ((Fraction(-1), Fraction(-1)), Fraction(1)),
        ((Fraction(-1), Fraction(1)), Fraction(1)),
        ((Fraction(1), Fraction(-1)), Fraction(1)),
        ((Fraction(1), Fraction(1)), Fraction(-1)),
    ]
    return solve_affine_fit(pairs)

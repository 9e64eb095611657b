"""Step-exact online gradient descent under pluggable loss models.

Three loss models are supported:

* soft-margin SVM hinge loss with optional L2 decay:
  ``w <- (1 - lambda*eta) * w + eta*y*x`` when ``y*(w.x) < 1``, else only
  the decay is applied;
* a single dense layer into a ReLU under squared loss:
  ``w <- w - 2*(w.x - y)*x`` when ``w.x > 0``, else unchanged;
* dense-ReLU-dense with a scalar second-layer weight ``v``:
  when ``w.x > 0``, ``w <- w - 2*(v*(w.x) - y)*v*x`` and
  ``v <- v - 2*(v*(w.x) - y)*(w.x)``, both from pre-update values.

The hinge derivative is undefined when the margin is exactly 1, and the
ReLU derivative is undefined when its input is exactly 0.  Compiled
training sequences are built never to reach either point, so the engine
treats both as hard errors (`BoundaryViolation`) rather than picking a
subgradient: a silent tie-break would mask compiler bugs.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .rationals import ONE, ZERO, SparseVec, format_rat, parse_rat


class BoundaryViolation(ArithmeticError):
    """Loss derivative undefined at this state (hinge margin 1 / ReLU input 0)."""

    def __init__(self, kind: str, step: int | None = None, detail: str = ""):
        self.kind = kind
        self.step = step
        self.detail = detail
        where = f" at step {step}" if step is not None else ""
        note = f" ({detail})" if detail else ""
        super().__init__(f"{kind} boundary{where}{note}")


@dataclass(frozen=True)
class HingeSvm:
    """Soft-margin SVM updates; ``lam`` is the L2 coefficient."""

    eta: Fraction = ONE
    lam: Fraction = ZERO
    bias_dims: tuple[int, int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "eta", Fraction(self.eta))
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.eta <= 0:
            raise ValueError("eta must be positive")
        if self.lam < 0:
            raise ValueError("lambda must be non-negative")
        if self.lam > 0:
            alpha = ONE - self.lam
            # decay must satisfy 1/sqrt(2) < alpha < 1, checked rationally
            if not (2 * alpha * alpha > 1 and alpha < 1):
                raise ValueError("1 - lambda must lie strictly in (1/sqrt(2), 1)")

    @property
    def decay(self) -> Fraction:
        return ONE - self.lam * self.eta


@dataclass(frozen=True)
class DenseRelu:
    """One dense layer into a ReLU, squared loss, eta = 1."""


@dataclass(frozen=True)
class DenseReluDense:
    """Dense layer, ReLU, then a scalar second-layer weight v; eta = 1."""


LossModel = HingeSvm | DenseRelu | DenseReluDense


@dataclass(frozen=True)
class TrainingExample:
    """One training point plus provenance of the gadget that emitted it."""

    x: SparseVec
    y: Fraction
    gadget: str = ""
    phase: int | None = None

    def to_json(self) -> dict:
        obj: dict = {"x": self.x.to_json(), "y": format_rat(self.y)}
        if self.gadget:
            obj["gadget"] = self.gadget
        if self.phase is not None:
            obj["phase"] = self.phase
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "TrainingExample":
        return cls(
            x=SparseVec.from_json(obj["x"]),
            y=parse_rat(obj["y"]),
            gadget=obj.get("gadget", ""),
            phase=obj.get("phase"),
        )


TrainingSequence = Sequence[TrainingExample]


@dataclass(frozen=True)
class OgdState:
    """Dense weight vector, optional second-layer scalar, and step counter."""

    w: tuple[Fraction, ...]
    v: Fraction | None = None
    step: int = 0

    @classmethod
    def zeros(cls, dim: int, with_v: bool = False) -> "OgdState":
        return cls(w=(ZERO,) * dim, v=ONE if with_v else None, step=0)


@dataclass(frozen=True)
class TrajectoryPoint:
    step: int
    gadget: str
    w: tuple[Fraction, ...]
    v: Fraction | None
    updated: bool  # which derivative branch fired


Trajectory = list[TrajectoryPoint]


def _margin_or_violation(
    model: LossModel, w: list[Fraction], v: Fraction | None, ex: TrainingExample, step: int
) -> tuple[Fraction, bool]:
    """Return (w.x, fired) and raise on the undefined-derivative boundary."""
    z = ex.x.dot(w)
    if isinstance(model, HingeSvm):
        margin = ex.y * z
        if margin == 1:
            raise BoundaryViolation("hinge", step, f"y*(w.x) = 1 on {ex.gadget or 'example'}")
        return z, margin < 1
    if z == 0:
        raise BoundaryViolation("relu", step, f"w.x = 0 on {ex.gadget or 'example'}")
    return z, z > 0


def _apply_inplace(
    model: LossModel, w: list[Fraction], v: Fraction | None, ex: TrainingExample, step: int
) -> tuple[Fraction | None, bool]:
    """Mutate ``w`` by one OGD step; return (new v, whether an update fired)."""
    z, fired = _margin_or_violation(model, w, v, ex, step)
    if isinstance(model, HingeSvm):
        decay = model.decay
        if decay != 1:
            for i in range(len(w)):
                w[i] *= decay
        if fired:
            scale = model.eta * ex.y
            for i, xi in ex.x.items():
                w[i] += scale * xi
        return v, fired
    if isinstance(model, DenseRelu):
        if fired:
            coef = 2 * (z - ex.y)
            for i, xi in ex.x.items():
                w[i] -= coef * xi
        return v, fired
    # DenseReluDense: both partials evaluated at the pre-update (w, v)
    if v is None:
        raise ValueError("DenseReluDense needs a second-layer weight v")
    if fired:
        err2 = 2 * (v * z - ex.y)
        coef = err2 * v
        for i, xi in ex.x.items():
            w[i] -= coef * xi
        v = v - err2 * z
    return v, fired


def step(state: OgdState, ex: TrainingExample, model: LossModel) -> OgdState:
    """Pure single-example update; raises BoundaryViolation on the undefined case."""
    w = list(state.w)
    v, _ = _apply_inplace(model, w, state.v, ex, state.step)
    return OgdState(w=tuple(w), v=v, step=state.step + 1)


def run_sequence(
    state: OgdState,
    seq: TrainingSequence,
    model: LossModel,
    record: bool = True,
) -> tuple[OgdState, Trajectory]:
    """Apply every example in order; the trajectory holds each post-step state."""
    w = list(state.w)
    v = state.v
    trajectory: Trajectory = []
    step_no = state.step
    for ex in seq:
        v, fired = _apply_inplace(model, w, v, ex, step_no)
        step_no += 1
        if record:
            trajectory.append(TrajectoryPoint(step_no, ex.gadget, tuple(w), v, fired))
    return OgdState(w=tuple(w), v=v, step=step_no), trajectory


@dataclass(frozen=True)
class Decision:
    answer: bool
    hit_pass: int | None = None  # 1-based pass index
    hit_step: int | None = None  # 1-based step within that pass


StepHook = Callable[[int, int, TrainingExample, Sequence[Fraction], Fraction | None], None]


def _start_vector(
    dim: int, initial: dict[int, Fraction] | None
) -> list[Fraction]:
    w = [ZERO] * dim
    for i, val in (initial or {}).items():
        w[i] = Fraction(val)
    return w


def decide_first_coordinate_positive(
    seq: TrainingSequence,
    model: LossModel,
    max_passes: int,
    dim: int,
    *,
    flag: int = 0,
    initial: dict[int, Fraction] | None = None,
    initial_v: Fraction | None = None,
    detect_cycles: bool = True,
    on_step: StepHook | None = None,
) -> Decision:
    """Feed the sequence over and over from the given start; report the first
    step at which the flag coordinate becomes positive.

    ``max_passes`` is the caller's timer (2**n + 1 passes is exact for a
    compiled n-bit-input circuit, whose input is the only carried state).
    With ``detect_cycles`` the loop also stops as soon as an end-of-pass
    state repeats, which cannot change the answer: the dynamics are
    deterministic, so a repeated state means no new weight vector ever
    appears.
    """
    if max_passes < 1:
        raise ValueError("max_passes must be >= 1")
    w = _start_vector(dim, initial)
    v = initial_v
    seen: set[tuple] = set()
    if detect_cycles:
        seen.add((tuple(w), v))
    step_no = 0
    for pass_no in range(1, max_passes + 1):
        for idx, ex in enumerate(seq, start=1):
            v, _ = _apply_inplace(model, w, v, ex, step_no)
            step_no += 1
            if on_step is not None:
                on_step(pass_no, idx, ex, w, v)
            if w[flag] > 0:
                return Decision(True, pass_no, idx)
        if detect_cycles:
            snapshot = (tuple(w), v)
            if snapshot in seen:
                return Decision(False)
            seen.add(snapshot)
    return Decision(False)


def decide_fixed_point(
    seq: TrainingSequence,
    model: LossModel,
    max_passes: int,
    dim: int,
    *,
    initial: dict[int, Fraction] | None = None,
    initial_v: Fraction | None = None,
    on_step: StepHook | None = None,
) -> Decision:
    """Report the first pass whose end state equals its start state exactly."""
    if max_passes < 1:
        raise ValueError("max_passes must be >= 1")
    w = _start_vector(dim, initial)
    v = initial_v
    step_no = 0
    for pass_no in range(1, max_passes + 1):
        before = (tuple(w), v)
        for idx, ex in enumerate(seq, start=1):
            v, _ = _apply_inplace(model, w, v, ex, step_no)
            step_no += 1
            if on_step is not None:
                on_step(pass_no, idx, ex, w, v)
        if (tuple(w), v) == before:
            return Decision(True, pass_no, len(seq) if seq else 0)
    return Decision(False)


def run_passes(
    seq: TrainingSequence,
    model: LossModel,
    n_passes: int,
    dim: int,
    *,
    initial: dict[int, Fraction] | None = None,
    initial_v: Fraction | None = None,
    on_step: StepHook | None = None,
    pass_end: Callable[[int, Sequence[Fraction], Fraction | None], None] | None = None,
) -> OgdState:
    """Run a fixed number of passes, streaming states to the hooks."""
    w = _start_vector(dim, initial)
    v = initial_v
    step_no = 0
    for pass_no in range(1, n_passes + 1):
        for idx, ex in enumerate(seq, start=1):
            v, _ = _apply_inplace(model, w, v, ex, step_no)
            step_no += 1
            if on_step is not None:
                on_step(pass_no, idx, ex, w, v)
        if pass_end is not None:
            pass_end(pass_no, w, v)
    return OgdState(w=tuple(w), v=v, step=step_no)


def trace_record(
    pass_no: int, step_in_pass: int, ex: TrainingExample, w: Sequence[Fraction], v: Fraction | None
) -> dict:
    """One JSONL trace line: full state after the step."""
    return {
        "step": step_in_pass,
        "pass": pass_no,
        "gadget": ex.gadget,
        "w": [format_rat(x) for x in w],
        "v": None if v is None else format_rat(v),
    }


# --- loss model wire format -------------------------------------------------


def model_to_json(model: LossModel) -> dict:
    if isinstance(model, HingeSvm):
        obj = {"kind": "hinge", "eta": format_rat(model.eta), "lambda": format_rat(model.lam)}
        if model.bias_dims is not None:
            obj["bias_dims"] = list(model.bias_dims)
        return obj
    if isinstance(model, DenseRelu):
        return {"kind": "dense-relu"}
    return {"kind": "drd"}


def model_from_json(obj: dict) -> LossModel:
    kind = obj.get("kind")
    if kind == "hinge":
        bias = obj.get("bias_dims")
        return HingeSvm(
            eta=parse_rat(obj.get("eta", "1")),
            lam=parse_rat(obj.get("lambda", "0")),
            bias_dims=tuple(bias) if bias else None,
        )
    if kind == "dense-relu":
        return DenseRelu()
    if kind == "drd":
        return DenseReluDense()
    raise ValueError(f"unknown loss model kind {kind!r}")

"""Minimal reverse-mode automatic differentiation over numpy arrays.

A :class:`Tensor` wraps a float64 ndarray plus a backward closure; calling
``backward()`` on a scalar output walks the tape in reverse topological
order and accumulates gradients into every ancestor's ``grad``.

Determinism notes: parents are stored as tuples (never sets), so gradient
accumulation order depends only on graph structure and repeated runs are
bit-identical. Softmax and logsumexp subtract a detached per-slice maximum;
by shift invariance the subtracted expression equals the plain one for all
inputs, so the gradients are exact, not approximations.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeError


def _unbroadcast(grad: np.ndarray, shape: tuple) -> np.ndarray:
    """Sum `grad` down to `shape`, undoing numpy broadcasting."""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad.reshape(shape)


class Tensor:
    """Node of the reverse-mode tape. ``value`` is always a float64 ndarray."""

    __slots__ = ("value", "grad", "_parents", "_backward")

    def __init__(self, value, parents=(), backward=None):
        self.value = np.asarray(value, dtype=np.float64)
        self.grad = None
        self._parents = tuple(parents)
        self._backward = backward

    # -- introspection -------------------------------------------------

    @property
    def shape(self):
        return self.value.shape

    @property
    def ndim(self):
        return self.value.ndim

    def item(self) -> float:
        return float(self.value)

    def detach(self) -> "Tensor":
        return Tensor(self.value.copy())

    def __repr__(self):
        return f"Tensor(shape={self.value.shape})"

    # -- backward pass -------------------------------------------------

    def backward(self) -> None:
        """Seed d(self)/d(self) = 1 and accumulate grads into all ancestors."""
        if self.value.size != 1:
            raise ShapeError("backward() requires a scalar output")
        topo: list[Tensor] = []
        seen: set[int] = set()
        stack: list[tuple[Tensor, bool]] = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                topo.append(node)
                continue
            if id(node) in seen:
                continue
            seen.add(id(node))
            stack.append((node, True))
            for parent in node._parents:
                if id(parent) not in seen:
                    stack.append((parent, False))
        self.grad = np.ones_like(self.value)
        for node in reversed(topo):
            if node._backward is not None and node.grad is not None:
                node._backward(node.grad)

    def _accumulate(self, grad: np.ndarray) -> None:
        if self.grad is None:
            self.grad = grad.copy()
        else:
            self.grad += grad

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = as_tensor(other)
        out_value = self.value + other.value

        def backward(grad):
            self._accumulate(_unbroadcast(grad, self.value.shape))
            other._accumulate(_unbroadcast(grad, other.value.shape))

        return Tensor(out_value, (self, other), backward)

    __radd__ = __add__

    def __mul__(self, other):
        other = as_tensor(other)
        out_value = self.value * other.value

        def backward(grad):
            self._accumulate(_unbroadcast(grad * other.value, self.value.shape))
            other._accumulate(_unbroadcast(grad * self.value, other.value.shape))

        return Tensor(out_value, (self, other), backward)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-as_tensor(other))

    def __rsub__(self, other):
        return as_tensor(other) + (-self)

    def __truediv__(self, other):
        return self * as_tensor(other) ** -1.0

    def __rtruediv__(self, other):
        return as_tensor(other) * self ** -1.0

    def __pow__(self, exponent):
        if not isinstance(exponent, (int, float)):
            raise ShapeError("only scalar exponents are supported")
        out_value = self.value ** exponent

        def backward(grad):
            self._accumulate(grad * exponent * self.value ** (exponent - 1))

        return Tensor(out_value, (self,), backward)

    def __matmul__(self, other):
        other = as_tensor(other)
        if self.ndim < 2 or other.ndim < 2:
            raise ShapeError("matmul operands must be at least 2-D; reshape vectors first")
        out_value = self.value @ other.value

        def backward(grad):
            self._accumulate(
                _unbroadcast(grad @ other.value.swapaxes(-1, -2), self.value.shape)
            )
            other._accumulate(
                _unbroadcast(self.value.swapaxes(-1, -2) @ grad, other.value.shape)
            )

        return Tensor(out_value, (self, other), backward)

    # -- shape manipulation ---------------------------------------------

    def reshape(self, *shape):
        if len(shape) == 1 and isinstance(shape[0], (tuple, list)):
            shape = tuple(shape[0])
        old_shape = self.value.shape
        out_value = self.value.reshape(shape)

        def backward(grad):
            self._accumulate(grad.reshape(old_shape))

        return Tensor(out_value, (self,), backward)

    def swapaxes(self, a, b):
        out_value = self.value.swapaxes(a, b)

        def backward(grad):
            self._accumulate(grad.swapaxes(a, b))

        return Tensor(out_value, (self,), backward)

    @property
    def T(self):
        return self.swapaxes(-1, -2)

    def __getitem__(self, key):
        out_value = self.value[key]

        def backward(grad):
            full = np.zeros_like(self.value)
            full[key] += grad
            self._accumulate(full)

        return Tensor(out_value, (self,), backward)

    # -- reductions ------------------------------------------------------

    def sum(self, axis=None, keepdims=False):
        out_value = self.value.sum(axis=axis, keepdims=keepdims)

        def backward(grad):
            g = grad
            if axis is not None and not keepdims:
                g = np.expand_dims(g, axis)
            self._accumulate(np.broadcast_to(g, self.value.shape).copy())

        return Tensor(out_value, (self,), backward)

    def mean(self, axis=None, keepdims=False):
        if axis is None:
            count = self.value.size
        else:
            count = self.value.shape[axis]
        return self.sum(axis=axis, keepdims=keepdims) * (1.0 / count)


def as_tensor(x) -> Tensor:
    return x if isinstance(x, Tensor) else Tensor(x)


# -- elementwise functions ---------------------------------------------


def exp(x: Tensor) -> Tensor:
    x = as_tensor(x)
    out_value = np.exp(x.value)

    def backward(grad):
        x._accumulate(grad * out_value)

    return Tensor(out_value, (x,), backward)


def log(x: Tensor) -> Tensor:
    x = as_tensor(x)
    out_value = np.log(x.value)

    def backward(grad):
        x._accumulate(grad / x.value)

    return Tensor(out_value, (x,), backward)


def sqrt(x: Tensor) -> Tensor:
    return as_tensor(x) ** 0.5


# -- composite numerics -------------------------------------------------


def softmax(x: Tensor, axis: int = -1) -> Tensor:
    """Numerically stable softmax along `axis` (max-subtracted)."""
    x = as_tensor(x)
    shift = x - x.value.max(axis=axis, keepdims=True)
    e = exp(shift)
    return e / e.sum(axis=axis, keepdims=True)


def logsumexp(x: Tensor, axis: int = -1, keepdims: bool = False) -> Tensor:
    """Numerically stable log-sum-exp along `axis`."""
    x = as_tensor(x)
    m = x.value.max(axis=axis, keepdims=True)
    out = log(exp(x - m).sum(axis=axis, keepdims=True)) + m
    if not keepdims:
        out = out.reshape(tuple(np.delete(out.shape, axis)))
    return out


def concatenate(tensors, axis: int = 0) -> Tensor:
    tensors = [as_tensor(t) for t in tensors]
    sizes = [t.value.shape[axis] for t in tensors]
    out_value = np.concatenate([t.value for t in tensors], axis=axis)
    offsets = np.cumsum([0] + sizes)

    def backward(grad):
        for tensor, lo, hi in zip(tensors, offsets[:-1], offsets[1:]):
            index = [slice(None)] * grad.ndim
            index[axis] = slice(lo, hi)
            tensor._accumulate(grad[tuple(index)])

    return Tensor(out_value, tuple(tensors), backward)


def stack(tensors, axis: int = 0) -> Tensor:
    tensors = [as_tensor(t) for t in tensors]
    out_value = np.stack([t.value for t in tensors], axis=axis)

    def backward(grad):
        for i, tensor in enumerate(tensors):
            tensor._accumulate(np.take(grad, i, axis=axis))

    return Tensor(out_value, tuple(tensors), backward)


def einsum(spec: str, a: Tensor, b: Tensor) -> Tensor:
    """Two-operand einsum with automatic backward.

    Restriction: every index of one operand must also appear in the output
    or in the other operand (no operand-local reductions or diagonals);
    all the contractions used in this package satisfy it.
    """
    a, b = as_tensor(a), as_tensor(b)
    in_spec, out_sub = spec.replace(" ", "").split("->")
    sub_a, sub_b = in_spec.split(",")
    visible = set(out_sub)
    if not (set(sub_a) <= visible | set(sub_b) and set(sub_b) <= visible | set(sub_a)):
        raise ShapeError(f"unsupported einsum spec for backward: {spec!r}")
    out_value = np.einsum(spec, a.value, b.value)

    def backward(grad):
        a._accumulate(np.einsum(f"{out_sub},{sub_b}->{sub_a}", grad, b.value))
        b._accumulate(np.einsum(f"{sub_a},{out_sub}->{sub_b}", a.value, grad))

    return Tensor(out_value, (a, b), backward)


def take_along(x: Tensor, indices: np.ndarray, axis: int = -1) -> Tensor:
    """Gather one entry per slice along `axis`; grad is routed only there.

    ``indices`` must have the shape of ``x`` with ``axis`` collapsed to 1,
    as produced by ``np.argmin(..., keepdims=True)``.
    """
    x = as_tensor(x)
    out_value = np.take_along_axis(x.value, indices, axis=axis)

    def backward(grad):
        full = np.zeros_like(x.value)
        np.put_along_axis(full, indices, grad, axis=axis)
        x._accumulate(full)

    return Tensor(out_value, (x,), backward)


def dot(u: Tensor, v: Tensor) -> Tensor:
    """Inner product of two 1-D tensors."""
    u, v = as_tensor(u), as_tensor(v)
    if u.ndim != 1 or v.ndim != 1 or u.shape != v.shape:
        raise ShapeError(f"dot expects equal-length vectors, got {u.shape} and {v.shape}")
    return (u * v).sum()


def norm(x: Tensor, axis=None, keepdims: bool = False) -> Tensor:
    """Euclidean norm; differentiable away from zero."""
    return sqrt((as_tensor(x) ** 2.0).sum(axis=axis, keepdims=keepdims))

"""Dense float64 tensors with reverse-mode differentiation.

The graph is implicit: each op closes over its parents and records a
backward rule; ``Tensor.backward`` runs one reverse topological sweep and
accumulates (never overwrites) gradients, so shared subexpressions work.
Everything is float64 with a fixed summation order per op, which keeps
runs bitwise reproducible.
"""

from __future__ import annotations

import math
import threading

import numpy as np

_state = threading.local()


def _grad_enabled():
    return getattr(_state, "grad_enabled", True)


class no_grad:
    """Context manager that skips graph construction (inference passes)."""

    def __enter__(self):
        self._prev = _grad_enabled()
        _state.grad_enabled = False
        return self

    def __exit__(self, *exc):
        _state.grad_enabled = self._prev
        return False


class Tensor:
    __slots__ = ("values", "grad", "requires_grad", "_backward", "_parents")

    def __init__(self, values, requires_grad=False):
        self.values = np.asarray(values, dtype=np.float64)
        self.grad = None
        self.requires_grad = bool(requires_grad)
        self._backward = None
        self._parents = ()

    @property
    def shape(self):
        return self.values.shape

    def __repr__(self):
        return f"Tensor(shape={self.values.shape}, requires_grad={self.requires_grad})"

    def item(self):
        return float(self.values.reshape(-1)[0])

    def zero_grad(self):
        self.grad = None

    def backward(self):
        """Reverse-mode sweep from a scalar; accumulates into ``.grad``."""
        if self.values.size != 1:
            raise ValueError(f"backward requires a scalar, got shape {self.values.shape}")
        # Iterative topo sort: LSTM graphs are deep enough to blow the
        # recursion limit.
        order = []
        visited = set()
        stack = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                order.append(node)
                continue
            if id(node) in visited:
                continue
            visited.add(id(node))
            stack.append((node, True))
            for parent in node._parents:
                if id(parent) not in visited:
                    stack.append((parent, False))
        self.grad = _accumulate(self.grad, np.ones_like(self.values))
        for node in reversed(order):
            if node._backward is not None and node.grad is not None:
                node._backward(node.grad)

    # Operator sugar; scalars are allowed on either side.
    def __add__(self, other):
        return add(self, _wrap(other))

    __radd__ = __add__

    def __mul__(self, other):
        return mul(self, _wrap(other))

    __rmul__ = __mul__

    def __sub__(self, other):
        return sub(self, _wrap(other))

    def __neg__(self):
        return mul(self, Tensor(-1.0))

    def __matmul__(self, other):
        return matmul(self, other)


def _wrap(value):
    return value if isinstance(value, Tensor) else Tensor(value)


def _accumulate(grad, update):
    return update.copy() if grad is None else grad + update


def _node(values, parents, backward):
    out = Tensor(values)
    if _grad_enabled() and any(p.requires_grad for p in parents):
        out.requires_grad = True
        out._parents = tuple(parents)
        out._backward = backward
    return out


def _unbroadcast(grad, shape):
    """Sum ``grad`` down to ``shape`` after numpy broadcasting."""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad.reshape(shape)


def add(a, b):
    a, b = _wrap(a), _wrap(b)
    out_values = a.values + b.values

    def backward(g):
        if a.requires_grad:
            a.grad = _accumulate(a.grad, _unbroadcast(g, a.values.shape))
        if b.requires_grad:
            b.grad = _accumulate(b.grad, _unbroadcast(g, b.values.shape))

    return _node(out_values, (a, b), backward)


def sub(a, b):
    a, b = _wrap(a), _wrap(b)
    out_values = a.values - b.values

    def backward(g):
        if a.requires_grad:
            a.grad = _accumulate(a.grad, _unbroadcast(g, a.values.shape))
        if b.requires_grad:
            b.grad = _accumulate(b.grad, _unbroadcast(-g, b.values.shape))

    return _node(out_values, (a, b), backward)


def mul(a, b):
    a, b = _wrap(a), _wrap(b)
    out_values = a.values * b.values

    def backward(g):
        if a.requires_grad:
            a.grad = _accumulate(a.grad, _unbroadcast(g * b.values, a.values.shape))
        if b.requires_grad:
            b.grad = _accumulate(b.grad, _unbroadcast(g * a.values, b.values.shape))

    return _node(out_values, (a, b), backward)


def matmul(a, b):
    if a.values.ndim != 2 or b.values.ndim != 2:
        raise ValueError("matmul expects 2-D tensors")
    if a.values.shape[1] != b.values.shape[0]:
        raise ValueError(
            f"matmul shape mismatch: {a.values.shape} x {b.values.shape}"
        )
    out_values = a.values @ b.values

    def backward(g):
        if a.requires_grad:
            a.grad = _accumulate(a.grad, g @ b.values.T)
        if b.requires_grad:
            b.grad = _accumulate(b.grad, a.values.T @ g)

    return _node(out_values, (a, b), backward)


def transpose(a):
    out_values = a.values.T.copy()

    def backward(g):
        if a.requires_grad:
            a.grad = _accumulate(a.grad, g.T)

    return _node(out_values, (a,), backward)


def reshape(a, shape):
    out_values = a.values.reshape(shape)

    def backward(g):
        if a.requires_grad:
            a.grad = _accumulate(a.grad, g.reshape(a.values.shape))

    return _node(out_values, (a,), backward)


def tanh(a):
    out_values = np.tanh(a.values)

    def backward(g):
        if a.requires_grad:
            a.grad = _accumulate(a.grad, g * (1.0 - out_values * out_values))

    return _node(out_values, (a,), backward)


def sigmoid(a):
    x = a.values
    out_values = np.where(x >= 0, 1.0 / (1.0 + np.exp(-np.abs(x))),
                          np.exp(-np.abs(x)) / (1.0 + np.exp(-np.abs(x))))

    def backward(g):
        if a.requires_grad:
            a.grad = _accumulate(a.grad, g * out_values * (1.0 - out_values))

    return _node(out_values, (a,), backward)


def softmax_rows(a):
    """Row-wise softmax with max subtraction.

    The normalising sum adds the exponentials in ascending sorted order, so
    the result is independent of how the row's entries are permuted; this is
    what makes attention exactly permutation-equivariant. -inf scores are
    allowed and produce exact zeros.
    """
    if a.values.ndim != 2:
        raise ValueError("softmax_rows expects a 2-D tensor")
    shifted = a.values - np.max(a.values, axis=1, keepdims=True)
    exps = np.exp(shifted)
    denom = np.sum(np.sort(exps, axis=1), axis=1, keepdims=True)
    out_values = exps / denom

    def backward(g):
        if a.requires_grad:
            inner = np.sum(g * out_values, axis=1, keepdims=True)
            a.grad = _accumulate(a.grad, out_values * (g - inner))

    return _node(out_values, (a,), backward)


def masked_fill(a, mask, fill_value):
    """Replace entries where ``mask`` is True by a constant; no grad there."""
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != a.values.shape:
        raise ValueError("mask shape must match tensor shape")
    out_values = np.where(mask, fill_value, a.values)

    def backward(g):
        if a.requires_grad:
            a.grad = _accumulate(a.grad, np.where(mask, 0.0, g))

    return _node(out_values, (a,), backward)


def concat(tensors, axis=0):
    tensors = list(tensors)
    out_values = np.concatenate([t.values for t in tensors], axis=axis)
    sizes = [t.values.shape[axis] for t in tensors]
    offsets = np.cumsum([0] + sizes)

    def backward(g):
        for t, lo, hi in zip(tensors, offsets[:-1], offsets[1:]):
            if t.requires_grad:
                sl = [slice(None)] * g.ndim
                sl[axis] = slice(lo, hi)
                t.grad = _accumulate(t.grad, g[tuple(sl)])

    return _node(out_values, tensors, backward)


def slice_cols(a, start, stop):
    out_values = a.values[:, start:stop].copy()

    def backward(g):
        if a.requires_grad:
            full = np.zeros_like(a.values)
            full[:, start:stop] = g
            a.grad = _accumulate(a.grad, full)

    return _node(out_values, (a,), backward)


def gather_rows(a, indices):
    """Row lookup (embedding gather); backward scatter-adds into the table."""
    indices = np.asarray(indices, dtype=np.intp)
    out_values = a.values[indices]

    def backward(g):
        if a.requires_grad:
            full = np.zeros_like(a.values)
            np.add.at(full, indices, g)
            a.grad = _accumulate(a.grad, full)

    return _node(out_values, (a,), backward)


def sum_all(a):
    out_values = np.array([[a.values.sum()]])

    def backward(g):
        if a.requires_grad:
            a.grad = _accumulate(a.grad, np.full_like(a.values, g.reshape(-1)[0]))

    return _node(out_values, (a,), backward)


def mean_axis(a, axis, keepdims=True):
    out_values = a.values.mean(axis=axis, keepdims=keepdims)
    n = a.values.shape[axis]

    def backward(g):
        if a.requires_grad:
            gg = g if keepdims else np.expand_dims(g, axis)
            a.grad = _accumulate(a.grad, np.broadcast_to(gg / n, a.values.shape).copy())

    return _node(out_values, (a,), backward)


def max_axis(a, axis, keepdims=True):
    """Max pool along one axis; ties route the gradient to the first hit."""
    out_values = a.values.max(axis=axis, keepdims=keepdims)
    arg = np.argmax(a.values, axis=axis)

    def backward(g):
        if a.requires_grad:
            gg = g if keepdims else np.expand_dims(g, axis)
            full = np.zeros_like(a.values)
            np.put_along_axis(full, np.expand_dims(arg, axis), gg, axis=axis)
            a.grad = _accumulate(a.grad, full)

    return _node(out_values, (a,), backward)


def scale(a, factor):
    """Multiply by a python scalar (e.g. the 1/sqrt(d_K) score scaling)."""
    factor = float(factor)
    out_values = a.values * factor

    def backward(g):
        if a.requires_grad:
            a.grad = _accumulate(a.grad, g * factor)

    return _node(out_values, (a,), backward)


def conv1d_dilated(inputs, kernels, dilation=1, stride=1):
    """Valid 1-D convolution: inputs (cin, L) x kernels (cout, cin, k).

    out[o, t] = sum_{c,j} inputs[c, t*stride + j*dilation] * kernels[o, c, j]
    Output length floor((L - (k-1)*dilation - 1) / stride) + 1.
    """
    x, w = inputs.values, kernels.values
    if x.ndim != 2 or w.ndim != 3:
        raise ValueError("conv1d_dilated expects (cin,L) input and (cout,cin,k) kernels")
    cin, length = x.shape
    cout, cin_w, k = w.shape
    if cin != cin_w:
        raise ValueError(f"channel mismatch: input has {cin}, kernels expect {cin_w}")
    span = (k - 1) * dilation + 1
    if length < span:
        raise ValueError(
            f"input length {length} shorter than receptive field {span}"
        )
    out_len = (length - span) // stride + 1
    idx = (np.arange(out_len)[:, None] * stride + np.arange(k)[None, :] * dilation)
    patches = x[:, idx]                      # (cin, out_len, k)
    out_values = np.einsum("ctj,ocj->ot", patches, w)

    def backward(g):
        if kernels.requires_grad:
            kernels.grad = _accumulate(kernels.grad, np.einsum("ot,ctj->ocj", g, patches))
        if inputs.requires_grad:
            dpatches = np.einsum("ot,ocj->ctj", g, w)
            full = np.zeros_like(x)
            np.add.at(full, (slice(None), idx), dpatches)
            inputs.grad = _accumulate(inputs.grad, full)

    return _node(out_values, (inputs, kernels), backward)


def weighted_rowsum(weights, rows):
    """Attention-style product weights (n_q, n_k) @ rows (n_k, d).

    Forward sums the addends of every output entry in ascending sorted
    order; since a row permutation of (weights columns, rows) only permutes
    the addends, outputs are bitwise independent of that ordering.
    """
    w, v = weights.values, rows.values
    if w.ndim != 2 or v.ndim != 2 or w.shape[1] != v.shape[0]:
        raise ValueError(f"weighted_rowsum shape mismatch: {w.shape} x {v.shape}")
    products = w[:, :, None] * v[None, :, :]
    out_values = np.sum(np.sort(products, axis=1), axis=1)

    def backward(g):
        if weights.requires_grad:
            weights.grad = _accumulate(weights.grad, g @ v.T)
        if rows.requires_grad:
            rows.grad = _accumulate(rows.grad, w.T @ g)

    return _node(out_values, (weights, rows), backward)


def bce_with_logits(logits, targets):
    """Mean binary cross-entropy over elements, computed stably from logits."""
    targets = np.asarray(targets, dtype=np.float64)
    z = logits.values
    if targets.shape != z.shape:
        raise ValueError("targets must match logits shape")
    losses = np.maximum(z, 0.0) - z * targets + np.log1p(np.exp(-np.abs(z)))
    n = z.size
    out_values = np.array([[losses.sum() / n]])

    def backward(g):
        if logits.requires_grad:
            sig = np.where(z >= 0, 1.0 / (1.0 + np.exp(-np.abs(z))),
                           np.exp(-np.abs(z)) / (1.0 + np.exp(-np.abs(z))))
            logits.grad = _accumulate(logits.grad, g.reshape(-1)[0] * (sig - targets) / n)

    return _node(out_values, (logits,), backward)


def grad_check(f, inputs, eps=1e-5):
    """Compare reverse-mode gradients of ``f(*inputs)`` to central differences.

    Returns the max relative error over every coordinate of every input,
    using |a - n| / max(1e-8, |a| + |n|).
    """
    for t in inputs:
        t.zero_grad()
    out = f(*inputs)
    out.backward()
    analytic = [np.zeros_like(t.values) if t.grad is None else t.grad.copy()
                for t in inputs]
    worst = 0.0
    for t, a_grad in zip(inputs, analytic):
        flat = t.values.reshape(-1)
        a_flat = a_grad.reshape(-1)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + eps
            up = f(*inputs).item()
            flat[i] = orig - eps
            down = f(*inputs).item()
            flat[i] = orig
            numeric = (up - down) / (2.0 * eps)
            err = abs(a_flat[i] - numeric) / max(1e-8, abs(a_flat[i]) + abs(numeric))
            worst = max(worst, err)
    return worst


def uniform_init(rng, shape, fan_in):
    """Uniform fan-in init: U(-1/sqrt(fan_in), 1/sqrt(fan_in))."""
    bound = 1.0 / math.sqrt(max(1, fan_in))
    return Tensor(rng.uniform(-bound, bound, size=shape), requires_grad=True)

"""Independent reference implementations used as test oracles.

These are deliberately written as plain double loops / scalar recurrences,
sharing no code with the production kernels they check.
"""

from __future__ import annotations

import math

import numpy as np


def brute_force_fvtc(values, max_delay):
    """Ordered-pair x delay Pearson correlations, one pair at a time."""
    values = np.asarray(values, dtype=np.float64)
    n_channels, frames = values.shape
    tensor = np.zeros((n_channels, n_channels, max_delay + 1))
    for i in range(n_channels):
        for j in range(n_channels):
            for d in range(max_delay + 1):
                a = values[i, :frames - d] if d else values[i]
                b = values[j, d:]
                a = a - np.mean(a)
                b = b - np.mean(b)
                va = np.mean(a * a)
                vb = np.mean(b * b)
                if va == 0.0 or vb == 0.0:
                    tensor[i, j, d] = 0.0
                else:
                    tensor[i, j, d] = np.mean(a * b) / math.sqrt(va * vb)
    return tensor


def reference_attention(q, k, v):
    """Hand-rolled scaled dot-product attention over plain arrays."""
    q = np.asarray(q, dtype=np.float64)
    k = np.asarray(k, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    d_k = q.shape[1]
    weights = np.zeros((q.shape[0], k.shape[0]))
    for row in range(q.shape[0]):
        scores = [float(np.dot(q[row], k[col])) / math.sqrt(d_k) for col in range(k.shape[0])]
        top = max(scores)
        exps = [math.exp(s - top) for s in scores]
        total = sum(exps)
        weights[row] = [e / total for e in exps]
    return weights @ v, weights


def scalar_lstm(seq, w, u, b, hidden):
    """Step-by-step scalar LSTM; gate order along columns is [i|f|o|g]."""
    seq = np.asarray(seq, dtype=np.float64)
    steps, dim = seq.shape
    h = [0.0] * hidden
    c = [0.0] * hidden
    outputs = []
    for t in range(steps):
        pre = [0.0] * (4 * hidden)
        for col in range(4 * hidden):
            acc = b[0][col]
            for a in range(dim):
                acc += seq[t][a] * w[a][col]
            for a in range(hidden):
                acc += h[a] * u[a][col]
            pre[col] = acc

        def sig(x):
            return 1.0 / (1.0 + math.exp(-x))

        new_h, new_c = [0.0] * hidden, [0.0] * hidden
        for a in range(hidden):
            gate_i = sig(pre[a])
            gate_f = sig(pre[hidden + a])
            gate_o = sig(pre[2 * hidden + a])
            cand = math.tanh(pre[3 * hidden + a])
            new_c[a] = gate_f * c[a] + gate_i * cand
            new_h[a] = gate_o * math.tanh(new_c[a])
        h, c = new_h, new_c
        outputs.append(list(h))
    return np.array(outputs)

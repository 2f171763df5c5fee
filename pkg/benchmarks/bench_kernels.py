"""Compare the compiled and numpy kernel backends, and time one training step under each.

    python benchmarks/bench_kernels.py [--repeat 20]
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from fleet.tensor.kernels import get_backend


def kernel_table(repeat):
    rng = np.random.default_rng(0)
    att = rng.normal(size=(64 * 4 * 65, 65)).astype(np.float32)
    act = rng.normal(size=(64 * 65, 128)).astype(np.float32)
    tok = rng.normal(size=(64 * 65, 64)).astype(np.float32)
    g, b = np.ones(64, np.float32), np.zeros(64, np.float32)
    _, xhat, rstd = get_backend("python").layernorm_fwd(tok, g, b, 1e-6)
    cases = {
        "softmax_fwd": lambda k: k.softmax_fwd(att, 1.0),
        "softmax_bwd": lambda k: k.softmax_bwd(att, att, 1.0),
        "layernorm_fwd": lambda k: k.layernorm_fwd(tok, g, b, 1e-6),
        "layernorm_bwd": lambda k: k.layernorm_bwd(tok, xhat, rstd, g),
        "gelu_fwd": lambda k: k.gelu_fwd(act),
        "gelu_bwd": lambda k: k.gelu_bwd(act, act),
    }
    backends = {"python": get_backend("python")}
    try:
        backends["cython"] = get_backend("cython")
    except ImportError:
        print("compiled backend not built; numpy only")
    print(f"{'kernel':<16}" + "".join(f"{n:>12}" for n in backends) + "     speedup")
    for name, fn in cases.items():
        times = {n: min(timeit.repeat(lambda: fn(k), number=1, repeat=repeat)) * 1e3 for n, k in backends.items()}
        row = f"{name:<16}" + "".join(f"{t:>10.2f}ms" for t in times.values())
        if len(times) == 2:
            row += f"{times['python'] / times['cython']:>10.2f}x"
        print(row)


STEP = """
import time, numpy as np
import fleet.tensor as T
from fleet.vit import VisionTransformer, EncoderConfig
vit = VisionTransformer(EncoderConfig(), seed=0)
rng = np.random.default_rng(0)
x = rng.random((64, 64, 64)).astype(np.float32)
w = T.Tensor(rng.normal(size=(64, 13)).astype(np.float32) * 0.1, requires_grad=True)
y = rng.integers(0, 13, 64)
best = 1e9
for _ in range({repeat}):
    t = time.perf_counter()
    T.backward(T.softmax_cross_entropy(T.matmul(vit.features(x), w), y))
    best = min(best, time.perf_counter() - t)
print(f"{{T.BACKEND:<8}} train step (B=64, desk ViT): {{best * 1e3:.1f}} ms")
"""


def step_table(repeat):
    for pure in ("0", "1"):
        env = dict(os.environ, FLEET_PURE_PYTHON=pure)
        subprocess.run([sys.executable, "-c", STEP.format(repeat=repeat)], env=env, check=True)


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=10)
    args = ap.parse_args()
    kernel_table(args.repeat)
    step_table(max(3, args.repeat // 2))

"""Compare the compiled kernels with the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``. Each row gives
the best-of-N time per call for both backends and the speedup.
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from sltt import _kernels
from sltt._kernels import TRIANGLE, pure


def cases(rng):
    u = rng.normal(0.8, 0.6, (128, 256)).astype(np.float32)
    v = rng.normal(0.0, 0.5, (128, 256)).astype(np.float32)
    s = (u >= 1).astype(np.float32)
    sg = pure.surrogate(u, 1.0, 1.0, TRIANGLE)
    blue = rng.normal(size=(8, 32, 64))
    eps = rng.uniform(0, 0.5, (8, 32, 64))
    x = rng.normal(size=(32, 8, 14, 14)).astype(np.float32)
    cols = pure.im2col(x, 3, 3, 1, 1)
    return [
        ("lif_forward 128x256 f32", "lif_forward", (v, u, 0.09, 1.0, False)),
        ("surrogate 128x256 f32", "surrogate", (u, 1.0, 1.0, TRIANGLE)),
        ("epsilon 128x256 f32", "epsilon", (u, s, sg, 0.09, 1.0, False)),
        ("temporal_sum_product T=8", "temporal_sum_product", (blue, eps)),
        ("im2col 32x8x14x14 k3", "im2col", (x, 3, 3, 1, 1)),
        ("col2im 32x8x14x14 k3", "col2im", (cols, x.shape, 3, 3, 1, 1)),
    ]


def best(fn, args, repeat):
    number = max(1, int(0.05 / max(timeit.timeit(lambda: fn(*args), number=1), 1e-7)))
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


END_TO_END = """
import timeit, numpy as np, sltt
from sltt import config
from sltt.cli import compute_gradients
cfg = config.resolve({"precision": "float32", "T": 4, "network": {"standardize": True, "layers": [
    {"type": "conv", "out_channels": 8, "kernel": 3, "padding": 1, "pool": 2}, {"type": "linear", "out": 64}]},
    "data": {"shape": [1, 14, 14], "n_train": 64}})
rng = np.random.default_rng(0)
train, _, norm = config.load_data(cfg, rng)
net = config.build_network(cfg, train.sample_shape, 10, rng)
x, y = next(train.batches(64))
seq = config.encode_batch(cfg, x, norm, rng)
for kind in ("sltt", "bptt"):
    cfg["engine"]["kind"] = kind
    t = min(timeit.repeat(lambda: compute_gradients(net, seq, y, cfg, config.loss_config(cfg), None, rng),
                          number=3, repeat=REPEAT)) / 3
    print(kind, t)
"""


def end_to_end(repeat):
    out = {}
    for flag in ("0", "1"):
        env = dict(os.environ, SLTT_PURE_PYTHON=flag)
        proc = subprocess.run([sys.executable, "-c", END_TO_END.replace("REPEAT", str(repeat))], env=env,
                              capture_output=True, text=True, check=True)
        for line in proc.stdout.split("\n"):
            if line:
                kind, t = line.split()
                out.setdefault(kind, {})[flag] = float(t)
    return out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if _kernels.compiled is None:
        print("compiled extension not built; nothing to compare", file=sys.stderr)
        return 1
    rng = np.random.default_rng(0)
    print(f"{'kernel':<28}{'numpy (us)':>12}{'cython (us)':>13}{'speedup':>9}")
    for label, name, call_args in cases(rng):
        tp = best(getattr(pure, name), call_args, args.repeat)
        tc = best(getattr(_kernels.compiled, name), call_args, args.repeat)
        print(f"{label:<28}{tp * 1e6:>12.1f}{tc * 1e6:>13.1f}{tp / tc:>8.2f}x")
    print()
    print(f"{'iteration (B=64, T=4)':<28}{'numpy (ms)':>12}{'cython (ms)':>13}{'speedup':>9}")
    for kind, t in end_to_end(args.repeat).items():
        print(f"{kind:<28}{t['1'] * 1e3:>12.1f}{t['0'] * 1e3:>13.1f}{t['1'] / t['0']:>8.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

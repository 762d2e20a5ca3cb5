"""Benchmark the monomial kernel: compiled extension versus pure Python.

Micro level: raw merge throughput on synthetic exponent tuples.
Macro level: a deep character expansion, timed in subprocesses so the
import-time kernel selection is exercised both ways.

    python3 benchmarks/bench_kernel.py
"""

import os
import random
import subprocess
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from qtoroidal._kernel import pure  # noqa: E402

try:
    from qtoroidal._kernel import _speedups
except ImportError:
    _speedups = None


def synth_keys(count, rng):
    out = []
    for _ in range(count):
        pairs = sorted({(rng.randrange(0, 4), rng.randrange(-12, 13))
                        for _ in range(rng.randrange(1, 8))})
        out.append(tuple((i, l, rng.choice([-2, -1, 1, 2]))
                         for (i, l) in pairs))
    return out

def micro(impl, keys, rounds=40):
    t0 = time.perf_counter()
    acc = ()
    for _ in range(rounds):
        for k in keys:
            acc = impl.kmerge_scaled(acc, k, -1)
            acc = impl.kmerge(acc, k)
    return time.perf_counter() - t0


MACRO = """
import time
from qtoroidal.cartan import cartan_preset
from qtoroidal.monomials import mono_parse
from qtoroidal.qchar import char_product, fm_expand
import qtoroidal
t0 = time.perf_counter()
ch = fm_expand(cartan_preset("A3tor"), mono_parse("Y[0,0] Y[0,2]"), 16)
prod = char_product([ch, ch], 16)
print("%s %d %.3f" % (qtoroidal.kernel_impl, len(prod),
                      time.perf_counter() - t0))
"""


def main():
    rng = random.Random(7)
    keys = synth_keys(4000, rng)
    t_pure = micro(pure, keys)
    print("micro merge, pure python : %.3fs" % t_pure)
    if _speedups is not None:
        t_c = micro(_speedups, keys)
        print("micro merge, compiled    : %.3fs  (x%.1f)"
              % (t_c, t_pure / t_c))
    else:
        print("micro merge, compiled    : extension not built")

    here = os.path.join(os.path.dirname(__file__), "..", "src")
    for force_pure in ("1", "0"):
        env = dict(os.environ, QTOROIDAL_PURE=force_pure,
                   PYTHONPATH=here)
        out = subprocess.run([sys.executable, "-c", MACRO], env=env,
                             capture_output=True, text=True)
        line = out.stdout.strip() or out.stderr.strip()
        impl, terms, secs = line.split()
        print("macro depth-16 expansion+square, %-6s kernel: %ss (%s terms)"
              % (impl, secs, terms))


if __name__ == "__main__":
    main()

"""Time the compiled pair kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py --n 256,1024,4096 --repeat 3
"""
import argparse
import timeit

from diamflow.constructions import push_construction
from diamflow.flow import field_values
from diamflow.kernels import available_backends


def kernel_calls(mod, n):
    cfg = push_construction(n, 2.0)
    re, im = cfg.points.real.copy(), cfg.points.imag.copy()
    v = field_values(cfg.points)
    vre, vim = v.real.copy(), v.imag.copy()
    return {
        "pair_log_sum": lambda: mod.pair_log_sum(re, im),
        "max_pair_dist2": lambda: mod.max_pair_dist2(re, im, True),
        "any_pair_exceeds": lambda: mod.any_pair_exceeds(re, im, 4.0, True),
        "rho_sums": lambda: mod.rho_sums(re, im, vre, vim, 4, 2.0 / n),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", default="256,1024,4096")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = available_backends()
    if "cython" not in backends:
        print("compiled extension not built; timing the fallback only")
    names = list(backends)
    print(f"{'kernel':<18}{'n':>6}" + "".join(f"{b + ' ms':>14}" for b in names) + f"{'speedup':>10}")
    for n in (int(tok) for tok in args.n.split(",")):
        calls = {b: kernel_calls(mod, n) for b, mod in backends.items()}
        for kernel in calls[names[0]]:
            ms = [1e3 * min(timeit.repeat(calls[b][kernel], number=1, repeat=args.repeat))
                  for b in names]
            speed = f"{ms[-1] / ms[0]:>9.1f}x" if len(ms) > 1 else ""
            print(f"{kernel:<18}{n:>6}" + "".join(f"{t:>14.2f}" for t in ms) + speed)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

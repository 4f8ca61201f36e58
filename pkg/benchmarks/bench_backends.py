"""Compare the compiled kernels against the NumPy fallback.

Runs each workload in two subprocesses, one per backend, and prints the
timings side by side:

    python benchmarks/bench_backends.py
"""

import json
import os
import subprocess
import sys
import time


def _bench(fn, reps):
    fn()  # warm caches
    t0 = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - t0) / reps * 1e6  # microseconds


def run_worker():
    import numpy as np

    import listdec
    from listdec import kernels
    from listdec.cli import trial_rng
    from listdec.field import GF, Poly
    from listdec.frs import FrsParams, frs_encode
    from listdec.frs_decode import list_decode
    from listdec.multiplicity import MultParams, message_to_multipoly, mult_encode

    rng = np.random.default_rng(0)
    out = {"backend": listdec.KERNEL_BACKEND}

    a80 = rng.integers(13, size=(80, 80))
    out["rref 80x80 mod 13"] = (_bench(lambda: kernels.rref(a80, 13), 40), 40)

    a, b = rng.integers(29, size=(120, 120)), rng.integers(29, size=(120, 120))
    out["matmul 120x120 mod 29"] = (_bench(lambda: kernels.matmul(a, b, 29), 200), 200)

    m, v = rng.integers(29, size=(841, 120)), rng.integers(29, size=120)
    out["matvec 841x120 mod 29"] = (_bench(lambda: kernels.matvec(m, v, 29), 400), 400)

    coeffs = [int(c) for c in rng.integers(13, size=60)]
    xs = rng.integers(13, size=1024)
    out["poly_eval_many deg 59 at 1024 points"] = (
        _bench(lambda: kernels.poly_eval_many(coeffs, xs, 13), 400), 400)

    params = FrsParams(GF(13), 4, 3, 2, 2)
    words = []
    for trial in range(50):
        t_rng = trial_rng(1, trial)
        f = Poly(GF(13), [int(x) for x in t_rng.integers(13, size=2)])
        word = frs_encode(params, f).replace_column(
            int(t_rng.integers(3)), tuple(int(x) for x in t_rng.integers(13, size=4)))
        words.append(word)
    out["list_decode q=13 N=3 m=4 (50 words)"] = (
        _bench(lambda: [list_decode(params, w, 2) for w in words], 5), 5)

    mp = MultParams(GF(29), 2, 2, 14)
    P = message_to_multipoly(mp, [int(x) for x in rng.integers(29, size=mp.message_length())])
    out["mult_encode q=29 s=2 d=14"] = (_bench(lambda: mult_encode(mp, P), 40), 40)

    print(json.dumps(out))


def main():
    runs = {}
    for label, force in (("compiled", None), ("python", "1")):
        env = dict(os.environ)
        env.pop("LISTDEC_FORCE_FALLBACK", None)
        if force:
            env["LISTDEC_FORCE_FALLBACK"] = force
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--worker"],
            env=env, capture_output=True, text=True, check=True)
        runs[label] = json.loads(proc.stdout)

    print(f"backends: {runs['compiled']['backend']} vs {runs['python']['backend']}")
    if runs["compiled"]["backend"] == runs["python"]["backend"]:
        print("note: extension not built, both columns use the fallback")
    width = max(len(k) for k in runs["compiled"] if k != "backend")
    print(f"{'workload':<{width}}  {'compiled':>12}  {'python':>12}  ratio")
    for key, value in runs["compiled"].items():
        if key == "backend":
            continue
        fast_us = value[0]
        slow_us = runs["python"][key][0]
        print(f"{key:<{width}}  {fast_us:>10.1f}us  {slow_us:>10.1f}us  "
              f"{slow_us / fast_us:5.2f}x")


if __name__ == "__main__":
    if "--worker" in sys.argv:
        run_worker()
    else:
        main()

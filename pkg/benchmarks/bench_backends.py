"""Compare the compiled kernels against the pure-numpy fallback.

Times the eigensolver across dimensions, the two moment kernels, and an
end-to-end slice of the verification campaign with each backend forced.
Run from the repository root:

    python3 benchmarks/bench_backends.py [--trials 300]
"""

import argparse
import time

import numpy as np

import sumuncert._backend as backend
from sumuncert import _fallback
from sumuncert.rng import RandomStream
from sumuncert.sweeps import VerifyConfig, random_verify

try:
    from sumuncert import _kernels
except ImportError:
    _kernels = None

_KERNEL_NAMES = ("jacobi_eigh", "moments_pure", "moments_density")


def _random_hermitian(dim, seed):
    g = RandomStream(seed).complex_gaussians(dim * dim).reshape(dim, dim)
    return (g + g.conj().T) * 0.5


def _best_of(fn, repeat=5):
    best = np.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def _force_backend(module):
    for name in _KERNEL_NAMES:
        setattr(backend, name, getattr(module, name))


def bench_jacobi(dims, inner=20):
    print(f"{'jacobi_eigh':<24}{'fallback':>12}{'compiled':>12}{'speedup':>9}")
    for dim in dims:
        mats = [_random_hermitian(dim, 100 * dim + i) for i in range(inner)]

        def run(fn):
            def body():
                for m in mats:
                    fn(m)

            return _best_of(body) / inner

        t_fb = run(_fallback.jacobi_eigh)
        if _kernels is None:
            print(f"  dim={dim:<19}{t_fb * 1e6:>10.1f}us{'-':>12}{'-':>9}")
            continue
        t_c = run(_kernels.jacobi_eigh)
        print(
            f"  dim={dim:<19}{t_fb * 1e6:>10.1f}us{t_c * 1e6:>10.1f}us"
            f"{t_fb / t_c:>8.1f}x"
        )


def bench_moments(dims, n_obs=5, inner=50):
    print(f"\n{'moment kernels':<24}{'fallback':>12}{'compiled':>12}{'speedup':>9}")
    for dim in dims:
        s = RandomStream(777 + dim)
        mats = np.stack([_random_hermitian(dim, s.fresh_seed()) for _ in range(n_obs)])
        psi = s.complex_gaussians(dim)
        psi = psi / np.linalg.norm(psi)
        g = s.complex_gaussians(dim * dim).reshape(dim, dim)
        rho = g @ g.conj().T
        rho = rho / np.trace(rho).real

        for label, args in (("pure", (mats, psi)), ("density", (mats, rho))):
            name = f"moments_{label}"

            def run(module):
                fn = getattr(module, name)

                def body():
                    for _ in range(inner):
                        fn(*args)

                return _best_of(body) / inner

            t_fb = run(_fallback)
            row = f"  {f'{label} dim={dim}':<22}{t_fb * 1e6:>10.1f}us"
            if _kernels is None:
                print(row + f"{'-':>12}{'-':>9}")
            else:
                t_c = run(_kernels)
                print(row + f"{t_c * 1e6:>10.1f}us{t_fb / t_c:>8.1f}x")


def bench_campaign(trials):
    print(f"\n{'verification campaign':<24}{'elapsed':>12}{'trials/s':>12}")
    cfg = VerifyConfig(trials=trials, seed=123)
    originals = {name: getattr(backend, name) for name in _KERNEL_NAMES}
    modules = [("fallback", _fallback)]
    if _kernels is not None:
        modules.append(("compiled", _kernels))
    try:
        for label, module in modules:
            _force_backend(module)
            summary = random_verify(cfg)
            assert not summary.violations
            print(
                f"  {label:<22}{summary.elapsed:>11.2f}s"
                f"{trials / summary.elapsed:>12.0f}"
            )
    finally:
        for name, fn in originals.items():
            setattr(backend, name, fn)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=300,
                        help="campaign trials per backend (default 300)")
    args = parser.parse_args()

    print(f"active backend: {backend.backend_name()}")
    if _kernels is None:
        print("compiled extension not available; fallback columns only\n")
    else:
        print()

    bench_jacobi(dims=(2, 4, 8, 16, 32, 64))
    bench_moments(dims=(2, 4, 8))
    bench_campaign(args.trials)


if __name__ == "__main__":
    main()

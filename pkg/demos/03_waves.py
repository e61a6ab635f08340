"""Wave dynamics: Cauchy evolution, the solution kernels, causality.

The equation of motion is second order in time, so evolution is a
reversible spectral rotation that conserves energy exactly.  The kernels
propagating initial data have an entire power-series form off the origin
and a Fourier-integral form; both are evaluated here and cross-checked.

Run:  python demos/03_waves.py
"""

import numpy as np

from selfsim import (
    CauchyState,
    Grid1D,
    cauchy_evolve,
    energy,
    greens_retarded,
    helmholtz_green,
    make_params,
    wave_kernel_dt_series,
    wave_kernel_fourier,
    wave_kernel_series,
)

p = make_params(0.75, 1.0, 1.0)
grid = Grid1D.centered(8192, 0.05)

# ----------------------------------------------------------------------
# Evolve a localized pulse; energy stays put, time reverses exactly.
# ----------------------------------------------------------------------
state = CauchyState(
    grid.sample(lambda x: np.exp(-x * x)),
    grid.sample(lambda x: np.zeros_like(x)),
)
e0 = energy(p, state)
print(f"initial energy: {e0:.10f}")
for t in (0.5, 1.0, 2.0, 4.0):
    st = cauchy_evolve(p, state, t)
    peak = float(np.max(np.abs(st.u.values)))
    print(f"  t={t:4}: energy={energy(p, st):.10f}  peak|u|={peak:.5f}")

back = cauchy_evolve(p, cauchy_evolve(p, state, 3.0), -3.0)
print(f"time reversal defect: {np.max(np.abs(back.u.values - state.u.values)):.2e}")

# ----------------------------------------------------------------------
# The velocity kernel: series vs Fourier quadrature.
# ----------------------------------------------------------------------
print("\nvelocity kernel Q(x, t=1): power series vs rotated-contour quadrature")
for x in (0.5, 1.0, 2.0, 5.0):
    s = wave_kernel_series(p, x, 1.0)
    f = wave_kernel_fourier(p, x, 1.0)
    print(f"  x={x:4}: series={s:+.10f}  quadrature={f:+.10f}")

print("\nsmall-time displacement kernel follows (t^2/2) |x|^(-1-delta):")
for t in (0.05, 0.1, 0.2):
    got = wave_kernel_dt_series(p, 1.0, t)
    print(f"  t={t:5}: dQ/dt={got:+.7f}   leading={t * t / 2:+.7f}")

# ----------------------------------------------------------------------
# Causality: the retarded response is zero before the pulse.
# ----------------------------------------------------------------------
print("\nretarded response at x = 1")
for t in (-1.0, 0.0, 0.5, 1.0):
    print(f"  t={t:5}: g={greens_retarded(p, 1.0, t):+.8f}")

# ----------------------------------------------------------------------
# Frequency domain: the driven response decays away from the source.
# ----------------------------------------------------------------------
h = helmholtz_green(p, Grid1D.centered(1 << 16, 0.02), omega=1.5, eps=0.1)
print("\nfrequency-domain response at omega = 1.5 (real, imaginary)")
for x in (0.0, 1.0, 4.0, 16.0):
    v = h.value_near(x)
    print(f"  x={x:5}: {v.real:+.6f}  {v.imag:+.6f}")

try:
    import matplotlib.pyplot as plt
except ImportError:
    print("\n(matplotlib not available; skipping the figure)")
else:
    fig, ax = plt.subplots()
    for t in (0.5, 1.5, 3.0):
        st = cauchy_evolve(p, state, t)
        ax.plot(grid.x, st.u.values, label=f"t={t}")
    ax.set_xlim(-20, 20)
    ax.legend()
    ax.set_title("pulse spreading under the nonlocal wave equation")
    fig.savefig("demo03_waves.png", dpi=120)
    print("\nwrote demo03_waves.png")

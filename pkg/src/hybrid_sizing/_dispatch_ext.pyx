# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hourly dispatch kernel.

Mirrors ``_dispatch_py.dispatch_year`` operation for operation. Build with
FP contraction disabled so results match the Python fallback bit for bit.
"""
import numpy as np


cdef void _run(const double[::1] gen, const double[::1] dem, double capacity,
               double soc, double soc_min, double soc_max, double eta_c,
               double eta_d, double self_discharge,
               double[::1] charge, double[::1] discharge, double[::1] deficit,
               double[::1] waste, double[::1] trace) noexcept nogil:
    cdef Py_ssize_t h, n = gen.shape[0]
    cdef double net, storable, offered, need, available
    cdef double c, d, w, u
    for h in range(n):
        net = gen[h] - dem[h]
        soc = soc * (1.0 - self_discharge)
        c = 0.0
        d = 0.0
        w = 0.0
        u = 0.0
        if net > 0.0:
            storable = (soc_max - soc) * capacity
            if storable < 0.0:
                storable = 0.0
            offered = net * eta_c
            if offered <= storable:
                c = offered
            else:
                c = storable
                w = net - c / eta_c
            soc = soc + c / capacity
        elif net < 0.0:
            need = -net
            available = (soc - soc_min) * capacity * eta_d
            if available < 0.0:
                available = 0.0
            if need <= available:
                d = need
            else:
                d = available
                u = need - d
            soc = soc - d / (eta_d * capacity)
        if soc < soc_min:
            soc = soc_min
        elif soc > soc_max:
            soc = soc_max
        charge[h] = c
        discharge[h] = d
        waste[h] = w
        deficit[h] = u
        trace[h] = soc


def dispatch_year(generation, load, double capacity, double soc0, double soc_min,
                  double soc_max, double eta_c, double eta_d, double self_discharge):
    gen_a = np.ascontiguousarray(generation, dtype=np.float64)
    dem_a = np.ascontiguousarray(load, dtype=np.float64)
    if gen_a.shape[0] != dem_a.shape[0]:
        raise ValueError("generation and load must have the same length")
    n = gen_a.shape[0]
    charge = np.zeros(n)
    discharge = np.zeros(n)
    deficit = np.zeros(n)
    waste = np.zeros(n)
    trace = np.zeros(n)
    cdef const double[::1] g = gen_a
    cdef const double[::1] l = dem_a
    cdef double[::1] cv = charge, dv = discharge, uv = deficit, wv = waste, tv = trace
    with nogil:
        _run(g, l, capacity, soc0, soc_min, soc_max, eta_c, eta_d, self_discharge,
             cv, dv, uv, wv, tv)
    return charge, discharge, deficit, waste, trace

"""Pure-Python hourly dispatch kernel.

Reference implementation and import-time fallback for the compiled
``_dispatch_ext`` module. Both must perform the same floating-point
operations in the same order; tests compare them bit for bit.
"""
import numpy as np


def step(soc, net, capacity, soc_min, soc_max, eta_c, eta_d, self_discharge):
    """One hour of battery operation.

    Returns ``(soc, charged, discharged, waste, deficit)``.
    """
    soc = soc * (1.0 - self_discharge)
    charged = 0.0
    discharged = 0.0
    waste = 0.0
    deficit = 0.0
    if net > 0.0:
        storable = (soc_max - soc) * capacity
        if storable < 0.0:
            storable = 0.0
        offered = net * eta_c
        if offered <= storable:
            charged = offered
        else:
            charged = storable
            waste = net - charged / eta_c
        soc = soc + charged / capacity
    elif net < 0.0:
        need = -net
        available = (soc - soc_min) * capacity * eta_d
        if available < 0.0:
            available = 0.0
        if need <= available:
            discharged = need
        else:
            discharged = available
            deficit = need - discharged
        soc = soc - discharged / (eta_d * capacity)
    if soc < soc_min:
        soc = soc_min
    elif soc > soc_max:
        soc = soc_max
    return soc, charged, discharged, waste, deficit


def dispatch_year(generation, load, capacity, soc0, soc_min, soc_max, eta_c, eta_d, self_discharge):
    """Run ``step`` over every hour; returns five float64 arrays.

    Output order: charge, discharge, deficit, waste, end-of-hour soc.
    """
    gen = np.ascontiguousarray(generation, dtype=np.float64).tolist()
    dem = np.ascontiguousarray(load, dtype=np.float64).tolist()
    n = len(gen)
    if len(dem) != n:
        raise ValueError("generation and load must have the same length")
    charge = [0.0] * n
    discharge = [0.0] * n
    deficit = [0.0] * n
    waste = [0.0] * n
    trace = [0.0] * n
    soc = soc0
    for h in range(n):
        soc, c, d, w, u = step(soc, gen[h] - dem[h], capacity, soc_min, soc_max, eta_c, eta_d, self_discharge)
        charge[h] = c
        discharge[h] = d
        waste[h] = w
        deficit[h] = u
        trace[h] = soc
    return (
        np.array(charge),
        np.array(discharge),
        np.array(deficit),
        np.array(waste),
        np.array(trace),
    )

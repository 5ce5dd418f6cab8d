"""Smoke test for the Python bindings.

Builds the extension with cargo, loads it and checks a few known readings:

    python3 python/smoke_test.py [--release]
"""

import importlib.util
import shutil
import subprocess
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module(release):
    cmd = ["cargo", "build", "-p", "swclock-py"] + (["--release"] if release else [])
    subprocess.run(cmd, cwd=ROOT, check=True)
    built = ROOT / "target" / ("release" if release else "debug") / "libswclock_py.so"
    dest = Path(tempfile.mkdtemp()) / "swclock.so"
    shutil.copy(built, dest)
    spec = importlib.util.spec_from_file_location("swclock", dest)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    sw = load_module("--release" in sys.argv)

    cfg = sw.ClockConfig(12, 1, 12.0)
    assert cfg.beta == Fraction(1, 23), cfg.beta
    assert cfg.phi == Fraction(1, 2)
    readings = sw.read_times(cfg)
    assert len(readings) == 12
    for r in readings:
        assert r["t_c"] == r["truth_t_c"], r
        assert r["resolved"] and r["serial"] is None
    assert readings[0]["t_c"] == Fraction(-11, 2)

    arrivals = sw.arrivals(cfg)
    assert len(arrivals) == 36
    assert [a[1] for a in arrivals] == sorted(a[1] for a in arrivals)

    long_dial = sw.ClockConfig(11, 2, 11.0)
    for r in sw.read_times(long_dial):
        assert r["t_c"] == r["truth_t_c"] and r["serial"] == r["truth_serial"], r
    unresolved = sw.read_times(long_dial, "unresolved")
    assert all(len(r["candidates"]) == 2 for r in unresolved)
    offsets = [row[2] for row in sw.pairing_table(long_dial)]
    assert offsets == [1] * 6 + [2] * 5, offsets
    assert all(row[1] == row[2] for row in sw.pairing_table(long_dial))

    wigner = sw.mass_bound_si(1e5, 1e-8, 2.99792458)
    assert abs(wigner - 1.1734e-4) < 1e-7, wigner

    heavy = sw.ClockConfig(100, 1, 1.0, mass_kg=1.0)
    report = sw.uncertainty_report(heavy)
    assert report["spreading_ok"] and report["mass_bound"] < 1.0

    mc = sw.run_mc(sw.ClockConfig(100, 1, 1.0), 400, seed=5)
    assert abs(mc["err_std_over_tau"] - 1.0) < 0.15, mc["err_std_over_tau"]
    assert mc == sw.run_mc(sw.ClockConfig(100, 1, 1.0), 400, seed=5)
    quiet = sw.run_mc(cfg, 10, sigma_scale=0.0)
    assert quiet["err_max_abs"] == 0.0

    try:
        sw.ClockConfig(4, 5, 1.0)
    except ValueError:
        pass
    else:
        raise AssertionError("m > n accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()

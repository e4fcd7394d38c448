#!/usr/bin/env python3
"""Independent high-precision reference values for the test suite.

Evaluates every hand-derived expected value at 60 significant digits with the
decimal module and writes them to tests/data/. Also reproduces the library's
counter-based generator from its published constants, freezing a raw bit
stream and a sample of fractional powers so any implementation can be checked
against the same trials.

Run from the repository root:  python3 tools/oracle_values.py
"""

import json
import math
import os
from decimal import Decimal, getcontext

getcontext().prec = 60

D = Decimal


def dpow(x: Decimal, y: Decimal) -> Decimal:
    if y == 0:
        return D(1)
    if x == 0:
        return D(0)
    return (y * x.ln()).exp()


def dsqrt(x: Decimal) -> Decimal:
    return x.sqrt()


def s(x: Decimal) -> str:
    return str(+x)  # normalized at current precision


# ---------------------------------------------------------------------------
# Counter-based generator, mirroring the C++ constants bit for bit.
# ---------------------------------------------------------------------------

MASK = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
STREAM_OFFSET = 0xD1342543DE82EF95


def finalize(z: int) -> int:
    z &= MASK
    z ^= z >> 30
    z = (z * MIX1) & MASK
    z ^= z >> 27
    z = (z * MIX2) & MASK
    z ^= z >> 31
    return z


def root(seed: int, stream: int) -> int:
    return finalize(finalize((seed + GAMMA) & MASK) ^ ((stream * MIX2 + STREAM_OFFSET) & MASK))


def bits(seed: int, stream: int, k: int) -> int:
    return finalize((root(seed, stream) + ((k + 1) * GAMMA) & MASK) & MASK)


def u01(seed: int, stream: int, k: int) -> float:
    return (bits(seed, stream, k) >> 11) * (2.0 ** -53)


# ---------------------------------------------------------------------------
# Derived example values
# ---------------------------------------------------------------------------

def sandwich_entries(name, lower, middle, upper):
    return {f"{name}.lower": s(lower), f"{name}.middle": s(middle), f"{name}.upper": s(upper)}


def main():
    v = {}
    r3 = dsqrt(D(3))
    r2 = dsqrt(D(2))
    e = D(1).exp()

    # scalar kernel
    v["weighted_arithmetic:9,1,0.25"] = s(D("0.25") * 9 + D("0.75") * 1)
    v["weighted_geometric:9,1,0.25"] = s(r3)
    v["heinz_mean:9,1,0.25"] = s(2 * r3)
    v.update(sandwich_entries("young_sandwich:9,1,0.25", D(1), 3 - r3, D(3)))
    v.update(sandwich_entries("squared_young_sandwich:9,1,0.25", D(4), D(6), D(36)))
    v["power_m_refinement:4,1,0.25,3"] = s(D(49) / 64)
    v["power_m_refinement:9,1,0.25,1"] = s(D(1))
    v.update(sandwich_entries("power_p_sandwich:9,1,0.25,2", D(4), D(6), D(36)))
    v.update(sandwich_entries(
        "power_p_sandwich:4,1,0.25,3",
        D(61) / 64,
        dpow(D("1.75"), D(3)) - dpow(D(2), D("1.5")),
        D(27) / 64 * 61))
    ch3_t3 = dpow(D("1.75"), D(3)) - dpow(D(2), D("1.5"))
    v["theorem22_chain:4,1,0.25,3.t1"] = s(D(49) / 64)
    v["theorem22_chain:4,1,0.25,3.t2"] = s(D(61) / 64)
    v["theorem22_chain:4,1,0.25,3.t3"] = s(ch3_t3)
    v["theorem22_chain:4,1,0.25,3.t4"] = s(D(27) / 64 * 61)
    v["theorem22_chain:4,1,0.25,1.t1"] = s(D("0.25"))
    v["theorem22_chain:4,1,0.25,1.t2"] = s(D("0.25"))
    v.update(sandwich_entries("heinz_sandwich:9,1,0.25", D(1), 5 - 2 * r3, D(3)))
    v.update(sandwich_entries("heinz_power_sandwich:9,1,0.25,1", D(2), 10 - 4 * r3, D(6)))

    # convex gate
    for i, q in enumerate([D(1), D(2), D(3), D(5)]):
        v[f"slope_chain:pow2,0,1,2,3.q{i}"] = s(q)
    exp_chain = [e - 1, (e * e - 1) / 2, e * e - e, e * e * e - e * e]
    for i, q in enumerate(exp_chain):
        v[f"slope_chain:exp,0,1,2,3.q{i}"] = s(q)
    v["difference_dominance:pow2,x3,y1,z2,w1.first"] = s(D(3))
    v["difference_dominance:pow2,x3,y1,z2,w1.second"] = s(D(8))
    v["difference_dominance:pow3,x2,y0,z1,w0.first"] = s(D(1))
    v["difference_dominance:pow3,x2,y0,z1,w0.second"] = s(D(8))
    v.update(sandwich_entries("phi_young_sandwich:pow1,9,1,0.25", D(1), 3 - r3, D(3)))
    v.update(sandwich_entries("phi_young_sandwich:pow2,9,1,0.25", D(4), D(6), D(36)))
    v.update(sandwich_entries("phi_heinz_sandwich:pow1,9,1,0.25,full", D(2), 10 - 4 * r3, D(6)))

    # matrix core
    v["eigen:sym22.l0"] = s(D(3))
    v["eigen:sym22.l1"] = s(D(1))
    v["eigen:pauli.l0"] = s(D(1))
    v["eigen:pauli.l1"] = s(D(-1))
    v["fracpow:diag49,0.5.d0"] = s(D(2))
    v["fracpow:diag49,0.5.d1"] = s(D(3))
    v["fracpow:sym22,0.5.on"] = s((r3 + 1) / 2)
    v["fracpow:sym22,0.5.off"] = s((r3 - 1) / 2)
    v["singular:nilpotent.s0"] = s(D(1))
    v["singular:nilpotent.s1"] = s(D(0))
    v["singular:diag3m4.s0"] = s(D(4))
    v["singular:diag3m4.s1"] = s(D(3))
    v["schatten:diag34,2"] = s(D(5))
    v["schatten:diag34,1"] = s(D(7))
    v["hs_norm:ones22"] = s(D(2))
    v["hs_norm:pauli"] = s(r2)
    v["spectral:diag34"] = s(D(4))
    v["spectral:nilpotent"] = s(D(1))

    # matrix inequalities on A=diag(4,1), B=diag(1,4), X=I
    v["hs_identity_lhs:diagex"] = s(D(18))
    v.update(sandwich_entries("hs_young_sandwich:diagex,0.25", D("1.125"), D("3.625"),
                              D("10.125")))
    v.update(sandwich_entries("hs_young_sandwich:diagex,0.5", D("4.5"), D("4.5"), D("4.5")))
    v.update(sandwich_entries(
        "phi_hs_sandwich:diagex,0.25,pow1.5,theorem",
        dpow(D("3.125"), D("1.5")) - dpow(D(2), D("1.5")),
        dpow(D("13.625"), D("1.5")) - dpow(D(10), D("1.5")),
        dpow(D("28.125"), D("1.5")) - dpow(D(18), D("1.5"))))
    # The display coefficients are r0^p and R0^p at p = 3, i.e. 1/64 and
    # 27/64, making the display equal to the theorem arrangement.
    v.update(sandwich_entries(
        "phi_hs_sandwich:diagex,0.25,pow1.5,display",
        (dpow(D(50), D("1.5")) - 8 * dpow(D(8), D("1.5"))) / 64,
        dpow(D("13.625"), D("1.5")) - dpow(D(10), D("1.5")),
        D(27) / 64 * (dpow(D(50), D("1.5")) - 8 * dpow(D(8), D("1.5")))))
    v["heinz_norm_bounds:diagex,0.25,trace.b0"] = s(D(8))
    v["heinz_norm_bounds:diagex,0.25,trace.b1"] = s(6 * r2)
    v["heinz_norm_bounds:diagex,0.25,trace.b2"] = s(D(10))
    v.update(sandwich_entries("heinz_norm_sandwich:diagex,0.25,trace", D(1), 10 - 6 * r2,
                              D(3)))
    v.update(sandwich_entries("phi_heinz_norm_sandwich:diagex,0.25,trace,pow2", D(9), D(28),
                              D(81)))
    v["heinz_scan:diagex,trace,5.f0"] = s(D(10))
    v["heinz_scan:diagex,trace,5.f1"] = s(6 * r2)
    v["heinz_scan:diagex,trace,5.f2"] = s(D(8))
    v["heinz_scan:diagex,trace,5.f3"] = s(6 * r2)
    v["heinz_scan:diagex,trace,5.f4"] = s(D(10))

    here = os.path.dirname(os.path.abspath(__file__))
    data_dir = os.path.join(here, "..", "tests", "data")
    os.makedirs(data_dir, exist_ok=True)
    with open(os.path.join(data_dir, "derived_values.json"), "w") as f:
        json.dump(v, f, indent=1, sort_keys=True)
        f.write("\n")

    # raw generator stream, seed 42
    stream_doc = {"seed": "42", "draws": []}
    for stream in range(4):
        for k in range(8):
            stream_doc["draws"].append({
                "stream": str(stream),
                "k": str(k),
                "bits": str(bits(42, stream, k)),
                "u01": u01(42, stream, k),
            })
    with open(os.path.join(data_dir, "rng_stream.json"), "w") as f:
        json.dump(stream_doc, f, indent=1)
        f.write("\n")

    # fractional powers a^nu on generator samples, seed 20250808
    samples = []
    for i in range(48):
        a = math.pow(10.0, -3.0 + u01(20250808, i, 0) * 6.0)
        nu = u01(20250808, i, 6)
        expected = dpow(D(a), D(nu))  # Decimal(float) is exact
        samples.append({"a": a, "nu": nu, "pow": s(expected)})
    with open(os.path.join(data_dir, "pow_samples.json"), "w") as f:
        json.dump(samples, f, indent=1)
        f.write("\n")

    print(f"wrote {len(v)} derived values, {len(stream_doc['draws'])} stream draws, "
          f"{len(samples)} power samples")


if __name__ == "__main__":
    main()

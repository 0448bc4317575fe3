#!/usr/bin/env python3
"""Independent high-precision reference for the daywatch pipeline.

Evaluates every formula at 40 significant digits with mpmath, using the
exhaustive 24-term permanent, the general gamma function and the quadratic
root exactly as written (no algebraic simplification), then rounds each
quantity to the nearest binary64 value and writes a JSON report in the same
schema as `daywatch run --output json`.

Usage:
    python3 tools/golden_oracle.py t6_1 t6_2 t16 t24 k_c c_0 delta \
        [--up-log-mode strict|absolute] [--tolerance 1e-6] > golden/NAME.json
"""

import argparse
import json
from itertools import permutations

from mpmath import mp, mpf, exp, log, sqrt, pi, gamma

mp.dps = 40

FIELDS = ["t6_1", "t6_2", "t16", "t24", "k_c", "c_0", "delta"]


class StageError(Exception):
    def __init__(self, stage, equation, kind, quantity):
        super().__init__(kind)
        self.stage, self.equation, self.kind, self.quantity = stage, equation, kind, quantity


def f64(x):
    return None if x is None else float(x)


def scale(t, doubling):
    if doubling and t < mpf("9.5"):
        return 2 * t / 10
    return t / 10


def permanent(m):
    total = mpf(0)
    for p in permutations(range(4)):
        prod = mpf(1)
        for i in range(4):
            prod *= m[i][p[i]]
        total += prod
    return total


def run(raw, mode, tol):
    x = {k: mpf(v) for k, v in zip(FIELDS, raw)}
    errors = []
    q = {}

    def step(name, deps, fn):
        if any(q.get(d) is None for d in deps):
            q[name] = None
            return
        try:
            q[name] = fn()
        except StageError as e:
            errors.append(e)
            q[name] = None

    def fail(stage, eq, kind, quantity):
        raise StageError(stage, eq, kind, quantity)

    q["t6_1_s"] = scale(x["t6_1"], True)
    q["t6_2_s"] = scale(x["t6_2"], False)
    q["t16_s"] = scale(x["t16"], True)
    q["t24_s"] = scale(x["t24"], False)
    a, b, c, d = q["t6_1_s"], q["t6_2_s"], q["t16_s"], q["t24_s"]
    matrix = [[a, b, 1, 0], [d, c, b, 1], [c, d, c, b], [b, c, d, b]]
    q["perm_a"] = permanent(matrix)
    q["l_p1"] = x["delta"] + 1

    def l_p2():
        if q["perm_a"] <= 0:
            fail("lyapunov", 3, "non_positive_permanent", "l_p2")
        return log(q["perm_a"]) ** 2 / 10 + 1

    step("l_p2", ["perm_a"], l_p2)
    q["l_y1"] = exp(x["c_0"] / 25)
    q["l_y2"] = exp(x["k_c"] / 10) + 1

    step("e1", ["l_p1", "l_p2"], lambda: q["l_p1"] * q["l_p2"])
    step("t1", ["l_p1", "l_p2", "l_y1", "l_y2"],
         lambda: mpf(1) / 4 * (1 + ((q["l_y1"] + q["l_p1"]) / 2) * ((q["l_y2"] + q["l_p2"]) / 2)))

    s = 2 + q["l_p1"]
    q["discriminant"] = s ** 2 - 4 * ((4 - s ** 2) / 2 - 2)
    q["rho"] = (s + sqrt(q["discriminant"])) / 2
    root = sqrt(q["rho"] ** 2 - 4)
    q["e2"] = (q["rho"] + root) / 2
    q["t2"] = 5 * (q["rho"] - root)

    step("omega1", ["l_p1", "t1"], lambda: 2 * q["l_p1"] / q["t1"])
    q["omega2"] = 2 * q["l_y1"] / q["t2"]

    def v1():
        lp, t = q["l_p1"], q["t1"]
        h = mpf(1) / 16
        return (lp + t) / (lp * ((lp + t) ** 2 + h)) + (lp - t) / (lp * ((lp - t) ** 2 + h))

    def w1():
        lp, t = q["l_p1"], q["t1"]
        h = mpf(1) / 16
        return (3 / lp) * log(((lp + t) ** 2 + h) / ((lp - t) ** 2 + h))

    step("v1", ["t1"], v1)
    step("w1", ["t1"], w1)
    step("u_s", ["v1", "w1"], lambda: q["l_y1"] ** 2 * q["v1"] + q["w1"])
    step("p_x", ["e1", "omega1"], lambda: 2 * q["e1"] - (q["omega1"] ** 2 + q["omega2"] ** 2) - 4)
    step("u_p", ["v1", "t1", "p_x"],
         lambda: -(mpf(1) / 2 + 1 / (4 * q["v1"])) * (1 + q["p_x"] * q["v1"] / q["t1"]) * exp(q["v1"] * q["t1"]))

    step("trade_volume_pct", ["u_s"], lambda: 100 - 9 * pi ** 2 / (4 * (q["u_s"] / (2 * pi)) ** 2))

    def r_e():
        if q["u_s"] - q["u_p"] <= 0:
            fail("grid-analysis", 14, "non_positive_gap", "r_e")
        return gamma(mpf(1) / 2) / (sqrt(pi) * 2 ** 6 * gamma(3) * sqrt(q["u_s"] - q["u_p"]))

    def r_h():
        rad = q["omega1"] ** 2 + q["omega2"] ** 2 + q["e1"] ** 2 - q["e2"] ** 2 - q["t1"] ** 2
        if rad < 0:
            fail("grid-analysis", 15, "negative_radicand", "r_h")
        return 2 * sqrt(rad) / (32 * pi ** 2 * gamma(3) * gamma(mpf(3) / 2))

    step("r_e", ["u_s", "u_p"], r_e)
    step("r_h", ["omega1", "e1", "t1"], r_h)
    step("r_c", ["v1"], lambda: exp(-q["v1"] * q["l_p1"]) / (10 * q["l_p1"]))

    def market():
        re_, rh, rc = q["r_e"], q["r_h"], q["r_c"]
        if re_ > rc and rh > rc:
            return "emergency"
        if re_ > rc or rh > rc:
            return "restorative"
        return "normal"

    step("market_state", ["r_e", "r_h", "r_c"], market)

    def poly(coeffs, v):
        return sum(mpf(cf) * v ** k for k, cf in coeffs.items())

    star = {15: -120, 14: 360, 13: -270, 12: -90, 11: 120, 9: 20, 8: -15, 5: -6, 0: 1}
    tri = {12: 79, 11: -560, 10: 1668, 9: -2656, 8: 2331, 7: -960, 5: 96, 4: 21, 3: -16, 2: -4, 0: 1}
    step("p_s", ["v1"], lambda: poly(star, q["v1"]))
    step("p_t", ["v1"], lambda: poly(tri, q["v1"]))

    def p_g():
        us, up = q["u_s"], q["u_p"]
        if mode == "absolute":
            if us == 0:
                fail("grid-analysis", 20, "non_positive_potential", "p_g")
            if up == 0:
                fail("grid-analysis", 20, "non_positive_potential", "p_g")
            ls, lp = log(abs(us)), log(abs(up))
        else:
            if us <= 0:
                fail("grid-analysis", 20, "non_positive_potential", "p_g")
            if up <= 0:
                fail("grid-analysis", 20, "non_positive_potential", "p_g")
            ls, lp = log(us), log(up)
        return 1 - (1 / us) * exp(-4 * (ls - lp) ** 2 * q["e1"] / (mpf("1.261060863") * pi))

    step("p_g", ["u_s", "u_p", "e1"], p_g)

    def grid():
        pg = q["p_g"]
        scale_ = tol * max(mpf(1), abs(pg))
        es = abs(q["p_s"] - pg) <= scale_
        et = abs(q["p_t"] - pg) <= scale_
        if es and et:
            return "emergency"
        if es or et:
            return "restorative"
        return "normal"

    step("grid_state", ["p_s", "p_t", "p_g"], grid)

    table = {
        ("normal", "normal"): ("low", False),
        ("restorative", "normal"): ("guarded", False),
        ("restorative", "restorative"): ("elevated", False),
        ("restorative", "emergency"): ("elevated", False),
        ("emergency", "normal"): ("high", False),
        ("emergency", "restorative"): ("severe", False),
        ("emergency", "emergency"): ("severe", False),
        ("normal", "restorative"): ("guarded", True),
        ("normal", "emergency"): ("guarded", True),
    }
    step("threat", ["market_state", "grid_state"], lambda: table[(q["market_state"], q["grid_state"])])

    def chain():
        vals = sorted([q["r_e"], q["r_h"], q["r_c"]])
        return vals[2], vals[1], vals[0]

    step("dchain", ["r_e", "r_h", "r_c"], chain)

    def p_f():
        big, mid, small = q["dchain"]
        if small == big:
            fail("watch", 23, "degenerate_chain", "p_false_alarm_raw")
        if mid == 0:
            fail("watch", 23, "zero_middle", "p_false_alarm_raw")
        return mpf(2) / 3 * (small / (small - big)) * ((mid - big) / mid) ** 2

    step("p_f", ["dchain"], p_f)

    def pchain():
        vals = sorted([q["p_s"], q["p_t"], q["p_g"]])
        p1 = vals[2]
        p2 = 1 - vals[1] / 2
        p3 = vals[0] / 2
        p4 = (x["k_c"] / mpf("3.5")) ** 4 * p3
        return p1, p2, p3, p4

    step("pchain", ["p_s", "p_t", "p_g"], pchain)

    def p_m():
        p1, p2, p3, p4 = q["pchain"]
        if p3 <= 0:
            fail("watch", 24, "zero_p3", "p_miss_raw")
        vm = q["trade_volume_pct"] / 100
        inner = sqrt(vm ** 2 * (1 - vm) ** 2 * (p1 - p2) ** 2 + p1 * p2)
        return 1 - 2 * sqrt(p4 / p3) * (inner + sqrt(p3 * p4))

    step("p_m", ["pchain", "trade_volume_pct"], p_m)

    def clamp(v):
        return None if v is None else min(mpf(1), max(mpf(0), v))

    def oor(v):
        return None if v is None else bool(v < 0 or v > 1)

    vm = q["trade_volume_pct"]
    v1v = q["v1"]
    threat = q["threat"]
    report = {
        "input": dict({"date": None}, **{k: float(x[k]) for k in FIELDS}),
        "exponents": {
            "scaled_times": {k + "_s": f64(q[k + "_s"]) for k in ["t6_1", "t6_2", "t16", "t24"]},
            "perm_a": f64(q["perm_a"]),
            "l_p1": f64(q["l_p1"]),
            "l_p2": f64(q["l_p2"]),
            "l_y1": f64(q["l_y1"]),
            "l_y2": f64(q["l_y2"]),
        },
        "grid_model": {
            "discriminant": f64(q["discriminant"]),
            "rho": f64(q["rho"]),
            "e1": f64(q["e1"]),
            "e2": f64(q["e2"]),
            "omega1": f64(q["omega1"]),
            "omega2": f64(q["omega2"]),
            "t1": f64(q["t1"]),
            "t2": f64(q["t2"]),
        },
        "potentials": {k: f64(q[k]) for k in ["v1", "w1", "u_s", "p_x", "u_p"]},
        "distances": {k: f64(q[k]) for k in ["r_e", "r_h", "r_c"]},
        "probabilities": {k: f64(q[k]) for k in ["p_s", "p_t", "p_g"]},
        "states": {
            "market_state": q["market_state"],
            "grid_state": q["grid_state"],
            "threat_level": None if threat is None else threat[0],
        },
        "watch": {
            "trade_volume_pct": f64(vm),
            "distance_chain": None if q["dchain"] is None else dict(
                zip(["r_big", "r_mid", "r_small"], map(f64, q["dchain"]))),
            "probability_chain": None if q["pchain"] is None else dict(
                zip(["p1", "p2", "p3", "p4"], map(f64, q["pchain"]))),
            "p_false_alarm_raw": f64(q["p_f"]),
            "p_false_alarm": f64(clamp(q["p_f"])),
            "p_miss_raw": f64(q["p_m"]),
            "p_miss": f64(clamp(q["p_m"])),
        },
        "flags": {
            "paper_gap_flag": False if threat is None else threat[1],
            "valid_percentage": None if vm is None else bool(0 <= vm <= 100),
            "v1_in_unit_interval": None if v1v is None else bool(0 <= v1v <= 1),
            "ps_out_of_range": oor(q["p_s"]),
            "pt_out_of_range": oor(q["p_t"]),
            "pg_out_of_range": oor(q["p_g"]),
            "pf_out_of_range": oor(q["p_f"]),
            "pm_out_of_range": oor(q["p_m"]),
            "pg_undefined": q["p_g"] is None,
            "errors": [
                {"stage": e.stage, "equation": e.equation, "kind": e.kind, "quantity": e.quantity}
                for e in errors
            ],
        },
    }
    return report


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("values", nargs=7)
    ap.add_argument("--up-log-mode", default="strict", choices=["strict", "absolute"])
    ap.add_argument("--tolerance", default="1e-6")
    args = ap.parse_args()
    report = run(args.values, args.up_log_mode, mpf(args.tolerance))
    print(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Re-check a hullcheck/1 report against its input files.

Uses only the inputs and the JSON, never the solver. Exit status 0 means every
check passed, 1 means a check failed, 2 means the report could not be read.

    verify_certificate.py --points S.csv --query p.csv --report out.json
    verify_certificate.py --lp-a A.csv --lp-b b.csv --report out.json
"""

import argparse
import json
import math
import sys

TOL = 1e-9


def read_rows(path):
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append([float(x) for x in line.split(",")])
    return rows


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def dist(u, v):
    return math.sqrt(sum((a - b) ** 2 for a, b in zip(u, v)))


def combo(points, coeffs):
    m = len(points[0])
    return [sum(c * pt[i] for c, pt in zip(coeffs, points)) for i in range(m)]


class Checker:
    def __init__(self):
        self.failures = []

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)

    def simplex(self, coeffs, label):
        self.check(all(c >= 0.0 for c in coeffs), f"{label}: negative coefficient")
        self.check(abs(sum(coeffs) - 1.0) <= TOL, f"{label}: coefficients do not sum to 1")

    def reproduces(self, points, coeffs, point, label):
        rebuilt = combo(points, coeffs)
        scale = 1.0 + math.sqrt(dot(point, point))
        self.check(dist(rebuilt, point) <= TOL * scale, f"{label}: coefficients do not reproduce the point")

    def approx(self, cert, points, p):
        self.simplex(cert["coeffs"], "approx")
        self.reproduces(points, cert["coeffs"], cert["point"], "approx")
        radius = max(dist(p, v) for v in points)
        gap = dist(cert["point"], p)
        self.check(abs(gap - cert["gap"]) <= TOL * (1.0 + gap), "approx: gap mismatch")
        self.check(gap < cert["eps"] * radius + TOL * (1.0 + radius), "approx: gap not below eps * R")

    def separates(self, normal, offset, q, points, label):
        self.check(dot(normal, q) > offset, f"{label}: query not on the positive side")
        self.check(all(dot(normal, v) < offset for v in points), f"{label}: a point is not on the negative side")

    def witness(self, cert, points, p):
        self.simplex(cert["coeffs"], "witness")
        self.reproduces(points, cert["coeffs"], cert["point"], "witness")
        w, target = cert["point"], cert["witnessed"]
        self.check(all(dist(w, v) < dist(target, v) for v in points), "witness: not closer to every point")
        self.separates(cert["normal"], cert["offset"], p, points, "witness")
        self.check(cert["distance_lo"] <= cert["distance_hi"], "witness: empty distance bracket")

    def membership(self, cert, points, p):
        kind = cert["type"]
        if kind == "approx":
            self.approx(cert, points, p)
        elif kind == "witness":
            self.witness(cert, points, p)
        elif kind == "coordinates-only":
            gap = dist(cert["point"], p)
            self.check(abs(gap - cert["gap"]) <= TOL * (1.0 + gap), "coordinates-only: gap mismatch")
        elif kind == "general-witness":
            q = cert["point"]
            self.check(all(dist(q, v) < dist(p, v) for v in points), "general-witness: not closer to every point")
            self.separates(cert["normal"], cert["offset"], p, points, "general-witness")
        elif kind == "empty-intersection":
            self.approx(cert["approx"], points, p)
        elif kind == "intersection-point":
            q = cert["point"]
            self.simplex(cert["coeffs"], "intersection-point")
            self.reproduces(points, cert["coeffs"], q, "intersection-point")
            self.check(all(dist(q, v) < r for v, r in zip(points, cert["radii"])),
                       "intersection-point: outside a ball")
        elif kind == "inconclusive":
            pass
        else:
            self.failures.append(f"unknown certificate type {kind!r}")

    def lp(self, cert, A, b):
        kind = cert["type"]
        m, n = len(A), len(A[0])
        cols = [[A[i][j] for i in range(m)] for j in range(n)]
        if kind == "lp-feasible":
            x0 = cert["x0"]
            self.check(all(x >= 0.0 for x in x0), "lp-feasible: negative entry in x0")
            ax = [dot(A[i], x0) for i in range(m)]
            residual = dist(ax, b)
            self.check(abs(residual - cert["residual"]) <= TOL * (1.0 + residual), "lp-feasible: residual mismatch")
            self.check(residual < cert["bound"], "lp-feasible: residual not below the bound")
        elif kind == "lp-infeasible":
            red = cert["reduction"]
            if red["kind"] == "no-recession":
                points = cols + [[-x for x in b]]
                query = [0.0] * m
            else:
                points = cols + [[0.0] * m]
                query = [x / red["mu"] for x in b]
            self.witness(cert["witness"], points, query)
        elif kind == "inconclusive":
            pass
        else:
            self.failures.append(f"unknown certificate type {kind!r}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points")
    ap.add_argument("--query")
    ap.add_argument("--lp-a")
    ap.add_argument("--lp-b")
    ap.add_argument("--report", required=True)
    args = ap.parse_args(argv)

    try:
        with open(args.report) as fh:
            report = json.load(fh)
    except (OSError, ValueError) as exc:
        print(f"cannot read report: {exc}", file=sys.stderr)
        return 2
    if report.get("schema") != "hullcheck/1":
        print("unsupported schema", file=sys.stderr)
        return 2

    checker = Checker()
    cert = report["certificate"]
    if report["mode"] in ("membership", "balls"):
        points = read_rows(args.points)
        p = read_rows(args.query)[0]
        checker.membership(cert, points, p)
    else:
        A = read_rows(args.lp_a)
        b = read_rows(args.lp_b)[0]
        checker.lp(cert, A, b)

    if checker.failures:
        for f in checker.failures:
            print(f"FAIL {f}")
        return 1
    print(f"OK {cert['type']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

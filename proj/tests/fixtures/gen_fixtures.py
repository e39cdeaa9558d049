#!/usr/bin/env python3
# Copyright 2026 The redax Authors
# SPDX-License-Identifier: Apache-2.0

"""Regenerates the fixture netlists in this directory.

Each circuit is described with a tiny gate builder and written as BLIF (gates become
on-set covers) or as the JSON graph format (gates keep their built-in kind).
"""
import json
import os
import sys

COVERS = {
    "BUF": lambda n: ["1 1"],
    "NOT": lambda n: ["0 1"],
    "AND": lambda n: ["1" * n + " 1"],
    "NAND": lambda n: ["".join("0" if j == i else "-" for j in range(n)) + " 1" for i in range(n)],
    "OR": lambda n: ["".join("1" if j == i else "-" for j in range(n)) + " 1" for i in range(n)],
    "NOR": lambda n: ["0" * n + " 1"],
    "XOR": lambda n: ["01 1", "10 1"],
    "XNOR": lambda n: ["00 1", "11 1"],
}


class Circuit:
    def __init__(self, model):
        self.model = model
        self.inputs, self.outputs, self.gates, self.latches = [], [], [], []

    def pi(self, name):
        self.inputs.append(name)
        return name

    def po(self, name):
        self.outputs.append(name)

    def gate(self, kind, name, *fanins):
        self.gates.append((kind, name, list(fanins)))
        return name

    def dff(self, q, d):
        self.latches.append((d, q))
        return q

    def blif(self):
        lines = [f".model {self.model}", ".inputs " + " ".join(self.inputs), ".outputs " + " ".join(self.outputs)]
        for d, q in self.latches:
            lines.append(f".latch {d} {q} 0")
        for kind, name, fanins in self.gates:
            lines.append(".names " + " ".join(fanins + [name]))
            if kind == "MUX2":  # (sel, a, b): sel ? b : a
                lines += ["01- 1", "1-1 1"]
            else:
                lines += COVERS[kind](len(fanins))
        lines.append(".end")
        return "\n".join(lines) + "\n"

    def json(self):
        ids, verts = {}, []
        for n in self.inputs:
            ids[n] = len(verts)
            verts.append({"id": ids[n], "kind": "PI", "fanins": [], "name": n})
        po_ids = []
        for n in self.outputs:
            po_ids.append(len(verts))
            verts.append({"id": len(verts), "kind": "PO", "fanins": [n], "name": n})
        for kind, name, fanins in self.gates:
            ids[name] = len(verts)
            verts.append({"id": ids[name], "kind": kind, "fanins": fanins, "name": name})
        for d, q in self.latches:
            ids[q] = len(verts)
            verts.append({"id": ids[q], "kind": "DFF", "fanins": [d], "name": q})
        for v in verts:
            v["fanins"] = [ids[f] for f in v["fanins"]]
        body = ",\n  ".join(json.dumps(v, separators=(",", ":")) for v in verts)
        return ('{\n"model": "%s",\n"vertices": [\n  %s\n],\n"inputs": %s,\n"outputs": %s\n}\n'
                % (self.model, body, json.dumps(list(range(len(self.inputs)))), json.dumps(po_ids)))


def c17():
    c = Circuit("c17")
    for n in ["G1", "G2", "G3", "G6", "G7"]:
        c.pi(n)
    c.gate("NAND", "G10", "G1", "G3")
    c.gate("NAND", "G11", "G3", "G6")
    c.gate("NAND", "G16", "G2", "G11")
    c.gate("NAND", "G19", "G11", "G7")
    c.gate("NAND", "G22", "G10", "G16")
    c.gate("NAND", "G23", "G16", "G19")
    c.po("G22")
    c.po("G23")
    return c


def full_adder(c, p, a, b, cin):
    x = c.gate("XOR", p + "x", a, b)
    s = c.gate("XOR", p + "s", x, cin)
    g = c.gate("AND", p + "g", a, b)
    t = c.gate("AND", p + "t", x, cin)
    co = c.gate("OR", p + "c", g, t)
    return s, co


def adder4():
    c = Circuit("adder4")
    a = [c.pi(f"a{i}") for i in range(4)]
    b = [c.pi(f"b{i}") for i in range(4)]
    carry = c.pi("cin")
    for i in range(4):
        s, carry = full_adder(c, f"fa{i}_", a[i], b[i], carry)
        c.gate("BUF", f"s{i}", s)
        c.po(f"s{i}")
    c.gate("BUF", "cout", carry)
    c.po("cout")
    return c


def mult3():
    c = Circuit("mult3")
    a = [c.pi(f"a{i}") for i in range(3)]
    b = [c.pi(f"b{i}") for i in range(3)]
    pp = [[c.gate("AND", f"pp{i}{j}", a[i], b[j]) for j in range(3)] for i in range(3)]
    # Column sums of the partial products with half/full adders.
    c.gate("BUF", "p0", pp[0][0])
    h1s = c.gate("XOR", "h1s", pp[1][0], pp[0][1])
    h1c = c.gate("AND", "h1c", pp[1][0], pp[0][1])
    c.gate("BUF", "p1", h1s)
    f2s, f2c = full_adder(c, "f2_", pp[2][0], pp[1][1], pp[0][2])
    h2s = c.gate("XOR", "h2s", f2s, h1c)
    h2c = c.gate("AND", "h2c", f2s, h1c)
    c.gate("BUF", "p2", h2s)
    f3s, f3c = full_adder(c, "f3_", pp[2][1], pp[1][2], f2c)
    h3s = c.gate("XOR", "h3s", f3s, h2c)
    h3c = c.gate("AND", "h3c", f3s, h2c)
    c.gate("BUF", "p3", h3s)
    f4s, f4c = full_adder(c, "f4_", pp[2][2], f3c, h3c)
    c.gate("BUF", "p4", f4s)
    c.gate("BUF", "p5", f4c)
    for i in range(6):
        c.po(f"p{i}")
    return c


def alu4():
    c = Circuit("alu4")
    a = [c.pi(f"a{i}") for i in range(4)]
    b = [c.pi(f"b{i}") for i in range(4)]
    op0, op1 = c.pi("op0"), c.pi("op1")
    # op = 00 add, 01 and, 10 or, 11 xor
    carry = c.gate("AND", "c_in0", op0, op1)  # constant 0 carry-in for add, kept structural
    for i in range(4):
        s, carry = full_adder(c, f"fa{i}_", a[i], b[i], carry)
        an = c.gate("AND", f"and{i}", a[i], b[i])
        orr = c.gate("OR", f"or{i}", a[i], b[i])
        xr = c.gate("XOR", f"xor{i}", a[i], b[i])
        m0 = c.gate("MUX2", f"m0_{i}", op0, s, an)
        m1 = c.gate("MUX2", f"m1_{i}", op0, orr, xr)
        c.gate("MUX2", f"y{i}", op1, m0, m1)
        c.po(f"y{i}")
    nop = c.gate("NOR", "is_add", op0, op1)
    c.gate("AND", "cout", nop, carry)
    c.po("cout")
    c.gate("NOR", "zero", "y0", "y1", "y2", "y3")
    c.po("zero")
    return c


def cmp_mux():
    c = Circuit("cmp_mux")
    a = [c.pi(f"a{i}") for i in range(4)]
    b = [c.pi(f"b{i}") for i in range(4)]
    inv = c.pi("inv")
    eq = [c.gate("XNOR", f"e{i}", a[i], b[i]) for i in range(4)]
    nb = [c.gate("NOT", f"nb{i}", b[i]) for i in range(4)]
    gt_bit = [c.gate("AND", f"gb{i}", a[i], nb[i]) for i in range(4)]
    # gt = g3 | e3 g2 | e3 e2 g1 | e3 e2 e1 g0
    t2 = c.gate("AND", "t2", eq[3], gt_bit[2])
    t1 = c.gate("AND", "t1", eq[3], eq[2], gt_bit[1])
    t0 = c.gate("AND", "t0", eq[3], eq[2], eq[1], gt_bit[0])
    gt = c.gate("OR", "gt", gt_bit[3], t2, t1, t0)
    c.gate("AND", "eq", *eq)
    c.po("gt")
    c.po("eq")
    sel = c.gate("XOR", "sel", gt, inv)
    for i in range(4):
        c.gate("MUX2", f"y{i}", sel, b[i], a[i])
        c.po(f"y{i}")
    return c


def s27():
    c = Circuit("s27")
    for n in ["G0", "G1", "G2", "G3"]:
        c.pi(n)
    c.dff("G5", "G10")
    c.dff("G6", "G11")
    c.dff("G7", "G13")
    c.gate("NOT", "G14", "G0")
    c.gate("NOT", "G17", "G11")
    c.gate("AND", "G8", "G14", "G6")
    c.gate("OR", "G15", "G12", "G8")
    c.gate("OR", "G16", "G3", "G8")
    c.gate("NAND", "G9", "G16", "G15")
    c.gate("NOR", "G10", "G14", "G11")
    c.gate("NOR", "G11", "G5", "G9")
    c.gate("NOR", "G12", "G1", "G7")
    c.gate("NOR", "G13", "G2", "G12")
    c.po("G17")
    return c


def lfsr_acc():
    """8-bit Fibonacci LFSR (taps 8,6,5,4) whose low nibble is added into a 4-bit
    accumulator when `en` is high. `ld` seeds the LFSR with `din`."""
    c = Circuit("lfsr_acc")
    en, ld = c.pi("en"), c.pi("ld")
    din = [c.pi(f"din{i}") for i in range(4)]
    r = [f"r{i}" for i in range(8)]
    fb1 = c.gate("XOR", "fb1", r[7], r[5])
    fb2 = c.gate("XOR", "fb2", r[4], r[3])
    fb = c.gate("XNOR", "fb", fb1, fb2)  # XNOR form leaves the all-zero state
    for i in range(8):
        nxt = fb if i == 0 else r[i - 1]
        src = din[i] if i < 4 else nxt
        c.gate("MUX2", f"rn{i}", ld, nxt, src)
        c.dff(r[i], f"rn{i}")
    acc = [f"acc{i}" for i in range(4)]
    carry = c.gate("AND", "ac_c0", ld, en)  # carry-in: load and enable together add one
    for i in range(4):
        s, carry = full_adder(c, f"ac{i}_", acc[i], r[i], carry)
        c.gate("MUX2", f"an{i}", en, acc[i], s)
        c.dff(acc[i], f"an{i}")
        c.gate("BUF", f"q{i}", acc[i])
        c.po(f"q{i}")
    c.gate("XOR", "par", r[0], r[7])
    c.po("par")
    return c


FIXTURES = {
    "c17.blif": c17,
    "adder4.blif": adder4,
    "mult3.json": mult3,
    "alu4.blif": alu4,
    "cmp_mux.blif": cmp_mux,
    "s27.blif": s27,
    "lfsr_acc.blif": lfsr_acc,
}


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.dirname(os.path.abspath(__file__))
    for name, make in FIXTURES.items():
        c = make()
        text = c.json() if name.endswith(".json") else c.blif()
        with open(os.path.join(out, name), "w", newline="\n") as f:
            f.write(text)


if __name__ == "__main__":
    main()

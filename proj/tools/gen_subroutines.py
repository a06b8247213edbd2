#!/usr/bin/env python3
"""Regenerates the bundled subroutine corpus under benchmarks/subroutines/.

Families:
  add_k      ripple-carry adder skeleton, 2k+2 qubits (Toffolis reduced to
             their CX skeleton; T-layer gates are single-qubit and omitted)
  outadd_k   out-of-place adder skeleton, 3k+1 qubits
  qft_k      QFT with controlled phases reduced to cz, k qubits
  trotter_k  two Trotter steps of a nearest-neighbour CX ladder, k qubits
"""

import os
import sys

OUT = os.path.join(os.path.dirname(__file__), "..", "benchmarks", "subroutines")


def header(n):
    return ['OPENQASM 2.0;', 'include "qelib1.inc";', f'qreg q[{n}];']


def add(k):
    # q0 = carry-in, bit i: b=q[1+2i], a=q[2+2i], carry-out = q[2k+1]
    lines = header(2 * k + 2)
    cin, cout = 0, 2 * k + 1
    b = lambda i: 1 + 2 * i
    a = lambda i: 2 + 2 * i
    c = lambda i: cin if i == 0 else a(i - 1)
    for i in range(k):  # MAJ ripple up
        lines.append(f"cx q[{a(i)}],q[{b(i)}];")
        lines.append(f"cx q[{a(i)}],q[{c(i)}];")
        lines.append(f"t q[{b(i)}];")
        lines.append(f"cx q[{c(i)}],q[{a(i)}];")
        lines.append(f"cx q[{b(i)}],q[{a(i)}];")
    lines.append(f"cx q[{a(k-1)}],q[{cout}];")
    for i in reversed(range(k)):  # UMA ripple down
        lines.append(f"cx q[{c(i)}],q[{a(i)}];")
        lines.append(f"cx q[{b(i)}],q[{a(i)}];")
        lines.append(f"tdg q[{b(i)}];")
        lines.append(f"cx q[{a(i)}],q[{c(i)}];")
        lines.append(f"cx q[{c(i)}],q[{b(i)}];")
    lines.append(f"cx q[{b(k-1)}],q[{cout}];")  # carry correction
    return lines


def outadd(k):
    # a = q[0..k), b = q[k..2k), sum = q[2k..3k]; compute then uncompute
    lines = header(3 * k + 1)
    s = lambda i: 2 * k + i
    body = []
    for i in range(k):
        body.append(f"cx q[{i}],q[{s(i)}];")
        body.append(f"cx q[{k+i}],q[{s(i)}];")
        body.append(f"cx q[{i}],q[{s(i+1)}];")
        body.append(f"cx q[{k+i}],q[{s(i+1)}];")
        body.append(f"cx q[{s(i)}],q[{s(i+1)}];")
    lines += body
    lines.append(f"h q[{s(k)}];")
    lines += list(reversed(body))
    return lines


def qft(k):
    lines = header(k)
    for i in range(k):
        lines.append(f"h q[{i}];")
        for j in range(i + 1, k):
            lines.append(f"cz q[{j}],q[{i}];")
    return lines


def trotter(k, steps=2):
    # ZZ chain on a ring: ladder up, wrap-around coupling, ladder down
    lines = header(k)
    for _ in range(steps):
        for i in range(k - 1):
            lines.append(f"cx q[{i}],q[{i+1}];")
        lines.append(f"cx q[{k-1}],q[0];")
        lines.append(f"rz(0.1) q[{k-1}];")
        for i in reversed(range(k - 1)):
            lines.append(f"cx q[{i}],q[{i+1}];")
    return lines


def main():
    os.makedirs(OUT, exist_ok=True)
    files = {}
    for k in (3, 4, 5, 6):
        files[f"add_{k}"] = add(k)
    for k in (3, 4, 5):
        files[f"outadd_{k}"] = outadd(k)
    for k in (4, 5, 6, 7, 8):
        files[f"qft_{k}"] = qft(k)
    for k in (4, 5, 6, 7, 8):
        files[f"trotter_{k}"] = trotter(k)
    for name, lines in files.items():
        path = os.path.join(OUT, f"{name}.qasm")
        with open(path, "w") as f:
            f.write("\n".join(lines) + "\n")
        print(f"wrote {path} ({len(lines)} lines)")
    return 0


if __name__ == "__main__":
    sys.exit(main())

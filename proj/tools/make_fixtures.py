#!/usr/bin/env python3
# Copyright 2026 The cbvqe Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates data/fixtures/*.json.

Molecular Hamiltonians: PySCF RHF integrals, OpenFermion Jordan-Wigner
transform, spin orbitals interleaved (alpha on even qubits). The RHF
determinant therefore occupies qubits 0..n_electrons-1.

Needs openfermion, openfermionpyscf, pyscf. Not used by the build.
"""

import argparse
import json
import pathlib

import numpy as np
import openfermion as of
import scipy.sparse.linalg
from openfermionpyscf import run_pyscf

DROP = 1e-10


def pauli_label(term):
    return " ".join(f"{op}{q}" for q, op in term)


def write(path, n_qubits, n_electrons, label, qubit_op, note):
    terms = []
    for term, coeff in sorted(qubit_op.terms.items(),
                              key=lambda kv: (len(kv[0]), kv[0])):
        c = complex(coeff)
        if abs(c) < DROP:
            continue
        assert abs(c.imag) < 1e-12, (label, term, c)
        terms.append({"pauli": pauli_label(term), "coeff": c.real})
    doc = {
        "n_qubits": n_qubits,
        "n_electrons": n_electrons,
        "label": label,
        "source": note,
        "terms": terms,
    }
    path.write_text(json.dumps(doc, indent=1) + "\n")


def check_sector(qubit_op, n_qubits, n_electrons, label):
    """Global ground state must be non-degenerate and in the declared sector."""
    mat = of.get_sparse_operator(qubit_op, n_qubits=n_qubits)
    k = min(4, 2**n_qubits - 2)
    vals, vecs = scipy.sparse.linalg.eigsh(mat, k=k, which="SA")
    order = np.argsort(vals)
    vals, vecs = vals[order], vecs[:, order]
    gs = vecs[:, 0]
    counts = np.array([bin(i).count("1") for i in range(2**n_qubits)])
    n_mean = float(np.sum(np.abs(gs) ** 2 * counts))
    # get_sparse_operator puts qubit 0 in the most significant bit.
    i0 = (sum(1 << (n_qubits - 1 - q) for q in range(n_electrons))
          if n_electrons is not None else None)
    alpha = abs(gs[i0]) if i0 is not None else float(np.max(np.abs(gs)))
    print(f"{label:24s} q={n_qubits:2d} E={vals[0]:.10f} gap={vals[1]-vals[0]:.3e}"
          f" <N>={n_mean:.6f} alpha={alpha:.6f} terms={len(qubit_op.terms)}")
    if n_electrons is not None:
        assert abs(n_mean - n_electrons) < 1e-6, label
    assert vals[1] - vals[0] > 1e-6, label


def molecule(out, name, geometry, basis, n_electrons, active=None,
             occupied=None, multiplicity=1):
    mol = of.MolecularData(geometry, basis, multiplicity, 0)
    mol = run_pyscf(mol, run_scf=True)
    hamiltonian = mol.get_molecular_hamiltonian(
        occupied_indices=occupied, active_indices=active)
    qubit_op = of.jordan_wigner(of.get_fermion_operator(hamiltonian))
    n_qubits = of.count_qubits(qubit_op)
    check_sector(qubit_op, n_qubits, n_electrons, name)
    geo = "; ".join(f"{a} {x:g} {y:g} {z:g}" for a, (x, y, z) in geometry)
    note = (f"PySCF RHF {basis}, geometry [{geo}] Angstrom, "
            f"frozen spatial orbitals {occupied or []}, active {active or 'all'}, "
            "OpenFermion Jordan-Wigner")
    write(out / f"{name}.json", n_qubits, n_electrons, name, qubit_op, note)


def synthetic(out, name, n_qubits, n_electrons, spec, note):
    op = of.QubitOperator()
    for label, coeff in spec:
        op += of.QubitOperator(label, coeff)
    check_sector(op, n_qubits, n_electrons, name)
    write(out / f"{name}.json", n_qubits, n_electrons, name, op, note)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="data/fixtures")
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    h2 = lambda r: [("H", (0, 0, 0)), ("H", (0, 0, r))]
    molecule(out, "h2_sto3g", h2(0.7414), "sto-3g", 2)
    molecule(out, "h2_sto3g_stretched", h2(1.8), "sto-3g", 2)
    # Active-space series on one H2 geometry.
    for n_orb in (3, 4):
        molecule(out, f"h2_631g_{2 * n_orb}q", h2(0.7414), "6-31g", 2,
                 active=list(range(n_orb)))
    for n_orb in (5, 6):
        molecule(out, f"h2_ccpvdz_{2 * n_orb}q", h2(0.7414), "cc-pvdz", 2,
                 active=list(range(n_orb)))
    h4 = [("H", (0, 0, 1.0 * k)) for k in range(4)]
    molecule(out, "h4_chain_sto3g", h4, "sto-3g", 4)
    lih = [("Li", (0, 0, 0)), ("H", (0, 0, 1.5949))]
    molecule(out, "lih_sto3g_10q", lih, "sto-3g", 2, occupied=[0],
             active=[1, 2, 3, 4, 5])

    synthetic(out, "synthetic_2q", 2, None, [
        ("Z0", 0.40), ("Z1", 0.30), ("X0", 0.20), ("X1", 0.15),
        ("Z0 Z1", 0.10), ("X0 X1", 0.05), ("", -0.25),
    ], "hand-written two-qubit model, no particle-number structure")
    synthetic(out, "synthetic_3q", 3, None, [
        ("Z0", 0.50), ("Z1", 0.35), ("Z2", 0.25), ("X0 X1", 0.12),
        ("Y0 Y1", 0.12), ("X1 X2", 0.08), ("Y1 Y2", 0.08), ("X0", 0.10),
        ("Z0 Z2", 0.05),
    ], "hand-written three-qubit model, no particle-number structure")
    synthetic(out, "diagonal_3q", 3, None, [
        ("Z0", -0.7), ("Z1", -0.5), ("Z2", 0.6), ("Z0 Z1", 0.1),
        ("Z1 Z2", -0.2), ("", 0.3),
    ], "diagonal three-qubit model; ground state is a basis state")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Export a molecular qubit Hamiltonian in the qce observable text format.

Builds a linear hydrogen chain in STO-3G with PySCF, maps it to qubits with the
Jordan-Wigner transform (spin-orbital j -> qubit j) and writes one Pauli term
per line. The Hartree-Fock bitstring and reference energies go in comments.

    python scripts/export_hamiltonian.py --atoms 4 --bond 1.0 --out data/hamiltonians/h4_sto3g.ham
"""

import argparse

import numpy as np
from openfermion import MolecularData, get_fermion_operator, jordan_wigner
from openfermionpyscf import run_pyscf


def hydrogen_chain(n_atoms, bond):
    return [("H", (0.0, 0.0, i * bond)) for i in range(n_atoms)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--atoms", type=int, default=4)
    ap.add_argument("--bond", type=float, default=1.0, help="H-H distance in angstrom")
    ap.add_argument("--basis", default="sto-3g")
    ap.add_argument("--tol", type=float, default=1e-12, help="drop terms with |c| below this")
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    mol = MolecularData(hydrogen_chain(args.atoms, args.bond), args.basis, multiplicity=1, charge=0)
    mol = run_pyscf(mol, run_scf=True, run_fci=True)
    qubit_op = jordan_wigner(get_fermion_operator(mol.get_molecular_hamiltonian()))

    n_qubits = 2 * mol.n_orbitals
    reference = "1" * mol.n_electrons + "0" * (n_qubits - mol.n_electrons)

    lines = [
        f"# H{args.atoms} chain, {args.basis}, bond {args.bond} angstrom, Jordan-Wigner",
        f"# hf_reference {reference}",
        f"# hf_energy {mol.hf_energy:.12f}",
        f"# fci_energy {mol.fci_energy:.12f}",
        f"qubits {n_qubits}",
    ]
    for term, coeff in sorted(qubit_op.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
        if abs(coeff) < args.tol:
            continue
        if abs(np.imag(coeff)) > 1e-12:
            raise SystemExit(f"non-real coefficient {coeff} on {term}")
        paulis = " ".join(f"{p}{q}" for q, p in term)
        lines.append(f"{float(np.real(coeff))!r} {paulis}".rstrip())
    with open(args.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"{args.out}: {n_qubits} qubits, {len(lines) - 5} terms, HF {mol.hf_energy:.8f}, FCI {mol.fci_energy:.8f}")


if __name__ == "__main__":
    main()

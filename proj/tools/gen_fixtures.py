#!/usr/bin/env python3
# Copyright 2026 The mtdlcu Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the STO-3G FCIDUMP fixtures (requires pyscf).

Each molecule gets <name>.fcidump (restricted Hartree-Fock canonical
orbitals) and <name>.reference.txt, a dense dump of the core one-body matrix
and the full (ij|kl) tensor written with numpy, used by the parser tests.
"""
import argparse
import math
import os

import numpy as np
from pyscf import ao2mo, gto, scf
from pyscf.tools import fcidump

ANGSTROM_GEOMETRIES = {
    "h2": "H 0 0 0; H 0 0 0.741",
    "lih": "Li 0 0 0; H 0 0 1.595",
    "beh2": "H 0 0 -1.326; Be 0 0 0; H 0 0 1.326",
}


def water(r=0.958, angle=107.6):
    half = math.radians(angle) / 2
    x, y = r * math.sin(half), r * math.cos(half)
    return f"O 0 0 0; H {-x:.12f} {y:.12f} 0; H {x:.12f} {y:.12f} 0"


def chain(n, spacing=1.4):
    return "; ".join(f"H 0 0 {spacing * i:.6f}" for i in range(n))


def geometries():
    geo = dict(ANGSTROM_GEOMETRIES)
    geo["h2o"] = water()
    for n in range(2, 11, 2):
        geo[f"hchain_{n:02d}"] = chain(n)
    return geo


# Dense reference dumps are only kept for the parser tests.
REFERENCE_DUMPS = {"h2", "lih"}


def write_reference(path, norb, ecore, h1, eri):
    with open(path, "w") as out:
        out.write(f"norb {norb}\n")
        out.write(f"core {ecore:.16e}\n")
        for i in range(norb):
            for j in range(norb):
                out.write(f"t {i + 1} {j + 1} {h1[i, j]:.16e}\n")
        for i in range(norb):
            for j in range(norb):
                for k in range(norb):
                    for l in range(norb):
                        out.write(
                            f"v {i + 1} {j + 1} {k + 1} {l + 1} {eri[i, j, k, l]:.16e}\n")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "fixtures"))
    args = parser.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for name, atom in geometries().items():
        mol = gto.M(atom=atom, basis="sto-3g", spin=0, verbose=0)
        mf = scf.RHF(mol)
        mf.conv_tol = 1e-12
        mf.kernel()
        if not mf.converged:
            raise RuntimeError(f"SCF did not converge for {name}")
        fcidump.from_scf(mf, os.path.join(args.out, f"{name}.fcidump"), tol=1e-15)
        c = mf.mo_coeff
        h1 = c.T @ mf.get_hcore() @ c
        eri = ao2mo.restore(1, ao2mo.kernel(mol, c), mol.nao)
        if name in REFERENCE_DUMPS:
            write_reference(os.path.join(args.out, f"{name}.reference.txt"), mol.nao,
                            mol.energy_nuc(), h1, eri)
        print(f"{name}: norb={mol.nao} e_hf={mf.e_tot:.10f}")


if __name__ == "__main__":
    main()

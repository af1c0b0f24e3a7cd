#!/usr/bin/env python3
"""Fetch the Minnesota road graph and write it in the sgwt edge-list format.

The graph ships inside the PyGSP wheel (pygsp/data/pointclouds/minnesota.mat).
The raw adjacency matrix A is used as-is: 2642 nodes, 3303 undirected edges,
8 of them with weight 2, two connected components.

    python3 tools/fetch_minnesota.py [--out data] [--mat path/to/minnesota.mat]

Needs scipy and pip (for the download).
"""

import argparse
import pathlib
import subprocess
import sys
import tempfile
import zipfile

import numpy as np
import scipy.io
import scipy.sparse


def download_mat(workdir: pathlib.Path) -> pathlib.Path:
    subprocess.run(
        [sys.executable, "-m", "pip", "download", "pygsp", "--no-deps", "-d", str(workdir)],
        check=True,
    )
    wheel = next(workdir.glob("*.whl"))
    member = "pygsp/data/pointclouds/minnesota.mat"
    with zipfile.ZipFile(wheel) as zf:
        zf.extract(member, workdir)
    return workdir / member


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data"))
    parser.add_argument("--mat", help="use an existing minnesota.mat instead of downloading")
    args = parser.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        mat_path = pathlib.Path(args.mat) if args.mat else download_mat(pathlib.Path(tmp))
        data = scipy.io.loadmat(mat_path)

    A = scipy.sparse.coo_matrix(data["A"])
    xy = np.asarray(data["xy"], dtype=float)
    n = A.shape[0]
    if (abs(A - A.T) > 0).nnz:
        raise SystemExit("adjacency matrix is not symmetric")
    upper = scipy.sparse.triu(A, k=1).tocoo()
    order = np.lexsort((upper.col, upper.row))

    with open(out / "minnesota.edges", "w") as f:
        f.write("# Minnesota road graph (PyGSP minnesota.mat, raw A)\n")
        f.write(f"n {n}\n")
        for k in order:
            f.write(f"{upper.row[k]} {upper.col[k]} {upper.data[k]:.17g}\n")
    with open(out / "minnesota.coords", "w") as f:
        for i, (x, y) in enumerate(xy):
            f.write(f"{i} {x:.17g} {y:.17g}\n")

    degree_sum = 2.0 * upper.data.sum()
    print(f"wrote {out}/minnesota.edges: n = {n}, {upper.nnz} undirected edges, Tr L = {degree_sum:g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

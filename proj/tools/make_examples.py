#!/usr/bin/env python3
"""Regenerates the example inputs under data/."""

import json
import pathlib

import numpy as np

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def real(m):
    m = np.asarray(m, dtype=float)
    return {"field": "real", "n": m.shape[0], "entries": m.tolist()}


def hermitian(m):
    m = np.asarray(m, dtype=complex)
    entries = [[[z.real, z.imag] for z in row] for row in m]
    return {"field": "hermitian", "n": m.shape[0], "entries": entries}


def constant_family():
    a0 = np.array([[0.5, 0.25 - 0.5j], [0.25 + 0.5j, -0.5]])
    nu, nv = 8, 8
    rows = [[hermitian(a0) for _ in range(nv)] for _ in range(nu)]
    return {"grid": {"Nu": nu, "Nv": nv, "kind": "closed", "matrices": rows}}


def contractible_loop():
    return {
        "builtin": "circle",
        "params": {
            "center": real(np.diag([-1.0, 0.0, 1.0])),
            "b1": real([[0, 1, 0], [1, 0, 0], [0, 0, 0]]),
            "b2": real([[1, 0, 0], [0, -1, 0], [0, 0, 0]]),
            "radius": 0.1,
        },
    }


def degenerate_path(samples=201, planted=0.37, seed=5):
    # lambda_2 = lambda_3 exactly at t = planted, which lies on sample 74
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
    sx = np.array([[0.0, 1.0], [1.0, 0.0]]) / np.sqrt(2.0)
    mats = []
    for i in range(samples):
        t = i / (samples - 1)
        a = np.zeros((4, 4))
        a[0, 0], a[3, 3] = -2.0, 2.0
        a[1:3, 1:3] = (t - planted) * sx
        b = q @ a @ q.T
        mats.append(real((b + b.T) / 2))
    return {"grid": {"Nt": samples, "matrices": mats}}


def main():
    DATA.mkdir(exist_ok=True)
    for name, doc in [
        ("constant.json", constant_family()),
        ("contractible_loop.json", contractible_loop()),
        ("degenerate_path.json", degenerate_path()),
    ]:
        (DATA / name).write_text(json.dumps(doc) + "\n")


if __name__ == "__main__":
    main()

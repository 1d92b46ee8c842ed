#!/usr/bin/env python3
"""Convert a dense speed tensor (.mat / .npy / .npz) to the COO text format.

Zero and NaN cells are treated as missing readings and dropped, so the
number of written entries is the number of known readings.

Presets:
  guangzhou  tensor.mat, variable 'tensor', shape 214 x 61 x 144
             (sensor, day, 10-minute interval)
  newyork    .npy array shaped 135 x 288 x 73 (sensor, 5-minute interval,
             day) as produced from the Uber Movement export

Output axis order is always (sensor, interval, day).
"""

import argparse
import sys

import numpy as np

PRESETS = {
    "guangzhou": {"var": "tensor", "axes": "sdi"},
    "newyork": {"var": None, "axes": "sid"},
}


def load_dense(path, var):
    if path.endswith(".mat"):
        from scipy.io import loadmat

        mat = loadmat(path)
        if var is None:
            keys = [k for k in mat if not k.startswith("__")]
            if len(keys) != 1:
                sys.exit(f"{path}: pick a variable with --var from {keys}")
            var = keys[0]
        return np.asarray(mat[var], dtype=float)
    if path.endswith(".npz"):
        z = np.load(path)
        return np.asarray(z[var or z.files[0]], dtype=float)
    return np.asarray(np.load(path), dtype=float)


def to_sensor_interval_day(arr, axes):
    """axes names the input order with s=sensor, i=interval, d=day."""
    if sorted(axes) != ["d", "i", "s"]:
        sys.exit(f"--axes must be a permutation of 'sid', got {axes!r}")
    return np.transpose(arr, [axes.index(c) for c in "sid"])


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--var", help="variable name inside .mat/.npz")
    p.add_argument("--axes", help="input axis order, permutation of 'sid'")
    args = p.parse_args()

    preset = PRESETS.get(args.preset, {})
    var = args.var or preset.get("var")
    axes = args.axes or preset.get("axes") or "sid"

    dense = to_sensor_interval_day(load_dense(args.input, var), axes)
    if dense.ndim != 3:
        sys.exit(f"expected a 3-way array, got shape {dense.shape}")
    known = np.isfinite(dense) & (dense != 0)
    idx = np.argwhere(known)

    with open(args.output, "w") as out:
        out.write("# converted from %s\n" % args.input)
        out.write("dims %d %d %d\n" % dense.shape)
        for (i, j, k), v in zip(idx, dense[known]):
            out.write(f"{i} {j} {k} {float(v)!r}\n")
    print(f"{args.output}: dims {dense.shape}, {len(idx)} known entries", file=sys.stderr)


if __name__ == "__main__":
    main()

"""Standalone stdio wrapper exposing the Toeplitz extractors to the validator.

Run as a script (``python -S .../refwrapper.py``): reads the seed and
input as '0'/'1' argument strings, prints the output the same way.
Deliberately free of package and numpy imports so that per-case process
spawning stays cheap; the implementation mirrors the package's frozen
convention T[i,j] = y[(i-j) mod q] and is cross-checked against it in
the test suite.

Mutations ("--mutation") reintroduce known real-world bug classes on
purpose, so validator tests have something to catch:

    drop-last-input-bit   the input's final bit is ignored
    reverse-seed          the seed is consumed back to front
    flip-entry:I,J        one matrix entry is flipped

usage: refwrapper.py --type {toeplitz,modified-toeplitz} -n N -m M
                     [--mutation NAME] [--format {binary-string,hex}] SEED INPUT
"""

import sys


def parse_bits(s):
    if set(s) - {"0", "1"}:
        raise ValueError(f"not a binary string: {s[:40]!r}")
    return [int(c) for c in s]


def extract(kind, n, m, y, x):
    if kind == "toeplitz":
        q = n + m - 1
        body, tail = x, []
    else:
        q = n - 1
        body, tail = x[: n - m], x[n - m :]
    z = []
    for i in range(m):
        acc = 0
        for j, xj in enumerate(body):
            if xj:
                acc ^= y[(i - j) % q]
        if tail:
            acc ^= tail[i]
        z.append(acc)
    return z


USAGE = (
    "usage: refwrapper.py --type {toeplitz,modified-toeplitz} -n N -m M"
    " [--mutation NAME] [--format {binary-string,hex}] SEED INPUT"
)


def parse_hex(s, length):
    value = int(s, 16)
    if len(s) != ((length + 7) // 8) * 2 or value >> length:
        raise ValueError(f"need {length} bits of zero-padded hex, got {s!r}")
    return [(value >> (length - 1 - i)) & 1 for i in range(length)]


def render_hex(bits):
    value = int("".join(map(str, bits)), 2) if bits else 0
    return format(value, f"0{((len(bits) + 7) // 8) * 2}x")


def main(argv):
    kind, n, m, mutation, fmt = None, None, None, "none", "binary-string"
    positional = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg == "--type":
            i += 1
            kind = argv[i]
        elif arg == "-n":
            i += 1
            n = int(argv[i])
        elif arg == "-m":
            i += 1
            m = int(argv[i])
        elif arg == "--mutation":
            i += 1
            mutation = argv[i]
        elif arg == "--format":
            i += 1
            fmt = argv[i]
        else:
            positional.append(arg)
        i += 1
    if (
        kind not in ("toeplitz", "modified-toeplitz")
        or n is None
        or m is None
        or fmt not in ("binary-string", "hex")
        or len(positional) != 2
    ):
        print(USAGE, file=sys.stderr)
        return 2

    seed_len = n + m - 1 if kind == "toeplitz" else n - 1
    try:
        if fmt == "hex":
            y = parse_hex(positional[0], seed_len)
            x = parse_hex(positional[1], n)
        else:
            y = parse_bits(positional[0])
            x = parse_bits(positional[1])
    except ValueError as exc:
        print(exc, file=sys.stderr)
        return 1
    if len(x) != n or len(y) != seed_len:
        print(f"expected {n} input bits and {seed_len} seed bits", file=sys.stderr)
        return 1

    flip = None
    if mutation == "drop-last-input-bit":
        x[-1] = 0
    elif mutation == "reverse-seed":
        y = y[::-1]
    elif mutation.startswith("flip-entry:"):
        fi, _, fj = mutation.partition(":")[2].partition(",")
        flip = (int(fi), int(fj))
    elif mutation != "none":
        print(f"unknown mutation {mutation!r}", file=sys.stderr)
        return 2

    z = extract(kind, n, m, y, x)
    if flip is not None:
        z[flip[0]] ^= x[flip[1]]
    sys.stdout.write((render_hex(z) if fmt == "hex" else "".join(map(str, z))) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))

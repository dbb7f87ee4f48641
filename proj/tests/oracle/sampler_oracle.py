#!/usr/bin/env python3
"""Reference transcription of the hashtag-permutation sampler.

Independent of the C++ build (uses hashlib). Prints the golden emission
streams and lexicographic rank tables frozen into tests/test_steghash.cpp.

Encoding: current input is the comma-joined decimal seed; each iteration i
(counted from 1, never reset) hashes "<input>;<i>" with SHA-256, takes the
big-endian digest mod n, and appends the pick if it is new. A completed
permutation becomes the next input.
"""
import hashlib
import itertools
import sys


def stream(seed, count):
    n = len(seed)
    current = ",".join(str(v) for v in seed)
    i = 0
    partial = []
    out = []
    while len(out) < count:
        i += 1
        digest = hashlib.sha256(f"{current};{i}".encode()).digest()
        pick = int.from_bytes(digest, "big") % n
        if pick not in partial:
            partial.append(pick)
        if len(partial) == n:
            out.append((list(partial), i))
            current = ",".join(str(v) for v in partial)
            partial = []
    return out


def lex_rank_table(n):
    return {p: r for r, p in enumerate(itertools.permutations(range(n)))}


def main():
    for seed, count in (([0, 1, 2], 4), ([0, 1, 2, 3, 4], 4), ([2, 0, 1], 2),
                        ([7, 3, 0, 5, 1, 6, 2, 4], 3)):
        print("seed", seed)
        for perm, ctr in stream(seed, count):
            print("  ", perm, ctr)
    table = lex_rank_table(3)
    for p in ((0, 1, 2), (2, 1, 0), (1, 2, 0)):
        print("rank", p, table[p])
    t4 = lex_rank_table(4)
    print("rank", (3, 1, 2, 0), t4[(3, 1, 2, 0)])
    print("rank", (1, 0, 3, 2), t4[(1, 0, 3, 2)])
    return 0


if __name__ == "__main__":
    sys.exit(main())

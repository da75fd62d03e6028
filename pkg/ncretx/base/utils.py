from itertools import chain, combinations
from typing import Iterable, Iterator

# receivers are numbered from 1 outside the package, bit (i - 1) holds receiver i
MAX_RECEIVERS = 63


# https://docs.python.org/3/library/itertools.html#recipes
def powerset(iterable):
    "powerset([1,2,3]) --> () (1,) (2,) (3,) (1,2) (1,3) (2,3) (1,2,3)"
    s = sorted(set(iterable))
    return chain.from_iterable(combinations(s, r) for r in range(len(s)+1))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the 1-based receiver ids set in mask, lowest first."""
    i = 1
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def receivers_to_mask(receivers: Iterable[int], n: int=MAX_RECEIVERS) -> int:
    mask = 0
    for r in receivers:
        if not 1 <= r <= n:
            raise ValueError("receiver id %r out of range 1..%d" % (r, n))
        mask |= 1 << (r - 1)
    return mask


def mask_to_string(mask: int, n: int) -> str:
    """Receiver 1 leftmost."""
    return "".join("1" if mask >> i & 1 else "0" for i in range(n))


def string_to_mask(s: str) -> int:
    if not s or any(c not in "01" for c in s):
        raise ValueError("not a 0/1 pattern string: %r" % s)
    return sum(1 << i for i, c in enumerate(s) if c == "1")


def parse_csv_floats(s: str):
    """'0.1,0.2' --> (0.1, 0.2)"""
    try:
        return tuple(float(x) for x in s.split(",") if x.strip() != "")
    except ValueError:
        raise ValueError("not a comma-separated list of numbers: %r" % s)


def parse_csv_ints(s: str):
    try:
        return tuple(int(x) for x in s.split(",") if x.strip() != "")
    except ValueError:
        raise ValueError("not a comma-separated list of integers: %r" % s)

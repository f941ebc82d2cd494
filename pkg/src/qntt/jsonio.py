"""JSON integer encoding shared by every serialized document."""

JSON_SAFE_INT = 1 << 53


def encode_int(x: int):
    """Decimal string for |x| >= 2**53 so lossy JSON readers keep it exact."""
    return str(x) if abs(x) >= JSON_SAFE_INT else x


def decode_int(x) -> int:
    if isinstance(x, bool):
        raise TypeError("boolean where an integer was expected")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return int(x, 10)
    raise TypeError(f"expected an integer, got {x!r}")

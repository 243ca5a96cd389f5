"""Python surface of the mobile-agent platform core."""

from ._core import (
    Bus,
    Node,
    canonical_roundtrip,
    compute_cid,
    encode_agent_data,
)

__all__ = [
    "Bus",
    "Node",
    "canonical_roundtrip",
    "compute_cid",
    "encode_agent_data",
]

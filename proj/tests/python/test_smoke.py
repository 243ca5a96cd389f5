"""Smoke tests for the python surface of the platform core."""

import hashlib

import ampnet


PROGRAM = "toy-itinerary-v1\ninc c\nstop\n"


def test_compute_cid_matches_sha256():
    assert ampnet.compute_cid(PROGRAM.encode()) == hashlib.sha256(PROGRAM.encode()).hexdigest()


def test_canonical_roundtrip_on_wire_bytes():
    wire = (
        b'{"performative":"inform","sender":{"name":"amm@a","addresses":[]},'
        b'"receiver":{"name":"amm@b","addresses":[]},"conversation-id":"c1",'
        b'"protocol":"p","ontology":"o","content":{"kind":"done","payload":{}}}'
    )
    assert ampnet.canonical_roundtrip(wire) == wire


def test_agent_data_encoding_is_sorted_and_stable():
    assert ampnet.encode_agent_data(2, {"b": "1", "a": "0"}) == b"pc=2\na=0\nb=1\n"


def test_move_between_two_in_memory_nodes():
    bus = ampnet.Bus()
    a = ampnet.Node(bus, "alpha", "mem://a")
    b = ampnet.Node(bus, "beta", "mem://b")

    name = a.create_agent("v", PROGRAM, {"c": "41"})
    assert name == "v@alpha"
    assert a.step(name) == {"kind": "incremented", "key": "c", "value": 42}

    result = a.migrate(name, "mem://b")
    assert result["status"] == "succeeded"
    assert result["registered_name"] == "v@beta"
    assert a.agents() == []
    assert b.agents() == [("v@beta", "Active")]
    assert b.data_of("v@beta") == {"c": "42"}
    assert b.cache_cids() == [ampnet.compute_cid(PROGRAM.encode())]
    assert a.counters_total()["messages_sent"] > 0
    assert any("step-done" in line for line in a.event_lines())


def test_clone_and_discovery():
    bus = ampnet.Bus()
    a = ampnet.Node(bus, "alpha", "mem://a")
    b = ampnet.Node(bus, "beta", "mem://b")
    a.create_agent("v", PROGRAM, {})

    protocols = a.query_protocols("mem://b")
    assert protocols["transfer"] == ["push-transfer-protocol-v1"]

    result = a.migrate("v@alpha", "mem://b", clone=True)
    assert result["status"] == "succeeded"
    assert result["registered_name"] == "v-clone-1@beta"
    assert ("v@alpha", "Active") in a.agents()

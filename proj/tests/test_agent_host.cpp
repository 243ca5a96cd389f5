#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "amp/agent_host.hpp"

using namespace amp;

namespace {

const char* kProgram = "toy-itinerary-v1\ninc c\nhop mem://b\ninc c\nstop\n";

}  // namespace

TEST_CASE("toy programs parse and re-encode to the same bytes") {
    ToyProgram p = ToyProgram::parse(kProgram);
    CHECK(p.instructions.size() == 4);
    CHECK(p.instructions[0] == Instruction{Instruction::Kind::inc, "c"});
    CHECK(p.instructions[1] == Instruction{Instruction::Kind::hop, "mem://b"});
    CHECK(p.instructions[3] == Instruction{Instruction::Kind::stop, ""});
    CHECK(p.encode() == kProgram);

    CHECK_THROWS_AS(ToyProgram::parse(""), Error);
    CHECK_THROWS_AS(ToyProgram::parse("toy-itinerary-v1\nstop"), Error);   // no newline
    CHECK_THROWS_AS(ToyProgram::parse("wrong-header\nstop\n"), Error);
    CHECK_THROWS_AS(ToyProgram::parse("toy-itinerary-v1\nfly up\nstop\n"), Error);
    CHECK_THROWS_AS(ToyProgram::parse("toy-itinerary-v1\ninc c\n"), Error);  // no stop
    CHECK_THROWS_AS(ToyProgram::parse("toy-itinerary-v1\n"), Error);         // empty body
}

TEST_CASE("agent data snapshot is canonical") {
    std::map<std::string, std::string> data{{"b", "2"}, {"a", "1"}};
    std::string bytes = encode_agent_data(3, data);
    CHECK(bytes == "pc=3\na=1\nb=2\n");  // sorted keys, stable bytes
    auto [pc, back] = decode_agent_data(bytes);
    CHECK(pc == 3);
    CHECK(back == data);

    CHECK_THROWS_AS(encode_agent_data(0, {{"k=ey", "v"}}), Error);
    CHECK_THROWS_AS(encode_agent_data(0, {{"k", "v\n"}}), Error);
    CHECK_THROWS_AS(decode_agent_data("a=1\n"), Error);       // pc line missing
    CHECK_THROWS_AS(decode_agent_data("pc=-1\n"), Error);
    CHECK_THROWS_AS(decode_agent_data("pc=0\nnoequals\n"), Error);
    CHECK_THROWS_AS(decode_agent_data("pc=0"), Error);        // no newline
}

TEST_CASE("runtime trace of the sample itinerary") {
    AgentHost host("alpha", "mem://a");
    AgentIdentifier id = host.create_agent("voyager", ToyProgram::parse(kProgram), {});
    CHECK(id.name == "voyager@alpha");
    CHECK(host.lifecycle(id.name) == Lifecycle::active);

    RuntimeEvent e1 = host.step_runtime(id.name);
    CHECK(e1.kind == RuntimeEvent::Kind::incremented);
    CHECK(e1.key == "c");
    CHECK(e1.new_value == 1);

    RuntimeEvent e2 = host.step_runtime(id.name);
    CHECK(e2.kind == RuntimeEvent::Kind::wants_migration);
    CHECK(e2.destination == "mem://b");
    // A hop does not move the program counter by itself.
    CHECK(host.step_runtime(id.name).kind == RuntimeEvent::Kind::wants_migration);

    host.advance_past_hop(id.name);
    CHECK(host.step_runtime(id.name).new_value == 2);
    CHECK(host.step_runtime(id.name).kind == RuntimeEvent::Kind::stopped);
    CHECK(host.step_runtime(id.name).kind == RuntimeEvent::Kind::stopped);  // stop idles
}

TEST_CASE("rewind undoes exactly one hop advance") {
    AgentHost host("alpha", "mem://a");
    AgentIdentifier id = host.create_agent("v", ToyProgram::parse(kProgram), {});
    host.step_runtime(id.name);
    CHECK_THROWS_AS(host.rewind_to_hop(id.name), Error);  // not past a hop
    host.advance_past_hop(id.name);
    host.rewind_to_hop(id.name);
    CHECK(host.step_runtime(id.name).kind == RuntimeEvent::Kind::wants_migration);
    CHECK_THROWS_AS(host.advance_past_hop("missing@alpha"), Error);
}

TEST_CASE("snapshot and install round-trip the whole agent") {
    AgentHost a("alpha", "mem://a");
    AgentIdentifier id = a.create_agent("v", ToyProgram::parse(kProgram), {{"c", "41"}});
    a.step_runtime(id.name);  // c=42, pc=1

    CHECK_THROWS_AS(a.snapshot_agent(id.name), Error);  // Active agents cannot snapshot
    a.suspend_agent(id.name);
    AgentPackage pkg = a.snapshot_agent(id.name);
    pkg.check();
    CHECK(pkg.code == kProgram);
    CHECK(pkg.data == "pc=1\nc=42\n");
    CHECK(!pkg.state);

    AgentHost b("beta", "mem://b");
    AgentIdentifier new_id{"v@beta", {"mem://b"}};
    b.install_agent(pkg, new_id);
    CHECK(b.lifecycle("v@beta") == Lifecycle::suspended);
    b.resume_agent("v@beta");
    CHECK(b.data_of("v@beta") == std::map<std::string, std::string>{{"c", "42"}});
    CHECK(b.data_bytes_of("v@beta") == pkg.data);

    SUBCASE("name collision") {
        CHECK_THROWS_AS(b.install_agent(pkg, new_id), Error);
    }
    SUBCASE("broken code is rejected") {
        AgentPackage bad = pkg;
        bad.code = "not a program";
        bad.cid = compute_cid(bad.code);
        CHECK_THROWS_AS(b.install_agent(bad, AgentIdentifier{"w@beta", {}}), Error);
    }
    SUBCASE("package invariant is rechecked") {
        AgentPackage bad = pkg;
        bad.code += " ";  // cid no longer matches
        CHECK_THROWS_AS(b.install_agent(bad, AgentIdentifier{"w@beta", {}}), Error);
    }
    SUBCASE("program counter must stay in range") {
        AgentPackage bad = pkg;
        bad.data = "pc=99\n";
        CHECK_THROWS_AS(b.install_agent(bad, AgentIdentifier{"w@beta", {}}), Error);
    }
}

TEST_CASE("lifecycle transitions follow the fixed table") {
    // Oracle: the only legal transitions. Everything else must throw.
    auto legal = [](Lifecycle from, Lifecycle to) {
        return (from == Lifecycle::active && to == Lifecycle::suspended) ||
               (from == Lifecycle::suspended && to == Lifecycle::active) ||
               (from == Lifecycle::active && to == Lifecycle::transit) ||
               (from == Lifecycle::transit && to == Lifecycle::active) ||
               (from == Lifecycle::transit && to == Lifecycle::dead) ||
               (from == Lifecycle::suspended && to == Lifecycle::dead);
    };

    std::mt19937 rng(7);
    for (int round = 0; round < 200; ++round) {
        AgentHost host("alpha", "mem://a");
        std::string name = host.create_agent("v", ToyProgram::parse(kProgram), {}).name;
        Lifecycle state = Lifecycle::active;
        for (int op = 0; op < 12; ++op) {
            int choice = std::uniform_int_distribution<int>(0, 3)(rng);
            Lifecycle target = choice == 0   ? Lifecycle::active
                               : choice == 1 ? Lifecycle::suspended
                               : choice == 2 ? Lifecycle::transit
                                             : Lifecycle::dead;
            bool threw = false;
            try {
                switch (target) {
                    case Lifecycle::active: host.resume_agent(name); break;
                    case Lifecycle::suspended: host.suspend_agent(name); break;
                    case Lifecycle::transit: host.begin_transit(name); break;
                    case Lifecycle::dead: host.kill_agent(name); break;
                }
            } catch (const Error& e) {
                threw = true;
                if (state == Lifecycle::dead)
                    CHECK(e.code() == Errc::agent_not_found);
                else
                    CHECK(e.code() == Errc::illegal_transition);
            }
            CHECK(threw == !(state != Lifecycle::dead && legal(state, target)));
            if (!threw) state = target;
            if (state == Lifecycle::dead) {
                CHECK(!host.hosts(name));  // kill erases the agent
            } else {
                CHECK(host.lifecycle(name) == state);
            }
        }
    }
}

TEST_CASE("stepping a non-active agent is refused") {
    AgentHost host("alpha", "mem://a");
    std::string name = host.create_agent("v", ToyProgram::parse(kProgram), {}).name;
    host.suspend_agent(name);
    try {
        host.step_runtime(name);
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::agent_not_active);
    }
}

TEST_CASE("duplicate local names collide") {
    AgentHost host("alpha", "mem://a");
    host.create_agent("v", ToyProgram::parse(kProgram), {});
    try {
        host.create_agent("v", ToyProgram::parse(kProgram), {});
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::name_collision);
    }
}

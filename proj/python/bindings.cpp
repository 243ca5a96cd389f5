#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "amp/node.hpp"

namespace py = pybind11;
using namespace amp;

namespace {

py::dict migration_to_dict(const MigrationResult& r) {
    py::dict d;
    d["status"] = std::string(to_string(r.status));
    d["failed_step"] = r.failed_step;
    d["reason"] = r.reason;
    d["session_id"] = r.session_id;
    d["registered_name"] = r.registered_name;
    d["final_inform_lost"] = r.final_inform_lost;
    return d;
}

py::dict event_to_dict(const RuntimeEvent& ev) {
    py::dict d;
    switch (ev.kind) {
        case RuntimeEvent::Kind::incremented:
            d["kind"] = "incremented";
            d["key"] = ev.key;
            d["value"] = ev.new_value;
            break;
        case RuntimeEvent::Kind::wants_migration:
            d["kind"] = "hopped";
            d["destination"] = ev.destination;
            break;
        case RuntimeEvent::Kind::stopped:
            d["kind"] = "stopped";
            break;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "mobile-agent platform core";

    m.def("compute_cid", [](py::bytes code) { return compute_cid(std::string(code)).value; },
          "sha-256 content id of agent code, lowercase hex");

    m.def("canonical_roundtrip", [](py::bytes wire) {
        AclMessage msg = decode_message(std::string(wire));
        return py::bytes(encode_message(msg));
    },
          "decode a canonical message and re-encode it");

    m.def("encode_agent_data", [](int pc, const std::map<std::string, std::string>& data) {
        return py::bytes(encode_agent_data(pc, data));
    });

    py::class_<InMemoryBus>(m, "Bus").def(py::init<>());

    py::class_<Node>(m, "Node")
        .def(py::init([](InMemoryBus& bus, const std::string& platform, const std::string& address) {
                 NodeConfig cfg;
                 cfg.platform_name = platform;
                 cfg.listen_address = address;
                 return std::make_unique<Node>(cfg, bus);
             }),
             py::arg("bus"), py::arg("platform"), py::arg("address"), py::keep_alive<1, 2>())
        .def_property_readonly("address", &Node::address)
        .def("create_agent",
             [](Node& n, const std::string& local_name, const std::string& program,
                const std::map<std::string, std::string>& data) {
                 return n.host().create_agent(local_name, ToyProgram::parse(program), data).name;
             },
             py::arg("local_name"), py::arg("program"),
             py::arg("data") = std::map<std::string, std::string>{})
        .def("agents",
             [](Node& n) {
                 std::vector<std::pair<std::string, std::string>> out;
                 for (auto& info : n.host().list())
                     out.emplace_back(info.id.name, std::string(to_string(info.lifecycle)));
                 return out;
             })
        .def("data_of", [](Node& n, const std::string& name) { return n.host().data_of(name); })
        .def("step", [](Node& n, const std::string& name) { return event_to_dict(n.step_agent(name)); })
        .def("migrate",
             [](Node& n, const std::string& name, const std::string& destination, bool clone) {
                 ProtocolLists lists;
                 lists.transfer = n.registry().supported_protocols().transfer;
                 return migration_to_dict(n.migrate(name, destination, clone, lists));
             },
             py::arg("name"), py::arg("destination"), py::arg("clone") = false)
        .def("query_protocols",
             [](Node& n, const std::string& address, bool bypass_cache) {
                 SupportedProtocols sp = n.query_remote_protocols(
                     address, bypass_cache ? CachePolicy::bypass_cache : CachePolicy::use_cache);
                 py::dict d;
                 d["pre_transfer"] = sp.pre_transfer;
                 d["transfer"] = sp.transfer;
                 d["post_transfer"] = sp.post_transfer;
                 return d;
             },
             py::arg("address"), py::arg("bypass_cache") = false)
        .def("cache_cids", [](Node& n) { return n.cache().cids(); })
        .def("counters_total",
             [](Node& n) {
                 auto t = n.counters().total();
                 py::dict d;
                 d["messages_sent"] = t.messages_sent;
                 d["bytes_sent"] = t.bytes_sent;
                 d["messages_received"] = t.messages_received;
                 d["bytes_received"] = t.bytes_received;
                 return d;
             })
        .def("event_lines", [](Node& n) { return n.events().lines(); })
        .def("shutdown", &Node::shutdown);
}

#include "amp/node.hpp"

#include <fstream>
#include <random>
#include <sstream>

namespace amp {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(s);
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

FaultSpec parse_fault(const std::string& text) {
    auto parts = split(text, ':');
    if (parts.size() < 3 || parts.size() > 4)
        fail(Errc::config_error, "fault injection must be step:direction:count[:action]: " + text);
    FaultSpec f;
    f.step = parts[0];
    f.direction = parts[1];
    if (f.direction != "send" && f.direction != "recv")
        fail(Errc::config_error, "fault direction must be send or recv: " + text);
    try {
        f.count = std::stoi(parts[2]);
    } catch (const std::exception&) {
        fail(Errc::config_error, "invalid fault count: " + text);
    }
    if (parts.size() == 4) f.action = parts[3];
    if (f.action != "drop" && f.action != "corrupt-code")
        fail(Errc::config_error, "fault action must be drop or corrupt-code: " + text);
    return f;
}

}  // namespace

void NodeConfig::check() const {
    if (platform_name.empty()) fail(Errc::config_error, "platform-name must be non-empty");
    if (platform_name.find('@') != std::string::npos)
        fail(Errc::config_error, "platform-name may not contain '@'");
    if (listen_address.empty()) fail(Errc::config_error, "listen-address must be non-empty");
}

NodeConfig NodeConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::config_error, "cannot read config file: " + path.string());
    NodeConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(Errc::config_error, "expected key=value: " + line);
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        try {
            if (key == "platform-name") {
                cfg.platform_name = value;
            } else if (key == "listen-address") {
                cfg.listen_address = value;
            } else if (key == "code-cache-path") {
                cfg.code_cache_path = value;
            } else if (key == "cache-capacity") {
                cfg.cache_capacity = static_cast<std::size_t>(std::stoul(value));
            } else if (key == "discovery-ttl-seconds") {
                cfg.discovery_ttl = std::chrono::milliseconds(
                    static_cast<long long>(std::stod(value) * 1000));
            } else if (key == "step-timeout-seconds") {
                cfg.step_timeout = std::chrono::milliseconds(
                    static_cast<long long>(std::stod(value) * 1000));
            } else if (key == "fault-injections") {
                for (auto& part : split(value, ','))
                    if (!part.empty()) cfg.fault_injections.push_back(parse_fault(part));
            } else {
                fail(Errc::config_error, "unknown config key: " + key);
            }
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            fail(Errc::config_error, "invalid value for " + key + ": " + e.what());
        }
    }
    cfg.check();
    return cfg;
}

// ---------------------------------------------------------------------------
// Node
// ---------------------------------------------------------------------------

namespace {

NodeConfig checked(NodeConfig cfg) {
    cfg.check();
    return cfg;
}

}  // namespace

Node::Node(NodeConfig config, InMemoryBus& bus)
    : config_(checked(std::move(config))),
      address_(config_.listen_address),
      host_(config_.platform_name, address_),
      cache_(std::make_unique<CodeCache>(config_.cache_capacity, config_.code_cache_path)),
      discovery_(config_.discovery_ttl),
      faults_(config_.fault_injections) {
    registry_.register_protocol(make_push_transfer_protocol(*cache_));
    transport_ = bus.attach(address_, [this](const Envelope& env) { deliver(env); });
    amm_ = std::make_unique<Amm>(*this);
}

Node::Node(NodeConfig config)
    : config_(checked(std::move(config))),
      address_(config_.listen_address),
      host_(config_.platform_name, config_.listen_address),
      cache_(std::make_unique<CodeCache>(config_.cache_capacity, config_.code_cache_path)),
      discovery_(config_.discovery_ttl),
      faults_(config_.fault_injections) {
    registry_.register_protocol(make_push_transfer_protocol(*cache_));
    transport_ = std::make_shared<TcpTransport>(config_.listen_address,
                                                [this](const Envelope& env) { deliver(env); });
    address_ = transport_->address();
    amm_ = std::make_unique<Amm>(*this);
}

Node::~Node() { shutdown(); }

void Node::shutdown() {
    if (!running_.exchange(false)) return;
    transport_->close();
    pending_cv_.notify_all();
    shutdown_cv_.notify_all();
}

void Node::wait_for_shutdown() {
    std::unique_lock lock(shutdown_mu_);
    shutdown_cv_.wait(lock, [this] { return !running_.load(); });
}

AgentIdentifier Node::amm_identifier() const {
    return AgentIdentifier{"amm@" + config_.platform_name, {address_}};
}

void Node::register_protocol(ProtocolDescriptor descriptor) {
    registry_.register_protocol(std::move(descriptor));
}

void Node::add_fault(FaultSpec fault) {
    std::lock_guard lock(faults_mu_);
    faults_.push_back(std::move(fault));
}

std::string classify_step(const AclMessage& msg, const ProtocolRegistry& registry) {
    if (msg.protocol == kMainMigrationProtocol) return "main";
    if (msg.protocol == kRegistrationProtocol) return "registration";
    if (msg.protocol == kPowerUpProtocol) return "power-up";
    if (msg.protocol == kPushTransferProtocol) {
        switch (msg.performative) {
            case Performative::propose:
            case Performative::accept_proposal:
            case Performative::reject_proposal:
                return "transfer-stage1";
            default:
                return "transfer-stage2";
        }
    }
    if (const ProtocolDescriptor* d = registry.find(msg.protocol))
        return std::string(to_string(d->step));
    return "other";
}

bool Node::apply_fault(AclMessage& msg, const std::string& direction) {
    std::string step = classify_step(msg, registry_);
    std::lock_guard lock(faults_mu_);
    for (auto& f : faults_) {
        if (f.count <= 0 || f.direction != direction) continue;
        bool match = (f.step == step) ||
                     (f.step == "transfer" && step.rfind("transfer", 0) == 0);
        if (!match) continue;
        --f.count;
        if (f.action == "corrupt-code") {
            // Flip the first byte of the code field, if present.
            Frame rebuilt;
            for (auto& [key, value] : msg.content.payload.fields()) {
                if (key == "code" && std::holds_alternative<std::string>(value)) {
                    std::string code = base64_decode(std::get<std::string>(value));
                    if (!code.empty()) code[0] = static_cast<char>(code[0] ^ 0x01);
                    rebuilt.set_bytes(key, code);
                } else {
                    std::visit([&](const auto& v) { rebuilt.set(key, v); }, value);
                }
            }
            msg.content.payload = std::move(rebuilt);
            return false;  // corrupted but delivered
        }
        return true;  // drop
    }
    return false;
}

std::uint64_t Node::send_message(const AclMessage& msg, const std::string& to_address) {
    AclMessage out = msg;
    if (apply_fault(out, "send"))
        fail(Errc::injected_fault, "send fault injected for " + classify_step(msg, registry_));

    std::string to = to_address;
    if (to.empty()) {
        if (out.receiver.addresses.empty())
            fail(Errc::transport_error, "receiver has no transport address: " + out.receiver.name);
        to = out.receiver.addresses.front();
    }
    Envelope env;
    env.to = to;
    env.from = address_;
    env.payload = encode_message(out);
    std::uint64_t size = framed_size(env.payload.size());
    transport_->send(env);
    counters_.record_sent(to, size);
    return size;
}

void Node::deliver(const Envelope& envelope) {
    AclMessage msg;
    try {
        msg = decode_message(envelope.payload);
    } catch (const std::exception&) {
        return;  // undecodable frames are dropped
    }
    std::string peer = msg.sender.addresses.empty() ? envelope.from : msg.sender.addresses.front();
    counters_.record_received(peer, framed_size(envelope.payload.size()));

    if (msg.sender.local_name() == "amm" && !msg.sender.addresses.empty()) {
        std::lock_guard lock(platforms_mu_);
        known_platforms_[msg.sender.addresses.front()] = msg.sender.platform_name();
    }

    if (apply_fault(msg, "recv")) return;

    {
        std::lock_guard lock(pending_mu_);
        auto it = pending_.find(msg.conversation_id);
        if (it != pending_.end()) {
            it->second.queue.emplace_back(std::move(msg), framed_size(envelope.payload.size()));
            pending_cv_.notify_all();
            return;
        }
    }

    if (msg.ontology == kControlOntology) {
        handle_control(msg);
        return;
    }
    amm_->on_message(msg);
}

Node::ConversationGuard::ConversationGuard(Node& node, std::string conversation_id)
    : node_(node), id_(std::move(conversation_id)) {
    std::lock_guard lock(node_.pending_mu_);
    node_.pending_[id_];
}

Node::ConversationGuard::~ConversationGuard() {
    std::lock_guard lock(node_.pending_mu_);
    node_.pending_.erase(id_);
}

std::optional<std::pair<AclMessage, std::uint64_t>> Node::await_reply(
    const std::string& conversation_id, std::chrono::milliseconds timeout,
    const std::string& protocol) {
    std::unique_lock lock(pending_mu_);
    auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
        auto it = pending_.find(conversation_id);
        if (it == pending_.end()) return std::nullopt;
        auto& queue = it->second.queue;
        for (auto qit = queue.begin(); qit != queue.end(); ++qit) {
            if (protocol.empty() || qit->first.protocol == protocol) {
                auto out = std::move(*qit);
                queue.erase(qit);
                return out;
            }
        }
        if (!running_) return std::nullopt;
        if (pending_cv_.wait_until(lock, deadline) == std::cv_status::timeout) {
            // One last scan after the deadline.
            auto it2 = pending_.find(conversation_id);
            if (it2 != pending_.end()) {
                for (auto qit = it2->second.queue.begin(); qit != it2->second.queue.end(); ++qit) {
                    if (protocol.empty() || qit->first.protocol == protocol) {
                        auto out = std::move(*qit);
                        it2->second.queue.erase(qit);
                        return out;
                    }
                }
            }
            return std::nullopt;
        }
    }
}

std::optional<std::string> Node::platform_name_of(const std::string& address) const {
    std::lock_guard lock(platforms_mu_);
    auto it = known_platforms_.find(address);
    if (it == known_platforms_.end()) return std::nullopt;
    return it->second;
}

// ---------------------------------------------------------------------------
// Supported-protocols discovery (initiator side)
// ---------------------------------------------------------------------------

namespace {

std::string random_hex_id();

}  // namespace

SupportedProtocols Node::query_remote_protocols(const std::string& address, CachePolicy policy) {
    if (policy == CachePolicy::use_cache)
        if (auto cached = discovery_.lookup(address)) return *cached;

    std::string conv = random_hex_id();
    ConversationGuard guard(*this, conv);

    AclMessage request;
    request.performative = Performative::request;
    request.sender = amm_identifier();
    request.receiver = AgentIdentifier{"amm@" + platform_name_of(address).value_or(address), {address}};
    request.conversation_id = conv;
    request.protocol = kDiscoveryProtocol;
    request.ontology = kMigrationOntology;
    request.reply_with = "m1";
    request.content = build_get_supported_protocols_action();
    send_message(request, address);

    auto reply = await_reply(conv, config_.step_timeout);
    if (!reply) fail(Errc::transport_error, "no supported-protocols reply from " + address);
    const AclMessage& msg = reply->first;
    if (msg.performative == Performative::failure)
        fail(Errc::remote_failure, msg.content.payload.get_string("reason"));
    if (msg.performative != Performative::inform)
        fail(Errc::protocol_violation, "unexpected discovery reply performative");
    auto parsed = parse_content(msg.content, msg.ontology);
    auto* sp = std::get_if<SupportedProtocolsPredicate>(&parsed);
    if (!sp) fail(Errc::validation_failed, "discovery reply does not carry supported-protocols");
    discovery_.store(address, sp->protocols);
    return sp->protocols;
}

MigrationResult Node::migrate(const std::string& agent_name, const std::string& destination,
                              bool clone, ProtocolLists lists) {
    return amm_->initiate_migration(agent_name, destination, clone, std::move(lists));
}

RuntimeEvent Node::step_agent(const std::string& name) {
    RuntimeEvent ev = host_.step_runtime(name);
    if (ev.kind != RuntimeEvent::Kind::wants_migration) return ev;

    // The snapshot must resume past the hop at the destination; rewind if
    // the migration does not come off.
    host_.advance_past_hop(name);
    ProtocolLists lists;
    lists.transfer = registry_.supported_protocols().transfer;
    MigrationResult result = amm_->initiate_migration(name, ev.destination, false, lists);
    if (result.status != MigrationStatus::succeeded) host_.rewind_to_hop(name);
    return ev;
}

// ---------------------------------------------------------------------------
// Control endpoint
// ---------------------------------------------------------------------------

namespace {

Frame data_map_to_frame(const std::map<std::string, std::string>& data) {
    Frame f;
    for (auto& [k, v] : data) f.set(k, v);
    return f;
}

std::map<std::string, std::string> frame_to_data_map(const Frame& f) {
    std::map<std::string, std::string> out;
    for (auto& [k, v] : f.fields()) {
        if (!std::holds_alternative<std::string>(v))
            fail(Errc::validation_failed, "data values must be strings");
        out[k] = std::get<std::string>(v);
    }
    return out;
}

std::vector<std::string> optional_list(const Frame& f, const char* key) {
    if (const FrameValue* v = f.find(key); v && std::holds_alternative<std::vector<std::string>>(*v))
        return std::get<std::vector<std::string>>(*v);
    return {};
}

}  // namespace

void Node::handle_control(const AclMessage& msg) {
    if (msg.performative != Performative::request || msg.content.kind != ContentKind::action ||
        !msg.content.name)
        return;
    const std::string& action = *msg.content.name;
    const Frame& args = msg.content.payload;
    try {
        Frame result;
        if (action == "list-agents") {
            std::vector<std::string> agents;
            for (auto& info : host_.list())
                agents.push_back(info.id.name + " " + std::string(to_string(info.lifecycle)));
            result.set("agents", agents);
        } else if (action == "create-agent") {
            ToyProgram program = ToyProgram::parse(args.get_bytes("program"));
            std::map<std::string, std::string> data;
            if (args.has("data")) data = frame_to_data_map(args.get_frame("data"));
            AgentIdentifier id = host_.create_agent(args.get_string("local-name"), program, data);
            result.set("name", id.name);
        } else if (action == "step-agent") {
            RuntimeEvent ev = step_agent(args.get_string("name"));
            switch (ev.kind) {
                case RuntimeEvent::Kind::incremented:
                    result.set("event", std::string("incremented"));
                    result.set("key", ev.key);
                    result.set("value", std::to_string(ev.new_value));
                    break;
                case RuntimeEvent::Kind::wants_migration:
                    result.set("event", std::string("hopped"));
                    result.set("destination", ev.destination);
                    break;
                case RuntimeEvent::Kind::stopped:
                    result.set("event", std::string("stopped"));
                    break;
            }
        } else if (action == "migrate") {
            ProtocolLists lists;
            lists.pre = optional_list(args, "pre");
            lists.transfer = optional_list(args, "transfer");
            lists.post = optional_list(args, "post");
            if (lists.transfer.empty()) lists.transfer = registry_.supported_protocols().transfer;
            bool clone = args.has("kind") && args.get_string("kind") == "clone";
            MigrationResult r =
                migrate(args.get_string("name"), args.get_string("destination"), clone, lists);
            result.set("status", std::string(to_string(r.status)));
            if (!r.failed_step.empty()) result.set("step", r.failed_step);
            if (!r.reason.empty()) result.set("reason", r.reason);
            if (!r.registered_name.empty()) result.set("registered-name", r.registered_name);
            result.set("session", r.session_id);
        } else if (action == "query-protocols") {
            SupportedProtocols sp;
            if (args.has("target")) {
                CachePolicy policy = (args.has("policy") && args.get_string("policy") == "bypass-cache")
                                         ? CachePolicy::bypass_cache
                                         : CachePolicy::use_cache;
                sp = query_remote_protocols(args.get_string("target"), policy);
            } else {
                sp = registry_.supported_protocols();
            }
            if (!sp.pre_transfer.empty()) result.set("pre-transfer", sp.pre_transfer);
            result.set("transfer", sp.transfer);
            if (!sp.post_transfer.empty()) result.set("post-transfer", sp.post_transfer);
        } else if (action == "counters") {
            std::vector<std::string> lines;
            for (auto& [peer, c] : counters_.all())
                lines.push_back("peer=" + peer + " messages-sent=" + std::to_string(c.messages_sent) +
                                " bytes-sent=" + std::to_string(c.bytes_sent) +
                                " messages-received=" + std::to_string(c.messages_received) +
                                " bytes-received=" + std::to_string(c.bytes_received));
            result.set("lines", lines);
        } else if (action == "cache-list") {
            result.set("cids", cache_->cids());
        } else if (action == "events") {
            result.set("lines", events_.lines());
        } else if (action == "shutdown") {
            AclMessage reply = make_reply(msg, Performative::inform, make_done());
            send_message(reply);
            shutdown();
            return;
        } else {
            fail(Errc::validation_failed, "unknown control action: " + action);
        }
        AclMessage reply = make_reply(msg, Performative::inform,
                                      make_result(action + "-result", std::move(result)));
        send_message(reply);
    } catch (const std::exception& e) {
        try {
            send_message(make_reply(msg, Performative::failure, make_error(e.what())));
        } catch (const std::exception&) {
            // peer gone; nothing to do
        }
    }
}

// ---------------------------------------------------------------------------
// Session ids
// ---------------------------------------------------------------------------

namespace {

std::string random_hex_id() {
    static const char hex[] = "0123456789abcdef";
    std::random_device rd;
    std::string out;
    out.reserve(32);
    for (int i = 0; i < 8; ++i) {
        unsigned v = rd();
        for (int k = 0; k < 4; ++k) {
            out += hex[v & 0xf];
            v >>= 4;
        }
    }
    return out;
}

}  // namespace

}  // namespace amp

#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "amp/agent_host.hpp"
#include "amp/events.hpp"
#include "amp/orchestrator.hpp"
#include "amp/push_transfer.hpp"
#include "amp/registry.hpp"
#include "amp/transport.hpp"

namespace amp {

inline constexpr const char* kControlOntology = "platform-control-ontology-v1";

/// Test-only fault hook, addressed by (session-step, direction).
/// Steps: main, pre-transfer, transfer-stage1, transfer-stage2,
/// post-transfer, registration, power-up. Actions: drop, corrupt-code.
struct FaultSpec {
    std::string step;
    std::string direction = "send";  // send | recv
    int count = 1;
    std::string action = "drop";
};

struct NodeConfig {
    std::string platform_name;
    std::string listen_address;
    std::optional<std::filesystem::path> code_cache_path;
    std::size_t cache_capacity = 128;
    std::chrono::milliseconds discovery_ttl{300000};
    std::chrono::milliseconds step_timeout{10000};
    std::vector<FaultSpec> fault_injections;

    void check() const;
    static NodeConfig from_file(const std::filesystem::path& path);
};

/// One platform node: transport endpoint, agent host, protocol registry,
/// code cache, discovery cache and the amm, assembled per config.
class Node {
public:
    /// In-memory node attached to a shared bus.
    Node(NodeConfig config, InMemoryBus& bus);
    /// TCP node listening on config.listen_address (port 0 = pick free).
    explicit Node(NodeConfig config);
    ~Node();

    Node(const Node&) = delete;
    Node& operator=(const Node&) = delete;

    const NodeConfig& config() const { return config_; }
    /// Actual reachable address (TCP may rebind port 0).
    const std::string& address() const { return address_; }
    AgentIdentifier amm_identifier() const;

    AgentHost& host() { return host_; }
    ProtocolRegistry& registry() { return registry_; }
    const ProtocolRegistry& registry() const { return registry_; }
    CodeCache& cache() { return *cache_; }
    DiscoveryCache& discovery() { return discovery_; }
    CounterBoard& counters() { return counters_; }
    EventLog& events() { return events_; }

    void register_protocol(ProtocolDescriptor descriptor);
    void add_fault(FaultSpec fault);

    // -- messaging services ------------------------------------------------
    /// Encode, apply send-side fault hooks, count and transmit. Returns the
    /// frame size on the wire. Destination resolved from msg.receiver
    /// addresses unless to_address is given.
    std::uint64_t send_message(const AclMessage& msg, const std::string& to_address = "");

    /// Scoped registration of an initiator conversation.
    class ConversationGuard {
    public:
        ConversationGuard(Node& node, std::string conversation_id);
        ~ConversationGuard();
        const std::string& id() const { return id_; }

    private:
        Node& node_;
        std::string id_;
    };

    /// Next queued message for the conversation whose protocol field
    /// matches (empty = any); nullopt on timeout.
    std::optional<std::pair<AclMessage, std::uint64_t>> await_reply(
        const std::string& conversation_id, std::chrono::milliseconds timeout,
        const std::string& protocol = "");

    /// Platform name learnt from a peer amm at this address, if any.
    std::optional<std::string> platform_name_of(const std::string& address) const;

    // -- operations --------------------------------------------------------
    SupportedProtocols query_remote_protocols(const std::string& address, CachePolicy policy);
    MigrationResult migrate(const std::string& agent_name, const std::string& destination,
                            bool clone, ProtocolLists lists);
    /// One toy-runtime step; a hop triggers a move migration on the
    /// agent's behalf.
    RuntimeEvent step_agent(const std::string& name);

    void shutdown();
    bool running() const { return running_; }
    /// Blocks until shutdown() is called (daemon main loop).
    void wait_for_shutdown();

private:
    friend class Amm;

    void deliver(const Envelope& envelope);
    bool apply_fault(AclMessage& msg, const std::string& direction);
    void handle_control(const AclMessage& msg);

    NodeConfig config_;
    std::string address_;
    AgentHost host_;
    ProtocolRegistry registry_;
    std::unique_ptr<CodeCache> cache_;
    DiscoveryCache discovery_;
    CounterBoard counters_;
    EventLog events_;

    mutable std::mutex faults_mu_;
    std::vector<FaultSpec> faults_;

    mutable std::mutex platforms_mu_;
    std::map<std::string, std::string> known_platforms_;  // address -> platform name

    struct PendingConversation {
        std::deque<std::pair<AclMessage, std::uint64_t>> queue;
    };
    std::mutex pending_mu_;
    std::condition_variable pending_cv_;
    std::map<std::string, PendingConversation> pending_;

    std::shared_ptr<Transport> transport_;
    std::unique_ptr<Amm> amm_;

    std::atomic<bool> running_{true};
    std::mutex shutdown_mu_;
    std::condition_variable shutdown_cv_;
};

/// Classification used by the fault hooks; also exposed for tests.
std::string classify_step(const AclMessage& msg, const ProtocolRegistry& registry);

}  // namespace amp

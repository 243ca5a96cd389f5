#pragma once

#include <any>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "amp/acl.hpp"
#include "amp/ontology.hpp"
#include "amp/package.hpp"
#include "amp/registry.hpp"

namespace amp {

class Node;

enum class MigrationStatus { succeeded, refused, failed };

std::string_view to_string(MigrationStatus s);

struct MigrationResult {
    MigrationStatus status = MigrationStatus::failed;
    std::string failed_step;      // main | pre-transfer | transfer | post-transfer | registration | power-up
    std::string reason;
    std::string session_id;
    std::string registered_name;  // identity hosted at the destination on success
    bool final_inform_lost = false;
};

struct ProtocolLists {
    std::vector<std::string> pre;
    std::vector<std::string> transfer;
    std::vector<std::string> post;
};

/// The Agent Mobility Manager: conducts the Main protocol and the five
/// migration steps on both the initiator and the responder side.
class Amm {
public:
    explicit Amm(Node& node);

    /// Initiator side. Suspends the agent, runs the whole pipeline and
    /// finalizes move/clone semantics. Throws AgentNotFound /
    /// AgentNotActive; transport problems surface as failed(main).
    MigrationResult initiate_migration(const std::string& agent_name,
                                       const std::string& destination, bool clone,
                                       ProtocolLists lists);

    /// Responder side: one incoming migration-suite message.
    void on_message(const AclMessage& msg);

private:
    struct ResponderSession {
        std::string id;
        bool clone = false;
        MobileAgentDescription mad;
        AclMessage main_request;
        std::optional<AgentPackage> staged;
        bool registered = false;
        std::string registered_name;
        std::map<std::string, std::any> protocol_state;
    };

    struct StepBytes {
        std::uint64_t sent = 0;
        std::uint64_t received = 0;
    };

    void handle_new_conversation(const AclMessage& msg);
    void handle_migration_request(const AclMessage& msg);
    void handle_discovery_request(const AclMessage& msg);
    void handle_session_message(ResponderSession& session, const AclMessage& msg);
    void handle_register(ResponderSession& session, const AclMessage& msg);
    void handle_power_up(ResponderSession& session, const AclMessage& msg);
    void finish_session_failure(const std::string& session_id, const std::string& reason);

    std::string derive_clone_name(const AgentIdentifier& agent, const std::string& destination);

    Node& node_;
    std::mutex mu_;
    std::map<std::string, ResponderSession> sessions_;
    std::map<std::string, int> clone_counters_;  // "<local>@<dest-platform>" -> next k
};

}  // namespace amp

#pragma once

#include <any>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "amp/acl.hpp"
#include "amp/ontology.hpp"
#include "amp/package.hpp"

namespace amp {

// Well-known protocol names.
inline constexpr const char* kMainMigrationProtocol = "main-migration-protocol-v1";
inline constexpr const char* kPushTransferProtocol = "push-transfer-protocol-v1";
inline constexpr const char* kRegistrationProtocol = "registration-protocol-v1";
inline constexpr const char* kPowerUpProtocol = "power-up-protocol-v1";
inline constexpr const char* kDiscoveryProtocol = "get-supported-protocols-v1";

enum class ProtocolStep { pre_transfer, transfer, post_transfer };

std::string_view to_string(ProtocolStep s);
std::optional<ProtocolStep> protocol_step_from_string(std::string_view s);

struct StepOutcome {
    bool ok = true;
    std::string reason;

    static StepOutcome done() { return {true, ""}; }
    static StepOutcome failed(std::string reason) { return {false, std::move(reason)}; }
};

class CodeCache;

/// Initiator-side services handed to a protocol's step handler.
class ProtocolInitiatorContext {
public:
    virtual ~ProtocolInitiatorContext() = default;

    /// New message addressed to the peer amm, correlated to this session.
    virtual AclMessage make_message(Performative performative, std::string protocol,
                                    std::string ontology, Content content) = 0;
    /// Send and wait for the reply; throws Error on transport fault or timeout.
    virtual AclMessage request_reply(const AclMessage& msg) = 0;
    virtual const AgentPackage& package() const = 0;
    /// Attach a key=value note to the session event log.
    virtual void note(const std::string& key, const std::string& value) = 0;
};

/// Responder-side services for a protocol's message handler.
class ProtocolResponderContext {
public:
    virtual ~ProtocolResponderContext() = default;

    virtual void stage_package(AgentPackage package) = 0;
    virtual CodeCache& code_cache() = 0;
    /// Per-session scratch state for multi-stage protocols.
    virtual std::any& protocol_state() = 0;
};

using InitiatorHandler = std::function<StepOutcome(ProtocolInitiatorContext&)>;
using ResponderHandler =
    std::function<std::optional<AclMessage>(ProtocolResponderContext&, const AclMessage&)>;

struct ProtocolDescriptor {
    std::string well_known_name;
    ProtocolStep step = ProtocolStep::transfer;
    InitiatorHandler initiator;
    ResponderHandler responder;
};

struct MissingProtocols {
    std::vector<std::string> names;
    bool ok() const { return names.empty(); }
};

/// Open set of pre-/transfer/post-transfer protocol implementations on a
/// node. Write-once at startup, read-many.
class ProtocolRegistry {
public:
    void register_protocol(ProtocolDescriptor descriptor);  // DuplicateName
    SupportedProtocols supported_protocols() const;         // NotMigrationCapable
    const ProtocolDescriptor* find(std::string_view name) const;
    const ProtocolDescriptor* find(std::string_view name, ProtocolStep step) const;
    bool migration_capable() const;

    /// ok iff every name in the description's lists is registered under the
    /// matching step; a name under a different step counts as unsupported.
    MissingProtocols check_request_supported(const MobileAgentDescription& mad) const;

private:
    std::vector<ProtocolDescriptor> protocols_;
};

enum class CachePolicy { use_cache, bypass_cache };

/// Supported-protocols discovery cache, keyed by platform address.
class DiscoveryCache {
public:
    using Clock = std::chrono::steady_clock;

    explicit DiscoveryCache(Clock::duration ttl) : ttl_(ttl) {}

    std::optional<SupportedProtocols> lookup(const std::string& address) const;
    void store(const std::string& address, SupportedProtocols protocols);
    Clock::duration ttl() const { return ttl_; }

private:
    struct Entry {
        SupportedProtocols protocols;
        Clock::time_point fetched_at;
    };
    Clock::duration ttl_;
    mutable std::mutex mu_;
    std::map<std::string, Entry> entries_;
};

}  // namespace amp

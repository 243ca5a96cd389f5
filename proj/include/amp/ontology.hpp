#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "amp/acl.hpp"
#include "amp/package.hpp"

namespace amp {

inline constexpr const char* kMigrationOntology = "migration-ontology";
inline constexpr const char* kPushTransferOntology = "push-transfer-protocol-ontology-v1";

/// Compatibility requirements of a migrating agent. Stand-in for the
/// deprecated mobile-agent-profile: system, execution language and an
/// optional OS constraint.
struct MobileAgentProfile {
    std::string system;
    std::string language;
    std::optional<std::string> os;

    Frame to_frame() const;
    static MobileAgentProfile from_frame(const Frame& f);
    void check() const;

    bool operator==(const MobileAgentProfile&) const = default;
};

/// The migration request payload: who migrates and with which protocols.
/// Protocol lists are ordered and duplicate-free; execution follows list
/// order. An empty pre/post list is omitted on the wire.
struct MobileAgentDescription {
    AgentIdentifier name;
    MobileAgentProfile agent_profile;
    std::optional<std::string> agent_version;
    std::vector<std::string> pre_transfer;
    std::vector<std::string> transfer;
    std::vector<std::string> post_transfer;

    Frame to_frame() const;
    static MobileAgentDescription from_frame(const Frame& f);
    void check() const;

    bool operator==(const MobileAgentDescription&) const = default;
};

struct SupportedProtocols {
    std::vector<std::string> pre_transfer;
    std::vector<std::string> transfer;
    std::vector<std::string> post_transfer;

    Frame to_frame() const;
    static SupportedProtocols from_frame(const Frame& f);
    void check() const;

    bool operator==(const SupportedProtocols&) const = default;
};

struct NegotiateFrame {
    std::optional<Cid> cid;

    Frame to_frame() const;
    static NegotiateFrame from_frame(const Frame& f);
    void check() const;

    bool operator==(const NegotiateFrame&) const = default;
};

/// Push Transfer stage-2 payload. data is mandatory; code, when present,
/// must hash to the accompanying cid.
struct TransferFrame {
    std::optional<Cid> cid;
    std::optional<std::string> code;
    std::string data;
    std::optional<std::string> state;

    Frame to_frame() const;
    static TransferFrame from_frame(const Frame& f);
    void check() const;

    bool operator==(const TransferFrame&) const = default;
};

struct ValidationResult {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Structural frame validation: every mandatory parameter present with the
/// declared type, no unknown parameters. Throws UnknownOntology /
/// UnknownFrame for names outside the registry.
ValidationResult validate_frame(std::string_view ontology, std::string_view frame_name,
                                const Frame& payload);

/// Registry introspection (fixed at startup).
std::vector<std::string> registered_frames(std::string_view ontology);
std::vector<std::string> registered_actions(std::string_view ontology);
std::vector<std::string> registered_predicates(std::string_view ontology);

/// Ontology an action or predicate name belongs to; empty when unknown.
std::string ontology_of_action(std::string_view action_name);

// Action / predicate names.
inline constexpr const char* kActionMove = "move";
inline constexpr const char* kActionClone = "clone";
inline constexpr const char* kActionRegister = "register";
inline constexpr const char* kActionPowerUp = "power-up";
inline constexpr const char* kActionGetSupportedProtocols = "get-supported-protocols";
inline constexpr const char* kActionTransfer = "transfer";
inline constexpr const char* kPredicateNegotiate = "negotiate";
inline constexpr const char* kPredicateSupportedProtocols = "supported-protocols";

// Typed builders. Throws DomainMismatch when the payload does not fit the
// action's declared domain.
Content build_move_action(const MobileAgentDescription& mad, bool clone);
Content build_register_action(const AgentIdentifier& id);
Content build_power_up_action(const AgentIdentifier& id);
Content build_get_supported_protocols_action();
Content build_transfer_action(const TransferFrame& frame);
Content build_negotiate_predicate(const NegotiateFrame& frame);
Content build_supported_protocols_predicate(const SupportedProtocols& protocols);

// Untyped builders for the generic surface (payload checked against the
// declared domain frame).
Content build_action(std::string_view action_name, const Frame& payload);
Content build_predicate(std::string_view predicate_name, const Frame& payload);

// Typed parse results.
struct MoveAction {
    bool clone = false;
    MobileAgentDescription description;
};
struct RegisterAction {
    AgentIdentifier id;
};
struct PowerUpAction {
    AgentIdentifier id;
};
struct GetSupportedProtocolsAction {};
struct TransferAction {
    TransferFrame frame;
};
struct NegotiatePredicate {
    NegotiateFrame frame;
};
struct SupportedProtocolsPredicate {
    SupportedProtocols protocols;
};
/// done / result / error contents pass through untyped.
struct UntypedContent {
    Content content;
};

using ParsedContent =
    std::variant<MoveAction, RegisterAction, PowerUpAction, GetSupportedProtocolsAction,
                 TransferAction, NegotiatePredicate, SupportedProtocolsPredicate, UntypedContent>;

/// Inverse of the builders; rejects content failing validate_frame or the
/// typed invariants.
ParsedContent parse_content(const Content& content, std::string_view ontology);

}  // namespace amp

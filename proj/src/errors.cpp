#include "amp/errors.hpp"

namespace amp {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::invalid_message: return "InvalidMessage";
        case Errc::malformed_encoding: return "MalformedEncoding";
        case Errc::unknown_performative: return "UnknownPerformative";
        case Errc::invariant_violation: return "InvariantViolation";
        case Errc::unknown_ontology: return "UnknownOntology";
        case Errc::unknown_frame: return "UnknownFrame";
        case Errc::validation_failed: return "ValidationFailed";
        case Errc::domain_mismatch: return "DomainMismatch";
        case Errc::duplicate_name: return "DuplicateName";
        case Errc::not_migration_capable: return "NotMigrationCapable";
        case Errc::transport_error: return "TransportError";
        case Errc::remote_failure: return "RemoteFailure";
        case Errc::cid_mismatch: return "CidMismatch";
        case Errc::corrupt_entry: return "CorruptEntry";
        case Errc::step_failed: return "StepFailed";
        case Errc::protocol_violation: return "ProtocolViolation";
        case Errc::agent_not_found: return "AgentNotFound";
        case Errc::agent_not_active: return "AgentNotActive";
        case Errc::agent_running: return "AgentRunning";
        case Errc::illegal_transition: return "IllegalTransition";
        case Errc::name_collision: return "NameCollision";
        case Errc::code_format_error: return "CodeFormatError";
        case Errc::data_format_error: return "DataFormatError";
        case Errc::bind_error: return "BindError";
        case Errc::config_error: return "ConfigError";
        case Errc::injected_fault: return "InjectedFault";
        case Errc::timeout: return "Timeout";
        case Errc::closed: return "Closed";
    }
    return "UnknownError";
}

}  // namespace amp

#pragma once

#include <stdexcept>
#include <string>

namespace amp {

enum class Errc {
    invalid_message,
    malformed_encoding,
    unknown_performative,
    invariant_violation,
    unknown_ontology,
    unknown_frame,
    validation_failed,
    domain_mismatch,
    duplicate_name,
    not_migration_capable,
    transport_error,
    remote_failure,
    cid_mismatch,
    corrupt_entry,
    step_failed,
    protocol_violation,
    agent_not_found,
    agent_not_active,
    agent_running,
    illegal_transition,
    name_collision,
    code_format_error,
    data_format_error,
    bind_error,
    config_error,
    injected_fault,
    timeout,
    closed,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace amp

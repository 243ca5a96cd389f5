#pragma once

#include <string>
#include <utility>
#include <vector>

#include "amp/acl.hpp"

namespace amp {

/// The three interaction patterns used by the migration protocol suite.
enum class Pattern { fipa_request, fipa_request_simplified, fipa_propose };

enum class Role { initiator, responder };

enum class Phase {
    start,
    awaiting_agreement,
    agreed,
    awaiting_result,
    terminal_ok,
    terminal_refused,
    terminal_failed,
};

enum class Direction { sent, received };

std::string_view to_string(Pattern p);
std::string_view to_string(Phase p);
std::string_view to_string(Direction d);

struct ConversationState {
    Pattern pattern = Pattern::fipa_request;
    Role role = Role::initiator;
    Phase phase = Phase::start;
    std::string conversation_id;

    bool terminal() const {
        return phase == Phase::terminal_ok || phase == Phase::terminal_refused ||
               phase == Phase::terminal_failed;
    }

    bool operator==(const ConversationState&) const = default;
};

/// Pure transition function. Throws Error(protocol_violation) when the
/// (direction, performative) pair is illegal for the current state;
/// terminal phases absorb nothing.
ConversationState advance(const ConversationState& state, Direction direction, Performative performative);

/// Exactly the pairs for which advance succeeds; empty iff terminal.
std::vector<std::pair<Direction, Performative>> legal_next(const ConversationState& state);

}  // namespace amp

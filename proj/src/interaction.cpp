#include "amp/interaction.hpp"

#include <optional>

#include "amp/errors.hpp"

namespace amp {

std::string_view to_string(Pattern p) {
    switch (p) {
        case Pattern::fipa_request: return "fipa-request";
        case Pattern::fipa_request_simplified: return "fipa-request-simplified";
        case Pattern::fipa_propose: return "fipa-propose";
    }
    return "?";
}

std::string_view to_string(Phase p) {
    switch (p) {
        case Phase::start: return "start";
        case Phase::awaiting_agreement: return "awaiting-agreement";
        case Phase::agreed: return "agreed";
        case Phase::awaiting_result: return "awaiting-result";
        case Phase::terminal_ok: return "terminal-ok";
        case Phase::terminal_refused: return "terminal-refused";
        case Phase::terminal_failed: return "terminal-failed";
    }
    return "?";
}

std::string_view to_string(Direction d) { return d == Direction::sent ? "sent" : "received"; }

namespace {

// Transitions from the initiator's point of view: the initiator sends the
// opening message and receives every later one. The responder mirrors the
// directions.
std::optional<Phase> step_initiator_view(Pattern pattern, Phase phase, Direction dir,
                                         Performative perf) {
    bool opening = (phase == Phase::start);
    if (opening && dir != Direction::sent) return std::nullopt;
    if (!opening && dir != Direction::received) return std::nullopt;

    switch (pattern) {
        case Pattern::fipa_request:
            if (phase == Phase::start && perf == Performative::request)
                return Phase::awaiting_agreement;
            if (phase == Phase::awaiting_agreement && perf == Performative::agree)
                return Phase::agreed;
            if (phase == Phase::awaiting_agreement && perf == Performative::refuse)
                return Phase::terminal_refused;
            if (phase == Phase::agreed && perf == Performative::inform) return Phase::terminal_ok;
            if (phase == Phase::agreed && perf == Performative::failure)
                return Phase::terminal_failed;
            return std::nullopt;
        case Pattern::fipa_request_simplified:
            if (phase == Phase::start && perf == Performative::request)
                return Phase::awaiting_result;
            if (phase == Phase::awaiting_result && perf == Performative::inform)
                return Phase::terminal_ok;
            if (phase == Phase::awaiting_result && perf == Performative::failure)
                return Phase::terminal_failed;
            return std::nullopt;
        case Pattern::fipa_propose:
            if (phase == Phase::start && perf == Performative::propose)
                return Phase::awaiting_result;
            if (phase == Phase::awaiting_result && perf == Performative::accept_proposal)
                return Phase::terminal_ok;
            if (phase == Phase::awaiting_result && perf == Performative::reject_proposal)
                return Phase::terminal_refused;
            return std::nullopt;
    }
    return std::nullopt;
}

std::optional<Phase> step(Pattern pattern, Role role, Phase phase, Direction dir,
                          Performative perf) {
    Direction view = dir;
    if (role == Role::responder)
        view = (dir == Direction::sent) ? Direction::received : Direction::sent;
    return step_initiator_view(pattern, phase, view, perf);
}

}  // namespace

ConversationState advance(const ConversationState& state, Direction direction,
                          Performative performative) {
    if (state.terminal())
        fail(Errc::protocol_violation,
             std::string("terminal state absorbs nothing: ") + std::string(to_string(state.phase)));
    auto next = step(state.pattern, state.role, state.phase, direction, performative);
    if (!next)
        fail(Errc::protocol_violation,
             std::string(to_string(state.pattern)) + "/" + std::string(to_string(state.phase)) +
                 " rejects " + std::string(to_string(direction)) + " " +
                 std::string(to_string(performative)));
    ConversationState out = state;
    out.phase = *next;
    return out;
}

std::vector<std::pair<Direction, Performative>> legal_next(const ConversationState& state) {
    std::vector<std::pair<Direction, Performative>> out;
    if (state.terminal()) return out;
    for (Direction dir : {Direction::sent, Direction::received}) {
        for (int p = 0; p < 8; ++p) {
            auto perf = static_cast<Performative>(p);
            if (step(state.pattern, state.role, state.phase, dir, perf)) out.emplace_back(dir, perf);
        }
    }
    return out;
}

}  // namespace amp

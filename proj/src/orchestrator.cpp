#include "amp/orchestrator.hpp"

#include <random>

#include "amp/agent_host.hpp"
#include "amp/events.hpp"
#include "amp/interaction.hpp"
#include "amp/node.hpp"
#include "amp/push_transfer.hpp"

namespace amp {

std::string_view to_string(MigrationStatus s) {
    switch (s) {
        case MigrationStatus::succeeded: return "succeeded";
        case MigrationStatus::refused: return "refused";
        case MigrationStatus::failed: return "failed";
    }
    return "?";
}

namespace {

std::string random_session_id() {
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

/// Initiator-side session services; accumulates per-step byte counts.
class InitCtx : public ProtocolInitiatorContext {
public:
    InitCtx(Node& node, std::string session_id, std::string destination,
            AgentIdentifier peer, const AgentPackage& package, std::string step_name)
        : node_(node),
          session_id_(std::move(session_id)),
          destination_(std::move(destination)),
          peer_(std::move(peer)),
          package_(package),
          step_name_(std::move(step_name)) {}

    AclMessage make_message(Performative performative, std::string protocol,
                            std::string ontology, Content content) override {
        AclMessage msg;
        msg.performative = performative;
        msg.sender = node_.amm_identifier();
        msg.receiver = peer_;
        msg.conversation_id = session_id_;
        msg.protocol = std::move(protocol);
        msg.ontology = std::move(ontology);
        msg.reply_with = "m" + std::to_string(++reply_seq_);
        msg.content = std::move(content);
        return msg;
    }

    AclMessage request_reply(const AclMessage& msg) override {
        bytes_sent_ += node_.send_message(msg, destination_);
        auto reply = node_.await_reply(session_id_, node_.config().step_timeout, msg.protocol);
        if (!reply) fail(Errc::timeout, "no reply for " + msg.protocol);
        bytes_received_ += reply->second;
        return std::move(reply->first);
    }

    const AgentPackage& package() const override { return package_; }

    void note(const std::string& key, const std::string& value) override {
        Event e;
        e.type = "note";
        e.session = session_id_;
        e.step = step_name_;
        e.detail = key + "=" + value;
        node_.events().append(std::move(e));
    }

    std::uint64_t bytes_sent() const { return bytes_sent_; }
    std::uint64_t bytes_received() const { return bytes_received_; }

private:
    Node& node_;
    std::string session_id_;
    std::string destination_;
    AgentIdentifier peer_;
    const AgentPackage& package_;
    std::string step_name_;
    int reply_seq_ = 0;
    std::uint64_t bytes_sent_ = 0;
    std::uint64_t bytes_received_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------
// Initiator
// ---------------------------------------------------------------------------

Amm::Amm(Node& node) : node_(node) {}

std::string Amm::derive_clone_name(const AgentIdentifier& agent, const std::string& dest_platform) {
    std::string local = agent.local_name();
    std::string key = local + "@" + dest_platform;
    int k = clone_counters_[key] + 1;
    return local + "-clone-" + std::to_string(k) + "@" + dest_platform;
}

MigrationResult Amm::initiate_migration(const std::string& agent_name,
                                        const std::string& destination, bool clone,
                                        ProtocolLists lists) {
    AgentHost& host = node_.host();
    auto life = host.lifecycle(agent_name);
    if (!life) fail(Errc::agent_not_found, "no such agent: " + agent_name);
    if (*life != Lifecycle::active) fail(Errc::agent_not_active, "agent is not Active: " + agent_name);
    if (lists.transfer.empty())
        fail(Errc::validation_failed, "a migration needs at least one transfer protocol");

    // Freeze the agent. A move travels in Transit, a clone snapshots from
    // Suspended and keeps running at the source afterwards.
    if (clone)
        host.suspend_agent(agent_name);
    else
        host.begin_transit(agent_name);

    MigrationResult result;
    result.session_id = random_session_id();
    const std::string& session = result.session_id;

    auto restore_source = [&] {
        if (host.lifecycle(agent_name)) host.resume_agent(agent_name);
    };
    auto log_event = [&](std::string type, std::string step, std::string protocol,
                         std::uint64_t sent, std::uint64_t received, std::string detail) {
        Event e;
        e.type = std::move(type);
        e.session = session;
        e.step = std::move(step);
        e.protocol = std::move(protocol);
        e.bytes_sent = sent;
        e.bytes_received = received;
        e.detail = std::move(detail);
        node_.events().append(std::move(e));
    };

    AgentPackage package;
    AgentIdentifier agent_id;
    try {
        package = host.snapshot_agent(agent_name);
        for (auto& info : host.list())
            if (info.id.name == agent_name) agent_id = info.id;
    } catch (const std::exception& e) {
        restore_source();
        result.failed_step = "main";
        result.reason = e.what();
        return result;
    }

    MobileAgentDescription mad;
    mad.name = agent_id;
    mad.agent_profile = MobileAgentProfile{"amp-node", kToyFormatTag, std::nullopt};
    mad.pre_transfer = lists.pre;
    mad.transfer = lists.transfer;
    mad.post_transfer = lists.post;

    Node::ConversationGuard guard(node_, session);
    AgentIdentifier peer{"amm@" + node_.platform_name_of(destination).value_or(destination),
                         {destination}};

    auto fail_step = [&](const std::string& step, const std::string& protocol,
                         const std::string& reason, std::uint64_t sent, std::uint64_t received,
                         bool notify_peer) -> MigrationResult {
        log_event("step-failed", step, protocol, sent, received, reason);
        if (notify_peer) {
            // Best-effort abort so the responder can drop the session.
            try {
                AclMessage abort;
                abort.performative = Performative::failure;
                abort.sender = node_.amm_identifier();
                abort.receiver = peer;
                abort.conversation_id = session;
                abort.protocol = kMainMigrationProtocol;
                abort.ontology = kMigrationOntology;
                abort.content = make_error(reason);
                node_.send_message(abort, destination);
            } catch (const std::exception&) {
            }
        }
        restore_source();
        result.status = MigrationStatus::failed;
        result.failed_step = step;
        result.reason = reason;
        log_event("finalized", "", "", 0, 0, "status=failed");
        return result;
    };

    // -- Main protocol: request the move/clone -----------------------------
    ConversationState main_fsm{Pattern::fipa_request, Role::initiator, Phase::start, session};
    AclMessage main_reply;
    std::uint64_t main_sent = 0, main_received = 0;
    log_event("step-started", "main", kMainMigrationProtocol, 0, 0, "");
    try {
        AclMessage main_request;
        main_request.performative = Performative::request;
        main_request.sender = node_.amm_identifier();
        main_request.receiver = peer;
        main_request.conversation_id = session;
        main_request.protocol = kMainMigrationProtocol;
        main_request.ontology = kMigrationOntology;
        main_request.reply_with = "main-1";
        main_request.content = build_move_action(mad, clone);

        main_fsm = advance(main_fsm, Direction::sent, main_request.performative);
        main_sent = node_.send_message(main_request, destination);
        auto reply = node_.await_reply(session, node_.config().step_timeout, kMainMigrationProtocol);
        if (!reply) fail(Errc::timeout, "no reply to migration request");
        main_reply = std::move(reply->first);
        main_received = reply->second;
        main_fsm = advance(main_fsm, Direction::received, main_reply.performative);
    } catch (const std::exception& e) {
        return fail_step("main", kMainMigrationProtocol, e.what(), main_sent, main_received, false);
    }

    if (main_reply.performative == Performative::refuse) {
        log_event("step-failed", "main", kMainMigrationProtocol, main_sent, main_received,
                  main_reply.content.payload.has("reason")
                      ? main_reply.content.payload.get_string("reason")
                      : "refused");
        restore_source();
        result.status = MigrationStatus::refused;
        result.failed_step = "main";
        result.reason = main_reply.content.payload.has("reason")
                            ? main_reply.content.payload.get_string("reason")
                            : "refused";
        log_event("finalized", "", "", 0, 0, "status=refused");
        return result;
    }
    // The peer's agree tells us its real platform name.
    peer = main_reply.sender;
    peer.addresses = {destination};
    log_event("step-done", "main", kMainMigrationProtocol, main_sent, main_received, "agreed");

    // -- Pre-transfer, transfer, post-transfer steps -----------------------
    struct Leg {
        const char* step;
        const std::vector<std::string>* names;
        ProtocolStep kind;
    };
    Leg legs[] = {{"pre-transfer", &lists.pre, ProtocolStep::pre_transfer},
                  {"transfer", &lists.transfer, ProtocolStep::transfer},
                  {"post-transfer", &lists.post, ProtocolStep::post_transfer}};
    for (auto& leg : legs) {
        for (auto& name : *leg.names) {
            const ProtocolDescriptor* d = node_.registry().find(name, leg.kind);
            if (!d)
                return fail_step(leg.step, name, "protocol not registered locally: " + name, 0, 0,
                                 true);
            log_event("step-started", leg.step, name, 0, 0, "");
            InitCtx ctx(node_, session, destination, peer, package, leg.step);
            StepOutcome outcome;
            try {
                outcome = d->initiator(ctx);
            } catch (const std::exception& e) {
                outcome = StepOutcome::failed(e.what());
            }
            if (!outcome.ok)
                return fail_step(leg.step, name, outcome.reason, ctx.bytes_sent(),
                                 ctx.bytes_received(), true);
            log_event("step-done", leg.step, name, ctx.bytes_sent(), ctx.bytes_received(), "");
        }
    }

    // -- Registration ------------------------------------------------------
    std::string dest_platform = peer.platform_name();
    AgentIdentifier target_id;
    target_id.name =
        clone ? derive_clone_name(agent_id, dest_platform) : agent_id.local_name() + "@" + dest_platform;
    target_id.addresses = {destination};

    {
        log_event("step-started", "registration", kRegistrationProtocol, 0, 0, "");
        InitCtx ctx(node_, session, destination, peer, package, "registration");
        try {
            AclMessage req = ctx.make_message(Performative::request, kRegistrationProtocol,
                                              kMigrationOntology, build_register_action(target_id));
            AclMessage reply = ctx.request_reply(req);
            if (reply.performative == Performative::failure)
                return fail_step("registration", kRegistrationProtocol,
                                 reply.content.payload.get_string("reason"), ctx.bytes_sent(),
                                 ctx.bytes_received(), true);
            if (reply.performative != Performative::inform)
                fail(Errc::protocol_violation, "unexpected registration reply");
        } catch (const std::exception& e) {
            return fail_step("registration", kRegistrationProtocol, e.what(), ctx.bytes_sent(),
                             ctx.bytes_received(), true);
        }
        log_event("step-done", "registration", kRegistrationProtocol, ctx.bytes_sent(),
                  ctx.bytes_received(), "");
    }

    // -- Power-up ----------------------------------------------------------
    {
        log_event("step-started", "power-up", kPowerUpProtocol, 0, 0, "");
        InitCtx ctx(node_, session, destination, peer, package, "power-up");
        try {
            AclMessage req = ctx.make_message(Performative::request, kPowerUpProtocol,
                                              kMigrationOntology, build_power_up_action(target_id));
            AclMessage reply = ctx.request_reply(req);
            if (reply.performative == Performative::failure)
                return fail_step("power-up", kPowerUpProtocol,
                                 reply.content.payload.get_string("reason"), ctx.bytes_sent(),
                                 ctx.bytes_received(), true);
            if (reply.performative != Performative::inform)
                fail(Errc::protocol_violation, "unexpected power-up reply");
        } catch (const std::exception& e) {
            return fail_step("power-up", kPowerUpProtocol, e.what(), ctx.bytes_sent(),
                             ctx.bytes_received(), true);
        }
        log_event("step-done", "power-up", kPowerUpProtocol, ctx.bytes_sent(), ctx.bytes_received(),
                  "");
    }

    // -- Main protocol completion ------------------------------------------
    // The destination closes the session with the Main inform once the agent
    // runs there. The migration has already happened; a lost inform is
    // reported but does not roll anything back.
    auto final_reply = node_.await_reply(session, node_.config().step_timeout, kMainMigrationProtocol);
    if (final_reply) {
        try {
            main_fsm = advance(main_fsm, Direction::received, final_reply->first.performative);
        } catch (const std::exception&) {
        }
        if (final_reply->first.performative == Performative::failure)
            return fail_step("main", kMainMigrationProtocol,
                             final_reply->first.content.payload.get_string("reason"), 0,
                             final_reply->second, false);
    } else {
        result.final_inform_lost = true;
        log_event("note", "main", kMainMigrationProtocol, 0, 0, "final-inform=lost");
    }

    // -- Finalize ----------------------------------------------------------
    if (clone) {
        host.resume_agent(agent_name);
        clone_counters_[agent_id.local_name() + "@" + dest_platform] += 1;
    } else {
        host.kill_agent(agent_name);
    }
    result.status = MigrationStatus::succeeded;
    result.registered_name = target_id.name;
    log_event("finalized", "", "", 0, 0, "status=succeeded registered=" + target_id.name);
    return result;
}

// ---------------------------------------------------------------------------
// Responder
// ---------------------------------------------------------------------------

namespace {

/// Responder-side session services backed by the session record.
class RespCtx : public ProtocolResponderContext {
public:
    RespCtx(Node& node, std::optional<AgentPackage>& staged, std::any& state)
        : node_(node), staged_(staged), state_(state) {}

    void stage_package(AgentPackage package) override { staged_ = std::move(package); }
    CodeCache& code_cache() override { return node_.cache(); }
    std::any& protocol_state() override { return state_; }

private:
    Node& node_;
    std::optional<AgentPackage>& staged_;
    std::any& state_;
};

}  // namespace

namespace {

/// Replies from this platform's amm carry its real identity, so peers can
/// learn the platform name behind an address.
AclMessage amm_reply(Node& node, const AclMessage& original, Performative p, Content c) {
    AclMessage r = make_reply(original, p, std::move(c));
    r.sender = node.amm_identifier();
    return r;
}

}  // namespace

void Amm::on_message(const AclMessage& msg) {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(msg.conversation_id);
    if (it != sessions_.end()) {
        handle_session_message(it->second, msg);
        return;
    }
    handle_new_conversation(msg);
}

void Amm::handle_new_conversation(const AclMessage& msg) {
    if (msg.protocol == kDiscoveryProtocol && msg.performative == Performative::request) {
        handle_discovery_request(msg);
        return;
    }
    if (msg.protocol == kMainMigrationProtocol && msg.performative == Performative::request) {
        handle_migration_request(msg);
        return;
    }
    // Aborts for unknown sessions and other strays are dropped.
}

void Amm::handle_discovery_request(const AclMessage& msg) {
    try {
        auto parsed = parse_content(msg.content, msg.ontology);
        if (!std::holds_alternative<GetSupportedProtocolsAction>(parsed))
            fail(Errc::validation_failed, "expected get-supported-protocols");
        SupportedProtocols sp = node_.registry().supported_protocols();
        node_.send_message(
            amm_reply(node_, msg, Performative::inform, build_supported_protocols_predicate(sp)));
    } catch (const std::exception& e) {
        try {
            node_.send_message(amm_reply(node_, msg, Performative::failure, make_error(e.what())));
        } catch (const std::exception&) {
        }
    }
}

void Amm::handle_migration_request(const AclMessage& msg) {
    auto refuse = [&](const std::string& reason) {
        try {
            node_.send_message(amm_reply(node_, msg, Performative::refuse, make_error(reason)));
        } catch (const std::exception&) {
        }
    };

    MoveAction move;
    try {
        auto parsed = parse_content(msg.content, msg.ontology);
        auto* m = std::get_if<MoveAction>(&parsed);
        if (!m) fail(Errc::validation_failed, "expected a move or clone action");
        move = std::move(*m);
        move.description.check();
    } catch (const std::exception& e) {
        refuse(std::string("invalid-description: ") + e.what());
        return;
    }

    MissingProtocols missing = node_.registry().check_request_supported(move.description);
    if (!missing.ok()) {
        std::string names;
        for (auto& n : missing.names) names += (names.empty() ? "" : ",") + n;
        refuse("unsupported-protocols: " + names);
        return;
    }

    ResponderSession session;
    session.id = msg.conversation_id;
    session.clone = move.clone;
    session.mad = std::move(move.description);
    session.main_request = msg;
    sessions_[session.id] = std::move(session);
    try {
        node_.send_message(amm_reply(node_, msg, Performative::agree, make_done()));
    } catch (const std::exception&) {
        sessions_.erase(msg.conversation_id);
    }
}

void Amm::handle_session_message(ResponderSession& session, const AclMessage& msg) {
    if (msg.protocol == kMainMigrationProtocol) {
        if (msg.performative == Performative::failure) {
            // Initiator abort: undo everything done for this session.
            finish_session_failure(session.id, "aborted by initiator");
            return;
        }
        if (msg.performative == Performative::request) {
            try {
                node_.send_message(amm_reply(node_, msg, Performative::refuse,
                                          make_error("invalid-description: duplicate "
                                                     "conversation-id")));
            } catch (const std::exception&) {
            }
        }
        return;
    }
    if (msg.protocol == kRegistrationProtocol && msg.performative == Performative::request) {
        handle_register(session, msg);
        return;
    }
    if (msg.protocol == kPowerUpProtocol && msg.performative == Performative::request) {
        handle_power_up(session, msg);
        return;
    }

    // A step protocol from the request's lists.
    const ProtocolDescriptor* d = node_.registry().find(msg.protocol);
    if (!d || !d->responder) {
        try {
            node_.send_message(amm_reply(node_, msg, Performative::failure,
                                      make_error("unsupported-protocol: " + msg.protocol)));
        } catch (const std::exception&) {
        }
        return;
    }
    RespCtx ctx(node_, session.staged, session.protocol_state[msg.protocol]);
    std::optional<AclMessage> reply;
    try {
        reply = d->responder(ctx, msg);
    } catch (const std::exception& e) {
        reply = amm_reply(node_, msg, Performative::failure, make_error(e.what()));
    }
    if (reply) {
        reply->sender = node_.amm_identifier();
        try {
            node_.send_message(*reply);
        } catch (const std::exception&) {
        }
    }
}

void Amm::handle_register(ResponderSession& session, const AclMessage& msg) {
    auto failure = [&](const std::string& reason) {
        try {
            node_.send_message(amm_reply(node_, msg, Performative::failure, make_error(reason)));
        } catch (const std::exception&) {
        }
    };
    AgentIdentifier id;
    try {
        auto parsed = parse_content(msg.content, msg.ontology);
        auto* r = std::get_if<RegisterAction>(&parsed);
        if (!r) fail(Errc::validation_failed, "expected a register action");
        id = std::move(r->id);
    } catch (const std::exception& e) {
        failure(std::string("validation: ") + e.what());
        return;
    }
    if (!session.staged) {
        failure("no-staged-package");
        return;
    }
    if (node_.host().hosts(id.name)) {
        failure("name-collision");
        return;
    }
    try {
        node_.host().install_agent(*session.staged, id);
    } catch (const std::exception& e) {
        failure(std::string("rebuild-error: ") + e.what());
        return;
    }
    session.registered = true;
    session.registered_name = id.name;
    try {
        node_.send_message(amm_reply(node_, msg, Performative::inform, make_done()));
    } catch (const std::exception&) {
    }
}

void Amm::handle_power_up(ResponderSession& session, const AclMessage& msg) {
    auto failure = [&](const std::string& reason) {
        try {
            node_.send_message(amm_reply(node_, msg, Performative::failure, make_error(reason)));
        } catch (const std::exception&) {
        }
    };
    AgentIdentifier id;
    try {
        auto parsed = parse_content(msg.content, msg.ontology);
        auto* p = std::get_if<PowerUpAction>(&parsed);
        if (!p) fail(Errc::validation_failed, "expected a power-up action");
        id = std::move(p->id);
    } catch (const std::exception& e) {
        failure(std::string("validation: ") + e.what());
        return;
    }
    if (!session.registered || id.name != session.registered_name) {
        failure("not-registered");
        return;
    }
    try {
        node_.host().resume_agent(id.name);
    } catch (const std::exception& e) {
        std::string id_name = id.name;
        std::string session_id = session.id;
        failure(std::string("resume-error: ") + e.what());
        finish_session_failure(session_id, "power-up failed");
        return;
    }
    try {
        node_.send_message(amm_reply(node_, msg, Performative::inform, make_done()));
    } catch (const std::exception&) {
    }
    // Close the Main protocol: the agent now runs here.
    try {
        node_.send_message(
            amm_reply(node_, session.main_request, Performative::inform, make_done()));
    } catch (const std::exception&) {
    }
    sessions_.erase(session.id);
}

void Amm::finish_session_failure(const std::string& session_id, const std::string&) {
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) return;
    ResponderSession& session = it->second;
    if (session.registered && node_.host().hosts(session.registered_name)) {
        try {
            node_.host().kill_agent(session.registered_name);
        } catch (const std::exception&) {
        }
    }
    sessions_.erase(it);
}

}  // namespace amp

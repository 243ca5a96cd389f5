#include "amp/push_transfer.hpp"

#include <algorithm>
#include <fstream>

#include "amp/interaction.hpp"

namespace amp {

namespace fs = std::filesystem;

CodeCache::CodeCache(std::size_t capacity, std::optional<fs::path> persistence_path)
    : capacity_(capacity == 0 ? 1 : capacity), path_(std::move(persistence_path)) {
    if (path_) {
        fs::create_directories(*path_);
        load_persisted();
    }
}

void CodeCache::load_persisted() {
    for (auto& entry : fs::directory_iterator(*path_)) {
        if (!entry.is_regular_file()) continue;
        std::string name = entry.path().filename().string();
        if (!Cid::valid_format(name)) continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::string code((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (sha256_hex(code) != name) {
            fs::remove(entry.path());
            continue;
        }
        if (entries_.size() >= capacity_) break;
        entries_[name] = std::move(code);
        lru_.push_back(name);
    }
}

void CodeCache::touch(const std::string& value) {
    auto it = std::find(lru_.begin(), lru_.end(), value);
    if (it != lru_.end()) lru_.erase(it);
    lru_.push_front(value);
}

void CodeCache::evict_lru() {
    if (lru_.empty()) return;
    std::string victim = lru_.back();
    lru_.pop_back();
    entries_.erase(victim);
    if (path_) fs::remove(*path_ / victim);
}

void CodeCache::store(const Cid& cid, std::string_view code) {
    cid.check();
    if (compute_cid(code) != cid) fail(Errc::cid_mismatch, "code does not hash to " + cid.value);
    std::lock_guard lock(mu_);
    if (auto it = entries_.find(cid.value); it != entries_.end()) {
        touch(cid.value);  // idempotent re-store
        return;
    }
    entries_[cid.value] = std::string(code);
    if (path_) {
        std::ofstream out(*path_ / cid.value, std::ios::binary | std::ios::trunc);
        out.write(code.data(), static_cast<std::streamsize>(code.size()));
    }
    touch(cid.value);
    while (entries_.size() > capacity_) evict_lru();
}

std::optional<std::string> CodeCache::lookup(const Cid& cid) {
    std::lock_guard lock(mu_);
    auto it = entries_.find(cid.value);
    if (it == entries_.end()) return std::nullopt;
    if (path_) {
        // Persisted bytes are authoritative; verify on every hit.
        std::ifstream in(*path_ / cid.value, std::ios::binary);
        if (!in) {
            entries_.erase(it);
            lru_.remove(cid.value);
            return std::nullopt;
        }
        std::string code((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (sha256_hex(code) != cid.value) {
            entries_.erase(it);
            lru_.remove(cid.value);
            fs::remove(*path_ / cid.value);
            fail(Errc::corrupt_entry, "persisted entry no longer hashes to " + cid.value);
        }
        touch(cid.value);
        return code;
    }
    touch(cid.value);
    return it->second;
}

bool CodeCache::contains(const Cid& cid) {
    std::lock_guard lock(mu_);
    return entries_.count(cid.value) > 0;
}

std::vector<std::string> CodeCache::cids() const {
    std::lock_guard lock(mu_);
    std::vector<std::string> out;
    for (auto& [cid, _] : entries_) out.push_back(cid);
    return out;
}

std::size_t CodeCache::size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
}

// ---------------------------------------------------------------------------
// Protocol logic
// ---------------------------------------------------------------------------

NegotiateDecision decide_negotiate(const NegotiateFrame& frame, CodeCache& cache) {
    if (frame.cid && cache.contains(*frame.cid))
        return {NegotiateDecision::Kind::reject_have_code, ""};
    // Without a cid possession cannot be proven; request the code.
    return {NegotiateDecision::Kind::accept, ""};
}

TransferHandleResult handle_transfer_frame(const TransferFrame& frame, bool stage1_done,
                                           CodeCache& cache) {
    if (!stage1_done) return {false, "protocol-violation: transfer before negotiate", std::nullopt};
    if (frame.data.empty()) return {false, "validation: data must be non-empty", std::nullopt};

    std::string code;
    if (frame.code) {
        if (!frame.cid) return {false, "validation: code requires cid", std::nullopt};
        if (compute_cid(*frame.code) != *frame.cid) return {false, "cid-mismatch", std::nullopt};
        cache.store(*frame.cid, *frame.code);
        code = *frame.code;
    } else {
        if (!frame.cid) return {false, "unknown-cid", std::nullopt};
        std::optional<std::string> cached;
        try {
            cached = cache.lookup(*frame.cid);
        } catch (const Error&) {
            cached = std::nullopt;  // corrupt entry was evicted
        }
        if (!cached) return {false, "unknown-cid", std::nullopt};
        code = std::move(*cached);
    }

    AgentPackage package;
    package.code = std::move(code);
    package.data = frame.data;
    package.state = frame.state;
    package.cid = compute_cid(package.code);
    return {true, "", std::move(package)};
}

namespace {

struct PushResponderState {
    bool stage1_done = false;
};

StepOutcome run_initiator(ProtocolInitiatorContext& ctx) {
    const AgentPackage& pkg = ctx.package();

    // Stage 1: propose the cid, peer answers whether it needs the code.
    ConversationState fsm{Pattern::fipa_propose, Role::initiator, Phase::start, ""};
    AclMessage propose = ctx.make_message(Performative::propose, kPushTransferProtocol,
                                          kPushTransferOntology,
                                          build_negotiate_predicate(NegotiateFrame{pkg.cid}));
    AclMessage reply;
    try {
        fsm = advance(fsm, Direction::sent, propose.performative);
        reply = ctx.request_reply(propose);
        fsm = advance(fsm, Direction::received, reply.performative);
    } catch (const Error& e) {
        return StepOutcome::failed(e.what());
    }

    bool include_code = false;
    if (reply.performative == Performative::accept_proposal) {
        include_code = true;
        ctx.note("stage1", "accept-proposal");
    } else if (reply.content.kind == ContentKind::error) {
        ctx.note("stage1", "reject-proposal-error");
        return StepOutcome::failed(reply.content.payload.get_string("reason"));
    } else {
        ctx.note("stage1", "reject-proposal-empty");
    }

    // Stage 2: ship cid, data, optional code and state.
    TransferFrame tf;
    tf.cid = pkg.cid;
    if (include_code) tf.code = pkg.code;
    tf.data = pkg.data;
    tf.state = pkg.state;

    ConversationState fsm2{Pattern::fipa_request_simplified, Role::initiator, Phase::start, ""};
    AclMessage request = ctx.make_message(Performative::request, kPushTransferProtocol,
                                          kPushTransferOntology, build_transfer_action(tf));
    AclMessage result;
    try {
        fsm2 = advance(fsm2, Direction::sent, request.performative);
        result = ctx.request_reply(request);
        fsm2 = advance(fsm2, Direction::received, result.performative);
    } catch (const Error& e) {
        return StepOutcome::failed(e.what());
    }

    if (result.performative == Performative::failure)
        return StepOutcome::failed(result.content.payload.get_string("reason"));
    return StepOutcome::done();
}

std::optional<AclMessage> run_responder(ProtocolResponderContext& ctx, const AclMessage& msg,
                                        CodeCache& cache) {
    std::any& slot = ctx.protocol_state();
    if (!slot.has_value()) slot = PushResponderState{};
    auto& state = std::any_cast<PushResponderState&>(slot);

    if (msg.performative == Performative::propose) {
        NegotiateFrame nf;
        try {
            auto parsed = parse_content(msg.content, msg.ontology);
            nf = std::get<NegotiatePredicate>(parsed).frame;
        } catch (const std::exception& e) {
            return make_reply(msg, Performative::reject_proposal, make_error(e.what()));
        }
        NegotiateDecision decision = decide_negotiate(nf, cache);
        switch (decision.kind) {
            case NegotiateDecision::Kind::accept:
                state.stage1_done = true;
                return make_reply(msg, Performative::accept_proposal, make_done());
            case NegotiateDecision::Kind::reject_have_code:
                state.stage1_done = true;
                // Empty content: "have the code", not an error.
                return make_reply(msg, Performative::reject_proposal, make_done());
            case NegotiateDecision::Kind::reject_error:
                return make_reply(msg, Performative::reject_proposal,
                                  make_error(decision.error_reason));
        }
    }

    if (msg.performative == Performative::request) {
        TransferFrame tf;
        try {
            auto parsed = parse_content(msg.content, msg.ontology);
            tf = std::get<TransferAction>(parsed).frame;
        } catch (const std::exception& e) {
            return make_reply(msg, Performative::failure,
                              make_error(std::string("validation: ") + e.what()));
        }
        TransferHandleResult r = handle_transfer_frame(tf, state.stage1_done, cache);
        if (!r.ok) return make_reply(msg, Performative::failure, make_error(r.reason));
        ctx.stage_package(std::move(*r.package));
        return make_reply(msg, Performative::inform, make_done());
    }

    return make_reply(msg, Performative::failure,
                      make_error("protocol-violation: unexpected performative"));
}

}  // namespace

ProtocolDescriptor make_push_transfer_protocol(CodeCache& cache) {
    ProtocolDescriptor d;
    d.well_known_name = kPushTransferProtocol;
    d.step = ProtocolStep::transfer;
    d.initiator = run_initiator;
    d.responder = [&cache](ProtocolResponderContext& ctx, const AclMessage& msg) {
        return run_responder(ctx, msg, cache);
    };
    return d;
}

}  // namespace amp

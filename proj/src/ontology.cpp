#include "amp/ontology.hpp"

#include <algorithm>
#include <unordered_set>

namespace amp {

namespace {

enum class ParamType { str, str_set, bytes, frame };

struct ParamSpec {
    const char* name;
    ParamType type;
    bool mandatory;
    const char* frame_name = "";  // for ParamType::frame
};

struct FrameSpec {
    const char* ontology;
    const char* name;
    std::vector<ParamSpec> params;
};

struct ActionSpec {
    const char* ontology;
    const char* name;
    const char* domain_frame;  // "" = no argument
};

struct PredicateSpec {
    const char* ontology;
    const char* name;
    const char* domain_frame;
};

const std::vector<FrameSpec>& frame_specs() {
    static const std::vector<FrameSpec> specs = {
        {kMigrationOntology,
         "agent-identifier",
         {{"name", ParamType::str, true}, {"addresses", ParamType::str_set, false}}},
        {kMigrationOntology,
         "mobile-agent-profile",
         {{"system", ParamType::str, true},
          {"language", ParamType::str, true},
          {"os", ParamType::str, false}}},
        {kMigrationOntology,
         "mobile-agent-description",
         {{"name", ParamType::frame, true, "agent-identifier"},
          {"agent-profile", ParamType::frame, true, "mobile-agent-profile"},
          {"agent-version", ParamType::str, false},
          {"pre-transfer", ParamType::str_set, false},
          {"transfer", ParamType::str_set, true},
          {"post-transfer", ParamType::str_set, false}}},
        {kMigrationOntology,
         "supported-protocols",
         {{"pre-transfer", ParamType::str_set, false},
          {"transfer", ParamType::str_set, true},
          {"post-transfer", ParamType::str_set, false}}},
        {kPushTransferOntology, "push-transfer-protocol-negotiate", {{"cid", ParamType::str, false}}},
        {kPushTransferOntology,
         "push-transfer-protocol-transfer",
         {{"cid", ParamType::str, false},
          {"code", ParamType::bytes, false},
          {"data", ParamType::bytes, true},
          {"state", ParamType::bytes, false}}},
    };
    return specs;
}

const std::vector<ActionSpec>& action_specs() {
    static const std::vector<ActionSpec> specs = {
        {kMigrationOntology, kActionMove, "mobile-agent-description"},
        {kMigrationOntology, kActionClone, "mobile-agent-description"},
        {kMigrationOntology, kActionRegister, "agent-identifier"},
        {kMigrationOntology, kActionPowerUp, "agent-identifier"},
        {kMigrationOntology, kActionGetSupportedProtocols, ""},
        {kPushTransferOntology, kActionTransfer, "push-transfer-protocol-transfer"},
    };
    return specs;
}

const std::vector<PredicateSpec>& predicate_specs() {
    static const std::vector<PredicateSpec> specs = {
        {kPushTransferOntology, kPredicateNegotiate, "push-transfer-protocol-negotiate"},
        {kMigrationOntology, kPredicateSupportedProtocols, "supported-protocols"},
    };
    return specs;
}

bool known_ontology(std::string_view ontology) {
    return ontology == kMigrationOntology || ontology == kPushTransferOntology;
}

const FrameSpec* find_frame_spec(std::string_view ontology, std::string_view name) {
    for (auto& s : frame_specs())
        if (ontology == s.ontology && name == s.name) return &s;
    return nullptr;
}

const ActionSpec* find_action_spec(std::string_view name) {
    for (auto& s : action_specs())
        if (name == s.name) return &s;
    return nullptr;
}

const PredicateSpec* find_predicate_spec(std::string_view name) {
    for (auto& s : predicate_specs())
        if (name == s.name) return &s;
    return nullptr;
}

bool value_matches(const FrameValue& value, const ParamSpec& spec,
                   std::vector<std::string>& violations, const std::string& prefix);

void validate_against(const FrameSpec& spec, const Frame& payload,
                      std::vector<std::string>& violations, const std::string& prefix) {
    for (auto& p : spec.params) {
        const FrameValue* v = payload.find(p.name);
        if (!v) {
            if (p.mandatory) violations.push_back(prefix + p.name + ": mandatory parameter missing");
            continue;
        }
        value_matches(*v, p, violations, prefix);
    }
    for (auto& [key, value] : payload.fields()) {
        bool known = std::any_of(spec.params.begin(), spec.params.end(),
                                 [&](const ParamSpec& p) { return key == p.name; });
        if (!known) violations.push_back(prefix + key + ": unknown parameter");
    }
}

bool value_matches(const FrameValue& value, const ParamSpec& spec,
                   std::vector<std::string>& violations, const std::string& prefix) {
    switch (spec.type) {
        case ParamType::str:
            if (!std::holds_alternative<std::string>(value)) {
                violations.push_back(prefix + spec.name + ": expected a string");
                return false;
            }
            return true;
        case ParamType::bytes:
            if (!std::holds_alternative<std::string>(value)) {
                violations.push_back(prefix + spec.name + ": expected a base64 byte-stream");
                return false;
            }
            try {
                base64_decode(std::get<std::string>(value));
            } catch (const Error&) {
                violations.push_back(prefix + spec.name + ": invalid base64 byte-stream");
                return false;
            }
            return true;
        case ParamType::str_set:
            if (!std::holds_alternative<std::vector<std::string>>(value)) {
                violations.push_back(prefix + spec.name + ": expected a set of strings");
                return false;
            }
            return true;
        case ParamType::frame: {
            if (!std::holds_alternative<Frame>(value)) {
                violations.push_back(prefix + spec.name + ": expected a frame");
                return false;
            }
            // Nested frames resolve by name across the whole registry.
            for (auto& s : frame_specs()) {
                if (std::string_view(spec.frame_name) == s.name) {
                    validate_against(s, std::get<Frame>(value), violations,
                                     prefix + spec.name + ".");
                    return true;
                }
            }
            violations.push_back(prefix + spec.name + ": unknown nested frame");
            return false;
        }
    }
    return false;
}

void require_no_duplicates(const std::vector<std::string>& names, const char* list_name) {
    std::unordered_set<std::string_view> seen;
    for (auto& n : names)
        if (!seen.insert(n).second)
            fail(Errc::validation_failed,
                 std::string("duplicate protocol name in ") + list_name + ": " + n);
}

void set_optional_list(Frame& f, const char* key, const std::vector<std::string>& values) {
    if (!values.empty()) f.set(key, values);
}

std::vector<std::string> get_optional_list(const Frame& f, const char* key) {
    if (const FrameValue* v = f.find(key); v && std::holds_alternative<std::vector<std::string>>(*v))
        return std::get<std::vector<std::string>>(*v);
    return {};
}

Frame identifier_to_frame(const AgentIdentifier& id) {
    Frame f;
    f.set("name", id.name);
    set_optional_list(f, "addresses", id.addresses);
    return f;
}

AgentIdentifier identifier_from_frame(const Frame& f) {
    AgentIdentifier id;
    id.name = f.get_string("name");
    id.addresses = get_optional_list(f, "addresses");
    try {
        id.check();
    } catch (const Error& e) {
        throw Error(Errc::validation_failed, e.what());
    }
    return id;
}

void ensure_valid(std::string_view ontology, std::string_view frame_name, const Frame& payload) {
    ValidationResult r = validate_frame(ontology, frame_name, payload);
    if (!r.ok()) {
        std::string msg;
        for (auto& v : r.violations) {
            if (!msg.empty()) msg += "; ";
            msg += v;
        }
        fail(Errc::validation_failed, std::string(frame_name) + ": " + msg);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Typed frames
// ---------------------------------------------------------------------------

void MobileAgentProfile::check() const {
    if (system.empty() || language.empty())
        fail(Errc::validation_failed, "mobile-agent-profile requires system and language");
}

Frame MobileAgentProfile::to_frame() const {
    check();
    Frame f;
    f.set("system", system);
    f.set("language", language);
    if (os) f.set("os", *os);
    return f;
}

MobileAgentProfile MobileAgentProfile::from_frame(const Frame& f) {
    ensure_valid(kMigrationOntology, "mobile-agent-profile", f);
    MobileAgentProfile p;
    p.system = f.get_string("system");
    p.language = f.get_string("language");
    if (f.has("os")) p.os = f.get_string("os");
    p.check();
    return p;
}

void MobileAgentDescription::check() const {
    name.check();
    agent_profile.check();
    if (transfer.empty())
        fail(Errc::validation_failed, "transfer: mandatory parameter missing or empty");
    require_no_duplicates(pre_transfer, "pre-transfer");
    require_no_duplicates(transfer, "transfer");
    require_no_duplicates(post_transfer, "post-transfer");
}

Frame MobileAgentDescription::to_frame() const {
    check();
    Frame f;
    f.set("name", identifier_to_frame(name));
    f.set("agent-profile", agent_profile.to_frame());
    if (agent_version) f.set("agent-version", *agent_version);
    set_optional_list(f, "pre-transfer", pre_transfer);
    f.set("transfer", transfer);
    set_optional_list(f, "post-transfer", post_transfer);
    return f;
}

MobileAgentDescription MobileAgentDescription::from_frame(const Frame& f) {
    ensure_valid(kMigrationOntology, "mobile-agent-description", f);
    MobileAgentDescription mad;
    mad.name = identifier_from_frame(f.get_frame("name"));
    mad.agent_profile = MobileAgentProfile::from_frame(f.get_frame("agent-profile"));
    if (f.has("agent-version")) mad.agent_version = f.get_string("agent-version");
    mad.pre_transfer = get_optional_list(f, "pre-transfer");
    mad.transfer = f.get_list("transfer");
    mad.post_transfer = get_optional_list(f, "post-transfer");
    mad.check();
    return mad;
}

void SupportedProtocols::check() const {
    if (transfer.empty()) fail(Errc::validation_failed, "supported-protocols requires a non-empty transfer list");
    require_no_duplicates(pre_transfer, "pre-transfer");
    require_no_duplicates(transfer, "transfer");
    require_no_duplicates(post_transfer, "post-transfer");
}

Frame SupportedProtocols::to_frame() const {
    check();
    Frame f;
    set_optional_list(f, "pre-transfer", pre_transfer);
    f.set("transfer", transfer);
    set_optional_list(f, "post-transfer", post_transfer);
    return f;
}

SupportedProtocols SupportedProtocols::from_frame(const Frame& f) {
    ensure_valid(kMigrationOntology, "supported-protocols", f);
    SupportedProtocols sp;
    sp.pre_transfer = get_optional_list(f, "pre-transfer");
    sp.transfer = f.get_list("transfer");
    sp.post_transfer = get_optional_list(f, "post-transfer");
    sp.check();
    return sp;
}

void NegotiateFrame::check() const {
    if (cid) cid->check();
}

Frame NegotiateFrame::to_frame() const {
    check();
    Frame f;
    if (cid) f.set("cid", cid->value);
    return f;
}

NegotiateFrame NegotiateFrame::from_frame(const Frame& f) {
    ensure_valid(kPushTransferOntology, "push-transfer-protocol-negotiate", f);
    NegotiateFrame n;
    if (f.has("cid")) n.cid = Cid{f.get_string("cid")};
    n.check();
    return n;
}

void TransferFrame::check() const {
    if (cid) cid->check();
    if (code) {
        if (!cid) fail(Errc::validation_failed, "code present requires cid");
        if (*cid != compute_cid(*code))
            fail(Errc::validation_failed, "cid does not match code digest");
    }
}

Frame TransferFrame::to_frame() const {
    check();
    Frame f;
    if (cid) f.set("cid", cid->value);
    if (code) f.set_bytes("code", *code);
    f.set_bytes("data", data);
    if (state) f.set_bytes("state", *state);
    return f;
}

TransferFrame TransferFrame::from_frame(const Frame& f) {
    ensure_valid(kPushTransferOntology, "push-transfer-protocol-transfer", f);
    TransferFrame t;
    if (f.has("cid")) t.cid = Cid{f.get_string("cid")};
    if (f.has("code")) t.code = f.get_bytes("code");
    t.data = f.get_bytes("data");
    if (f.has("state")) t.state = f.get_bytes("state");
    // Structural invariants only; the hash itself is verified by the
    // transfer handler so a mismatch surfaces as cid-mismatch, not as a
    // parse error.
    if (t.cid) t.cid->check();
    if (t.code && !t.cid) fail(Errc::validation_failed, "code present requires cid");
    return t;
}

// ---------------------------------------------------------------------------
// Registry surface
// ---------------------------------------------------------------------------

ValidationResult validate_frame(std::string_view ontology, std::string_view frame_name,
                                const Frame& payload) {
    if (!known_ontology(ontology)) fail(Errc::unknown_ontology, std::string(ontology));
    const FrameSpec* spec = find_frame_spec(ontology, frame_name);
    if (!spec) fail(Errc::unknown_frame, std::string(frame_name));
    ValidationResult r;
    validate_against(*spec, payload, r.violations, "");
    return r;
}

std::vector<std::string> registered_frames(std::string_view ontology) {
    if (!known_ontology(ontology)) fail(Errc::unknown_ontology, std::string(ontology));
    std::vector<std::string> out;
    for (auto& s : frame_specs())
        if (ontology == s.ontology) out.push_back(s.name);
    return out;
}

std::vector<std::string> registered_actions(std::string_view ontology) {
    if (!known_ontology(ontology)) fail(Errc::unknown_ontology, std::string(ontology));
    std::vector<std::string> out;
    for (auto& s : action_specs())
        if (ontology == s.ontology) out.push_back(s.name);
    return out;
}

std::vector<std::string> registered_predicates(std::string_view ontology) {
    if (!known_ontology(ontology)) fail(Errc::unknown_ontology, std::string(ontology));
    std::vector<std::string> out;
    for (auto& s : predicate_specs())
        if (ontology == s.ontology) out.push_back(s.name);
    return out;
}

std::string ontology_of_action(std::string_view action_name) {
    if (const ActionSpec* s = find_action_spec(action_name)) return s->ontology;
    if (const PredicateSpec* s = find_predicate_spec(action_name)) return s->ontology;
    return "";
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

namespace {

Content checked_action(const char* name, Frame payload) {
    return Content{ContentKind::action, std::string(name), std::move(payload)};
}

}  // namespace

Content build_move_action(const MobileAgentDescription& mad, bool clone) {
    try {
        return checked_action(clone ? kActionClone : kActionMove, mad.to_frame());
    } catch (const Error& e) {
        throw Error(Errc::domain_mismatch, e.what());
    }
}

Content build_register_action(const AgentIdentifier& id) {
    try {
        id.check();
        return checked_action(kActionRegister, identifier_to_frame(id));
    } catch (const Error& e) {
        throw Error(Errc::domain_mismatch, e.what());
    }
}

Content build_power_up_action(const AgentIdentifier& id) {
    try {
        id.check();
        return checked_action(kActionPowerUp, identifier_to_frame(id));
    } catch (const Error& e) {
        throw Error(Errc::domain_mismatch, e.what());
    }
}

Content build_get_supported_protocols_action() {
    return checked_action(kActionGetSupportedProtocols, Frame{});
}

Content build_transfer_action(const TransferFrame& frame) {
    try {
        return checked_action(kActionTransfer, frame.to_frame());
    } catch (const Error& e) {
        throw Error(Errc::domain_mismatch, e.what());
    }
}

Content build_negotiate_predicate(const NegotiateFrame& frame) {
    try {
        return Content{ContentKind::predicate, kPredicateNegotiate, frame.to_frame()};
    } catch (const Error& e) {
        throw Error(Errc::domain_mismatch, e.what());
    }
}

Content build_supported_protocols_predicate(const SupportedProtocols& protocols) {
    try {
        return Content{ContentKind::predicate, kPredicateSupportedProtocols, protocols.to_frame()};
    } catch (const Error& e) {
        throw Error(Errc::domain_mismatch, e.what());
    }
}

namespace {

// Re-parse the payload through the typed layer so the generic builders
// enforce the same invariants as the typed ones.
void check_domain(const char* domain_frame, const Frame& payload) {
    std::string_view name(domain_frame);
    if (name.empty()) {
        if (!payload.empty()) fail(Errc::domain_mismatch, "action takes no argument");
        return;
    }
    try {
        if (name == "mobile-agent-description")
            MobileAgentDescription::from_frame(payload);
        else if (name == "agent-identifier")
            identifier_from_frame(payload);
        else if (name == "mobile-agent-profile")
            MobileAgentProfile::from_frame(payload);
        else if (name == "supported-protocols")
            SupportedProtocols::from_frame(payload);
        else if (name == "push-transfer-protocol-negotiate")
            NegotiateFrame::from_frame(payload);
        else if (name == "push-transfer-protocol-transfer")
            TransferFrame::from_frame(payload).check();
    } catch (const Error& e) {
        throw Error(Errc::domain_mismatch, e.what());
    }
}

}  // namespace

Content build_action(std::string_view action_name, const Frame& payload) {
    const ActionSpec* spec = find_action_spec(action_name);
    if (!spec) fail(Errc::unknown_frame, "unknown action: " + std::string(action_name));
    check_domain(spec->domain_frame, payload);
    return Content{ContentKind::action, std::string(action_name), payload};
}

Content build_predicate(std::string_view predicate_name, const Frame& payload) {
    const PredicateSpec* spec = find_predicate_spec(predicate_name);
    if (!spec) fail(Errc::unknown_frame, "unknown predicate: " + std::string(predicate_name));
    check_domain(spec->domain_frame, payload);
    return Content{ContentKind::predicate, std::string(predicate_name), payload};
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

ParsedContent parse_content(const Content& content, std::string_view ontology) {
    if (content.kind == ContentKind::done || content.kind == ContentKind::error)
        return UntypedContent{content};
    if (!known_ontology(ontology)) fail(Errc::unknown_ontology, std::string(ontology));
    if (!content.name) fail(Errc::validation_failed, "action/predicate content requires a name");
    const std::string& name = *content.name;

    if (content.kind == ContentKind::action) {
        const ActionSpec* spec = find_action_spec(name);
        if (!spec || ontology != spec->ontology) fail(Errc::unknown_frame, "unknown action: " + name);
        if (name == kActionMove || name == kActionClone)
            return MoveAction{name == kActionClone,
                              MobileAgentDescription::from_frame(content.payload)};
        if (name == kActionRegister) return RegisterAction{identifier_from_frame(content.payload)};
        if (name == kActionPowerUp) return PowerUpAction{identifier_from_frame(content.payload)};
        if (name == kActionGetSupportedProtocols) {
            if (!content.payload.empty())
                fail(Errc::validation_failed, "get-supported-protocols takes no argument");
            return GetSupportedProtocolsAction{};
        }
        if (name == kActionTransfer) return TransferAction{TransferFrame::from_frame(content.payload)};
    }

    // predicate and result both carry a named frame.
    const PredicateSpec* spec = find_predicate_spec(name);
    if (!spec || ontology != spec->ontology) fail(Errc::unknown_frame, "unknown predicate: " + name);
    if (name == kPredicateNegotiate) return NegotiatePredicate{NegotiateFrame::from_frame(content.payload)};
    return SupportedProtocolsPredicate{SupportedProtocols::from_frame(content.payload)};
}

}  // namespace amp

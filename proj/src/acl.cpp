#include "amp/acl.hpp"

#include <json.hpp>

namespace amp {

using ordered_json = nlohmann::ordered_json;

std::string AgentIdentifier::local_name() const {
    auto at = name.find('@');
    return at == std::string::npos ? name : name.substr(0, at);
}

std::string AgentIdentifier::platform_name() const {
    auto at = name.find('@');
    return at == std::string::npos ? std::string() : name.substr(at + 1);
}

void AgentIdentifier::check() const {
    auto first = name.find('@');
    if (first == std::string::npos || name.find('@', first + 1) != std::string::npos)
        fail(Errc::invariant_violation, "agent name must contain exactly one '@': " + name);
    if (first == 0 || first + 1 == name.size())
        fail(Errc::invariant_violation, "agent name halves must be non-empty: " + name);
}

std::string_view to_string(Performative p) {
    switch (p) {
        case Performative::request: return "request";
        case Performative::agree: return "agree";
        case Performative::refuse: return "refuse";
        case Performative::inform: return "inform";
        case Performative::failure: return "failure";
        case Performative::propose: return "propose";
        case Performative::accept_proposal: return "accept-proposal";
        case Performative::reject_proposal: return "reject-proposal";
    }
    return "?";
}

std::optional<Performative> performative_from_string(std::string_view s) {
    static const std::pair<std::string_view, Performative> table[] = {
        {"request", Performative::request},
        {"agree", Performative::agree},
        {"refuse", Performative::refuse},
        {"inform", Performative::inform},
        {"failure", Performative::failure},
        {"propose", Performative::propose},
        {"accept-proposal", Performative::accept_proposal},
        {"reject-proposal", Performative::reject_proposal},
    };
    for (auto& [k, v] : table)
        if (k == s) return v;
    return std::nullopt;
}

std::string_view to_string(ContentKind k) {
    switch (k) {
        case ContentKind::action: return "action";
        case ContentKind::predicate: return "predicate";
        case ContentKind::done: return "done";
        case ContentKind::result: return "result";
        case ContentKind::error: return "error";
    }
    return "?";
}

std::optional<ContentKind> content_kind_from_string(std::string_view s) {
    static const std::pair<std::string_view, ContentKind> table[] = {
        {"action", ContentKind::action}, {"predicate", ContentKind::predicate},
        {"done", ContentKind::done},     {"result", ContentKind::result},
        {"error", ContentKind::error},
    };
    for (auto& [k, v] : table)
        if (k == s) return v;
    return std::nullopt;
}

Frame& Frame::set(std::string key, std::string value) {
    fields_.emplace_back(std::move(key), FrameValue(std::move(value)));
    return *this;
}

Frame& Frame::set(std::string key, std::vector<std::string> values) {
    fields_.emplace_back(std::move(key), FrameValue(std::move(values)));
    return *this;
}

Frame& Frame::set(std::string key, Frame nested) {
    fields_.emplace_back(std::move(key), FrameValue(std::move(nested)));
    return *this;
}

Frame& Frame::set_bytes(std::string key, std::string_view bytes) {
    return set(std::move(key), base64_encode(bytes));
}

bool Frame::has(std::string_view key) const { return find(key) != nullptr; }

const FrameValue* Frame::find(std::string_view key) const {
    for (auto& [k, v] : fields_)
        if (k == key) return &v;
    return nullptr;
}

const std::string& Frame::get_string(std::string_view key) const {
    const FrameValue* v = find(key);
    if (!v || !std::holds_alternative<std::string>(*v))
        fail(Errc::validation_failed, "missing string parameter: " + std::string(key));
    return std::get<std::string>(*v);
}

const std::vector<std::string>& Frame::get_list(std::string_view key) const {
    const FrameValue* v = find(key);
    if (!v || !std::holds_alternative<std::vector<std::string>>(*v))
        fail(Errc::validation_failed, "missing list parameter: " + std::string(key));
    return std::get<std::vector<std::string>>(*v);
}

const Frame& Frame::get_frame(std::string_view key) const {
    const FrameValue* v = find(key);
    if (!v || !std::holds_alternative<Frame>(*v))
        fail(Errc::validation_failed, "missing frame parameter: " + std::string(key));
    return std::get<Frame>(*v);
}

std::string Frame::get_bytes(std::string_view key) const { return base64_decode(get_string(key)); }

Content make_done() { return Content{ContentKind::done, std::nullopt, Frame{}}; }

Content make_error(std::string reason) {
    Frame payload;
    payload.set("reason", std::move(reason));
    return Content{ContentKind::error, std::nullopt, std::move(payload)};
}

Content make_result(std::string name, Frame payload) {
    return Content{ContentKind::result, std::move(name), std::move(payload)};
}

void AclMessage::check() const {
    sender.check();
    receiver.check();
    if (conversation_id.empty()) fail(Errc::invariant_violation, "conversation-id must be non-empty");
    if ((content.kind == ContentKind::action || content.kind == ContentKind::predicate) &&
        !content.name)
        fail(Errc::invariant_violation, "action/predicate content requires a name");
    if (content.kind == ContentKind::error) {
        const FrameValue* v = content.payload.find("reason");
        if (!v || !std::holds_alternative<std::string>(*v) || std::get<std::string>(*v).empty())
            fail(Errc::invariant_violation, "error content requires a non-empty reason");
    }
}

namespace {

ordered_json frame_to_json(const Frame& frame) {
    ordered_json j = ordered_json::object();
    for (auto& [key, value] : frame.fields()) {
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Frame>)
                    j[key] = frame_to_json(v);
                else
                    j[key] = v;
            },
            value);
    }
    return j;
}

Frame frame_from_json(const ordered_json& j) {
    if (!j.is_object()) fail(Errc::malformed_encoding, "frame must be an object");
    Frame frame;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const ordered_json& v = it.value();
        if (v.is_string()) {
            frame.set(it.key(), v.get<std::string>());
        } else if (v.is_array()) {
            std::vector<std::string> items;
            for (auto& e : v) {
                if (!e.is_string()) fail(Errc::malformed_encoding, "frame lists hold strings only");
                items.push_back(e.get<std::string>());
            }
            frame.set(it.key(), std::move(items));
        } else if (v.is_object()) {
            frame.set(it.key(), frame_from_json(v));
        } else {
            fail(Errc::malformed_encoding, "unsupported frame value type");
        }
    }
    return frame;
}

ordered_json identifier_to_json(const AgentIdentifier& id) {
    ordered_json j = ordered_json::object();
    j["name"] = id.name;
    j["addresses"] = id.addresses;
    return j;
}

AgentIdentifier identifier_from_json(const ordered_json& j) {
    if (!j.is_object() || !j.contains("name") || !j["name"].is_string() ||
        !j.contains("addresses") || !j["addresses"].is_array())
        fail(Errc::malformed_encoding, "agent identifier must carry name and addresses");
    AgentIdentifier id;
    id.name = j["name"].get<std::string>();
    for (auto& a : j["addresses"]) {
        if (!a.is_string()) fail(Errc::malformed_encoding, "addresses hold strings only");
        id.addresses.push_back(a.get<std::string>());
    }
    return id;
}

std::string encode_unchecked(const AclMessage& msg) {
    ordered_json j = ordered_json::object();
    j["performative"] = to_string(msg.performative);
    j["sender"] = identifier_to_json(msg.sender);
    j["receiver"] = identifier_to_json(msg.receiver);
    j["conversation-id"] = msg.conversation_id;
    j["protocol"] = msg.protocol;
    j["ontology"] = msg.ontology;
    if (msg.reply_with) j["reply-with"] = *msg.reply_with;
    if (msg.in_reply_to) j["in-reply-to"] = *msg.in_reply_to;
    ordered_json content = ordered_json::object();
    content["kind"] = to_string(msg.content.kind);
    if (msg.content.name) content["name"] = *msg.content.name;
    content["payload"] = frame_to_json(msg.content.payload);
    j["content"] = content;
    return j.dump();
}

}  // namespace

std::string encode_message(const AclMessage& msg) {
    try {
        msg.check();
    } catch (const Error& e) {
        throw Error(Errc::invalid_message, e.what());
    }
    return encode_unchecked(msg);
}

AclMessage decode_message(std::string_view bytes) {
    ordered_json j = ordered_json::parse(bytes, nullptr, false);
    if (j.is_discarded() || !j.is_object()) fail(Errc::malformed_encoding, "not a JSON object");

    if (!j.contains("performative") || !j["performative"].is_string())
        fail(Errc::malformed_encoding, "missing performative");
    auto perf = performative_from_string(j["performative"].get<std::string>());
    if (!perf)
        fail(Errc::unknown_performative,
             "unknown performative: " + j["performative"].get<std::string>());

    for (const char* key : {"sender", "receiver", "conversation-id", "protocol", "ontology", "content"})
        if (!j.contains(key)) fail(Errc::malformed_encoding, std::string("missing field: ") + key);

    AclMessage msg;
    msg.performative = *perf;
    msg.sender = identifier_from_json(j["sender"]);
    msg.receiver = identifier_from_json(j["receiver"]);
    for (const char* key : {"conversation-id", "protocol", "ontology"})
        if (!j[key].is_string()) fail(Errc::malformed_encoding, std::string("field must be a string: ") + key);
    msg.conversation_id = j["conversation-id"].get<std::string>();
    msg.protocol = j["protocol"].get<std::string>();
    msg.ontology = j["ontology"].get<std::string>();
    if (j.contains("reply-with")) {
        if (!j["reply-with"].is_string()) fail(Errc::malformed_encoding, "reply-with must be a string");
        msg.reply_with = j["reply-with"].get<std::string>();
    }
    if (j.contains("in-reply-to")) {
        if (!j["in-reply-to"].is_string()) fail(Errc::malformed_encoding, "in-reply-to must be a string");
        msg.in_reply_to = j["in-reply-to"].get<std::string>();
    }

    const ordered_json& content = j["content"];
    if (!content.is_object() || !content.contains("kind") || !content["kind"].is_string() ||
        !content.contains("payload"))
        fail(Errc::malformed_encoding, "content must carry kind and payload");
    auto kind = content_kind_from_string(content["kind"].get<std::string>());
    if (!kind) fail(Errc::malformed_encoding, "unknown content kind");
    msg.content.kind = *kind;
    if (content.contains("name")) {
        if (!content["name"].is_string()) fail(Errc::malformed_encoding, "content name must be a string");
        msg.content.name = content["name"].get<std::string>();
    }
    msg.content.payload = frame_from_json(content["payload"]);

    msg.check();

    // Only canonical input is accepted: the unique message whose encoding
    // equals the input byte-for-byte.
    if (encode_unchecked(msg) != bytes) fail(Errc::malformed_encoding, "non-canonical encoding");
    return msg;
}

AclMessage make_reply(const AclMessage& original, Performative performative, Content content) {
    AclMessage reply;
    reply.performative = performative;
    reply.sender = original.receiver;
    reply.receiver = original.sender;
    reply.conversation_id = original.conversation_id;
    reply.protocol = original.protocol;
    reply.ontology = original.ontology;
    reply.in_reply_to = original.reply_with;
    reply.content = std::move(content);
    return reply;
}

}  // namespace amp

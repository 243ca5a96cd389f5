#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "amp/base64.hpp"
#include "amp/errors.hpp"

namespace amp {

/// FIPA-style agent name: "localname@platform-name" plus transport addresses.
struct AgentIdentifier {
    std::string name;
    std::vector<std::string> addresses;

    std::string local_name() const;
    std::string platform_name() const;

    // name contains exactly one '@', both halves non-empty.
    void check() const;

    bool operator==(const AgentIdentifier&) const = default;
};

enum class Performative {
    request,
    agree,
    refuse,
    inform,
    failure,
    propose,
    accept_proposal,
    reject_proposal,
};

std::string_view to_string(Performative p);
std::optional<Performative> performative_from_string(std::string_view s);

class Frame;

/// Frame values: strings, string-sets (order-preserving lists) and nested
/// frames. Byte-streams travel base64-encoded in a string value; see
/// Frame::set_bytes / Frame::get_bytes.
using FrameValue = std::variant<std::string, std::vector<std::string>, Frame>;

/// Ordered key -> value record; field order is preserved and significant
/// for the canonical encoding.
class Frame {
public:
    Frame() = default;

    Frame& set(std::string key, std::string value);
    Frame& set(std::string key, std::vector<std::string> values);
    Frame& set(std::string key, Frame nested);
    Frame& set_bytes(std::string key, std::string_view bytes);

    bool has(std::string_view key) const;
    const FrameValue* find(std::string_view key) const;

    const std::string& get_string(std::string_view key) const;
    const std::vector<std::string>& get_list(std::string_view key) const;
    const Frame& get_frame(std::string_view key) const;
    std::string get_bytes(std::string_view key) const;

    const std::vector<std::pair<std::string, FrameValue>>& fields() const { return fields_; }
    bool empty() const { return fields_.empty(); }

    bool operator==(const Frame&) const = default;

private:
    std::vector<std::pair<std::string, FrameValue>> fields_;
};

enum class ContentKind { action, predicate, done, result, error };

std::string_view to_string(ContentKind k);
std::optional<ContentKind> content_kind_from_string(std::string_view s);

struct Content {
    ContentKind kind = ContentKind::done;
    std::optional<std::string> name;
    Frame payload;

    bool operator==(const Content&) const = default;
};

Content make_done();
Content make_error(std::string reason);
Content make_result(std::string name, Frame payload);

struct AclMessage {
    Performative performative = Performative::request;
    AgentIdentifier sender;
    AgentIdentifier receiver;
    std::string conversation_id;
    std::string protocol;
    std::string ontology;
    std::optional<std::string> reply_with;
    std::optional<std::string> in_reply_to;
    Content content;

    void check() const;

    bool operator==(const AclMessage&) const = default;
};

/// Canonical encoding: UTF-8 JSON object, declared field order, absent
/// optionals omitted, no insignificant whitespace. Same message always
/// yields identical bytes.
std::string encode_message(const AclMessage& msg);

/// Inverse of encode_message; only accepts canonical input.
AclMessage decode_message(std::string_view bytes);

/// Swap endpoints, keep conversation/protocol/ontology, correlate via
/// reply-with -> in-reply-to.
AclMessage make_reply(const AclMessage& original, Performative performative, Content content);

}  // namespace amp

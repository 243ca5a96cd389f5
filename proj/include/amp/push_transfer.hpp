#pragma once

#include <filesystem>
#include <list>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "amp/ontology.hpp"
#include "amp/package.hpp"
#include "amp/registry.hpp"

namespace amp {

/// Content-addressed agent code store with LRU eviction and optional
/// one-file-per-cid directory persistence. Stores verify cid = digest(code);
/// lookups re-verify persisted bytes and evict corrupt entries.
class CodeCache {
public:
    explicit CodeCache(std::size_t capacity = 128,
                       std::optional<std::filesystem::path> persistence_path = std::nullopt);

    void store(const Cid& cid, std::string_view code);       // CidMismatch
    std::optional<std::string> lookup(const Cid& cid);        // CorruptEntry
    bool contains(const Cid& cid);
    std::vector<std::string> cids() const;
    std::size_t size() const;

private:
    void touch(const std::string& value);
    void evict_lru();
    void load_persisted();

    std::size_t capacity_;
    std::optional<std::filesystem::path> path_;
    mutable std::mutex mu_;
    std::map<std::string, std::string> entries_;  // cid -> code
    std::list<std::string> lru_;                  // front = most recent
};

/// Stage-1 responder decision for a negotiate predicate.
struct NegotiateDecision {
    enum class Kind { accept, reject_have_code, reject_error } kind;
    std::string error_reason;
};

NegotiateDecision decide_negotiate(const NegotiateFrame& frame, CodeCache& cache);

/// Stage-2 responder result for a transfer action.
struct TransferHandleResult {
    bool ok = false;
    std::string reason;                    // cid-mismatch | unknown-cid | validation...
    std::optional<AgentPackage> package;   // staged for the registration step
};

TransferHandleResult handle_transfer_frame(const TransferFrame& frame, bool stage1_done,
                                           CodeCache& cache);

/// The push transfer protocol, wired to a node's code cache.
ProtocolDescriptor make_push_transfer_protocol(CodeCache& cache);

}  // namespace amp

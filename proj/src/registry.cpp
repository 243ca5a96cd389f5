#include "amp/registry.hpp"

#include <algorithm>

namespace amp {

std::string_view to_string(ProtocolStep s) {
    switch (s) {
        case ProtocolStep::pre_transfer: return "pre-transfer";
        case ProtocolStep::transfer: return "transfer";
        case ProtocolStep::post_transfer: return "post-transfer";
    }
    return "?";
}

std::optional<ProtocolStep> protocol_step_from_string(std::string_view s) {
    if (s == "pre-transfer") return ProtocolStep::pre_transfer;
    if (s == "transfer") return ProtocolStep::transfer;
    if (s == "post-transfer") return ProtocolStep::post_transfer;
    return std::nullopt;
}

void ProtocolRegistry::register_protocol(ProtocolDescriptor descriptor) {
    if (find(descriptor.well_known_name))
        fail(Errc::duplicate_name, "protocol already registered: " + descriptor.well_known_name);
    protocols_.push_back(std::move(descriptor));
}

bool ProtocolRegistry::migration_capable() const {
    return std::any_of(protocols_.begin(), protocols_.end(),
                       [](const ProtocolDescriptor& d) { return d.step == ProtocolStep::transfer; });
}

SupportedProtocols ProtocolRegistry::supported_protocols() const {
    if (!migration_capable())
        fail(Errc::not_migration_capable, "no transfer protocol registered");
    SupportedProtocols sp;
    for (auto& d : protocols_) {
        switch (d.step) {
            case ProtocolStep::pre_transfer: sp.pre_transfer.push_back(d.well_known_name); break;
            case ProtocolStep::transfer: sp.transfer.push_back(d.well_known_name); break;
            case ProtocolStep::post_transfer: sp.post_transfer.push_back(d.well_known_name); break;
        }
    }
    return sp;
}

const ProtocolDescriptor* ProtocolRegistry::find(std::string_view name) const {
    for (auto& d : protocols_)
        if (d.well_known_name == name) return &d;
    return nullptr;
}

const ProtocolDescriptor* ProtocolRegistry::find(std::string_view name, ProtocolStep step) const {
    const ProtocolDescriptor* d = find(name);
    return (d && d->step == step) ? d : nullptr;
}

MissingProtocols ProtocolRegistry::check_request_supported(const MobileAgentDescription& mad) const {
    MissingProtocols missing;
    auto check = [&](const std::vector<std::string>& names, ProtocolStep step) {
        for (auto& n : names)
            if (!find(n, step)) missing.names.push_back(n);
    };
    check(mad.pre_transfer, ProtocolStep::pre_transfer);
    check(mad.transfer, ProtocolStep::transfer);
    check(mad.post_transfer, ProtocolStep::post_transfer);
    return missing;
}

std::optional<SupportedProtocols> DiscoveryCache::lookup(const std::string& address) const {
    if (ttl_ <= Clock::duration::zero()) return std::nullopt;
    std::lock_guard lock(mu_);
    auto it = entries_.find(address);
    if (it == entries_.end()) return std::nullopt;
    if (Clock::now() - it->second.fetched_at >= ttl_) return std::nullopt;
    return it->second.protocols;
}

void DiscoveryCache::store(const std::string& address, SupportedProtocols protocols) {
    if (ttl_ <= Clock::duration::zero()) return;
    std::lock_guard lock(mu_);
    entries_[address] = Entry{std::move(protocols), Clock::now()};
}

}  // namespace amp

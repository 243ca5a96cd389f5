#include "amp/events.hpp"

namespace amp {

std::string Event::to_line() const {
    std::string line = "event=" + type + " session=" + session;
    if (!step.empty()) line += " step=" + step;
    if (!protocol.empty()) line += " protocol=" + protocol;
    line += " bytes-sent=" + std::to_string(bytes_sent);
    line += " bytes-received=" + std::to_string(bytes_received);
    if (!detail.empty()) line += " detail=" + detail;
    return line;
}

void EventLog::append(Event event) {
    std::lock_guard lock(mu_);
    events_.push_back(std::move(event));
}

std::vector<Event> EventLog::events() const {
    std::lock_guard lock(mu_);
    return events_;
}

std::vector<std::string> EventLog::lines() const {
    std::lock_guard lock(mu_);
    std::vector<std::string> out;
    out.reserve(events_.size());
    for (auto& e : events_) out.push_back(e.to_line());
    return out;
}

}  // namespace amp

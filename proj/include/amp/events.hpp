#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

namespace amp {

/// One structured line per session event; the test surface for ordering
/// and byte assertions.
struct Event {
    std::string type;      // step-started | step-done | step-failed | finalized | note
    std::string session;
    std::string step;
    std::string protocol;
    std::uint64_t bytes_sent = 0;
    std::uint64_t bytes_received = 0;
    std::string detail;

    std::string to_line() const;
};

class EventLog {
public:
    void append(Event event);
    std::vector<Event> events() const;
    std::vector<std::string> lines() const;

private:
    mutable std::mutex mu_;
    std::vector<Event> events_;
};

}  // namespace amp

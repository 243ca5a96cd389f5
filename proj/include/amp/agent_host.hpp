#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "amp/acl.hpp"
#include "amp/package.hpp"

namespace amp {

inline constexpr const char* kToyFormatTag = "toy-itinerary-v1";

enum class Lifecycle { active, suspended, transit, dead };

std::string_view to_string(Lifecycle l);

struct Instruction {
    enum class Kind { inc, hop, stop } kind = Kind::stop;
    std::string arg;  // inc: key, hop: destination address

    bool operator==(const Instruction&) const = default;
};

/// Deterministic toy agent program: "toy-itinerary-v1" header, one
/// instruction per line, newline-terminated, ends with stop.
struct ToyProgram {
    std::vector<Instruction> instructions;

    static ToyProgram parse(std::string_view text);  // CodeFormatError
    std::string encode() const;
    void check() const;

    bool operator==(const ToyProgram&) const = default;
};

/// Canonical agent data snapshot: program counter plus the data map,
/// keys sorted, stable bytes.
std::string encode_agent_data(int program_counter, const std::map<std::string, std::string>& data);
std::pair<int, std::map<std::string, std::string>> decode_agent_data(std::string_view bytes);

struct RuntimeEvent {
    enum class Kind { incremented, wants_migration, stopped } kind = Kind::stopped;
    std::string key;          // incremented
    long long new_value = 0;  // incremented
    std::string destination;  // wants_migration
};

struct AgentInfo {
    AgentIdentifier id;
    Lifecycle lifecycle;
};

/// Hosts agents on one node: lifecycle, snapshot/rebuild, toy runtime.
class AgentHost {
public:
    AgentHost(std::string platform_name, std::string platform_address);

    AgentIdentifier create_agent(const std::string& local_name, const ToyProgram& program,
                                 std::map<std::string, std::string> initial_data);

    AgentPackage snapshot_agent(const std::string& name) const;  // Suspended/Transit only
    void install_agent(const AgentPackage& package, const AgentIdentifier& id);

    void resume_agent(const std::string& name);
    void suspend_agent(const std::string& name);
    void kill_agent(const std::string& name);
    /// Active -> Transit, the in-migration state.
    void begin_transit(const std::string& name);

    RuntimeEvent step_runtime(const std::string& name);
    /// Move the program counter past the current hop instruction
    /// (the migration snapshot must resume after the hop).
    void advance_past_hop(const std::string& name);
    void rewind_to_hop(const std::string& name);

    std::vector<AgentInfo> list() const;
    std::optional<Lifecycle> lifecycle(const std::string& name) const;
    bool hosts(const std::string& name) const;
    std::map<std::string, std::string> data_of(const std::string& name) const;
    std::string data_bytes_of(const std::string& name) const;
    const std::string& platform_name() const { return platform_name_; }

    /// Test hook: make the next n resume_agent calls throw.
    void inject_resume_faults(int n) { resume_faults_ = n; }

private:
    struct Hosted {
        AgentIdentifier id;
        Lifecycle lifecycle = Lifecycle::active;
        ToyProgram program;
        std::string code;  // canonical program encoding
        Cid cid;
        int pc = 0;
        std::map<std::string, std::string> data;
    };

    Hosted& get(const std::string& name);
    const Hosted& get(const std::string& name) const;
    void transition(Hosted& agent, Lifecycle to);

    std::string platform_name_;
    std::string platform_address_;
    mutable std::mutex mu_;
    std::map<std::string, Hosted> agents_;  // keyed by full name
    int resume_faults_ = 0;
};

}  // namespace amp

#include "amp/agent_host.hpp"

#include <algorithm>
#include <charconv>

namespace amp {

std::string_view to_string(Lifecycle l) {
    switch (l) {
        case Lifecycle::active: return "Active";
        case Lifecycle::suspended: return "Suspended";
        case Lifecycle::transit: return "Transit";
        case Lifecycle::dead: return "Dead";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Toy program
// ---------------------------------------------------------------------------

void ToyProgram::check() const {
    if (instructions.empty()) fail(Errc::code_format_error, "program must be non-empty");
    if (instructions.back().kind != Instruction::Kind::stop)
        fail(Errc::code_format_error, "program must end with stop");
}

ToyProgram ToyProgram::parse(std::string_view text) {
    if (text.empty() || text.back() != '\n')
        fail(Errc::code_format_error, "program must be newline-terminated");
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        lines.emplace_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.empty() || lines.front() != kToyFormatTag)
        fail(Errc::code_format_error, std::string("first line must be ") + kToyFormatTag);

    ToyProgram program;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line == "stop") {
            program.instructions.push_back({Instruction::Kind::stop, ""});
        } else if (line.rfind("inc ", 0) == 0 && line.size() > 4) {
            program.instructions.push_back({Instruction::Kind::inc, line.substr(4)});
        } else if (line.rfind("hop ", 0) == 0 && line.size() > 4) {
            program.instructions.push_back({Instruction::Kind::hop, line.substr(4)});
        } else {
            fail(Errc::code_format_error, "unrecognised instruction: " + line);
        }
    }
    program.check();
    return program;
}

std::string ToyProgram::encode() const {
    check();
    std::string out = kToyFormatTag;
    out += '\n';
    for (auto& ins : instructions) {
        switch (ins.kind) {
            case Instruction::Kind::inc: out += "inc " + ins.arg; break;
            case Instruction::Kind::hop: out += "hop " + ins.arg; break;
            case Instruction::Kind::stop: out += "stop"; break;
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Canonical data snapshot
// ---------------------------------------------------------------------------

std::string encode_agent_data(int program_counter, const std::map<std::string, std::string>& data) {
    std::string out = "pc=" + std::to_string(program_counter) + "\n";
    for (auto& [k, v] : data) {  // std::map iterates keys sorted
        if (k.find('=') != std::string::npos || k.find('\n') != std::string::npos ||
            v.find('\n') != std::string::npos)
            fail(Errc::data_format_error, "key/value may not contain '=' or newline: " + k);
        out += k + "=" + v + "\n";
    }
    return out;
}

std::pair<int, std::map<std::string, std::string>> decode_agent_data(std::string_view bytes) {
    if (bytes.empty() || bytes.back() != '\n')
        fail(Errc::data_format_error, "data must be newline-terminated");
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        std::size_t nl = bytes.find('\n', pos);
        lines.emplace_back(bytes.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.empty() || lines.front().rfind("pc=", 0) != 0)
        fail(Errc::data_format_error, "data must start with pc=");
    int pc = 0;
    const std::string& pcs = lines.front();
    auto [ptr, ec] = std::from_chars(pcs.data() + 3, pcs.data() + pcs.size(), pc);
    if (ec != std::errc() || ptr != pcs.data() + pcs.size() || pc < 0)
        fail(Errc::data_format_error, "invalid program counter: " + pcs);
    std::map<std::string, std::string> data;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::size_t eq = lines[i].find('=');
        if (eq == std::string::npos || eq == 0)
            fail(Errc::data_format_error, "invalid data line: " + lines[i]);
        data[lines[i].substr(0, eq)] = lines[i].substr(eq + 1);
    }
    return {pc, std::move(data)};
}

// ---------------------------------------------------------------------------
// Host
// ---------------------------------------------------------------------------

AgentHost::AgentHost(std::string platform_name, std::string platform_address)
    : platform_name_(std::move(platform_name)), platform_address_(std::move(platform_address)) {}

AgentHost::Hosted& AgentHost::get(const std::string& name) {
    auto it = agents_.find(name);
    if (it == agents_.end()) fail(Errc::agent_not_found, name);
    return it->second;
}

const AgentHost::Hosted& AgentHost::get(const std::string& name) const {
    auto it = agents_.find(name);
    if (it == agents_.end()) fail(Errc::agent_not_found, name);
    return it->second;
}

void AgentHost::transition(Hosted& agent, Lifecycle to) {
    Lifecycle from = agent.lifecycle;
    bool legal = (from == Lifecycle::active && to == Lifecycle::suspended) ||
                 (from == Lifecycle::suspended && to == Lifecycle::active) ||
                 (from == Lifecycle::active && to == Lifecycle::transit) ||
                 (from == Lifecycle::transit && to == Lifecycle::active) ||
                 (from == Lifecycle::transit && to == Lifecycle::dead) ||
                 (from == Lifecycle::suspended && to == Lifecycle::dead);
    if (!legal)
        fail(Errc::illegal_transition, agent.id.name + ": " + std::string(to_string(from)) +
                                           " -> " + std::string(to_string(to)));
    agent.lifecycle = to;
}

AgentIdentifier AgentHost::create_agent(const std::string& local_name, const ToyProgram& program,
                                        std::map<std::string, std::string> initial_data) {
    std::lock_guard lock(mu_);
    std::string full = local_name + "@" + platform_name_;
    if (agents_.count(full)) fail(Errc::name_collision, full);

    Hosted agent;
    agent.id = AgentIdentifier{full, {platform_address_}};
    agent.id.check();
    agent.lifecycle = Lifecycle::active;
    agent.program = program;
    agent.code = program.encode();
    agent.cid = compute_cid(agent.code);
    agent.pc = 0;
    agent.data = std::move(initial_data);
    agents_[full] = std::move(agent);
    return agents_[full].id;
}

AgentPackage AgentHost::snapshot_agent(const std::string& name) const {
    std::lock_guard lock(mu_);
    const Hosted& agent = get(name);
    if (agent.lifecycle == Lifecycle::active)
        fail(Errc::agent_running, name + " must be suspended before snapshot");
    AgentPackage pkg;
    pkg.code = agent.code;
    pkg.data = encode_agent_data(agent.pc, agent.data);
    pkg.state = std::nullopt;  // the toy runtime keeps execution position in data
    pkg.cid = agent.cid;
    return pkg;
}

void AgentHost::install_agent(const AgentPackage& package, const AgentIdentifier& id) {
    std::lock_guard lock(mu_);
    if (agents_.count(id.name)) fail(Errc::name_collision, id.name);
    package.check();
    ToyProgram program = ToyProgram::parse(package.code);
    auto [pc, data] = decode_agent_data(package.data);
    if (pc > static_cast<int>(program.instructions.size()))
        fail(Errc::data_format_error, "program counter out of range");

    Hosted agent;
    agent.id = id;
    agent.id.check();
    agent.lifecycle = Lifecycle::suspended;
    agent.program = std::move(program);
    agent.code = package.code;
    agent.cid = package.cid;
    agent.pc = pc;
    agent.data = std::move(data);
    agents_[id.name] = std::move(agent);
}

void AgentHost::resume_agent(const std::string& name) {
    std::lock_guard lock(mu_);
    Hosted& agent = get(name);
    if (resume_faults_ > 0) {
        --resume_faults_;
        fail(Errc::illegal_transition, "resume-error: injected resume fault for " + name);
    }
    transition(agent, Lifecycle::active);
}

void AgentHost::suspend_agent(const std::string& name) {
    std::lock_guard lock(mu_);
    transition(get(name), Lifecycle::suspended);
}

void AgentHost::begin_transit(const std::string& name) {
    std::lock_guard lock(mu_);
    transition(get(name), Lifecycle::transit);
}

void AgentHost::kill_agent(const std::string& name) {
    std::lock_guard lock(mu_);
    Hosted& agent = get(name);
    transition(agent, Lifecycle::dead);
    agents_.erase(name);
}

RuntimeEvent AgentHost::step_runtime(const std::string& name) {
    std::lock_guard lock(mu_);
    Hosted& agent = get(name);
    if (agent.lifecycle != Lifecycle::active) fail(Errc::agent_not_active, name);
    if (agent.pc >= static_cast<int>(agent.program.instructions.size()))
        return RuntimeEvent{RuntimeEvent::Kind::stopped, "", 0, ""};

    const Instruction& ins = agent.program.instructions[agent.pc];
    switch (ins.kind) {
        case Instruction::Kind::inc: {
            long long value = 0;
            if (auto it = agent.data.find(ins.arg); it != agent.data.end())
                value = std::stoll(it->second);
            ++value;
            agent.data[ins.arg] = std::to_string(value);
            ++agent.pc;
            return RuntimeEvent{RuntimeEvent::Kind::incremented, ins.arg, value, ""};
        }
        case Instruction::Kind::hop:
            // pc stays at the hop; the node advances it once the migration
            // is underway and rewinds it on failure.
            return RuntimeEvent{RuntimeEvent::Kind::wants_migration, "", 0, ins.arg};
        case Instruction::Kind::stop:
            return RuntimeEvent{RuntimeEvent::Kind::stopped, "", 0, ""};
    }
    fail(Errc::code_format_error, "unreachable instruction kind");
}

void AgentHost::advance_past_hop(const std::string& name) {
    std::lock_guard lock(mu_);
    Hosted& agent = get(name);
    if (agent.pc >= static_cast<int>(agent.program.instructions.size()) ||
        agent.program.instructions[agent.pc].kind != Instruction::Kind::hop)
        fail(Errc::illegal_transition, name + " is not at a hop instruction");
    ++agent.pc;
}

void AgentHost::rewind_to_hop(const std::string& name) {
    std::lock_guard lock(mu_);
    Hosted& agent = get(name);
    if (agent.pc == 0 ||
        agent.program.instructions[agent.pc - 1].kind != Instruction::Kind::hop)
        fail(Errc::illegal_transition, name + " is not past a hop instruction");
    --agent.pc;
}

std::vector<AgentInfo> AgentHost::list() const {
    std::lock_guard lock(mu_);
    std::vector<AgentInfo> out;
    for (auto& [_, agent] : agents_) out.push_back({agent.id, agent.lifecycle});
    return out;
}

std::optional<Lifecycle> AgentHost::lifecycle(const std::string& name) const {
    std::lock_guard lock(mu_);
    auto it = agents_.find(name);
    if (it == agents_.end()) return std::nullopt;
    return it->second.lifecycle;
}

bool AgentHost::hosts(const std::string& name) const {
    std::lock_guard lock(mu_);
    return agents_.count(name) > 0;
}

std::map<std::string, std::string> AgentHost::data_of(const std::string& name) const {
    std::lock_guard lock(mu_);
    return get(name).data;
}

std::string AgentHost::data_bytes_of(const std::string& name) const {
    std::lock_guard lock(mu_);
    const Hosted& agent = get(name);
    return encode_agent_data(agent.pc, agent.data);
}

}  // namespace amp

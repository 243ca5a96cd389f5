// amp: command-line front end for a platform node and its control endpoint.
#include <CLI11.hpp>

#include <condition_variable>
#include <csignal>
#include <deque>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>

#include "amp/node.hpp"

namespace {

amp::Node* g_node = nullptr;

void on_signal(int) {
    if (g_node) g_node->shutdown();
}

std::string random_id() {
    static const char hex[] = "0123456789abcdef";
    std::random_device rd;
    std::string out;
    for (int i = 0; i < 8; ++i) {
        unsigned v = rd();
        for (int k = 0; k < 4; ++k) {
            out += hex[v & 0xf];
            v >>= 4;
        }
    }
    return out;
}

/// One-shot control-plane client: ephemeral TCP endpoint, one request,
/// one reply.
class ControlClient {
public:
    explicit ControlClient(std::string node_address)
        : node_address_(std::move(node_address)),
          transport_(std::make_shared<amp::TcpTransport>(
              "127.0.0.1:0", [this](const amp::Envelope& env) { deliver(env); })) {}

    ~ControlClient() { transport_->close(); }

    amp::AclMessage call(const std::string& action, amp::Frame args) {
        amp::AclMessage msg;
        msg.performative = amp::Performative::request;
        msg.sender = amp::AgentIdentifier{"cli@cli", {transport_->address()}};
        msg.receiver = amp::AgentIdentifier{"amm@node", {node_address_}};
        msg.conversation_id = random_id();
        msg.protocol = "control-v1";
        msg.ontology = amp::kControlOntology;
        msg.reply_with = "c1";
        msg.content.kind = amp::ContentKind::action;
        msg.content.name = action;
        msg.content.payload = std::move(args);

        amp::Envelope env;
        env.to = node_address_;
        env.from = transport_->address();
        env.payload = amp::encode_message(msg);
        transport_->send(env);

        std::unique_lock lock(mu_);
        if (!cv_.wait_for(lock, std::chrono::seconds(10), [this] { return !inbox_.empty(); }))
            amp::fail(amp::Errc::timeout, "no reply from node at " + node_address_);
        amp::AclMessage reply = amp::decode_message(inbox_.front());
        inbox_.pop_front();
        return reply;
    }

private:
    void deliver(const amp::Envelope& env) {
        std::lock_guard lock(mu_);
        inbox_.push_back(env.payload);
        cv_.notify_all();
    }

    std::string node_address_;
    std::shared_ptr<amp::TcpTransport> transport_;
    std::mutex mu_;
    std::condition_variable cv_;
    std::deque<std::string> inbox_;
};

void print_frame(const amp::Frame& frame) {
    for (auto& [key, value] : frame.fields()) {
        if (auto* s = std::get_if<std::string>(&value)) {
            std::cout << key << "=" << *s << "\n";
        } else if (auto* list = std::get_if<std::vector<std::string>>(&value)) {
            if (key == "lines" || key == "agents") {
                for (auto& line : *list) std::cout << line << "\n";
            } else {
                std::cout << key << "=";
                for (std::size_t i = 0; i < list->size(); ++i)
                    std::cout << (i ? "," : "") << (*list)[i];
                std::cout << "\n";
            }
        }
    }
}

/// 0 = ok, 1 = remote failure/refusal, 2 = usage or local error.
int run_control(const std::string& node, const std::string& action, amp::Frame args,
                const char* refusal_key = nullptr) {
    try {
        ControlClient client(node);
        amp::AclMessage reply = client.call(action, std::move(args));
        if (reply.performative == amp::Performative::failure) {
            std::cerr << "failure: " << reply.content.payload.get_string("reason") << "\n";
            return 1;
        }
        print_frame(reply.content.payload);
        if (refusal_key && reply.content.payload.has(refusal_key) &&
            reply.content.payload.get_string(refusal_key) != "succeeded")
            return 1;
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mobile-agent platform node"};
    app.require_subcommand(1);

    std::string node_addr = "127.0.0.1:7701";
    std::string config_path;
    std::string name;
    std::string dest;
    std::string program_path;
    std::string target;
    std::vector<std::string> data_kv;
    bool bypass = false;

    auto* node_cmd = app.add_subcommand("node", "node daemon controls");
    node_cmd->require_subcommand(1);
    auto* node_run = node_cmd->add_subcommand("run", "run a node until shutdown");
    node_run->add_option("--config", config_path, "node config file")->required();
    auto* node_shutdown = node_cmd->add_subcommand("shutdown", "stop a running node");
    node_shutdown->add_option("--node", node_addr, "node control address");

    auto* agent = app.add_subcommand("agent", "agent operations");
    agent->require_subcommand(1);
    auto* agent_create = agent->add_subcommand("create", "create a toy agent");
    agent_create->add_option("--node", node_addr);
    agent_create->add_option("--name", name, "local name")->required();
    agent_create->add_option("--program", program_path, "toy program file")->required();
    agent_create->add_option("--data", data_kv, "initial data entries key=value");
    auto* agent_list = agent->add_subcommand("list", "list hosted agents");
    agent_list->add_option("--node", node_addr);
    auto* agent_step = agent->add_subcommand("step", "run one agent step");
    agent_step->add_option("--node", node_addr);
    agent_step->add_option("--name", name)->required();
    auto* agent_move = agent->add_subcommand("move", "migrate an agent");
    agent_move->add_option("--node", node_addr);
    agent_move->add_option("--name", name)->required();
    agent_move->add_option("--dest", dest, "destination node address")->required();
    auto* agent_clone = agent->add_subcommand("clone", "clone an agent to another node");
    agent_clone->add_option("--node", node_addr);
    agent_clone->add_option("--name", name)->required();
    agent_clone->add_option("--dest", dest, "destination node address")->required();

    auto* protocols = app.add_subcommand("protocols", "protocol discovery");
    auto* protocols_query = protocols->add_subcommand("query", "list supported protocols");
    protocols_query->add_option("--node", node_addr);
    protocols_query->add_option("--target", target, "remote node to ask about");
    protocols_query->add_flag("--bypass-cache", bypass, "skip the discovery cache");

    auto* cache_cmd = app.add_subcommand("cache", "code cache");
    auto* cache_list = cache_cmd->add_subcommand("list", "list cached cids");
    cache_list->add_option("--node", node_addr);

    auto* counters = app.add_subcommand("counters", "message counters");
    auto* counters_show = counters->add_subcommand("show", "per-peer traffic counters");
    counters_show->add_option("--node", node_addr);

    CLI11_PARSE(app, argc, argv);

    try {
        if (node_run->parsed()) {
            amp::NodeConfig cfg = amp::NodeConfig::from_file(config_path);
            amp::Node node(cfg);
            g_node = &node;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cout << "platform=" << cfg.platform_name << " address=" << node.address()
                      << std::endl;
            node.wait_for_shutdown();
            return 0;
        }
        if (node_shutdown->parsed()) return run_control(node_addr, "shutdown", {});
        if (agent_create->parsed()) {
            std::ifstream in(program_path, std::ios::binary);
            if (!in) {
                std::cerr << "error: cannot read " << program_path << "\n";
                return 2;
            }
            std::string program((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
            amp::Frame args;
            args.set("local-name", name);
            args.set_bytes("program", program);
            amp::Frame data;
            for (auto& kv : data_kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) {
                    std::cerr << "error: --data wants key=value, got " << kv << "\n";
                    return 2;
                }
                data.set(kv.substr(0, eq), kv.substr(eq + 1));
            }
            if (!data.empty()) args.set("data", data);
            return run_control(node_addr, "create-agent", std::move(args));
        }
        if (agent_list->parsed()) return run_control(node_addr, "list-agents", {});
        if (agent_step->parsed()) {
            amp::Frame args;
            args.set("name", name);
            return run_control(node_addr, "step-agent", std::move(args));
        }
        if (agent_move->parsed() || agent_clone->parsed()) {
            amp::Frame args;
            args.set("name", name);
            args.set("destination", dest);
            args.set("kind", agent_clone->parsed() ? "clone" : "move");
            return run_control(node_addr, "migrate", std::move(args), "status");
        }
        if (protocols_query->parsed()) {
            amp::Frame args;
            if (!target.empty()) args.set("target", target);
            if (bypass) args.set("policy", "bypass-cache");
            return run_control(node_addr, "query-protocols", std::move(args));
        }
        if (cache_list->parsed()) return run_control(node_addr, "cache-list", {});
        if (counters_show->parsed()) return run_control(node_addr, "counters", {});
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

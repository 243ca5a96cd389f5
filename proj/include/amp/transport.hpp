#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "amp/errors.hpp"

namespace amp {

struct Envelope {
    std::string to;       // "host:port"
    std::string from;
    std::string payload;  // encoded AclMessage bytes
};

// 4-byte big-endian length prefix, then exactly that many payload bytes.
inline constexpr std::size_t kMaxFrame = 64ull * 1024 * 1024;

std::string frame_payload(std::string_view payload);
/// Frame size on the wire for a payload of this length.
inline std::uint64_t framed_size(std::size_t payload_size) { return payload_size + 4; }

struct PeerCounters {
    std::uint64_t messages_sent = 0;
    std::uint64_t bytes_sent = 0;
    std::uint64_t messages_received = 0;
    std::uint64_t bytes_received = 0;
};

class CounterBoard {
public:
    void record_sent(const std::string& peer, std::uint64_t bytes);
    void record_received(const std::string& peer, std::uint64_t bytes);
    PeerCounters peer(const std::string& peer) const;
    PeerCounters total() const;
    std::map<std::string, PeerCounters> all() const;

private:
    mutable std::mutex mu_;
    std::map<std::string, PeerCounters> peers_;
};

using DeliverFn = std::function<void(const Envelope&)>;

class Transport {
public:
    virtual ~Transport() = default;
    virtual void send(const Envelope& envelope) = 0;
    /// Address this endpoint is reachable at.
    virtual std::string address() const = 0;
    virtual void close() = 0;
};

/// In-process bus: synchronous, ordered, loss-free delivery keyed by
/// address. Shared by all in-memory endpoints of one test or process.
class InMemoryBus {
public:
    std::shared_ptr<Transport> attach(const std::string& address, DeliverFn deliver);

private:
    friend class InMemoryEndpoint;
    void send(const Envelope& envelope);
    void detach(const std::string& address);

    std::mutex mu_;
    std::map<std::string, DeliverFn> endpoints_;
};

/// TCP endpoint: listener thread plus one short-lived connection per
/// outgoing frame. Malformed frames drop the connection.
class TcpTransport : public Transport {
public:
    /// listen_address "host:port"; port 0 picks a free port.
    TcpTransport(const std::string& listen_address, DeliverFn deliver);
    ~TcpTransport() override;

    void send(const Envelope& envelope) override;
    std::string address() const override { return address_; }
    void close() override;

private:
    void accept_loop();
    void read_frames(int fd);

    int listen_fd_ = -1;
    std::string address_;
    DeliverFn deliver_;
    std::atomic<bool> running_{false};
    std::thread acceptor_;
    std::mutex readers_mu_;
    std::vector<std::thread> readers_;
};

}  // namespace amp

#include "amp/transport.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>

namespace amp {

std::string frame_payload(std::string_view payload) {
    if (payload.size() > kMaxFrame) fail(Errc::transport_error, "frame exceeds 64 MiB limit");
    std::string out;
    out.reserve(payload.size() + 4);
    auto n = static_cast<std::uint32_t>(payload.size());
    out += static_cast<char>((n >> 24) & 0xff);
    out += static_cast<char>((n >> 16) & 0xff);
    out += static_cast<char>((n >> 8) & 0xff);
    out += static_cast<char>(n & 0xff);
    out += payload;
    return out;
}

void CounterBoard::record_sent(const std::string& peer, std::uint64_t bytes) {
    std::lock_guard lock(mu_);
    auto& c = peers_[peer];
    c.messages_sent += 1;
    c.bytes_sent += bytes;
}

void CounterBoard::record_received(const std::string& peer, std::uint64_t bytes) {
    std::lock_guard lock(mu_);
    auto& c = peers_[peer];
    c.messages_received += 1;
    c.bytes_received += bytes;
}

PeerCounters CounterBoard::peer(const std::string& peer) const {
    std::lock_guard lock(mu_);
    auto it = peers_.find(peer);
    return it == peers_.end() ? PeerCounters{} : it->second;
}

PeerCounters CounterBoard::total() const {
    std::lock_guard lock(mu_);
    PeerCounters t;
    for (auto& [_, c] : peers_) {
        t.messages_sent += c.messages_sent;
        t.bytes_sent += c.bytes_sent;
        t.messages_received += c.messages_received;
        t.bytes_received += c.bytes_received;
    }
    return t;
}

std::map<std::string, PeerCounters> CounterBoard::all() const {
    std::lock_guard lock(mu_);
    return peers_;
}

// ---------------------------------------------------------------------------
// In-memory bus
// ---------------------------------------------------------------------------

class InMemoryEndpoint : public Transport {
public:
    InMemoryEndpoint(InMemoryBus& bus, std::string address) : bus_(bus), address_(std::move(address)) {}
    ~InMemoryEndpoint() override { close(); }

    void send(const Envelope& envelope) override { bus_.send(envelope); }
    std::string address() const override { return address_; }
    void close() override {
        if (!closed_.exchange(true)) bus_.detach(address_);
    }

private:
    InMemoryBus& bus_;
    std::string address_;
    std::atomic<bool> closed_{false};
};

std::shared_ptr<Transport> InMemoryBus::attach(const std::string& address, DeliverFn deliver) {
    std::lock_guard lock(mu_);
    if (endpoints_.count(address)) fail(Errc::bind_error, "address already attached: " + address);
    endpoints_[address] = std::move(deliver);
    return std::make_shared<InMemoryEndpoint>(*this, address);
}

void InMemoryBus::send(const Envelope& envelope) {
    DeliverFn deliver;
    {
        std::lock_guard lock(mu_);
        auto it = endpoints_.find(envelope.to);
        if (it == endpoints_.end())
            fail(Errc::transport_error, "connection refused: " + envelope.to);
        deliver = it->second;
    }
    if (envelope.payload.size() > kMaxFrame) fail(Errc::transport_error, "frame exceeds 64 MiB limit");
    deliver(envelope);
}

void InMemoryBus::detach(const std::string& address) {
    std::lock_guard lock(mu_);
    endpoints_.erase(address);
}

// ---------------------------------------------------------------------------
// TCP transport
// ---------------------------------------------------------------------------

namespace {

std::pair<std::string, std::uint16_t> split_address(const std::string& address) {
    auto colon = address.rfind(':');
    if (colon == std::string::npos)
        fail(Errc::config_error, "address must be host:port: " + address);
    std::string host = address.substr(0, colon);
    int port = 0;
    try {
        port = std::stoi(address.substr(colon + 1));
    } catch (const std::exception&) {
        fail(Errc::config_error, "invalid port in address: " + address);
    }
    if (port < 0 || port > 65535) fail(Errc::config_error, "invalid port in address: " + address);
    return {host, static_cast<std::uint16_t>(port)};
}

bool read_exact(int fd, char* buf, std::size_t n) {
    std::size_t got = 0;
    while (got < n) {
        ssize_t r = ::read(fd, buf + got, n - got);
        if (r <= 0) return false;
        got += static_cast<std::size_t>(r);
    }
    return true;
}

bool write_all(int fd, const char* buf, std::size_t n) {
    std::size_t sent = 0;
    while (sent < n) {
        ssize_t r = ::write(fd, buf + sent, n - sent);
        if (r <= 0) return false;
        sent += static_cast<std::size_t>(r);
    }
    return true;
}

}  // namespace

TcpTransport::TcpTransport(const std::string& listen_address, DeliverFn deliver)
    : deliver_(std::move(deliver)) {
    auto [host, port] = split_address(listen_address);

    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) fail(Errc::bind_error, "socket: " + std::string(std::strerror(errno)));
    int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        ::close(listen_fd_);
        fail(Errc::config_error, "listen host must be an IPv4 address: " + host);
    }
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        int err = errno;
        ::close(listen_fd_);
        fail(Errc::bind_error, "bind " + listen_address + ": " + std::strerror(err));
    }
    if (::listen(listen_fd_, 64) != 0) {
        int err = errno;
        ::close(listen_fd_);
        fail(Errc::bind_error, "listen: " + std::string(std::strerror(err)));
    }

    sockaddr_in bound{};
    socklen_t len = sizeof(bound);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len);
    address_ = host + ":" + std::to_string(ntohs(bound.sin_port));

    running_ = true;
    acceptor_ = std::thread([this] { accept_loop(); });
}

TcpTransport::~TcpTransport() { close(); }

void TcpTransport::close() {
    if (!running_.exchange(false)) return;
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    if (acceptor_.joinable()) acceptor_.join();
    std::vector<std::thread> readers;
    {
        std::lock_guard lock(readers_mu_);
        readers.swap(readers_);
    }
    for (auto& t : readers) {
        if (!t.joinable()) continue;
        // close() may run on a reader thread (a peer-requested shutdown);
        // a thread cannot join itself.
        if (t.get_id() == std::this_thread::get_id())
            t.detach();
        else
            t.join();
    }
}

void TcpTransport::accept_loop() {
    while (running_) {
        int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) {
            if (!running_) break;
            continue;
        }
        std::lock_guard lock(readers_mu_);
        readers_.emplace_back([this, fd] { read_frames(fd); });
    }
}

void TcpTransport::read_frames(int fd) {
    char header[4];
    while (running_ && read_exact(fd, header, 4)) {
        std::uint32_t n = (static_cast<std::uint32_t>(static_cast<unsigned char>(header[0])) << 24) |
                          (static_cast<std::uint32_t>(static_cast<unsigned char>(header[1])) << 16) |
                          (static_cast<std::uint32_t>(static_cast<unsigned char>(header[2])) << 8) |
                          static_cast<std::uint32_t>(static_cast<unsigned char>(header[3]));
        if (n > kMaxFrame) break;  // drop the connection, surface nothing
        std::string payload(n, '\0');
        if (!read_exact(fd, payload.data(), n)) break;
        Envelope env;
        env.to = address_;
        env.payload = std::move(payload);
        try {
            deliver_(env);
        } catch (const std::exception&) {
            // Delivery errors never take the listener down.
        }
    }
    ::close(fd);
}

void TcpTransport::send(const Envelope& envelope) {
    auto [host, port] = split_address(envelope.to);
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) fail(Errc::transport_error, "socket: " + std::string(std::strerror(errno)));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        ::close(fd);
        fail(Errc::transport_error, "destination host must be an IPv4 address: " + host);
    }
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        int err = errno;
        ::close(fd);
        fail(Errc::transport_error, "connect " + envelope.to + ": " + std::strerror(err));
    }
    std::string frame = frame_payload(envelope.payload);
    bool ok = write_all(fd, frame.data(), frame.size());
    ::close(fd);
    if (!ok) fail(Errc::transport_error, "short write to " + envelope.to);
}

}  // namespace amp

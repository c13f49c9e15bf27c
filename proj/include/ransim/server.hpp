/* SPDX-License-Identifier: BSD-3-Clause */

#ifndef RANSIM_SERVER_HPP
#define RANSIM_SERVER_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace ransim {

/**
 * TCP server for the agent protocol. Each connection owns an independent
 * Session (and therefore its own simulation) on a dedicated thread.
 */
class Server
{
public:
  /// Binds immediately; port 0 picks a free port.
  Server(const std::string& bind_address, std::uint16_t port);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  std::uint16_t port() const noexcept;

  /// When set, every session's request/response log is written to
  /// `dir/session-<n>.transcript` as it closes.
  void record_transcripts(std::filesystem::path dir);

  /// Accept and serve connections until stop(). Joins session threads.
  void run();
  /// Thread-safe; makes run() return once open sessions wind down.
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> m_impl;
};

/// Blocking line-oriented TCP client.
class LineClient
{
public:
  /// \throws IoError if the connection fails
  LineClient(const std::string& host, std::uint16_t port);
  ~LineClient();

  LineClient(const LineClient&) = delete;
  LineClient& operator=(const LineClient&) = delete;

  void send_line(std::string_view line);
  /// \throws IoError on EOF or socket failure
  std::string read_line();
  std::string request(std::string_view line);
  void close() noexcept;

private:
  struct Impl;
  std::unique_ptr<Impl> m_impl;
};

} // namespace ransim

#endif

/* SPDX-License-Identifier: BSD-3-Clause */

#include "ransim/server.hpp"

#include "ransim/errors.hpp"
#include "ransim/session.hpp"
#include "ransim/transcript.hpp"

#include <atomic>
#include <istream>
#include <mutex>
#include <thread>
#include <vector>

#include <boost/asio.hpp>

namespace ransim {

namespace asio = boost::asio;
using asio::ip::tcp;

namespace {

// Reads one '\n'-terminated line; strips a trailing '\r'. False on EOF/error.
bool
read_line(tcp::socket& socket, asio::streambuf& buffer, std::string& line)
{
  boost::system::error_code ec;
  asio::read_until(socket, buffer, '\n', ec);
  if (ec && buffer.size() == 0)
    return false;
  std::istream is(&buffer);
  if (!std::getline(is, line))
    return false;
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  return true;
}

} // namespace

struct Server::Impl
{
  asio::io_context io;
  tcp::acceptor acceptor{io};
  std::mutex mutex;
  std::vector<std::shared_ptr<tcp::socket>> sockets;
  std::vector<std::thread> threads;
  std::optional<std::filesystem::path> transcript_dir;
  std::atomic<std::size_t> session_counter{0};
  std::uint16_t port{0};

  void accept_next()
  {
    acceptor.async_accept([this](boost::system::error_code ec, tcp::socket socket) {
      if (ec)
        return;
      auto shared = std::make_shared<tcp::socket>(std::move(socket));
      {
        std::lock_guard lock(mutex);
        sockets.push_back(shared);
        threads.emplace_back([this, shared, n = ++session_counter] { serve_connection(*shared, n); });
      }
      accept_next();
    });
  }

  void serve_connection(tcp::socket& socket, std::size_t session_number)
  {
    Session session;
    Transcript transcript;
    asio::streambuf buffer;
    std::string line;
    while (!session.closed() && read_line(socket, buffer, line))
      {
        std::string response = session.handle(line);
        if (transcript_dir)
          transcript.push_back({line, response});
        response += '\n';
        boost::system::error_code ec;
        asio::write(socket, asio::buffer(response), ec);
        if (ec)
          break;
      }
    boost::system::error_code ignored;
    socket.shutdown(tcp::socket::shutdown_both, ignored);
    if (transcript_dir)
      {
        try
          {
            save_transcript(transcript,
                            *transcript_dir / ("session-" + std::to_string(session_number) + ".transcript"));
          }
        catch (const IoError&)
          {
          }
      }
  }
};

Server::Server(const std::string& bind_address, std::uint16_t port)
  : m_impl(std::make_unique<Impl>())
{
  boost::system::error_code ec;
  const auto address = asio::ip::make_address(bind_address, ec);
  if (ec)
    throw IoError("invalid bind address '" + bind_address + "'");
  const tcp::endpoint endpoint(address, port);
  m_impl->acceptor.open(endpoint.protocol());
  m_impl->acceptor.set_option(tcp::acceptor::reuse_address(true));
  m_impl->acceptor.bind(endpoint, ec);
  if (ec)
    throw IoError("cannot bind " + bind_address + ":" + std::to_string(port) + ": " + ec.message());
  m_impl->acceptor.listen();
  m_impl->port = m_impl->acceptor.local_endpoint().port();
}

Server::~Server()
{
  stop();
  std::lock_guard lock(m_impl->mutex);
  for (auto& t : m_impl->threads)
    if (t.joinable())
      t.join();
}

std::uint16_t
Server::port() const noexcept
{
  return m_impl->port;
}

void
Server::record_transcripts(std::filesystem::path dir)
{
  m_impl->transcript_dir = std::move(dir);
}

void
Server::run()
{
  m_impl->accept_next();
  m_impl->io.run();
  std::vector<std::thread> threads;
  {
    std::lock_guard lock(m_impl->mutex);
    threads.swap(m_impl->threads);
  }
  for (auto& t : threads)
    t.join();
}

void
Server::stop()
{
  asio::post(m_impl->io, [impl = m_impl.get()] {
    boost::system::error_code ignored;
    impl->acceptor.close(ignored);
    std::lock_guard lock(impl->mutex);
    for (auto& s : impl->sockets)
      s->shutdown(tcp::socket::shutdown_both, ignored);
  });
}

// ---------------------------------------------------------------- client

struct LineClient::Impl
{
  asio::io_context io;
  tcp::socket socket{io};
  asio::streambuf buffer;
};

LineClient::LineClient(const std::string& host, std::uint16_t port)
  : m_impl(std::make_unique<Impl>())
{
  boost::system::error_code ec;
  tcp::resolver resolver(m_impl->io);
  const auto endpoints = resolver.resolve(host, std::to_string(port), ec);
  if (!ec)
    asio::connect(m_impl->socket, endpoints, ec);
  if (ec)
    throw IoError("cannot connect to " + host + ":" + std::to_string(port) + ": " + ec.message());
}

LineClient::~LineClient()
{
  close();
}

void
LineClient::send_line(std::string_view line)
{
  std::string data(line);
  data += '\n';
  boost::system::error_code ec;
  asio::write(m_impl->socket, asio::buffer(data), ec);
  if (ec)
    throw IoError("send failed: " + ec.message());
}

std::string
LineClient::read_line()
{
  std::string line;
  if (!ransim::read_line(m_impl->socket, m_impl->buffer, line))
    throw IoError("connection closed by peer");
  return line;
}

std::string
LineClient::request(std::string_view line)
{
  send_line(line);
  return read_line();
}

void
LineClient::close() noexcept
{
  boost::system::error_code ignored;
  m_impl->socket.shutdown(tcp::socket::shutdown_both, ignored);
  m_impl->socket.close(ignored);
}

} // namespace ransim

#include "mm1040/external_sut.hpp"

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <sstream>

#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include "mm1040/suite_io.hpp"

namespace mm1040 {
namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::string> split_command(const std::string& command) {
  std::vector<std::string> parts;
  std::istringstream in(command);
  std::string word;
  while (in >> word) parts.push_back(word);
  return parts;
}

}  // namespace

ExternalSut::ExternalSut(const std::string& command, double call_timeout_seconds,
                         int max_consecutive_errors)
    : argv_(split_command(command)),
      call_timeout_(call_timeout_seconds),
      max_consecutive_errors_(max_consecutive_errors) {
  if (argv_.empty()) throw std::invalid_argument("empty SUT command");
  // A dead child must surface as a write error, not a fatal signal.
  std::signal(SIGPIPE, SIG_IGN);
  spawn();
}

ExternalSut::~ExternalSut() { shutdown(true); }

void ExternalSut::spawn() {
  int to_pipe[2], from_pipe[2];
  if (pipe(to_pipe) != 0) throw SutProtocolError("pipe() failed");
  if (pipe(from_pipe) != 0) {
    close(to_pipe[0]);
    close(to_pipe[1]);
    throw SutProtocolError("pipe() failed");
  }
  pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {to_pipe[0], to_pipe[1], from_pipe[0], from_pipe[1]}) close(fd);
    throw SutProtocolError("fork() failed");
  }
  if (pid == 0) {
    dup2(to_pipe[0], STDIN_FILENO);
    dup2(from_pipe[1], STDOUT_FILENO);
    for (int fd : {to_pipe[0], to_pipe[1], from_pipe[0], from_pipe[1]}) close(fd);
    std::vector<char*> argv;
    argv.reserve(argv_.size() + 1);
    for (std::string& a : argv_) argv.push_back(a.data());
    argv.push_back(nullptr);
    execvp(argv[0], argv.data());
    _exit(127);
  }
  close(to_pipe[0]);
  close(from_pipe[1]);
  pid_ = pid;
  to_child_ = to_pipe[1];
  from_child_ = from_pipe[0];
  buffer_.clear();
}

void ExternalSut::shutdown(bool kill_child) {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    if (kill_child) kill(pid_, SIGKILL);
    int status = 0;
    waitpid(pid_, &status, 0);
  }
  pid_ = -1;
  buffer_.clear();
}

void ExternalSut::write_all(const std::string& data) {
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = write(to_child_, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw SutCallError(std::string("write to SUT failed: ") + std::strerror(errno));
    }
    off += static_cast<std::size_t>(n);
  }
}

std::string ExternalSut::read_reply_line() {
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(call_timeout_));
  while (true) {
    const std::size_t nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto remaining = deadline - Clock::now();
    const auto remaining_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(remaining).count();
    if (remaining_ms <= 0) throw SutCallError("SUT reply timed out");
    pollfd pfd{from_child_, POLLIN, 0};
    const int pr = poll(&pfd, 1, static_cast<int>(remaining_ms));
    if (pr < 0) {
      if (errno == EINTR) continue;
      throw SutCallError(std::string("poll on SUT failed: ") + std::strerror(errno));
    }
    if (pr == 0) throw SutCallError("SUT reply timed out");
    char chunk[4096];
    const ssize_t n = read(from_child_, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw SutCallError(std::string("read from SUT failed: ") + std::strerror(errno));
    }
    if (n == 0) throw SutCallError("SUT exited before replying");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

Cents ExternalSut::evaluate(const TaxReturnInput& r) {
  try {
    if (pid_ < 0) spawn();
    write_all(record_to_json_line(r) + "\n");
    const std::string reply = read_reply_line();
    Cents out;
    try {
      out = parse_dollars(reply);
    } catch (const std::invalid_argument& e) {
      throw SutCallError(std::string("bad SUT reply '") + reply + "': " + e.what());
    }
    consecutive_errors_ = 0;
    return out;
  } catch (const SutCallError&) {
    // Framing can no longer be trusted; start a fresh process next call.
    shutdown(true);
    if (++consecutive_errors_ >= max_consecutive_errors_)
      throw SutProtocolError("SUT failed " + std::to_string(consecutive_errors_) +
                             " consecutive calls; giving up");
    throw;
  }
}

}  // namespace mm1040

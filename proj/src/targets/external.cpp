#include "aimh/targets/external.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <sstream>

#include "aimh/core/error.hpp"

namespace aimh {
namespace wire {
namespace {

std::string_view next_token(std::string_view& s) {
  const auto start = s.find_first_not_of(' ');
  if (start == std::string_view::npos) {
    s = {};
    return {};
  }
  s.remove_prefix(start);
  const auto end = s.find(' ');
  const std::string_view tok = s.substr(0, end);
  s.remove_prefix(end == std::string_view::npos ? s.size() : end);
  return tok;
}

std::optional<std::uint64_t> parse_u64(std::string_view t) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) return std::nullopt;
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::optional<double> parse_double(std::string_view t) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) return std::nullopt;
  return v;
}

std::string eval_request(std::uint64_t id, Point x) {
  std::string line = "EVAL " + std::to_string(id) + " " + std::to_string(x.size());
  for (double v : x) line += " " + format_double(v);
  line += "\n";
  return line;
}

Request parse_request(std::string_view line) {
  std::string_view s = line;
  if (next_token(s) != "EVAL") throw Error("malformed request: " + std::string(line));
  const auto id = parse_u64(next_token(s));
  const auto dim = parse_u64(next_token(s));
  if (!id || !dim) throw Error("malformed request: " + std::string(line));
  Request r{*id, {}};
  for (std::uint64_t k = 0; k < *dim; ++k) {
    const auto v = parse_double(next_token(s));
    if (!v) throw Error("malformed request: " + std::string(line));
    r.x.push_back(*v);
  }
  if (!next_token(s).empty()) throw Error("malformed request: " + std::string(line));
  return r;
}

std::optional<Reply> parse_reply(std::string_view line) {
  std::string_view s = line;
  const std::string_view kind = next_token(s);
  const auto id = parse_u64(next_token(s));
  if (!id) return std::nullopt;
  if (kind == "OK") {
    const auto v = parse_double(next_token(s));
    if (!v || !next_token(s).empty()) return std::nullopt;
    return Reply{*id, true, *v, {}};
  }
  if (kind == "ERR") {
    const auto start = s.find_first_not_of(' ');
    return Reply{*id, false, kNaN, std::string(start == std::string_view::npos ? std::string_view{} : s.substr(start))};
  }
  return std::nullopt;
}

void serve(std::istream& in, std::ostream& out, const std::function<double(Point)>& f) {
  out << "READY " << kProtocolVersion << "\n" << std::flush;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::uint64_t id = 0;
    try {
      const Request r = parse_request(line);
      id = r.id;
      const double v = f(r.x);
      out << "OK " << r.id << " " << format_double(v) << "\n";
    } catch (const std::exception& e) {
      std::string msg = e.what();
      for (char& c : msg)
        if (c == '\n' || c == '\r') c = ' ';
      out << "ERR " << id << " " << msg << "\n";
    }
    out << std::flush;
  }
}

}  // namespace wire

ExternalEvaluator::ExternalEvaluator(std::vector<std::string> argv, std::chrono::milliseconds timeout)
    : argv_(std::move(argv)), timeout_(timeout) {
  if (argv_.empty()) throw Error("external simulator: empty command");
  // A dead child must surface as EPIPE, not kill the sampler.
  ::signal(SIGPIPE, SIG_IGN);
  int in_pipe[2];
  int out_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0 || ::pipe2(out_pipe, O_CLOEXEC) != 0)
    throw Error(std::string("external simulator: pipe: ") + std::strerror(errno));
  std::vector<char*> args;
  for (auto& a : argv_) args.push_back(a.data());
  args.push_back(nullptr);
  pid_ = ::fork();
  if (pid_ < 0) throw Error(std::string("external simulator: fork: ") + std::strerror(errno));
  if (pid_ == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::execvp(args[0], args.data());
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  const std::string hello = read_line();
  std::string_view s = hello;
  if (s.substr(0, 6) != "READY " || wire::parse_double(s.substr(6)) != double(wire::kProtocolVersion))
    throw EvaluationError("external simulator: bad handshake: " + hello);
}

ExternalEvaluator::~ExternalEvaluator() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    for (int k = 0; k < 50; ++k) {
      if (::waitpid(pid_, &status, WNOHANG) == pid_) return;
      ::usleep(2000);
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, &status, 0);
  }
}

void ExternalEvaluator::died() {
  int status = 0;
  if (pid_ > 0 && ::waitpid(pid_, &status, 0) == pid_) pid_ = -1;
  throw EvaluationError("simulator died");
}

std::string ExternalEvaluator::read_line() {
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  for (;;) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) throw EvaluationError("simulator timeout");
    pollfd pfd{from_child_, POLLIN, 0};
    const int rc = ::poll(&pfd, 1, static_cast<int>(left.count()));
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw EvaluationError(std::string("external simulator: poll: ") + std::strerror(errno));
    }
    if (rc == 0) throw EvaluationError("simulator timeout");
    char chunk[4096];
    const ssize_t n = ::read(from_child_, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR) continue;
      died();
    }
    if (n == 0) died();
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

std::uint64_t ExternalEvaluator::submit(Point x) {
  const std::uint64_t id = next_id_++;
  const std::string line = wire::eval_request(id, x);
  std::size_t done = 0;
  while (done < line.size()) {
    const ssize_t n = ::write(to_child_, line.data() + done, line.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      died();
    }
    done += static_cast<std::size_t>(n);
  }
  return id;
}

double ExternalEvaluator::wait(std::uint64_t id) {
  for (;;) {
    if (auto it = pending_.find(id); it != pending_.end()) {
      const wire::Reply r = it->second;
      pending_.erase(it);
      if (!r.ok) throw EvaluationError("simulator error: " + r.message);
      return r.value;
    }
    const std::string line = read_line();
    const auto reply = wire::parse_reply(line);
    if (!reply) throw EvaluationError("malformed simulator reply: " + line);
    pending_[reply->id] = *reply;
  }
}

}  // namespace aimh

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "aimh/core/state.hpp"
#include "aimh/targets/example4.hpp"

namespace aimh {

// Line protocol spoken with an external simulator:
//   -> EVAL <id> <dim> <x1> ... <xdim>
//   <- OK <id> <value> | ERR <id> <message>
// preceded by a READY <version> line from the simulator. Floats use the
// shortest decimal that round-trips.
namespace wire {

inline constexpr int kProtocolVersion = 1;

std::string format_double(double v);
std::optional<double> parse_double(std::string_view text);

std::string eval_request(std::uint64_t id, Point x);

struct Request {
  std::uint64_t id = 0;
  State x;
};
// Throws Error on a malformed request line.
Request parse_request(std::string_view line);

struct Reply {
  std::uint64_t id = 0;
  bool ok = false;
  double value = kNaN;
  std::string message;
};
// nullopt for a line that is not a well-formed reply.
std::optional<Reply> parse_reply(std::string_view line);

// Serve requests from `in` with `f` until EOF. Exceptions thrown by `f`
// become ERR replies.
void serve(std::istream& in, std::ostream& out, const std::function<double(Point)>& f);

}  // namespace wire

// Simulator running as a child process, spoken to over pipes. One
// instance per chain.
class ExternalEvaluator final : public ResponseEvaluator {
 public:
  ExternalEvaluator(std::vector<std::string> argv, std::chrono::milliseconds timeout);
  ~ExternalEvaluator() override;
  ExternalEvaluator(const ExternalEvaluator&) = delete;
  ExternalEvaluator& operator=(const ExternalEvaluator&) = delete;

  double response(Point x) override { return wait(submit(x)); }
  std::string name() const override { return "external"; }

  std::uint64_t submit(Point x);
  // Blocks until the reply for `id` arrives. Replies for other ids are
  // kept for later wait() calls.
  double wait(std::uint64_t id);

 private:
  std::string read_line();
  [[noreturn]] void died();

  std::vector<std::string> argv_;
  std::chrono::milliseconds timeout_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  std::uint64_t next_id_ = 1;
  std::map<std::uint64_t, wire::Reply> pending_;
};

}  // namespace aimh

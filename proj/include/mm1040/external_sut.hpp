#pragma once

#include <string>
#include <sys/types.h>
#include <vector>

#include "mm1040/tax_engine.hpp"
#include "mm1040/tax_return.hpp"

namespace mm1040 {

// Drives an out-of-process system under test over stdin/stdout. One request
// per line: the JSON record (same shape as suite files). The reply is one
// line with the federal tax return in decimal dollars, e.g. "-1234.56".
//
// A call that times out, gets a malformed reply, or finds the process gone
// raises SutCallError and the offending case is discarded; the process is
// restarted on the next call when needed. After max_consecutive_errors
// failures in a row the bridge raises SutProtocolError to abort the run.
class ExternalSut {
 public:
  explicit ExternalSut(const std::string& command,
                       double call_timeout_seconds = 5.0,
                       int max_consecutive_errors = 10);
  ~ExternalSut();
  ExternalSut(const ExternalSut&) = delete;
  ExternalSut& operator=(const ExternalSut&) = delete;

  Cents evaluate(const TaxReturnInput& r);
  SutFn as_fn() {
    return [this](const TaxReturnInput& r) { return evaluate(r); };
  }

 private:
  void spawn();
  void shutdown(bool kill_child);
  void write_all(const std::string& data);
  std::string read_reply_line();

  std::vector<std::string> argv_;  // command split on spaces, no quoting
  double call_timeout_;
  int max_consecutive_errors_;
  int consecutive_errors_ = 0;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

}  // namespace mm1040

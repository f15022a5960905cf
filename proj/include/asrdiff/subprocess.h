#ifndef ASRDIFF_SUBPROCESS_H_
#define ASRDIFF_SUBPROCESS_H_

#include <sys/types.h>

#include <chrono>
#include <optional>
#include <string>

namespace asrdiff {

// A child process running `/bin/sh -c "exec <command>"` with pipes on its
// standard input and output. Standard error is inherited. The child is
// killed and reaped on destruction.
class Subprocess {
 public:
  explicit Subprocess(const std::string& command);
  ~Subprocess();
  Subprocess(const Subprocess&) = delete;
  Subprocess& operator=(const Subprocess&) = delete;

  // Writes `line` plus '\n'. Returns false if the child closed its input.
  bool WriteLine(const std::string& line);

  // Next output line without its newline. nullopt on end of file; throws
  // TimeoutError when the deadline passes first.
  std::optional<std::string> ReadLine(std::chrono::steady_clock::time_point deadline);

  void Kill();
  bool running() const { return pid_ > 0; }
  pid_t pid() const { return pid_; }

 private:
  void Reap(bool force);

  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  bool eof_ = false;
};

}  // namespace asrdiff

#endif  // ASRDIFF_SUBPROCESS_H_

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace adoption::service {

/// Microseconds since the Unix epoch.
using Micros = std::int64_t;

Micros now_micros();

class StorageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One line of a session log: {"at":…,"kind":…,"payload":…}.
struct Event {
  Micros at = 0;
  std::string kind;
  nlohmann::ordered_json payload;
};

std::string serialize(const Event& event);
/// Throws StorageError on a malformed line.
Event parse_event(std::string_view line);

/// Append-only JSON-Lines file. Each append is written with a single
/// write(2) on an O_APPEND descriptor and fsync'ed before returning, so an
/// acknowledged event survives a process kill.
class EventLog {
 public:
  /// Opens (creating if needed) the file. A torn final line left by a crash
  /// mid-write is cut off first so the next append starts on a fresh line.
  explicit EventLog(std::filesystem::path path);
  ~EventLog();
  EventLog(const EventLog&) = delete;
  EventLog& operator=(const EventLog&) = delete;

  void append(const Event& event);
  const std::filesystem::path& path() const { return path_; }

  /// Every complete line of the file. A final line without its newline is
  /// an unacknowledged write and is ignored (counted in *torn).
  static std::vector<Event> read(const std::filesystem::path& path, std::size_t* torn = nullptr);

 private:
  std::filesystem::path path_;
  int fd_ = -1;
};

}  // namespace adoption::service

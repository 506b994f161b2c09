#include "adoption/service/event_log.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <sstream>

namespace adoption::service {

namespace {

std::string errno_message(const std::string& what, const std::filesystem::path& path) {
  return what + " " + path.string() + ": " + std::strerror(errno);
}

}  // namespace

Micros now_micros() {
  using namespace std::chrono;
  return duration_cast<microseconds>(system_clock::now().time_since_epoch()).count();
}

std::string serialize(const Event& event) {
  nlohmann::ordered_json j;
  j["at"] = event.at;
  j["kind"] = event.kind;
  j["payload"] = event.payload;
  return j.dump();
}

Event parse_event(std::string_view line) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw StorageError(std::string("malformed event: ") + e.what());
  }
  if (!j.is_object() || !j.contains("at") || !j["at"].is_number_integer() || !j.contains("kind") ||
      !j["kind"].is_string() || !j.contains("payload")) {
    throw StorageError("event lacks at/kind/payload");
  }
  return {j["at"].get<Micros>(), j["kind"].get<std::string>(), j["payload"]};
}

EventLog::EventLog(std::filesystem::path path) : path_(std::move(path)) {
  fd_ = ::open(path_.c_str(), O_RDWR | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) throw StorageError(errno_message("cannot open", path_));

  struct stat st {};
  if (::fstat(fd_, &st) != 0) throw StorageError(errno_message("cannot stat", path_));
  if (st.st_size == 0) return;
  // Find the end of the last complete line.
  std::ifstream in(path_, std::ios::binary);
  std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (contents.back() == '\n') return;
  const auto last_newline = contents.rfind('\n');
  const off_t keep = last_newline == std::string::npos ? 0 : static_cast<off_t>(last_newline + 1);
  if (::ftruncate(fd_, keep) != 0 || ::fsync(fd_) != 0) {
    throw StorageError(errno_message("cannot truncate torn line in", path_));
  }
}

EventLog::~EventLog() {
  if (fd_ >= 0) ::close(fd_);
}

void EventLog::append(const Event& event) {
  std::string line = serialize(event);
  line.push_back('\n');
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd_, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw StorageError(errno_message("cannot append to", path_));
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd_) != 0) throw StorageError(errno_message("cannot sync", path_));
}

std::vector<Event> EventLog::read(const std::filesystem::path& path, std::size_t* torn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot read " + path.string());
  std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<Event> events;
  std::size_t pos = 0;
  std::size_t torn_lines = 0;
  while (pos < contents.size()) {
    const auto nl = contents.find('\n', pos);
    if (nl == std::string::npos) {
      ++torn_lines;
      break;
    }
    std::string_view line(contents.data() + pos, nl - pos);
    if (!line.empty()) events.push_back(parse_event(line));
    pos = nl + 1;
  }
  if (torn) *torn = torn_lines;
  return events;
}

}  // namespace adoption::service

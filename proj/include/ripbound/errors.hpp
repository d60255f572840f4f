#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ripbound {

// Enumeration or scan size limit exceeded; carries the offending count.
class cap_exceeded_error : public std::runtime_error {
 public:
  cap_exceeded_error(const std::string& what, std::uint64_t count)
      : std::runtime_error(what), count_(count) {}
  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t count_;
};

// A measurement scan exhausted its range without meeting the target.
class scan_not_found_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

} // namespace ripbound

#pragma once

#include <stdexcept>
#include <string>

namespace qcdyn {

enum class errc {
  reflexivity_violation,
  transitivity_violation,
  cap_exceeded,
  empty_argument,
  out_of_domain,
  division_by_zero,
  overflow,
  parse_error,
  resource_exceeded,
  unknown_suite,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
 public:
  error(errc c, const std::string& msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code_(c) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

}  // namespace qcdyn

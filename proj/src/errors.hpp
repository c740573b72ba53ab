// Copyright (c) the logfucik authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LOGFUCIK_ERRORS_HPP
#define LOGFUCIK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace logfucik
{

// Mirrors lfk_status in the public C header; values must stay in sync.
enum class ErrorCode
{
  Argument = 1,
  Domain = 2,
  Config = 3,
  NotConverged = 4,
  Numeric = 5,
  Io = 6,
  Internal = 7
};

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string &what)
{
  throw Error(code, what);
}

inline void Require(bool cond, ErrorCode code, const std::string &what)
{
  if (!cond)
  {
    throw Error(code, what);
  }
}

}  // namespace logfucik

#endif  // LOGFUCIK_ERRORS_HPP

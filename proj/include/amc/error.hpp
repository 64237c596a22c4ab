#pragma once

#include <stdexcept>
#include <string>

namespace amc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Formula or model text that does not follow its grammar.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Reference to an agent, state, proposition, benchmark or formula that does not exist.
class UnknownNameError : public Error {
 public:
  using Error::Error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// An action outside d_a(q) was supplied for some agent.
class UnavailableActionError : public Error {
 public:
  UnavailableActionError(const std::string& msg, std::size_t agent) : Error(msg), agent_(agent) {}
  std::size_t agent() const { return agent_; }

 private:
  std::size_t agent_;
};

// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

class TimeoutError : public Error {
 public:
  TimeoutError() : Error("timeout") {}
};

}  // namespace amc

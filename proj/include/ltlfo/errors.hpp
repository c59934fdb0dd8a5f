#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ltlfo {

/// Base class of every exception thrown by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class syntax_error : public error {
public:
  syntax_error(std::size_t position, std::string expected)
      : error("syntax error at offset " + std::to_string(position) + ": expected " + expected),
        position_(position), expected_(std::move(expected)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

private:
  std::size_t position_;
  std::string expected_;
};

class unbound_variable : public error {
public:
  explicit unbound_variable(std::string name)
      : error("unbound variable '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

class shadowed_variable : public error {
public:
  explicit shadowed_variable(std::string name)
      : error("quantifier shadows variable '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

/// Raised when evaluation reaches an (in)equality whose variable has no value.
/// Only reachable with formulas that bypassed the parser's well-formedness check.
class undefined_variable : public error {
public:
  explicit undefined_variable(std::string name)
      : error("variable '" + name + "' is undefined in the current valuation"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

class malformed_input : public error {
public:
  malformed_input(std::size_t line, const std::string& reason)
      : error("line " + std::to_string(line) + ": " + reason), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class empty_loop : public error {
public:
  empty_loop() : error("lasso trace has an empty loop") {}
};

class resource_limit : public error {
public:
  explicit resource_limit(std::size_t states)
      : error("product state limit exceeded (" + std::to_string(states) + " states)"), states_(states) {}
  std::size_t states() const noexcept { return states_; }

private:
  std::size_t states_;
};

} // namespace ltlfo

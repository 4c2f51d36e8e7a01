#pragma once

#include <cstdint>
#include <compare>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lsrbd {

// Variables are 0-based internally; DIMACS files use index + 1.
class Var {
 public:
  constexpr Var() = default;
  constexpr explicit Var(std::uint32_t index) : index_(index) {}

  constexpr std::uint32_t index() const { return index_; }
  constexpr int dimacs() const { return static_cast<int>(index_) + 1; }

  constexpr auto operator<=>(const Var&) const = default;

 private:
  std::uint32_t index_ = 0;
};

// MiniSat-style encoding: 2 * var + (negative ? 1 : 0).
class Lit {
 public:
  constexpr Lit() = default;
  constexpr Lit(Var v, bool positive) : x_(2 * v.index() + (positive ? 0u : 1u)) {}

  static constexpr Lit from_code(std::uint32_t code) {
    Lit l;
    l.x_ = code;
    return l;
  }
  static Lit from_dimacs(int value) {
    return Lit(Var(static_cast<std::uint32_t>((value > 0 ? value : -value) - 1)), value > 0);
  }

  constexpr Var var() const { return Var(x_ >> 1); }
  constexpr bool positive() const { return (x_ & 1u) == 0; }
  constexpr std::uint32_t code() const { return x_; }
  constexpr int dimacs() const { return positive() ? var().dimacs() : -var().dimacs(); }

  constexpr Lit operator~() const { return from_code(x_ ^ 1u); }
  constexpr auto operator<=>(const Lit&) const = default;

 private:
  std::uint32_t x_ = 0;
};

using Clause = std::vector<Lit>;

struct Cnf {
  std::uint32_t num_vars = 0;
  std::vector<Clause> clauses;
  std::vector<std::string> comments;

  bool operator==(const Cnf& other) const {
    return num_vars == other.num_vars && clauses == other.clauses;
  }
};

// What normalization did while parsing.
struct ParseReport {
  std::size_t duplicate_literals_removed = 0;
  std::size_t tautologies_dropped = 0;
  std::size_t header_clause_count = 0;
  bool clause_count_mismatch = false;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

Cnf parse_dimacs(std::string_view text, ParseReport* report = nullptr);
Cnf parse_dimacs(std::istream& in, ParseReport* report = nullptr);
Cnf read_dimacs_file(const std::string& path, ParseReport* report = nullptr);

std::string write_dimacs(const Cnf& f);
void write_dimacs(const Cnf& f, std::ostream& out);

std::vector<Var> vars_of(std::span<const Lit> clause);

}  // namespace lsrbd

template <>
struct std::hash<lsrbd::Var> {
  std::size_t operator()(lsrbd::Var v) const noexcept { return v.index(); }
};
template <>
struct std::hash<lsrbd::Lit> {
  std::size_t operator()(lsrbd::Lit l) const noexcept { return l.code(); }
};

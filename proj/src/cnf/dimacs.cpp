#include "lsrbd/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace lsrbd {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_long(std::string_view tok, long long& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

// Sorts nothing: keeps first occurrence order. Returns false for tautologies.
bool normalize_clause(Clause& c, std::size_t& dups, std::vector<std::uint8_t>& mark) {
  Clause out;
  out.reserve(c.size());
  bool tautology = false;
  for (Lit l : c) {
    if (mark[l.code()]) {
      ++dups;
      continue;
    }
    if (mark[(~l).code()]) tautology = true;
    mark[l.code()] = 1;
    out.push_back(l);
  }
  for (Lit l : out) mark[l.code()] = 0;
  c = std::move(out);
  return !tautology;
}

}  // namespace

Cnf parse_dimacs(std::string_view text, ParseReport* report) {
  Cnf f;
  ParseReport rep;
  bool have_header = false;
  long long declared_clauses = 0;
  Clause current;
  bool clause_open = false;
  std::size_t line_no = 0;
  std::size_t last_literal_line = 0;
  std::vector<std::uint8_t> mark;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    if (line.front() == 'c') {
      std::string_view body = line.substr(1);
      if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      f.comments.emplace_back(body);
      continue;
    }
    if (line.front() == '%') break;  // SATLIB end marker
    if (line.front() == 'p') {
      if (have_header) throw ParseError(line_no, "duplicate header");
      auto toks = split_ws(line);
      long long v = 0;
      if (toks.size() != 4 || toks[0] != "p" || toks[1] != "cnf" || !parse_long(toks[2], v) ||
          !parse_long(toks[3], declared_clauses) || v < 0 || declared_clauses < 0) {
        throw ParseError(line_no, "malformed header '" + std::string(line) + "'");
      }
      f.num_vars = static_cast<std::uint32_t>(v);
      mark.assign(2 * f.num_vars + 2, 0);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "clause data before 'p cnf' header");
    for (std::string_view tok : split_ws(line)) {
      long long value = 0;
      if (!parse_long(tok, value)) throw ParseError(line_no, "bad token '" + std::string(tok) + "'");
      if (value == 0) {
        if (normalize_clause(current, rep.duplicate_literals_removed, mark)) {
          f.clauses.push_back(std::move(current));
        } else {
          ++rep.tautologies_dropped;
        }
        current.clear();
        clause_open = false;
        continue;
      }
      long long mag = value < 0 ? -value : value;
      if (mag > static_cast<long long>(f.num_vars)) {
        throw ParseError(line_no, "literal " + std::to_string(value) + " out of range (" +
                                      std::to_string(f.num_vars) + " vars declared)");
      }
      current.push_back(Lit::from_dimacs(static_cast<int>(value)));
      clause_open = true;
      last_literal_line = line_no;
    }
    if (eol == text.size()) break;
  }
  if (!have_header) throw ParseError(line_no, "empty input: no 'p cnf' header");
  if (clause_open) throw ParseError(last_literal_line, "clause missing terminating 0");

  rep.header_clause_count = static_cast<std::size_t>(declared_clauses);
  rep.clause_count_mismatch =
      rep.header_clause_count != f.clauses.size() + rep.tautologies_dropped;
  if (rep.clause_count_mismatch) {
    std::cerr << "warning: header declares " << declared_clauses << " clauses, found "
              << f.clauses.size() + rep.tautologies_dropped << "\n";
  }
  if (report) *report = rep;
  return f;
}

Cnf parse_dimacs(std::istream& in, ParseReport* report) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dimacs(std::string_view(ss.str()), report);
}

Cnf read_dimacs_file(const std::string& path, ParseReport* report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_dimacs(in, report);
}

void write_dimacs(const Cnf& f, std::ostream& out) {
  for (const auto& c : f.comments) out << "c " << c << "\n";
  out << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
  for (const auto& c : f.clauses) {
    for (Lit l : c) out << l.dimacs() << " ";
    out << "0\n";
  }
}

std::string write_dimacs(const Cnf& f) {
  std::ostringstream ss;
  write_dimacs(f, ss);
  return ss.str();
}

std::vector<Var> vars_of(std::span<const Lit> clause) {
  std::vector<Var> vs;
  vs.reserve(clause.size());
  for (Lit l : clause) vs.push_back(l.var());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

}  // namespace lsrbd

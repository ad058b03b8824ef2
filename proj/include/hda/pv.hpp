#pragma once

#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hda/errors.hpp"

namespace hda {

enum class ActionKind { Lock, Unlock };

struct Action {
  ActionKind kind;
  std::string resource;

  bool operator==(const Action&) const = default;
};

// A parallel composition of straight-line processes over counting semaphores.
// capacities lists every resource any action touches; parsing fills in the
// binary default (1) for undeclared ones, so a parsed program is always total.
struct PvProgram {
  std::vector<std::vector<Action>> processes;
  std::map<std::string, int> capacities;

  bool operator==(const PvProgram&) const = default;
};

namespace detail {

struct SourcePos {
  int line = 1;
  int col = 1;
};

inline bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// One process/action token with the position of its first character.
struct RawToken {
  std::string text;
  SourcePos pos;
};

}  // namespace detail

// Grammar:
//   program := decl* proc ('|' proc)*
//   decl    := "#sem" ident int          (one per line)
//   proc    := action ('.' action)*
//   action  := ('P'|'V') ident
// ';' starts a comment running to end of line. Whitespace is free around
// '.', '|' and inside declarations. A 'P' with no matching 'V' holds the
// resource for every later local time; a 'V' with no preceding 'P' is an
// error.
inline PvProgram parse_pv(const std::string& source) {
  using detail::RawToken;
  using detail::SourcePos;

  std::map<std::string, int> declared;
  std::map<std::string, SourcePos> declared_at;

  // Token stream for the process body: actions plus '.'/'|' separators.
  std::vector<RawToken> tokens;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    std::size_t eol = source.find('\n', pos);
    std::string line = source.substr(
        pos, eol == std::string::npos ? std::string::npos : eol - pos);
    ++line_no;

    std::size_t comment = line.find(';');
    if (comment != std::string::npos) line = line.substr(0, comment);

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] == '#') {
      // Declaration line: #sem ident int
      std::size_t p = first + 1;
      auto skip_ws = [&] {
        while (p < line.size() && (line[p] == ' ' || line[p] == '\t')) ++p;
      };
      if (line.compare(p, 3, "sem") != 0 ||
          (p + 3 < line.size() && detail::ident_char(line[p + 3]))) {
        throw parse_error("expected \"#sem\" declaration", line_no,
                          static_cast<int>(first + 1));
      }
      p += 3;
      skip_ws();
      if (p >= line.size() || !detail::ident_start(line[p]))
        throw parse_error("expected resource name after #sem", line_no,
                          static_cast<int>(p + 1));
      std::size_t name_start = p;
      while (p < line.size() && detail::ident_char(line[p])) ++p;
      std::string name = line.substr(name_start, p - name_start);
      skip_ws();
      std::size_t num_start = p;
      bool neg = p < line.size() && line[p] == '-';
      if (neg) ++p;
      std::size_t digits = p;
      while (p < line.size() && std::isdigit(static_cast<unsigned char>(line[p])))
        ++p;
      if (digits == p)
        throw parse_error("expected capacity after resource name", line_no,
                          static_cast<int>(num_start + 1));
      long cap = std::stol(line.substr(num_start, p - num_start));
      if (cap <= 0)
        throw parse_error("capacity must be positive", line_no,
                          static_cast<int>(num_start + 1));
      skip_ws();
      if (p < line.size())
        throw parse_error("trailing characters after declaration", line_no,
                          static_cast<int>(p + 1));
      if (declared.count(name))
        throw parse_error("duplicate capacity declaration for \"" + name + "\"",
                          line_no, static_cast<int>(name_start + 1));
      declared[name] = static_cast<int>(cap);
      declared_at[name] = SourcePos{line_no, static_cast<int>(name_start + 1)};
    } else {
      // Body line: accumulate action tokens and separators.
      std::size_t p = 0;
      while (p < line.size()) {
        char c = line[p];
        if (c == ' ' || c == '\t' || c == '\r') {
          ++p;
        } else if (c == '.' || c == '|') {
          tokens.push_back(
              {std::string(1, c), SourcePos{line_no, static_cast<int>(p + 1)}});
          ++p;
        } else {
          std::size_t start = p;
          while (p < line.size() && line[p] != '.' && line[p] != '|') ++p;
          std::size_t end = p;
          while (end > start && (line[end - 1] == ' ' || line[end - 1] == '\t' ||
                                 line[end - 1] == '\r'))
            --end;
          tokens.push_back({line.substr(start, end - start),
                            SourcePos{line_no, static_cast<int>(start + 1)}});
        }
      }
    }

    if (eol == std::string::npos) break;
    pos = eol + 1;
  }

  PvProgram prog;
  std::vector<std::vector<SourcePos>> action_pos;
  std::vector<Action> current;
  std::vector<SourcePos> current_pos;
  bool expect_action = true;
  SourcePos last{line_no ? line_no : 1, 1};

  auto parse_action = [](const RawToken& tok) -> Action {
    const std::string& t = tok.text;
    if (t.empty() || (t[0] != 'P' && t[0] != 'V'))
      throw parse_error("expected action of the form P<resource> or V<resource>",
                        tok.pos.line, tok.pos.col);
    std::size_t p = 1;
    while (p < t.size() && (t[p] == ' ' || t[p] == '\t')) ++p;
    if (p >= t.size() || !detail::ident_start(t[p]))
      throw parse_error("expected resource name after '" +
                            std::string(1, t[0]) + "'",
                        tok.pos.line, tok.pos.col);
    std::size_t name_start = p;
    while (p < t.size() && detail::ident_char(t[p])) ++p;
    if (p != t.size())
      throw parse_error("malformed action \"" + t + "\"", tok.pos.line,
                        tok.pos.col);
    return Action{t[0] == 'P' ? ActionKind::Lock : ActionKind::Unlock,
                  t.substr(name_start)};
  };

  auto close_process = [&](const SourcePos& at) {
    if (current.empty())
      throw parse_error("empty process", at.line, at.col);
    prog.processes.push_back(std::move(current));
    action_pos.push_back(std::move(current_pos));
    current.clear();
    current_pos.clear();
  };

  for (const RawToken& tok : tokens) {
    last = tok.pos;
    if (tok.text == ".") {
      if (expect_action)
        throw parse_error("expected action before '.'", tok.pos.line,
                          tok.pos.col);
      expect_action = true;
    } else if (tok.text == "|") {
      if (expect_action)
        throw parse_error("empty process", tok.pos.line, tok.pos.col);
      close_process(tok.pos);
      expect_action = true;
    } else {
      if (!expect_action)
        throw parse_error("expected '.' or '|' before action", tok.pos.line,
                          tok.pos.col);
      current.push_back(parse_action(tok));
      current_pos.push_back(tok.pos);
      expect_action = false;
    }
  }
  if (tokens.empty()) throw parse_error("empty program", 1, 1);
  if (expect_action)
    throw parse_error("dangling separator at end of program", last.line,
                      last.col);
  close_process(last);

  // No over-release: every V must have an outstanding P in its own process.
  for (std::size_t i = 0; i < prog.processes.size(); ++i) {
    std::map<std::string, int> balance;
    for (std::size_t k = 0; k < prog.processes[i].size(); ++k) {
      const Action& a = prog.processes[i][k];
      int& b = balance[a.resource];
      if (a.kind == ActionKind::Lock) {
        ++b;
      } else {
        if (b == 0)
          throw parse_error("over-release of \"" + a.resource + "\"",
                            action_pos[i][k].line, action_pos[i][k].col);
        --b;
      }
    }
  }

  prog.capacities = declared;
  for (const auto& proc : prog.processes)
    for (const Action& a : proc)
      prog.capacities.emplace(a.resource, 1);
  return prog;
}

// Canonical text form: one #sem line per resource (sorted), processes joined
// with " | ". parse_pv(pretty_print(p)) == p.
inline std::string pretty_print(const PvProgram& prog) {
  std::string out;
  for (const auto& [name, cap] : prog.capacities)
    out += "#sem " + name + " " + std::to_string(cap) + "\n";
  for (std::size_t i = 0; i < prog.processes.size(); ++i) {
    if (i) out += " | ";
    for (std::size_t k = 0; k < prog.processes[i].size(); ++k) {
      if (k) out += ".";
      const Action& a = prog.processes[i][k];
      out += (a.kind == ActionKind::Lock ? "P" : "V") + a.resource;
    }
  }
  out += "\n";
  return out;
}

}  // namespace hda

#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "baire/automaton.hpp"
#include "baire/error.hpp"

namespace baire {

/// An automaton together with its acceptance component, as stored on disk.
///
/// `state_notes` holds optional per-state origin annotations; they are written
/// as trailing comment lines and are not read back.
struct AutomatonFile {
  DetAutomaton automaton;
  Acceptance acceptance;
  std::vector<std::string> state_notes;

  bool is_muller() const { return std::holds_alternative<MullerTable>(acceptance); }
  const MullerTable& muller() const { return std::get<MullerTable>(acceptance); }
  const BuchiSet& buchi() const { return std::get<BuchiSet>(acceptance); }
};

namespace detail {

inline std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<std::uint64_t> parse_uint(std::string_view tok) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) return std::nullopt;
  return v;
}

inline State parse_state(std::string_view tok, std::size_t n, std::size_t line) {
  auto v = parse_uint(tok);
  if (!v) throw ParseError(ParseErrorKind::Malformed, line, "expected state index, got '" + std::string(tok) + "'");
  if (*v >= n)
    throw ParseError(ParseErrorKind::BadStateIndex, line,
                     "state " + std::string(tok) + " not in 0.." + std::to_string(n - 1));
  return static_cast<State>(*v);
}

// Parses "{0,1} {2}" style groups; separators inside braces are commas or blanks.
inline std::vector<StateSet> parse_groups(std::string_view text, std::size_t n, std::size_t line) {
  std::vector<StateSet> out;
  std::size_t i = 0;
  auto skip_blank = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  for (skip_blank(); i < text.size(); skip_blank()) {
    if (text[i] != '{') throw ParseError(ParseErrorKind::Malformed, line, "expected '{' in accept line");
    ++i;
    std::vector<State> members;
    bool closed = false;
    while (i < text.size()) {
      char c = text[i];
      if (c == '}') {
        ++i;
        closed = true;
        break;
      }
      if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < text.size() && text[j] != ',' && text[j] != '}' &&
             !std::isspace(static_cast<unsigned char>(text[j])))
        ++j;
      members.push_back(parse_state(text.substr(i, j - i), n, line));
      i = j;
    }
    if (!closed) throw ParseError(ParseErrorKind::Malformed, line, "unterminated '{' in accept line");
    out.emplace_back(std::move(members));
  }
  return out;
}

}  // namespace detail

inline AutomatonFile parse_automaton(std::istream& in) {
  std::optional<std::vector<std::string>> alphabet;
  std::optional<std::size_t> n;
  std::optional<State> initial;
  std::optional<bool> muller;
  std::optional<std::string> accept_text;
  std::size_t accept_line = 0;
  std::vector<State> delta;
  std::vector<std::size_t> defined_at;  // line of the defining trans line, 0 = undefined

  std::string raw;
  std::size_t line_no = 0;
  auto header_done = [&] { return alphabet && n && initial && muller; };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = detail::split_tokens(line);
    if (tokens.empty()) continue;
    const std::string& kw = tokens[0];

    if (kw == "alphabet" || kw == "states" || kw == "initial" || kw == "acc-type") {
      if (!delta.empty() || accept_text)
        throw ParseError(ParseErrorKind::BadHeader, line_no, "'" + kw + "' after transitions");
    }

    if (kw == "alphabet") {
      if (alphabet) throw ParseError(ParseErrorKind::BadHeader, line_no, "duplicate alphabet line");
      if (tokens.size() < 2) throw ParseError(ParseErrorKind::BadHeader, line_no, "empty alphabet");
      std::vector<std::string> syms(tokens.begin() + 1, tokens.end());
      for (std::size_t i = 0; i < syms.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
          if (syms[i] == syms[j])
            throw ParseError(ParseErrorKind::BadHeader, line_no, "duplicate symbol '" + syms[i] + "'");
      alphabet = std::move(syms);
    } else if (kw == "states") {
      if (n) throw ParseError(ParseErrorKind::BadHeader, line_no, "duplicate states line");
      auto v = tokens.size() == 2 ? detail::parse_uint(tokens[1]) : std::nullopt;
      if (!v || *v == 0) throw ParseError(ParseErrorKind::BadHeader, line_no, "expected 'states <n>' with n >= 1");
      n = static_cast<std::size_t>(*v);
    } else if (kw == "initial") {
      if (initial) throw ParseError(ParseErrorKind::BadHeader, line_no, "duplicate initial line");
      if (!n) throw ParseError(ParseErrorKind::BadHeader, line_no, "'initial' before 'states'");
      if (tokens.size() != 2) throw ParseError(ParseErrorKind::BadHeader, line_no, "expected 'initial <state>'");
      initial = detail::parse_state(tokens[1], *n, line_no);
    } else if (kw == "acc-type") {
      if (muller) throw ParseError(ParseErrorKind::BadHeader, line_no, "duplicate acc-type line");
      if (tokens.size() != 2 || (tokens[1] != "muller" && tokens[1] != "buchi"))
        throw ParseError(ParseErrorKind::BadHeader, line_no, "expected 'acc-type muller|buchi'");
      muller = tokens[1] == "muller";
    } else if (kw == "trans") {
      if (!header_done()) throw ParseError(ParseErrorKind::BadHeader, line_no, "transition before complete header");
      if (accept_text) throw ParseError(ParseErrorKind::BadHeader, line_no, "transition after accept line");
      if (tokens.size() != 4) throw ParseError(ParseErrorKind::Malformed, line_no, "expected 'trans <state> <symbol> <state>'");
      if (delta.empty()) {
        delta.assign(*n * alphabet->size(), 0);
        defined_at.assign(delta.size(), 0);
      }
      State from = detail::parse_state(tokens[1], *n, line_no);
      std::size_t sym = alphabet->size();
      for (std::size_t i = 0; i < alphabet->size(); ++i)
        if ((*alphabet)[i] == tokens[2]) sym = i;
      if (sym == alphabet->size())
        throw ParseError(ParseErrorKind::UnknownSymbol, line_no, "symbol '" + tokens[2] + "' not in alphabet");
      State to = detail::parse_state(tokens[3], *n, line_no);
      std::size_t slot = from * alphabet->size() + sym;
      if (defined_at[slot])
        throw ParseError(ParseErrorKind::DuplicateTransition, line_no,
                         "transition (" + tokens[1] + ", " + tokens[2] + ") already defined on line " +
                             std::to_string(defined_at[slot]));
      defined_at[slot] = line_no;
      delta[slot] = to;
    } else if (kw == "accept") {
      if (!header_done()) throw ParseError(ParseErrorKind::BadHeader, line_no, "accept before complete header");
      if (accept_text) throw ParseError(ParseErrorKind::BadHeader, line_no, "duplicate accept line");
      auto pos = line.find("accept");
      accept_text = std::string(line.substr(pos + 6));
      accept_line = line_no;
    } else {
      throw ParseError(ParseErrorKind::BadHeader, line_no, "unknown keyword '" + kw + "'");
    }
  }

  const std::size_t end_line = line_no;
  if (!alphabet) throw ParseError(ParseErrorKind::BadHeader, end_line, "missing alphabet line");
  if (!n) throw ParseError(ParseErrorKind::BadHeader, end_line, "missing states line");
  if (!initial) throw ParseError(ParseErrorKind::BadHeader, end_line, "missing initial line");
  if (!muller) throw ParseError(ParseErrorKind::BadHeader, end_line, "missing acc-type line");
  if (delta.empty()) {
    delta.assign(*n * alphabet->size(), 0);
    defined_at.assign(delta.size(), 0);
  }
  for (std::size_t slot = 0; slot < defined_at.size(); ++slot) {
    if (!defined_at[slot])
      throw ParseError(ParseErrorKind::MissingTransition, end_line,
                       "no transition for (" + std::to_string(slot / alphabet->size()) + ", " +
                           (*alphabet)[slot % alphabet->size()] + ")");
  }

  Acceptance acc;
  const std::string text = accept_text.value_or("");
  if (*muller) {
    acc = MullerTable(detail::parse_groups(text, *n, accept_line));
  } else {
    std::vector<State> members;
    for (const auto& tok : detail::split_tokens(text)) members.push_back(detail::parse_state(tok, *n, accept_line));
    acc = BuchiSet{StateSet(std::move(members))};
  }
  return AutomatonFile{DetAutomaton(std::move(*alphabet), *n, *initial, std::move(delta)), std::move(acc), {}};
}

inline AutomatonFile parse_automaton(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_automaton(in);
}

/// Canonical text form: header, transitions sorted by (state, symbol index),
/// accept line, then one `# state i: note` line per annotated state.
inline std::string serialize(const DetAutomaton& a, const Acceptance& acc,
                             const std::vector<std::string>& state_notes = {}) {
  std::ostringstream out;
  out << "alphabet";
  for (const auto& s : a.alphabet()) out << ' ' << s;
  out << "\nstates " << a.num_states() << "\ninitial " << a.initial() << "\nacc-type "
      << (std::holds_alternative<MullerTable>(acc) ? "muller" : "buchi") << '\n';
  for (State s = 0; s < a.num_states(); ++s)
    for (Symbol x = 0; x < a.num_symbols(); ++x)
      out << "trans " << s << ' ' << a.alphabet()[x] << ' ' << a.step(s, x) << '\n';
  out << "accept";
  if (const auto* t = std::get_if<MullerTable>(&acc)) {
    for (const auto& z : *t) out << ' ' << z.to_string();
  } else {
    for (State s : std::get<BuchiSet>(acc).accepting) out << ' ' << s;
  }
  out << '\n';
  for (std::size_t i = 0; i < state_notes.size(); ++i)
    if (!state_notes[i].empty()) out << "# state " << i << ": " << state_notes[i] << '\n';
  return out.str();
}

inline std::string serialize(const AutomatonFile& f) {
  return serialize(f.automaton, f.acceptance, f.state_notes);
}

}  // namespace baire

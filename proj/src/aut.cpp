#include "fairlts/aut.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <vector>

namespace fairlts {

namespace {

std::string_view strip(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool identifier_like(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

long parse_int(std::string_view s, int line) {
  s = strip(s);
  if (s.empty()) throw ParseError(line, "expected a number");
  long v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError(line, "expected a number, got '" + std::string(s) + "'");
    v = v * 10 + (c - '0');
    if (v > 1'000'000'000) throw ParseError(line, "number too large");
  }
  return v;
}

struct RawTransition {
  long src;
  std::string label;
  long dst;
  int line;
};

// Parses "(src,label,dst)" where label is quoted or identifier-like.
RawTransition parse_transition(std::string_view body, int line) {
  body = strip(body);
  if (body.size() < 2 || body.front() != '(' || body.back() != ')')
    throw ParseError(line, "transition must be parenthesized");
  body = body.substr(1, body.size() - 2);

  size_t c1 = body.find(',');
  if (c1 == std::string_view::npos) throw ParseError(line, "malformed transition");
  long src = parse_int(body.substr(0, c1), line);

  std::string_view rest = strip(body.substr(c1 + 1));
  std::string label;
  std::string_view tail;
  if (!rest.empty() && rest.front() == '"') {
    size_t close = rest.find('"', 1);
    if (close == std::string_view::npos) throw ParseError(line, "unterminated quoted label");
    label = std::string(rest.substr(1, close - 1));
    tail = strip(rest.substr(close + 1));
    if (tail.empty() || tail.front() != ',') throw ParseError(line, "malformed transition");
    tail = tail.substr(1);
  } else {
    size_t c2 = rest.find(',');
    if (c2 == std::string_view::npos) throw ParseError(line, "malformed transition");
    label = std::string(strip(rest.substr(0, c2)));
    if (!identifier_like(label))
      throw ParseError(line, "unquoted label must be an identifier: '" + label + "'");
    tail = rest.substr(c2 + 1);
  }
  if (label.empty()) throw ParseError(line, "empty label");
  for (char ch : label)
    if (ch == '"' || std::isspace(static_cast<unsigned char>(ch)))
      throw ParseError(line, "label contains whitespace or quote");

  long dst = parse_int(tail, line);
  return {src, label, dst, line};
}

}  // namespace

Lts parse_aut(std::string_view text) {
  std::vector<std::string_view> lines;
  for (size_t pos = 0; pos <= text.size();) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }

  int line_no = 0;
  size_t i = 0;
  auto next_meaningful = [&]() -> std::optional<std::string_view> {
    while (i < lines.size()) {
      std::string_view l = strip(lines[i]);
      ++i;
      ++line_no;
      if (l.empty() || l.front() == '#') continue;
      return l;
    }
    return std::nullopt;
  };

  auto header = next_meaningful();
  if (!header) throw ParseError(1, "missing 'des' header");
  int header_line = line_no;
  {
    std::string_view h = *header;
    if (h.substr(0, 3) != "des") throw ParseError(header_line, "missing 'des' header");
    h = strip(h.substr(3));
    if (h.size() < 2 || h.front() != '(' || h.back() != ')')
      throw ParseError(header_line, "malformed 'des' header");
    h = h.substr(1, h.size() - 2);
    size_t c1 = h.find(','), c2 = h.rfind(',');
    if (c1 == std::string_view::npos || c2 == c1)
      throw ParseError(header_line, "malformed 'des' header");
    parse_int(h.substr(0, c1), header_line);  // initial state: recorded by the format, unused
    long tcount = parse_int(h.substr(c1 + 1, c2 - c1 - 1), header_line);
    long scount = parse_int(h.substr(c2 + 1), header_line);
    if (scount > 10'000'000) throw ParseError(header_line, "state count too large");

    std::set<std::string> declared;
    std::vector<RawTransition> raw;
    bool saw_transition = false;
    while (auto l = next_meaningful()) {
      if (l->substr(0, 9) == "alphabet:") {
        if (saw_transition)
          throw ParseError(line_no, "alphabet line must precede transitions");
        std::istringstream ss{std::string(l->substr(9))};
        std::string tok;
        while (ss >> tok) {
          for (char ch : tok)
            if (ch == '"') throw ParseError(line_no, "label contains quote");
          declared.insert(tok);
        }
        continue;
      }
      saw_transition = true;
      raw.push_back(parse_transition(*l, line_no));
    }
    if (static_cast<long>(raw.size()) != tcount)
      throw ParseError(header_line,
                       "header declares " + std::to_string(tcount) + " transitions, found " +
                           std::to_string(raw.size()));

    for (const RawTransition& t : raw) declared.insert(t.label);
    std::vector<std::string> alphabet(declared.begin(), declared.end());
    Lts probe(0, alphabet, {});

    std::vector<Transition> ts;
    std::set<Transition> seen;
    for (const RawTransition& t : raw) {
      if (t.src >= scount || t.dst >= scount)
        throw ParseError(t.line, "state index out of range (header declares " +
                                     std::to_string(scount) + " states)");
      Transition tr{static_cast<int>(t.src), *probe.action_index(t.label),
                    static_cast<int>(t.dst)};
      if (!seen.insert(tr).second) throw ParseError(t.line, "duplicate transition");
      ts.push_back(tr);
    }
    return Lts(static_cast<int>(scount), std::move(alphabet), std::move(ts));
  }
}

std::string write_aut(const Lts& lts) {
  std::string out = "des (0," + std::to_string(lts.transitions().size()) + "," +
                    std::to_string(lts.state_count()) + ")\n";
  ActionMask used = 0;
  for (const Transition& t : lts.transitions()) used |= ActionMask{1} << t.label;
  ActionMask unused = lts.full_mask() & ~used;
  if (unused != 0) {
    out += "alphabet:";
    for (int a : mask_actions(unused)) out += " " + lts.action_name(a);
    out += "\n";
  }
  for (const Transition& t : lts.transitions()) {
    out += "(" + std::to_string(t.src) + ",\"" + lts.action_name(t.label) + "\"," +
           std::to_string(t.dst) + ")\n";
  }
  return out;
}

}  // namespace fairlts

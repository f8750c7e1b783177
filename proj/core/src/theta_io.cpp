#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>

#include "altdiff/altop.hpp"
#include "altdiff/error.hpp"

namespace altdiff::altop {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, int line_no) {
  s = trim(s);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": expected an integer, got '" + std::string(s) + "'");
  return value;
}

}  // namespace

ThetaSpec parse_theta(std::string_view text) {
  std::optional<int> n;
  std::optional<int> d;
  struct Entry {
    int i, j;
    std::string bits;
    int line;
  };
  std::vector<Entry> entries;

  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto sep = line.find_first_of(":=");
    if (sep == std::string_view::npos)
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": missing ':'");
    const auto key = trim(line.substr(0, sep));
    const auto value = trim(line.substr(sep + 1));
    if (key == "n") {
      n = parse_int(value, line_no);
    } else if (key == "d") {
      d = parse_int(value, line_no);
    } else {
      const auto comma = key.find(',');
      if (comma == std::string_view::npos)
        throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
      entries.push_back({parse_int(key.substr(0, comma), line_no), parse_int(key.substr(comma + 1), line_no),
                         std::string(value), line_no});
    }
  }
  if (!n || !d) throw Error(Errc::ParseError, "defining matrix file needs both 'n' and 'd'");

  ThetaSpec spec(*n, *d);
  for (const auto& e : entries) {
    const auto v = BitVec::parse_binary(e.bits);
    if (v.width() != *d)
      throw Error(Errc::ParseError, "line " + std::to_string(e.line) + ": entry must have exactly d = " +
                                        std::to_string(*d) + " bits");
    spec.set_b(e.i, e.j, v);
  }
  return spec;
}

std::string render_theta(const ThetaSpec& spec) {
  std::ostringstream out;
  out << "n: " << spec.n() << "\n";
  out << "d: " << spec.d() << "\n";
  for (const auto& [key, value] : spec.entries()) out << key.first << "," << key.second << ": " << value.to_binary() << "\n";
  return out.str();
}

}  // namespace altdiff::altop

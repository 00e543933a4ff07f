#include "kamp/chain.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <random>

#include "kamp/error.hpp"

namespace kamp {

bool Chain::holds(std::string_view atom, std::size_t position) const {
  auto it = labels_.find(atom);
  return it != labels_.end() && position < it->second.size() && it->second[position];
}

void Chain::set(std::string_view atom, std::size_t position, bool value) {
  if (position >= size_) {
    throw EvalError("position " + std::to_string(position) + " out of range for chain of size " +
                    std::to_string(size_));
  }
  auto it = labels_.find(atom);
  if (it == labels_.end()) it = labels_.emplace(std::string(atom), std::vector<bool>(size_)).first;
  it->second[position] = value;
}

std::vector<std::size_t> Chain::positions(std::string_view atom) const {
  std::vector<std::size_t> out;
  auto it = labels_.find(atom);
  if (it == labels_.end()) return out;
  for (std::size_t t = 0; t < size_; ++t) {
    if (it->second[t]) out.push_back(t);
  }
  return out;
}

std::vector<std::string> Chain::atoms() const {
  std::vector<std::string> out;
  for (const auto& [name, bits] : labels_) {
    if (std::find(bits.begin(), bits.end(), true) != bits.end()) out.push_back(name);
  }
  return out;
}

bool operator==(const Chain& a, const Chain& b) {
  if (a.size_ != b.size_) return false;
  auto names = a.atoms();
  if (names != b.atoms()) return false;
  for (const auto& name : names) {
    if (a.positions(name) != b.positions(name)) return false;
  }
  return true;
}

Chain reverse(const Chain& m) {
  Chain out(m.size());
  for (const auto& atom : m.atoms()) {
    for (std::size_t t : m.positions(atom)) out.set(atom, m.size() - 1 - t);
  }
  return out;
}

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

bool valid_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

std::size_t parse_number(std::string_view s, std::size_t column) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError(ParseError::Kind::syntax, 1, column,
                     "expected a nonnegative integer, found '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

Chain parse_chain(std::string_view text) {
  std::vector<std::pair<std::string, std::size_t>> items;  // item text, column
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ';') {
      items.emplace_back(strip(text.substr(start, i - start)), start + 1);
      start = i + 1;
    }
  }
  if (!items.empty() && items.back().first.empty() && items.size() > 1) items.pop_back();

  auto split = [](const std::string& item, std::size_t column) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ParseError(ParseError::Kind::syntax, 1, column, "expected 'name=...', found '" + item + "'");
    }
    return std::pair{item.substr(0, eq), item.substr(eq + 1)};
  };

  const auto [head, count] = split(items.front().first, items.front().second);
  if (head != "n") {
    throw ParseError(ParseError::Kind::syntax, 1, items.front().second,
                     "chain must start with the size declaration 'n=...'");
  }
  Chain m(parse_number(count, items.front().second));

  std::vector<std::string> seen;
  for (std::size_t k = 1; k < items.size(); ++k) {
    const auto& [item, column] = items[k];
    const auto [name, list] = split(item, column);
    if (!valid_name(name)) {
      throw ParseError(ParseError::Kind::syntax, 1, column, "invalid atom name '" + name + "'");
    }
    if (std::find(seen.begin(), seen.end(), name) != seen.end()) {
      throw ParseError(ParseError::Kind::syntax, 1, column, "atom '" + name + "' listed twice");
    }
    seen.push_back(name);
    std::size_t from = 0;
    while (from < list.size()) {
      auto comma = list.find(',', from);
      if (comma == std::string::npos) comma = list.size();
      const std::size_t t = parse_number(std::string_view(list).substr(from, comma - from), column);
      if (t >= m.size()) {
        throw ParseError(ParseError::Kind::syntax, 1, column,
                         "position " + std::to_string(t) + " of atom '" + name +
                             "' is outside the chain");
      }
      m.set(name, t);
      from = comma + 1;
    }
  }
  return m;
}

std::vector<Chain> parse_chains(std::string_view text) {
  std::vector<Chain> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!strip(line).empty()) {
      try {
        out.push_back(parse_chain(line));
      } catch (const ParseError& e) {
        throw ParseError(e.kind(), line_no, e.column(), e.what());
      }
    }
    start = end + 1;
  }
  return out;
}

std::string format_chain(const Chain& m) {
  std::string out = "n=" + std::to_string(m.size());
  for (const auto& atom : m.atoms()) {
    out += "; " + atom + "=";
    bool first = true;
    for (std::size_t t : m.positions(atom)) {
      if (!first) out += ',';
      out += std::to_string(t);
      first = false;
    }
  }
  return out;
}

std::vector<Chain> enumerate_chains(std::size_t max_size, std::span<const std::string> atoms) {
  std::vector<Chain> out;
  const std::size_t k = atoms.size();
  for (std::size_t n = 0; n <= max_size; ++n) {
    const std::size_t bits = k * n;
    if (bits >= 63) throw std::length_error("chain enumeration too large");
    const std::uint64_t labelings = std::uint64_t{1} << bits;
    for (std::uint64_t index = 0; index < labelings; ++index) {
      Chain m(n);
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t t = 0; t < n; ++t) {
          if ((index >> (a * n + t)) & 1U) m.set(atoms[a], t);
        }
      }
      out.push_back(std::move(m));
    }
  }
  return out;
}

std::uint64_t chain_count(std::size_t max_size, std::size_t atom_count) {
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  for (std::size_t n = 0; n <= max_size; ++n) {
    const std::size_t bits = atom_count * n;
    const std::uint64_t term = bits >= 64 ? cap : (std::uint64_t{1} << bits);
    total = total > cap - term ? cap : total + term;
  }
  return total;
}

Density parse_density(std::string_view text) {
  const std::string s = strip(text);
  const auto slash = s.find('/');
  Density d;
  if (slash == std::string::npos) {
    d.num = parse_number(s, 1);
    d.den = 1;
  } else {
    d.num = parse_number(std::string_view(s).substr(0, slash), 1);
    d.den = parse_number(std::string_view(s).substr(slash + 1), slash + 2);
  }
  if (d.den == 0 || d.num > d.den) {
    throw ParseError(ParseError::Kind::syntax, 1, 1, "density must be a fraction in [0,1]");
  }
  return d;
}

Chain random_chain(std::uint64_t seed, std::size_t size, std::span<const std::string> atoms,
                   Density density) {
  std::mt19937_64 rng(seed);
  Chain m(size);
  for (const auto& atom : atoms) {
    for (std::size_t t = 0; t < size; ++t) {
      if (rng() % density.den < density.num) m.set(atom, t);
    }
  }
  return m;
}

std::vector<Chain> random_chains(std::uint64_t seed, std::size_t count, std::size_t max_size,
                                 std::span<const std::string> atoms, Density density) {
  std::mt19937_64 sizes(seed ^ 0x5851f42d4c957f2dULL);
  std::vector<Chain> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t size = static_cast<std::size_t>(sizes() % (max_size + 1));
    out.push_back(random_chain(seed * 0x9e3779b97f4a7c15ULL + i, size, atoms, density));
  }
  return out;
}

}  // namespace kamp

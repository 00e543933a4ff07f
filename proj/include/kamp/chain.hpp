#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kamp {

/// Variable name to position.
using Assignment = std::map<std::string, std::size_t, std::less<>>;

/// Finite labeled linear order: positions 0..size-1 under the usual order,
/// each atom interpreted as a subset of positions. Atoms that were never
/// set are empty.
class Chain {
 public:
  Chain() = default;
  explicit Chain(std::size_t size) : size_(size) {}

  std::size_t size() const noexcept { return size_; }

  bool holds(std::string_view atom, std::size_t position) const;
  /// Throws EvalError if `position >= size()`.
  void set(std::string_view atom, std::size_t position, bool value = true);

  /// Sorted positions where `atom` holds.
  std::vector<std::size_t> positions(std::string_view atom) const;
  /// Atoms with at least one labeled position, sorted.
  std::vector<std::string> atoms() const;

  friend bool operator==(const Chain& a, const Chain& b);

 private:
  std::size_t size_ = 0;
  std::map<std::string, std::vector<bool>, std::less<>> labels_;
};

/// Time reversal: position t becomes size-1-t.
Chain reverse(const Chain& m);

/// `n=5; P=0,2,4; Q=1`. Whitespace-insensitive; omitted atoms are empty.
/// Throws ParseError.
Chain parse_chain(std::string_view text);
/// One chain per non-blank line; `#` starts a comment.
std::vector<Chain> parse_chains(std::string_view text);
/// Canonical text form; atoms sorted, empty atoms omitted.
std::string format_chain(const Chain& m);

/// Every chain of size 0..max_size over `atoms`, each exactly once. Within a
/// size, labeling index i puts atom a at position t iff bit a*size+t of i is set.
std::vector<Chain> enumerate_chains(std::size_t max_size, std::span<const std::string> atoms);
/// sum over N of 2^(k*N), saturating.
std::uint64_t chain_count(std::size_t max_size, std::size_t atom_count);

/// Probability num/den.
struct Density {
  std::uint64_t num = 1;
  std::uint64_t den = 2;
};

/// Parses `NUM/DEN` (or a bare 0/1). Throws ParseError.
Density parse_density(std::string_view text);

/// Deterministic for a fixed seed: each (atom, position) is labeled
/// independently with probability `density`.
Chain random_chain(std::uint64_t seed, std::size_t size, std::span<const std::string> atoms,
                   Density density = {});

/// `count` chains with sizes drawn uniformly from 0..max_size.
std::vector<Chain> random_chains(std::uint64_t seed, std::size_t count, std::size_t max_size,
                                 std::span<const std::string> atoms, Density density = {});

}  // namespace kamp

#pragma once

// Three-dimensional matching instances: the NP-complete source problem the
// score reduction starts from.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dodgson {

struct TdmTriple {
  std::string w, x, y;
  friend auto operator<=>(const TdmTriple&, const TdmTriple&) = default;
};

/// Sets W, X, Y and triples M. Fields are plain data so malformed values can
/// be represented; `violation()` reports what is wrong, if anything.
struct TdmInstance {
  std::vector<std::string> w_set, x_set, y_set;
  std::vector<TdmTriple> triples;

  std::size_t q() const { return w_set.size(); }
  /// Empty when W, X, Y are nonempty, disjoint, duplicate-free, equally
  /// sized, and every triple lies in W x X x Y with no triple repeated.
  std::optional<std::string> violation() const;
  bool valid() const { return !violation(); }

  friend bool operator==(const TdmInstance&, const TdmInstance&) = default;
};

/// Either a structured instance or raw, possibly malformed, text.
using TdmInput = std::variant<TdmInstance, std::string>;

/// Exact backtracking: W elements in order, each matched to an unused x, y.
/// Precondition: `instance.valid()`.
bool has_matching(const TdmInstance& instance);

/// Reads the .3dm format: `W: ...`, `X: ...`, `Y: ...` lines followed by one
/// `<w> <x> <y>` line per triple; `#` comments. Throws ParseError. The
/// result may still be an invalid instance (check `violation()`).
TdmInstance parse_3dm(std::string_view text);
std::string serialize_3dm(const TdmInstance& instance);

/// All instances over W = {w1..wq}, X = {x1..xq}, Y = {y1..yq} whose triple
/// count lies in [min_triples, max_triples], one per subset of W x X x Y.
/// Restartable via `reset()`.
class InstanceEnumerator {
 public:
  InstanceEnumerator(std::size_t q, std::size_t min_triples, std::size_t max_triples);

  std::optional<TdmInstance> next();
  void reset();

 private:
  bool advance();

  std::size_t q_, min_, max_;
  std::vector<TdmTriple> universe_;
  std::size_t size_ = 0;
  std::vector<std::size_t> combo_;
  bool exhausted_ = false;
  bool started_ = false;
};

}  // namespace dodgson

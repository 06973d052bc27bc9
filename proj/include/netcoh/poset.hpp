#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netcoh/rational.hpp"

namespace netcoh {

struct TooManyElements : Error {
  TooManyElements() : Error("poset enumeration exceeds maxElements") {}
};
struct ElementNotInPoset : Error {
  ElementNotInPoset() : Error("element does not belong to the poset") {}
};
struct WindowNotSymmetric : Error {
  WindowNotSymmetric() : Error("space inversion needs a window symmetric about 0") {}
};

// Open subsets of R used as index elements: bounded intervals (a, b),
// double intervals (a1, b1) u (a2, b2) with b1 < a2, and half-lines.
struct IndexElement {
  enum class Kind { Interval, DoubleInterval, HalfLineLeft, HalfLineRight };

  Kind kind = Kind::Interval;
  Rat a, b;    // Interval/Double first component; HalfLineLeft: (-inf, b); HalfLineRight: (a, +inf)
  Rat a2, b2;  // Double second component only

  static IndexElement interval(const Rat& a, const Rat& b);
  static IndexElement double_interval(const Rat& a1, const Rat& b1,
                                      const Rat& a2, const Rat& b2);
  static IndexElement half_line_left(const Rat& b);
  static IndexElement half_line_right(const Rat& a);

  bool is_interval() const { return kind == Kind::Interval; }
  bool is_double() const { return kind == Kind::DoubleInterval; }
  bool is_half_line() const {
    return kind == Kind::HalfLineLeft || kind == Kind::HalfLineRight;
  }

  // Connected open components as (lo, hi) pairs; half-lines use a one-sided
  // marker via has_left/has_right below.
  struct Component {
    bool unbounded_left = false, unbounded_right = false;
    Rat lo, hi;  // finite endpoints where bounded
  };
  std::vector<Component> components() const;

  // Infimum/supremum over the point set (finite ones only meaningful when
  // the corresponding side is bounded).
  bool bounded_below() const { return kind != Kind::HalfLineLeft; }
  bool bounded_above() const { return kind != Kind::HalfLineRight; }
  Rat inf() const;  // requires bounded_below
  Rat sup() const;  // requires bounded_above

  std::string to_string() const;

  bool operator==(const IndexElement& o) const;
  bool operator<(const IndexElement& o) const;  // enumeration order
};

// Set relations on the underlying open sets.
bool leq(const IndexElement& o1, const IndexElement& o2);       // o1 subset o2
bool disjoint(const IndexElement& o1, const IndexElement& o2);  // empty meet
bool before(const IndexElement& o1, const IndexElement& o2);    // o1 < o2

enum class PosetKind { I, I2, D, J };

const char* poset_kind_name(PosetKind k);
std::optional<PosetKind> poset_kind_from_name(const std::string& name);

struct CausalPoset {
  PosetKind kind = PosetKind::I;
  Rat lo, hi, step;
  std::vector<IndexElement> elements;  // deterministic enumeration order

  std::optional<size_t> index_of(const IndexElement& o) const;
  bool contains(const IndexElement& o) const { return index_of(o).has_value(); }
};

// Enumerates all grid elements of the kind inside [lo, hi];
// (hi-lo)/step must be an integer >= 4. Throws TooManyElements past the cap.
CausalPoset build_poset(PosetKind kind, const Rat& lo, const Rat& hi,
                        const Rat& step, size_t max_elements);

// One piece of a causal complement, clipped to the window. Pieces touching
// the window edge are flagged unbounded on that side (the true complement
// goes to infinity there).
struct ComplementPiece {
  Rat lo, hi;                  // clipped extent, lo <= hi
  bool unbounded_left = false;   // true piece extends to -inf
  bool unbounded_right = false;  // true piece extends to +inf
  bool empty() const { return lo == hi && !unbounded_left && !unbounded_right; }
};

// Interval -> [left half-line, right half-line]; double interval ->
// [left half-line, gap, right half-line]. Degenerate pieces are kept,
// flagged empty.
std::vector<ComplementPiece> causal_complement(const IndexElement& o,
                                               const Rat& window_lo,
                                               const Rat& window_hi);

struct DisjointSieve {
  std::vector<IndexElement> left, right, other;
};

// Splits o^bot into the left / right / unordered parts. Throws
// ElementNotInPoset when o is not an element.
DisjointSieve disjoint_sieve(const IndexElement& o, const CausalPoset& poset);

bool is_directed(const CausalPoset& poset);
// Connectivity of the 1-simplex adjacency graph (common support exists).
bool is_connected(const CausalPoset& poset);
// Every element of super is contained in some element of sub.
bool is_cofinal(const std::vector<IndexElement>& sub, const CausalPoset& super);

// Graph of the disjointness relation, reported through its two oriented
// components G< and G> (ordered pairs); pairs that are disjoint but not
// order-comparable (double-interval interleavings) are counted separately.
struct BotGraph {
  size_t component_count = 0;  // components of the oriented part
  size_t less_pairs = 0;       // |G<|
  size_t greater_pairs = 0;    // |G>|
  size_t mixed_pairs = 0;      // disjoint, neither before nor after
  bool less_connected = false;
  bool greater_connected = false;
};

BotGraph bot_graph(const CausalPoset& poset);

// S: x -> -x on elements.
IndexElement apply_inversion(const IndexElement& o);

// (o1,o2) in G<  iff  (S o1, S o2) in G>, over all disjoint pairs.
// Requires a window symmetric about 0.
bool flip_check(const CausalPoset& poset);

}  // namespace netcoh

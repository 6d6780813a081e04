#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace aliascalc {

/// One step of an alias expression. Either a single attribute/variable name
/// (optionally a negative context marker, written `a'`) or a repeatable
/// group of names, written `(a.b)*`.
///
/// Star bodies never nest and never contain negative names. Negative atoms
/// are produced only while a qualified call is being transposed into its
/// caller's context; they never appear in parsed programs or final results.
struct Segment {
  enum class Kind { Atom, Star };

  Kind kind = Kind::Atom;
  std::string name;               // Atom only
  bool negative = false;          // Atom only
  std::vector<std::string> body;  // Star only, nonempty

  static Segment atom(std::string n) { return {Kind::Atom, std::move(n), false, {}}; }
  static Segment neg(std::string n) { return {Kind::Atom, std::move(n), true, {}}; }
  static Segment star(std::vector<std::string> b) { return {Kind::Star, {}, false, std::move(b)}; }

  bool is_atom() const { return kind == Kind::Atom; }
  bool is_star() const { return kind == Kind::Star; }

  friend bool operator==(const Segment&, const Segment&) = default;
};

// Atoms order before stars so that `x.a` sorts before `x.(a.b)*.a`, which is
// the order relations are rendered in.
std::strong_ordering compare(const Segment& a, const Segment& b);

/// An alias expression: a chain of segments rooted at a variable. The empty
/// chain denotes the current object (`Current`); `e.Current = Current.e = e`
/// holds by construction since concatenation just joins segment lists.
class Path {
 public:
  Path() = default;
  explicit Path(std::vector<Segment> segs) : segments_(std::move(segs)) {}

  /// Parses a dotted name like "x.a.b" into a concrete path. No stars, no
  /// negatives, no validation beyond shape; "Current" yields the empty path.
  static Path of(const std::string& dotted);

  const std::vector<Segment>& segments() const { return segments_; }
  std::size_t size() const { return segments_.size(); }
  bool empty() const { return segments_.empty(); }

  bool has_star() const;
  bool has_negative() const;
  /// Concrete = plain attribute chain: no stars, no negative atoms.
  bool concrete() const { return !has_star() && !has_negative(); }

  /// Head variable name, if the path starts with a positive atom.
  std::optional<std::string> head() const;

  Path append_atom(const std::string& name) const;
  Path slice(std::size_t begin, std::size_t end) const;

  /// True if `prefix` is a (proper or equal) leading segment sequence.
  bool starts_with(const Path& prefix) const;

  std::string render() const;

  friend bool operator==(const Path&, const Path&) = default;

 private:
  std::vector<Segment> segments_;
};

std::strong_ordering compare(const Path& a, const Path& b);
inline bool operator<(const Path& a, const Path& b) { return compare(a, b) < 0; }

/// Joins paths and re-normalizes: cancels `x.x'` pairs and collapses
/// adjacent identical star groups.
Path concat(const Path& a, const Path& b);

/// Canonical form: every `name` atom immediately followed by `name'` is
/// cancelled (repeatedly), adjacent star groups with identical bodies are
/// merged. Never lengthens a path; idempotent.
Path normalize(const Path& p);

/// Reversed, polarity-flipped copy of a concrete path, so that
/// concat(p, negate(p)) normalizes to the empty path.
Path negate(const Path& p);

/// Language membership: does concrete path `e` belong to the set of paths
/// denoted by `pattern`, where a star group stands for zero or more
/// repetitions of its body?
bool matches(const Path& pattern, const Path& e);

/// Language inclusion: is every instance of `special` an instance of
/// `general`? Coincides with `matches` when `special` is concrete. Keeps
/// relations small by letting wider star patterns absorb narrower ones.
bool covers(const Path& general, const Path& special);

}  // namespace aliascalc

#include "aliascalc/path.hpp"

#include <cstdint>
#include <set>

namespace aliascalc {

std::strong_ordering compare(const Segment& a, const Segment& b) {
  if (a.kind != b.kind)
    return a.kind == Segment::Kind::Atom ? std::strong_ordering::less
                                         : std::strong_ordering::greater;
  if (a.kind == Segment::Kind::Atom) {
    if (auto c = a.name <=> b.name; c != 0) return c;
    return (a.negative ? 1 : 0) <=> (b.negative ? 1 : 0);
  }
  return a.body <=> b.body;
}

Path Path::of(const std::string& dotted) {
  std::vector<Segment> segs;
  std::size_t pos = 0;
  while (pos < dotted.size()) {
    std::size_t dot = dotted.find('.', pos);
    std::string part = dotted.substr(pos, dot == std::string::npos ? dot : dot - pos);
    if (part != "Current" && !part.empty()) segs.push_back(Segment::atom(part));
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return Path(std::move(segs));
}

bool Path::has_star() const {
  for (const auto& s : segments_)
    if (s.is_star()) return true;
  return false;
}

bool Path::has_negative() const {
  for (const auto& s : segments_)
    if (s.is_atom() && s.negative) return true;
  return false;
}

std::optional<std::string> Path::head() const {
  if (segments_.empty()) return std::nullopt;
  const Segment& s = segments_.front();
  if (!s.is_atom() || s.negative) return std::nullopt;
  return s.name;
}

Path Path::append_atom(const std::string& name) const {
  std::vector<Segment> segs = segments_;
  segs.push_back(Segment::atom(name));
  return Path(std::move(segs));
}

Path Path::slice(std::size_t begin, std::size_t end) const {
  std::vector<Segment> segs(segments_.begin() + begin, segments_.begin() + end);
  return Path(std::move(segs));
}

bool Path::starts_with(const Path& prefix) const {
  if (prefix.size() > size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (!(segments_[i] == prefix.segments_[i])) return false;
  return true;
}

std::string Path::render() const {
  if (segments_.empty()) return "Current";
  std::string out;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (i) out += '.';
    const Segment& s = segments_[i];
    if (s.is_atom()) {
      out += s.name;
      if (s.negative) out += '\'';
    } else {
      out += '(';
      for (std::size_t j = 0; j < s.body.size(); ++j) {
        if (j) out += '.';
        out += s.body[j];
      }
      out += ")*";
    }
  }
  return out;
}

// Shortlex: a shorter expression always orders before a longer one, so the
// plain side of a pair renders first ([x.b, x.a.b], not the reverse).
std::strong_ordering compare(const Path& a, const Path& b) {
  const auto& as = a.segments();
  const auto& bs = b.segments();
  if (auto c = as.size() <=> bs.size(); c != 0) return c;
  for (std::size_t i = 0; i < as.size(); ++i)
    if (auto c = compare(as[i], bs[i]); c != 0) return c;
  return std::strong_ordering::equal;
}

Path normalize(const Path& p) {
  std::vector<Segment> out;
  for (const Segment& s : p.segments()) {
    if (s.is_atom() && s.negative && !out.empty() && out.back().is_atom() &&
        !out.back().negative && out.back().name == s.name) {
      out.pop_back();
      continue;
    }
    if (s.is_star() && !out.empty() && out.back() == s) continue;
    out.push_back(s);
  }
  return Path(std::move(out));
}

Path concat(const Path& a, const Path& b) {
  std::vector<Segment> segs = a.segments();
  segs.insert(segs.end(), b.segments().begin(), b.segments().end());
  return normalize(Path(std::move(segs)));
}

Path negate(const Path& p) {
  std::vector<Segment> segs;
  for (auto it = p.segments().rbegin(); it != p.segments().rend(); ++it) {
    Segment s = *it;
    s.negative = !s.negative;
    segs.push_back(std::move(s));
  }
  return Path(std::move(segs));
}

namespace {

bool match_from(const std::vector<Segment>& pat, const std::vector<Segment>& e,
                std::size_t pi, std::size_t ei) {
  if (pi == pat.size()) return ei == e.size();
  const Segment& s = pat[pi];
  if (s.is_atom()) {
    if (ei >= e.size()) return false;
    const Segment& t = e[ei];
    if (!t.is_atom() || t.name != s.name || t.negative != s.negative) return false;
    return match_from(pat, e, pi + 1, ei + 1);
  }
  // Star: zero repetitions, or consume one body copy and stay on this segment.
  if (match_from(pat, e, pi + 1, ei)) return true;
  if (ei + s.body.size() > e.size()) return false;
  for (std::size_t j = 0; j < s.body.size(); ++j) {
    const Segment& t = e[ei + j];
    if (!t.is_atom() || t.negative || t.name != s.body[j]) return false;
  }
  return match_from(pat, e, pi, ei + s.body.size());
}

}  // namespace

bool matches(const Path& pattern, const Path& e) {
  return match_from(pattern.segments(), e.segments(), 0, 0);
}

namespace {

// Atom-level automaton of a pattern, small enough for bitmask subsets: a
// chain of atom transitions with a backward loop per star group.
struct PatternNfa {
  struct Edge {
    std::string name;
    bool negative;
    int from, to;
  };
  std::vector<Edge> edges;
  int accept = 0;  // states are 0..accept

  static constexpr int kMaxStates = 63;

  static std::optional<PatternNfa> build(const Path& p) {
    PatternNfa nfa;
    int spine = 0;
    int state_count = 1;
    for (const Segment& s : p.segments()) {
      if (s.is_atom()) {
        nfa.edges.push_back({s.name, s.negative, spine, state_count});
        spine = state_count++;
      } else {
        // A loop anchored at the spine; zero repetitions fall through, the
        // body runs through fresh internal states back to the spine.
        int cur = spine;
        for (std::size_t j = 0; j < s.body.size(); ++j) {
          int to = (j + 1 == s.body.size()) ? spine : state_count++;
          nfa.edges.push_back({s.body[j], false, cur, to});
          cur = to;
        }
      }
      if (state_count > kMaxStates) return std::nullopt;
    }
    nfa.accept = spine;
    return nfa;
  }

  std::uint64_t step(std::uint64_t set, const std::string& name, bool negative) const {
    std::uint64_t out = 0;
    for (const Edge& e : edges)
      if (e.name == name && e.negative == negative && (set >> e.from & 1))
        out |= std::uint64_t{1} << e.to;
    return out;
  }
};

// Does `general` accept every word `special` can produce from segment `i`
// onwards, starting in state set `set`?
bool covers_from(const PatternNfa& nfa, const std::vector<Segment>& special,
                 std::size_t i, std::uint64_t set) {
  if (set == 0) return false;
  if (i == special.size()) return (set >> nfa.accept) & 1;

  const Segment& s = special[i];
  if (s.is_atom())
    return covers_from(nfa, special, i + 1, nfa.step(set, s.name, s.negative));

  // Star: the continuation must be accepted after every number of body
  // repetitions. The reachable state sets form a finite orbit.
  std::set<std::uint64_t> seen;
  std::uint64_t cur = set;
  while (seen.insert(cur).second) {
    if (!covers_from(nfa, special, i + 1, cur)) return false;
    for (const std::string& name : s.body) cur = nfa.step(cur, name, false);
    if (cur == 0) return false;  // some repetition count has no match
  }
  return true;
}

}  // namespace

bool covers(const Path& general, const Path& special) {
  if (!special.has_star()) return matches(general, special);
  auto nfa = PatternNfa::build(general);
  if (!nfa) return general == special;
  return covers_from(*nfa, special.segments(), 0, 1);
}

}  // namespace aliascalc

#include <wijsman/closed_set.hpp>
#include <wijsman/error.hpp>

#include "detail.hpp"

#include <algorithm>

namespace wijsman {

bool SummandTuple::operator==(const SummandTuple& o) const {
  return std::equal(parts.begin(), parts.end(), o.parts.begin(), o.parts.end(),
                    [](const auto& a, const auto& b) {
                      if (a.first != b.first) return false;
                      if (!a.second || !b.second) return a.second == b.second;
                      return *a.second == *b.second;
                    });
}

namespace {

std::string join_points(const std::set<Point>& pts) {
  std::string out;
  for (const auto& p : pts) {
    if (!out.empty()) out += ",";
    out += p.str();
  }
  return out;
}

}  // namespace

std::string ClosedSetRep::str() const {
  struct Visitor {
    std::string operator()(const FinitePoints& f) const { return "{" + join_points(f.points) + "}"; }
    std::string operator()(const FinitePlusTail& f) const {
      std::string out = "{";
      bool first = true;
      for (Index n : f.base) {
        if (!first) out += ",";
        out += std::to_string(n);
        first = false;
      }
      return out + "} u [" + std::to_string(f.tail_start) + "..)";
    }
    std::string operator()(const SegmentFamily& f) const {
      std::string out;
      for (const auto& [c, y] : f.segments) {
        if (!out.empty()) out += " u ";
        out += "(0," + y.str() + "]x{" + std::to_string(c) + "}";
      }
      if (!f.extras.empty()) out += (out.empty() ? "" : " u ") + ("{" + join_points(f.extras) + "}");
      return out.empty() ? "{}" : out;
    }
    std::string operator()(const SummandTuple& f) const {
      std::string out = "<";
      bool first = true;
      for (const auto& [tag, part] : f.parts) {
        if (!first) out += "; ";
        out += std::to_string(tag) + ": " + (part ? part->str() : "empty");
        first = false;
      }
      return out + ">";
    }
  };
  return std::visit(Visitor{}, value);
}

ClosedSetRep finite_set(std::set<Point> points) { return ClosedSetRep{FinitePoints{std::move(points)}}; }

ClosedSetRep finite_plus_tail(std::set<Index> base, Index tail_start) {
  return ClosedSetRep{FinitePlusTail{std::move(base), tail_start}};
}

ClosedSetRep segment_family(std::map<Index, Rational> segments, std::set<Point> extras) {
  return ClosedSetRep{SegmentFamily{std::move(segments), std::move(extras)}};
}

ClosedSetRep summand_tuple(std::map<Index, std::shared_ptr<const ClosedSetRep>> parts) {
  return ClosedSetRep{SummandTuple{std::move(parts)}};
}

ClosedSetRep nat_set(std::initializer_list<Index> ns) {
  std::set<Point> pts;
  for (Index n : ns) pts.insert(nat(n));
  return finite_set(std::move(pts));
}

namespace {

[[noreturn]] void mismatch(const SpaceSpec& spec, const ClosedSetRep& set, const std::string& why) {
  throw Error(ErrorKind::RepSpecMismatch, set.str() + " in " + spec.str() + ": " + why);
}

}  // namespace

void validate(const SpaceSpec& spec, const ClosedSetRep& set) {
  if (const auto* f = std::get_if<FinitePoints>(&set.value)) {
    if (f->points.empty()) mismatch(spec, set, "empty set");
    for (const auto& p : f->points)
      if (!contains(spec, p)) mismatch(spec, set, p.str() + " is not a point of the space");
    return;
  }
  if (const auto* f = std::get_if<FinitePlusTail>(&set.value)) {
    if (!std::holds_alternative<DyadicNatSpace>(spec.value))
      mismatch(spec, set, "tails exist only in the dyadic space");
    if (f->tail_start == 0 || (!f->base.empty() && *f->base.begin() == 0))
      mismatch(spec, set, "N is 1-based");
    return;
  }
  if (const auto* f = std::get_if<SegmentFamily>(&set.value)) {
    const auto* s = std::get_if<IntervalCopiesSpace>(&spec.value);
    if (!s) mismatch(spec, set, "segments exist only in interval copies");
    bool nonempty = !f->extras.empty();
    for (const auto& [c, y] : f->segments) {
      if (c >= s->copies) mismatch(spec, set, "copy " + std::to_string(c) + " out of range");
      if (y < Rational(0) || y > Rational(1)) mismatch(spec, set, "height outside [0,1]");
      if (y > Rational(0)) nonempty = true;
    }
    for (const auto& p : f->extras)
      if (!contains(spec, p)) mismatch(spec, set, p.str() + " is not a point of the space");
    if (!nonempty) mismatch(spec, set, "empty set");
    return;
  }
  const auto& f = std::get<SummandTuple>(set.value);
  const auto* s = std::get_if<FreeSumSpace>(&spec.value);
  if (!s) mismatch(spec, set, "summand tuples exist only in free sums");
  bool nonempty = false;
  for (const auto& [tag, part] : f.parts) {
    const Summand* sm = s->find(tag);
    if (!sm) mismatch(spec, set, "unknown summand " + std::to_string(tag));
    if (!part) continue;
    validate(*sm->space, *part);
    nonempty = true;
  }
  if (!nonempty) mismatch(spec, set, "empty set");
}

namespace {

void take_min(InfResult& acc, bool& have, InfResult candidate) {
  if (!have || candidate.value < acc.value) {
    acc = std::move(candidate);
    have = true;
  } else if (candidate.value == acc.value) {
    acc.attained = acc.attained || candidate.attained;
  }
}

InfResult dist_to_set_unchecked(const SpaceSpec& spec, const Point& p, const ClosedSetRep& set) {
  InfResult best;
  bool have = false;
  if (const auto* f = std::get_if<FinitePoints>(&set.value)) {
    for (const auto& q : f->points) take_min(best, have, {detail::dist_unchecked(spec, p, q), true});
    return best;
  }
  if (const auto* f = std::get_if<FinitePlusTail>(&set.value)) {
    const Index n = std::get<NatPoint>(p.value).n;
    for (Index k : f->base) take_min(best, have, {dyadic_dist(n, k), true});
    // Tail {k >= t}: if n >= t then n is a member; otherwise every tail
    // point lies above n and 2^-n - 2^-k increases with k, so the infimum
    // is the minimum at k = t.
    take_min(best, have, {n >= f->tail_start ? Rational(0) : dyadic_dist(n, f->tail_start), true});
    return best;
  }
  if (const auto* f = std::get_if<SegmentFamily>(&set.value)) {
    const auto& cp = std::get<CopyPoint>(p.value);
    for (const auto& [c, y] : f->segments) {
      if (y.is_zero()) continue;
      if (c != cp.copy) {
        take_min(best, have, {Rational(2), true});
        continue;
      }
      // Within the copy the segment (0, y] is realized at x (inside) or at y.
      const Rational gap = max(Rational(0), IntervalChart::f(cp.x) - IntervalChart::f(y));
      take_min(best, have, {min(Rational(1), gap), true});
    }
    for (const auto& q : f->extras) take_min(best, have, {detail::dist_unchecked(spec, p, q), true});
    return best;
  }
  const auto& f = std::get<SummandTuple>(set.value);
  const auto& fs = std::get<FreeSumSpace>(spec.value);
  const auto& sp = std::get<SummandPoint>(p.value);
  for (const auto& [tag, part] : f.parts) {
    if (!part) continue;
    if (tag != sp.tag) {
      take_min(best, have, {Rational(2), true});
      continue;
    }
    take_min(best, have, dist_to_set_unchecked(*fs.find(tag)->space, *sp.inner, *part));
  }
  return best;
}

}  // namespace

InfResult dist_to_set(const SpaceSpec& spec, const Point& p, const ClosedSetRep& set) {
  validate(spec, set);
  if (!contains(spec, p))
    throw Error(ErrorKind::PointOutOfSpace, p.str() + " is not a point of " + spec.str());
  return dist_to_set_unchecked(spec, p, set);
}

bool member(const SpaceSpec& spec, const Point& p, const ClosedSetRep& set) {
  validate(spec, set);
  if (!contains(spec, p))
    throw Error(ErrorKind::PointOutOfSpace, p.str() + " is not a point of " + spec.str());
  if (const auto* f = std::get_if<FinitePoints>(&set.value)) return f->points.contains(p);
  if (const auto* f = std::get_if<FinitePlusTail>(&set.value)) {
    const Index n = std::get<NatPoint>(p.value).n;
    return n >= f->tail_start || f->base.contains(n);
  }
  if (const auto* f = std::get_if<SegmentFamily>(&set.value)) {
    const auto& cp = std::get<CopyPoint>(p.value);
    if (auto it = f->segments.find(cp.copy); it != f->segments.end() && cp.x <= it->second)
      return true;
    return f->extras.contains(p);
  }
  const auto& f = std::get<SummandTuple>(set.value);
  const auto& fs = std::get<FreeSumSpace>(spec.value);
  const auto& sp = std::get<SummandPoint>(p.value);
  auto it = f.parts.find(sp.tag);
  return it != f.parts.end() && it->second && member(*fs.find(sp.tag)->space, *sp.inner, *it->second);
}

ClosedSetRep normalize(const SpaceSpec& spec, const ClosedSetRep& set) {
  validate(spec, set);
  if (std::holds_alternative<IntervalCopiesSpace>(spec.value)) {
    SegmentFamily out;
    if (const auto* f = std::get_if<FinitePoints>(&set.value)) {
      out.extras = f->points;
    } else {
      out = std::get<SegmentFamily>(set.value);
    }
    std::erase_if(out.segments, [](const auto& kv) { return kv.second.is_zero(); });
    std::erase_if(out.extras, [&](const Point& p) {
      const auto& cp = std::get<CopyPoint>(p.value);
      auto it = out.segments.find(cp.copy);
      return it != out.segments.end() && cp.x <= it->second;
    });
    return ClosedSetRep{std::move(out)};
  }
  if (const auto* fs = std::get_if<FreeSumSpace>(&spec.value)) {
    std::map<Index, std::shared_ptr<const ClosedSetRep>> parts;
    if (const auto* f = std::get_if<FinitePoints>(&set.value)) {
      std::map<Index, std::set<Point>> grouped;
      for (const auto& p : f->points) {
        const auto& sp = std::get<SummandPoint>(p.value);
        grouped[sp.tag].insert(*sp.inner);
      }
      for (auto& [tag, pts] : grouped)
        parts[tag] = std::make_shared<const ClosedSetRep>(
            normalize(*fs->find(tag)->space, finite_set(std::move(pts))));
    } else {
      for (const auto& [tag, part] : std::get<SummandTuple>(set.value).parts)
        if (part)
          parts[tag] = std::make_shared<const ClosedSetRep>(normalize(*fs->find(tag)->space, *part));
    }
    return summand_tuple(std::move(parts));
  }
  if (const auto* f = std::get_if<FinitePlusTail>(&set.value)) {
    FinitePlusTail out = *f;
    std::erase_if(out.base, [&](Index n) { return n >= out.tail_start; });
    while (out.tail_start > 1 && out.base.contains(out.tail_start - 1)) {
      out.base.erase(out.tail_start - 1);
      --out.tail_start;
    }
    return ClosedSetRep{std::move(out)};
  }
  return set;
}

bool same_set(const SpaceSpec& spec, const ClosedSetRep& a, const ClosedSetRep& b) {
  return normalize(spec, a) == normalize(spec, b);
}

namespace {

Index universe_size_checked(const SpaceSpec& spec, const std::vector<Point>& universe, Index cap) {
  const Index n = universe.size();
  if (n >= 63 || (Index{1} << n) > cap)
    throw Error(ErrorKind::BoundTooLarge, "2^" + std::to_string(n) + " subsets of " + spec.str() +
                                              " exceed the enumeration cap " + std::to_string(cap));
  return n;
}

ClosedSetRep subset_from_mask(const SpaceSpec& spec, const std::vector<Point>& universe, Index mask) {
  if (std::holds_alternative<FreeSumSpace>(spec.value)) {
    std::map<Index, std::set<Point>> grouped;
    for (std::size_t i = 0; i < universe.size(); ++i)
      if (mask >> i & 1U) {
        const auto& sp = std::get<SummandPoint>(universe[i].value);
        grouped[sp.tag].insert(*sp.inner);
      }
    std::map<Index, std::shared_ptr<const ClosedSetRep>> parts;
    for (auto& [tag, pts] : grouped)
      parts[tag] = std::make_shared<const ClosedSetRep>(finite_set(std::move(pts)));
    return summand_tuple(std::move(parts));
  }
  std::set<Point> pts;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (mask >> i & 1U) pts.insert(universe[i]);
  return finite_set(std::move(pts));
}

void check_enumerable(const SpaceSpec& spec, bool include_tails) {
  validate(spec);
  if (std::holds_alternative<IntervalCopiesSpace>(spec.value))
    throw Error(ErrorKind::NotRepresentable, "interval copies are not enumerable");
  if (include_tails && !std::holds_alternative<DyadicNatSpace>(spec.value))
    throw Error(ErrorKind::MalformedInput, "tails exist only in the dyadic space");
}

}  // namespace

Index enumeration_count(const SpaceSpec& spec, Index bound, bool include_tails) {
  check_enumerable(spec, include_tails);
  const auto universe = bounded_universe(spec, bound);
  const Index n = universe_size_checked(spec, universe, ~Index{0});
  return ((Index{1} << n) - 1) + (include_tails ? (Index{1} << n) : 0);
}

std::vector<ClosedSetRep> enumerate_closed_sets(const SpaceSpec& spec, Index bound,
                                                bool include_tails, Index cap) {
  check_enumerable(spec, include_tails);
  const auto universe = bounded_universe(spec, bound);
  const Index n = universe_size_checked(spec, universe, cap);
  const Index full = Index{1} << n;
  std::vector<ClosedSetRep> out;
  out.reserve((full - 1) + (include_tails ? full : 0));
  for (Index mask = 1; mask < full; ++mask) out.push_back(subset_from_mask(spec, universe, mask));
  if (include_tails) {
    for (Index mask = 0; mask < full; ++mask) {
      std::set<Index> base;
      for (Index i = 0; i < n; ++i)
        if (mask >> i & 1U) base.insert(i + 1);
      out.push_back(finite_plus_tail(std::move(base), bound + 1));
    }
  }
  return out;
}

}  // namespace wijsman

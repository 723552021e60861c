#include <wijsman/error.hpp>
#include <wijsman/serialize.hpp>
#include <wijsman/space.hpp>

#include "detail.hpp"

#include <algorithm>
#include <set>

namespace wijsman {

// ---------------------------------------------------------------------------
// Points

bool SummandPoint::operator==(const SummandPoint& o) const {
  return tag == o.tag && *inner == *o.inner;
}

std::strong_ordering SummandPoint::operator<=>(const SummandPoint& o) const {
  if (auto c = tag <=> o.tag; c != 0) return c;
  return *inner <=> *o.inner;
}

std::strong_ordering Point::operator<=>(const Point& o) const {
  if (value.index() != o.value.index()) return value.index() <=> o.value.index();
  return std::visit(
      [&](const auto& a) -> std::strong_ordering {
        using T = std::decay_t<decltype(a)>;
        return a <=> std::get<T>(o.value);
      },
      value);
}

std::string Point::str() const {
  struct Visitor {
    std::string operator()(const Atom& a) const { return "a" + std::to_string(a.index); }
    std::string operator()(const PairedPoint& p) const {
      return "x_" + std::to_string(p.pair) + "^" + std::to_string(p.side);
    }
    std::string operator()(const NatPoint& n) const { return std::to_string(n.n); }
    std::string operator()(const SummandPoint& s) const {
      return "s" + std::to_string(s.tag) + ":" + s.inner->str();
    }
    std::string operator()(const CopyPoint& c) const {
      return "<" + c.x.str() + "," + std::to_string(c.copy) + ">";
    }
  };
  return std::visit(Visitor{}, value);
}

Point atom(Index index) { return Point{Atom{index}}; }
Point paired(Index pair, int side) { return Point{PairedPoint{pair, side}}; }
Point nat(Index n) { return Point{NatPoint{n}}; }
Point summand(Index tag, Point inner) {
  return Point{SummandPoint{tag, std::make_shared<const Point>(std::move(inner))}};
}
Point copy_point(Index copy, Rational x) { return Point{CopyPoint{copy, std::move(x)}}; }

// ---------------------------------------------------------------------------
// Spaces

bool Summand::operator==(const Summand& o) const {
  if (tag != o.tag) return false;
  if (!space || !o.space) return space == o.space;
  return *space == *o.space;
}

const Summand* FreeSumSpace::find(Index tag) const {
  for (const auto& s : summands)
    if (s.tag == tag) return &s;
  return nullptr;
}

namespace {

std::string size_str(const Size& s) { return s ? std::to_string(*s) : "unbounded"; }

}  // namespace

std::string SpaceSpec::str() const {
  struct Visitor {
    std::string operator()(const ZeroOneSpace& s) const { return "ZeroOne(" + size_str(s.size) + ")"; }
    std::string operator()(const PairedSpace& s) const {
      return "PairedTwoPoint(" + size_str(s.pair_count) + ")";
    }
    std::string operator()(const DyadicNatSpace&) const { return "DyadicNat"; }
    std::string operator()(const FreeSumSpace& s) const {
      std::string out = "FreeSum(";
      for (std::size_t i = 0; i < s.summands.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(s.summands[i].tag) + ": " +
               (s.summands[i].space ? s.summands[i].space->str() : "null");
      }
      return out + ")";
    }
    std::string operator()(const IntervalCopiesSpace& s) const {
      return "IntervalCopies(" + std::to_string(s.copies) + ")";
    }
  };
  return std::visit(Visitor{}, value);
}

SpaceSpec zero_one(Size size) { return SpaceSpec{ZeroOneSpace{size}}; }
SpaceSpec paired_two_point(Size pair_count) { return SpaceSpec{PairedSpace{pair_count}}; }
SpaceSpec dyadic_nat() { return SpaceSpec{DyadicNatSpace{}}; }
SpaceSpec interval_copies(Index copies) { return SpaceSpec{IntervalCopiesSpace{copies}}; }

SpaceSpec free_sum(std::vector<std::pair<Index, SpaceSpec>> summands) {
  FreeSumSpace fs;
  for (auto& [tag, space] : summands)
    fs.summands.push_back(Summand{tag, std::make_shared<const SpaceSpec>(std::move(space))});
  return SpaceSpec{std::move(fs)};
}

Rational value_supremum(const SpaceSpec& spec) {
  struct Visitor {
    Rational operator()(const ZeroOneSpace& s) const {
      return (!s.size || *s.size >= 2) ? Rational(1) : Rational(0);
    }
    Rational operator()(const PairedSpace& s) const {
      return (!s.pair_count || *s.pair_count >= 1) ? Rational(2) : Rational(0);
    }
    Rational operator()(const DyadicNatSpace&) const { return Rational(1, 2); }
    Rational operator()(const FreeSumSpace& s) const {
      if (s.summands.size() >= 2) return Rational(2);
      if (s.summands.empty() || !s.summands.front().space) return Rational(0);
      return value_supremum(*s.summands.front().space);
    }
    Rational operator()(const IntervalCopiesSpace& s) const {
      return s.copies >= 2 ? Rational(2) : Rational(1);
    }
  };
  return std::visit(Visitor{}, spec.value);
}

std::optional<std::vector<Rational>> finite_value_set(const SpaceSpec& spec) {
  struct Visitor {
    std::optional<std::vector<Rational>> operator()(const ZeroOneSpace& s) const {
      if (s.size && *s.size < 2) return std::vector<Rational>{0};
      return std::vector<Rational>{0, 1};
    }
    std::optional<std::vector<Rational>> operator()(const PairedSpace& s) const {
      if (s.pair_count && *s.pair_count < 2) return std::vector<Rational>{0, 2};
      return std::vector<Rational>{0, 1, 2};
    }
    std::optional<std::vector<Rational>> operator()(const DyadicNatSpace&) const {
      return std::nullopt;
    }
    std::optional<std::vector<Rational>> operator()(const FreeSumSpace& s) const {
      std::set<Rational> values;
      for (const auto& sm : s.summands) {
        auto inner = finite_value_set(*sm.space);
        if (!inner) return std::nullopt;
        values.insert(inner->begin(), inner->end());
      }
      if (s.summands.size() >= 2) values.insert(Rational(2));
      return std::vector<Rational>(values.begin(), values.end());
    }
    std::optional<std::vector<Rational>> operator()(const IntervalCopiesSpace&) const {
      return std::nullopt;
    }
  };
  return std::visit(Visitor{}, spec.value);
}

void validate(const SpaceSpec& spec) {
  struct Visitor {
    void operator()(const ZeroOneSpace& s) const {
      if (s.size && *s.size == 0) throw Error(ErrorKind::MalformedSpec, "ZeroOne space is empty");
    }
    void operator()(const PairedSpace& s) const {
      if (s.pair_count && *s.pair_count == 0)
        throw Error(ErrorKind::MalformedSpec, "PairedTwoPoint space is empty");
    }
    void operator()(const DyadicNatSpace&) const {}
    void operator()(const FreeSumSpace& s) const {
      if (s.summands.empty()) throw Error(ErrorKind::MalformedSpec, "free sum without summands");
      std::set<Index> tags;
      for (const auto& sm : s.summands) {
        if (!sm.space) throw Error(ErrorKind::MalformedSpec, "null summand space");
        if (!tags.insert(sm.tag).second)
          throw Error(ErrorKind::MalformedSpec, "duplicate summand tag " + std::to_string(sm.tag));
        validate(*sm.space);
        const Rational sup = value_supremum(*sm.space);
        if (sup > Rational(1))
          throw Error(ErrorKind::MalformedSpec, "summand " + std::to_string(sm.tag) +
                                                    " takes value " + sup.str() +
                                                    " outside [0,1]");
      }
    }
    void operator()(const IntervalCopiesSpace& s) const {
      if (s.copies == 0) throw Error(ErrorKind::MalformedSpec, "IntervalCopies needs >= 1 copy");
    }
  };
  std::visit(Visitor{}, spec.value);
}

bool contains(const SpaceSpec& spec, const Point& p) {
  if (const auto* s = std::get_if<ZeroOneSpace>(&spec.value)) {
    const auto* a = std::get_if<Atom>(&p.value);
    return a && a->index >= 1 && (!s->size || a->index <= *s->size);
  }
  if (const auto* s = std::get_if<PairedSpace>(&spec.value)) {
    const auto* x = std::get_if<PairedPoint>(&p.value);
    return x && (x->side == 0 || x->side == 1) && (!s->pair_count || x->pair < *s->pair_count);
  }
  if (std::holds_alternative<DyadicNatSpace>(spec.value)) {
    const auto* n = std::get_if<NatPoint>(&p.value);
    return n && n->n >= 1;
  }
  if (const auto* s = std::get_if<FreeSumSpace>(&spec.value)) {
    const auto* sp = std::get_if<SummandPoint>(&p.value);
    if (!sp || !sp->inner) return false;
    const Summand* sm = s->find(sp->tag);
    return sm && contains(*sm->space, *sp->inner);
  }
  const auto& s = std::get<IntervalCopiesSpace>(spec.value);
  const auto* c = std::get_if<CopyPoint>(&p.value);
  return c && c->copy < s.copies && c->x > Rational(0) && c->x < Rational(2);
}

std::vector<Point> bounded_universe(const SpaceSpec& spec, Index bound) {
  std::vector<Point> out;
  if (const auto* s = std::get_if<ZeroOneSpace>(&spec.value)) {
    const Index n = s->size ? std::min(*s->size, bound) : bound;
    for (Index i = 1; i <= n; ++i) out.push_back(atom(i));
  } else if (const auto* s = std::get_if<PairedSpace>(&spec.value)) {
    const Index n = s->pair_count ? std::min(*s->pair_count, bound) : bound;
    for (Index i = 0; i < n; ++i) {
      out.push_back(paired(i, 0));
      out.push_back(paired(i, 1));
    }
  } else if (std::holds_alternative<DyadicNatSpace>(spec.value)) {
    for (Index i = 1; i <= bound; ++i) out.push_back(nat(i));
  } else if (const auto* s = std::get_if<FreeSumSpace>(&spec.value)) {
    for (const auto& sm : s->summands)
      for (auto& q : bounded_universe(*sm.space, bound)) out.push_back(summand(sm.tag, std::move(q)));
  } else {
    throw Error(ErrorKind::NotRepresentable, "interval copies have no finite bounded universe");
  }
  return out;
}

Point least_point(const SpaceSpec& spec) {
  if (std::holds_alternative<ZeroOneSpace>(spec.value)) return atom(1);
  if (std::holds_alternative<PairedSpace>(spec.value)) return paired(0, 0);
  if (std::holds_alternative<DyadicNatSpace>(spec.value)) return nat(1);
  if (const auto* s = std::get_if<FreeSumSpace>(&spec.value)) {
    if (s->summands.empty()) throw Error(ErrorKind::MalformedSpec, "free sum without summands");
    const auto it = std::min_element(s->summands.begin(), s->summands.end(),
                                     [](const Summand& a, const Summand& b) { return a.tag < b.tag; });
    return summand(it->tag, least_point(*it->space));
  }
  // (0,2) has no least element; <1, 0> is the canonical choice.
  return copy_point(0, Rational(1));
}

// ---------------------------------------------------------------------------
// Interval chart

Rational IntervalChart::f(const Rational& x) {
  if (!(x > Rational(0) && x < Rational(2)))
    throw Error(ErrorKind::PointOutOfSpace, "chart argument " + x.str() + " outside (0,2)");
  return Rational(1) / (Rational(2) - x) - Rational(1) / x;
}

Rational IntervalChart::rho(const Rational& x, const Rational& y) {
  return min(Rational(1), abs(f(x) - f(y)));
}

// ---------------------------------------------------------------------------
// Metric

Rational dyadic_dist(Index n, Index k) {
  if (n == 0 || k == 0) throw Error(ErrorKind::PointOutOfSpace, "N is 1-based");
  if (n == k) return Rational(0);
  const Index a = std::min(n, k);
  const Index b = std::max(n, k);
  if (b <= 62) {
    // 2^-a - 2^-b = (2^(b-a) - 1) / 2^b, already in lowest terms.
    mpq_class q;
    mpq_set_ui(q.get_mpq_t(), (1UL << (b - a)) - 1UL, 1UL << b);
    return Rational(std::move(q));
  }
  return Rational::pow2(-static_cast<long>(a)) - Rational::pow2(-static_cast<long>(b));
}

namespace {

[[noreturn]] void out_of_space(const SpaceSpec& spec, const Point& p) {
  throw Error(ErrorKind::PointOutOfSpace, p.str() + " is not a point of " + spec.str());
}

}  // namespace

namespace detail {

Rational dist_unchecked(const SpaceSpec& spec, const Point& p, const Point& q) {
  if (std::holds_alternative<ZeroOneSpace>(spec.value)) return p == q ? Rational(0) : Rational(1);
  if (std::holds_alternative<PairedSpace>(spec.value)) {
    const auto& a = std::get<PairedPoint>(p.value);
    const auto& b = std::get<PairedPoint>(q.value);
    if (a == b) return Rational(0);
    return a.pair == b.pair ? Rational(2) : Rational(1);
  }
  if (std::holds_alternative<DyadicNatSpace>(spec.value))
    return dyadic_dist(std::get<NatPoint>(p.value).n, std::get<NatPoint>(q.value).n);
  if (const auto* s = std::get_if<FreeSumSpace>(&spec.value)) {
    const auto& a = std::get<SummandPoint>(p.value);
    const auto& b = std::get<SummandPoint>(q.value);
    if (a.tag != b.tag) return Rational(2);
    return detail::dist_unchecked(*s->find(a.tag)->space, *a.inner, *b.inner);
  }
  const auto& a = std::get<CopyPoint>(p.value);
  const auto& b = std::get<CopyPoint>(q.value);
  if (a.copy != b.copy) return Rational(2);
  return IntervalChart::rho(a.x, b.x);
}

}  // namespace detail

Rational dist(const SpaceSpec& spec, const Point& p, const Point& q) {
  if (std::holds_alternative<FreeSumSpace>(spec.value)) validate(spec);
  if (!contains(spec, p)) out_of_space(spec, p);
  if (!contains(spec, q)) out_of_space(spec, q);
  return detail::dist_unchecked(spec, p, q);
}

VerificationReport check_metric_axioms(const SpaceSpec& spec, const std::vector<Point>& sample) {
  detail::Stopwatch clock;
  validate(spec);
  if (sample.empty()) throw Error(ErrorKind::MalformedInput, "empty sample");
  for (const auto& p : sample)
    if (!contains(spec, p)) out_of_space(spec, p);

  auto report = detail::start_report("metric-axioms", QuantifierScope::RepresentableOnly);
  const std::size_t n = sample.size();
  std::vector<Rational> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = detail::dist_unchecked(spec, sample[i], sample[j]);

  auto fail = [&](const char* property, std::vector<std::size_t> idx) {
    nlohmann::json pts = nlohmann::json::array();
    for (auto i : idx) pts.push_back(sample[i]);
    detail::refute(report, {{"property", property}, {"points", pts}});
  };

  for (std::size_t i = 0; i < n && report.verified(); ++i) {
    for (std::size_t j = 0; j < n && report.verified(); ++j) {
      const Rational& dij = d[i * n + j];
      if (dij.sign() < 0) fail("non-negativity", {i, j});
      else if (dij.is_zero() != (sample[i] == sample[j])) fail("identity", {i, j});
      else if (dij != d[j * n + i]) fail("symmetry", {i, j});
    }
  }
  std::uint64_t triples = 0;
  for (std::size_t i = 0; i < n && report.verified(); ++i)
    for (std::size_t j = 0; j < n && report.verified(); ++j)
      for (std::size_t k = 0; k < n; ++k) {
        ++triples;
        if (d[i * n + k] > d[i * n + j] + d[j * n + k]) {
          fail("triangle", {i, j, k});
          break;
        }
      }
  report.params = {{"space", spec}, {"sampleSize", n}};
  report.witness = nlohmann::json{{"triples", triples}};
  report.stats.elapsed_ms = clock.elapsed_ms();
  return report;
}

}  // namespace wijsman

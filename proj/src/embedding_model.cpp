#include "ldforge/embedding_model.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace ldforge {

namespace {

std::vector<FCount> interior_counts(const std::vector<CritIndex>& marks,
                                    const std::set<unsigned>& realized, unsigned level) {
  std::vector<FCount> out;
  for (std::size_t n = 0; n + 1 < marks.size(); ++n) {
    if (marks[n + 1].value >= level) break;
    const auto lo = realized.upper_bound(marks[n].value);
    const auto hi = realized.lower_bound(marks[n + 1].value);
    out.push_back(FCount{n, static_cast<std::size_t>(std::distance(lo, hi)), false});
  }
  return out;
}

std::set<unsigned> realized_indices(unsigned level) {
  // Every valuation 0..level-1 occurs (at 2^c), and 0 contributes the top.
  std::set<unsigned> out;
  for (unsigned c = 0; c <= level; ++c) out.insert(c);
  return out;
}

}  // namespace

CritSpectrum critical_spectrum(const LaverTable& t) {
  CritSpectrum s;
  s.level = t.k();
  s.crit_of.reserve(t.size());
  for (Element a = 0; a < t.size(); ++a) s.crit_of.push_back(t.crit_index(a));
  for (Element e : t.right_power_chain()) s.marks.push_back(t.crit_index(e));
  return s;
}

std::optional<std::size_t> interval_of(const CritSpectrum& s, CritIndex c) {
  for (std::size_t n = 0; n + 1 < s.marks.size(); ++n)
    if (s.marks[n] <= c && c < s.marks[n + 1]) return n;
  return std::nullopt;
}

FCountReport f_counts(const LaverTable& t) {
  const CritSpectrum s = critical_spectrum(t);
  std::set<unsigned> realized;
  for (CritIndex c : s.crit_of) realized.insert(c.value);

  FCountReport report{t.k(), interior_counts(s.marks, realized, t.k())};
  if (t.k() == 0) return report;

  // One level down: the chain projects onto the chain of A_{k-1}.
  const unsigned lower = t.k() - 1;
  std::vector<CritIndex> lower_marks;
  for (Element e : t.right_power_chain()) {
    const Element p = project(t.k(), lower, e);
    lower_marks.push_back(CritIndex{p == 0 ? lower : static_cast<unsigned>(std::countr_zero(p))});
    if (p == 0) break;
  }
  const auto lower_counts = interior_counts(lower_marks, realized_indices(lower), lower);
  for (FCount& c : report.counts) {
    c.stable = c.n < lower_counts.size() && lower_counts[c.n].value == c.value;
  }
  return report;
}

std::string f_counts_csv(const std::vector<FCountReport>& reports) {
  std::string out = "level,index,value,stable\n";
  for (const auto& r : reports) {
    for (const auto& c : r.counts) {
      out += std::to_string(r.level) + ',' + std::to_string(c.n) + ',' +
             std::to_string(c.value) + ',' + (c.stable ? "true" : "false") + '\n';
    }
  }
  return out;
}

std::string_view interval_class_name(IntervalClass c) {
  switch (c) {
    case IntervalClass::Fixed: return "Fixed";
    case IntervalClass::OddInterval: return "OddInterval";
    case IntervalClass::EvenInterval: return "EvenInterval";
  }
  return "?";
}

std::vector<IntervalEntry> interval_classification(const LaverTable& t, Element a) {
  const CritSpectrum s = critical_spectrum(t);
  std::vector<IntervalEntry> out;
  for (unsigned i = 0; i < t.k(); ++i) {
    const CritIndex index{i};
    const CritIndex image = t.ordinal_action(a, index);
    if (image.value >= t.k()) continue;
    IntervalEntry e{index, image, 0, IntervalClass::Fixed};
    // The last mark is the saturated top, so every unsaturated image has an interval.
    e.interval = interval_of(s, image).value();
    if (image != index)
      e.klass = e.interval % 2 == 1 ? IntervalClass::OddInterval : IntervalClass::EvenInterval;
    out.push_back(e);
  }
  return out;
}

}  // namespace ldforge

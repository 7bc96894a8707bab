#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ldforge/laver_table.hpp"

namespace ldforge {

/// Critical indices of every element of A_k, plus the marks: the critical
/// indices of the right-power chain t_0, t_1, ..., which play the role of the
/// critical sequence kappa_0 < kappa_1 < ... at this level.
struct CritSpectrum {
  unsigned level = 0;
  std::vector<CritIndex> crit_of;
  std::vector<CritIndex> marks;
};

CritSpectrum critical_spectrum(const LaverTable& t);

/// n with marks[n] <= c < marks[n+1], if any.
std::optional<std::size_t> interval_of(const CritSpectrum& s, CritIndex c);

struct FCount {
  std::size_t n = 0;
  std::size_t value = 0;  ///< critical indices strictly between marks[n] and marks[n+1]
  bool stable = false;    ///< same count reported one level down
};

struct FCountReport {
  unsigned level = 0;
  std::vector<FCount> counts;  ///< only n with marks[n+1] below saturation
};

FCountReport f_counts(const LaverTable& t);

/// "level,index,value,stable" rows for a sequence of reports.
std::string f_counts_csv(const std::vector<FCountReport>& reports);

enum class IntervalClass : std::uint8_t { Fixed, OddInterval, EvenInterval };

std::string_view interval_class_name(IntervalClass c);

struct IntervalEntry {
  CritIndex index;
  CritIndex image;
  std::size_t interval = 0;  ///< n with marks[n] <= image < marks[n+1]
  IntervalClass klass = IntervalClass::Fixed;
};

/// For every critical index i < k whose image under a is unsaturated: Fixed if
/// the image is i, otherwise the parity of the mark interval that contains it.
std::vector<IntervalEntry> interval_classification(const LaverTable& t, Element a);

}  // namespace ldforge

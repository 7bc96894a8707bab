#pragma once

#include <atomic>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ldforge/term.hpp"

namespace ldforge {

/// Element of a Laver table A_k, drawn from {0, ..., 2^k - 1}. 0 is the top element.
using Element = std::uint32_t;

/// Table-level critical index: the 2-adic valuation of a nonzero element, k for 0.
struct CritIndex {
  unsigned value = 0;

  friend constexpr auto operator<=>(CritIndex, CritIndex) = default;
};

enum class TableMode : std::uint8_t {
  Lazy,  ///< rows are filled on first use
  Bulk,  ///< every row is filled at construction
};

struct TableOptions {
  TableMode mode = TableMode::Lazy;
  /// Check every compose() against the full row composite.
  bool verify_compose = false;
  unsigned max_k = 16;
};

class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Laver table A_k on {0, ..., 2^k - 1}:
///
///     m * 0 = 0,   m * 1 = m + 1 (mod 2^k),   m * i = (m * (i-1)) * (m * 1).
///
/// Each row m != 0 is periodic. Only its first period (m*0 = 0 followed by the
/// strictly increasing run m*1, m*2, ... up to the first return to 0) is stored.
/// The row of 0 is the identity. Concurrent readers are safe; lazy row fills
/// are serialized by an internal mutex and published atomically.
class LaverTable {
 public:
  explicit LaverTable(unsigned k, TableOptions options = {});

  /// Builds a table from full rows (row-major, 2^k rows of 2^k values), as read
  /// back from an export. Throws TableError on out-of-range cells or rows that
  /// lack the periodic shape every Laver table row has.
  static LaverTable from_rows(unsigned k, std::span<const Element> cells,
                              TableOptions options = {});

  LaverTable(LaverTable&&) noexcept;
  LaverTable& operator=(LaverTable&&) noexcept;
  ~LaverTable();

  unsigned k() const noexcept { return k_; }
  Element size() const noexcept { return size_; }
  const TableOptions& options() const noexcept { return options_; }

  Element apply(Element a, Element b) const;
  /// The element whose row is x -> a * (b * x).
  Element compose(Element a, Element b) const;

  /// First period of the row of a; its length is row_period(a).
  std::span<const Element> period_row(Element a) const;
  /// Full row of length 2^k.
  std::vector<Element> row(Element a) const;
  /// Least p with row(a) periodic of period p; a power of two.
  Element row_period(Element a) const;

  CritIndex crit_index(Element a) const;

  /// t_0 = 1, t_{m+1} = t_m * t_m, up to and including the first 0.
  std::vector<Element> right_power_chain() const;

  /// crit(a * 2^i): the image of critical index i under a, saturating at k.
  /// Throws std::out_of_range unless i < k.
  CritIndex ordinal_action(Element a, CritIndex i) const;

  /// Fills every row.
  void precompute_all() const;
  std::size_t rows_filled() const;
  /// Total number of stored row entries.
  std::size_t stored_cells() const;

 private:
  struct Storage;

  const std::vector<Element>& ensure_row(Element a) const;
  const std::vector<Element>* fill_rows(Element a) const;
  void check_element(Element a) const;

  unsigned k_;
  Element size_;
  Element mask_;
  TableOptions options_;
  std::unique_ptr<Storage> storage_;
};

/// Composite of rows computed directly, without the column-1 shortcut:
/// returns c with row(c) equal to x -> a * (b * x). Throws TableError if the
/// composite is not the row of any element.
Element compose_by_rows(const LaverTable& t, Element a, Element b);

/// Natural projection A_n -> A_m, reduction mod 2^m.
Element project(unsigned n, unsigned m, Element a);

/// Evaluates a term, using apply for application and compose for composition.
/// assignment[g] is the value of generator g. Throws std::out_of_range on an
/// unassigned generator.
Element eval_term(const LaverTable& t, const Term& term, std::span<const Element> assignment);

enum class ExportFormat : std::uint8_t { Csv, Binary };

/// CSV: "k=<k>\n" then one comma-separated line per row.
/// Binary: "LAVR", version 1, k, then row-major little-endian cells of
/// 1 byte (k <= 8) or 2 bytes (k <= 16).
std::string export_table(const LaverTable& t, ExportFormat format);
LaverTable import_table(std::string_view bytes, TableOptions options = {});

inline constexpr std::uint8_t kBinaryVersion = 1;

/// Loads A_k from `<cache_dir>/laver_k<k>.bin` if the file exists and passes
/// the magic/version check, otherwise builds it and writes the cache file.
/// `loaded` reports which happened.
LaverTable load_or_build_table(unsigned k, const std::filesystem::path& cache_dir,
                               TableOptions options = {}, bool* loaded = nullptr);

std::filesystem::path table_cache_path(const std::filesystem::path& cache_dir, unsigned k);

/// Process-wide lazily built tables, shared by the word-problem and thread
/// code. The returned references stay valid for the life of the process.
const LaverTable& shared_table(unsigned k);

}  // namespace ldforge

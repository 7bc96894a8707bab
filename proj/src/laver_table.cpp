#include "ldforge/laver_table.hpp"

#include <bit>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <unordered_map>

namespace ldforge {

struct LaverTable::Storage {
  explicit Storage(Element n)
      : published(std::make_unique<std::atomic<const std::vector<Element>*>[]>(n)), owned(n) {}

  std::unique_ptr<std::atomic<const std::vector<Element>*>[]> published;
  std::vector<std::unique_ptr<std::vector<Element>>> owned;
  std::mutex fill_mutex;
  std::size_t filled = 0;
  std::size_t cells = 0;
};

LaverTable::LaverTable(unsigned k, TableOptions options)
    : k_(k), size_(0), mask_(0), options_(options) {
  if (k > options.max_k) {
    throw TableError("table exponent " + std::to_string(k) + " exceeds the maximum " +
                     std::to_string(options.max_k));
  }
  if (k > 16) throw TableError("table exponents above 16 are not supported");
  size_ = Element{1} << k;
  mask_ = size_ - 1;
  storage_ = std::make_unique<Storage>(size_);
  if (options.mode == TableMode::Bulk) precompute_all();
}

LaverTable::LaverTable(LaverTable&&) noexcept = default;
LaverTable& LaverTable::operator=(LaverTable&&) noexcept = default;
LaverTable::~LaverTable() = default;

void LaverTable::check_element(Element a) const {
  if (a >= size_) {
    throw std::out_of_range("element " + std::to_string(a) + " is not in A_" +
                            std::to_string(k_));
  }
}

const std::vector<Element>& LaverTable::ensure_row(Element a) const {
  const auto* row = storage_->published[a].load(std::memory_order_acquire);
  if (row != nullptr) return *row;
  return *fill_rows(a);
}

// Row m depends only on rows of elements strictly greater than m (plus the
// identity row of 0), so a worklist that defers m until those rows exist
// always terminates.
const std::vector<Element>* LaverTable::fill_rows(Element target) const {
  std::lock_guard lock(storage_->fill_mutex);
  auto& published = storage_->published;

  auto lookup = [&](Element a, Element b) -> Element {
    if (a == 0) return b;
    const auto& row = *published[a].load(std::memory_order_relaxed);
    return row[b & (static_cast<Element>(row.size()) - 1)];
  };

  auto publish = [&](Element m, std::vector<Element> row) {
    const Element period = static_cast<Element>(row.size());
    if (!std::has_single_bit(period)) {
      throw TableError("row " + std::to_string(m) + " has period " + std::to_string(period) +
                       ", not a power of two");
    }
    storage_->owned[m] = std::make_unique<std::vector<Element>>(std::move(row));
    storage_->cells += period;
    ++storage_->filled;
    published[m].store(storage_->owned[m].get(), std::memory_order_release);
  };

  std::unordered_map<Element, std::vector<Element>> partial;
  std::vector<Element> work{target};
  while (!work.empty()) {
    const Element m = work.back();
    if (published[m].load(std::memory_order_relaxed) != nullptr) {
      work.pop_back();
      continue;
    }
    if (m == 0) {
      std::vector<Element> identity(size_);
      for (Element i = 0; i < size_; ++i) identity[i] = i;
      publish(0, std::move(identity));
      work.pop_back();
      continue;
    }
    auto& row = partial[m];
    if (row.empty()) {
      row.push_back(0);
      row.push_back((m + 1) & mask_);
    }
    const Element step = (m + 1) & mask_;
    bool blocked = false;
    while (row.back() != 0) {
      const Element prev = row.back();
      if (published[prev].load(std::memory_order_relaxed) == nullptr) {
        work.push_back(prev);
        blocked = true;
        break;
      }
      const Element next = lookup(prev, step);
      if (next != 0 && next <= prev) {
        throw TableError("row " + std::to_string(m) + " is not increasing before its period");
      }
      row.push_back(next);
    }
    if (blocked) continue;
    row.pop_back();  // the trailing 0 starts the next period
    publish(m, std::move(row));
    partial.erase(m);
    work.pop_back();
  }
  return published[target].load(std::memory_order_acquire);
}

LaverTable LaverTable::from_rows(unsigned k, std::span<const Element> cells,
                                 TableOptions options) {
  options.mode = TableMode::Lazy;
  LaverTable table(k, options);
  const Element n = table.size_;
  if (cells.size() != static_cast<std::size_t>(n) * n) {
    throw TableError("expected " + std::to_string(std::size_t{n} * n) + " cells, got " +
                     std::to_string(cells.size()));
  }
  std::lock_guard lock(table.storage_->fill_mutex);
  for (Element m = 0; m < n; ++m) {
    const auto full = cells.subspan(std::size_t{m} * n, n);
    for (Element v : full)
      if (v >= n) throw TableError("cell value " + std::to_string(v) + " out of range");
    Element period = n;
    if (m != 0) {
      for (Element i = 1; i < n; ++i) {
        if (full[i] == 0) {
          period = i;
          break;
        }
      }
    }
    if (full[0] != 0 && n > 1) throw TableError("row " + std::to_string(m) + " has m*0 != 0");
    if (!std::has_single_bit(period))
      throw TableError("row " + std::to_string(m) + " period is not a power of two");
    for (Element i = period; i < n; ++i) {
      if (full[i] != full[i - period])
        throw TableError("row " + std::to_string(m) + " is not periodic");
    }
    auto row = std::make_unique<std::vector<Element>>(full.begin(), full.begin() + period);
    table.storage_->cells += period;
    ++table.storage_->filled;
    table.storage_->published[m].store(row.get(), std::memory_order_release);
    table.storage_->owned[m] = std::move(row);
  }
  return table;
}

Element LaverTable::apply(Element a, Element b) const {
  check_element(a);
  check_element(b);
  if (a == 0) return b;
  const auto& row = ensure_row(a);
  return row[b & (static_cast<Element>(row.size()) - 1)];
}

Element LaverTable::compose(Element a, Element b) const {
  check_element(a);
  check_element(b);
  const Element c = (apply(a, (b + 1) & mask_) + mask_) & mask_;
  if (options_.verify_compose) {
    for (Element x = 0; x < size_; ++x) {
      if (apply(c, x) != apply(a, apply(b, x))) {
        throw TableError("composition formula disagrees with the row composite for " +
                         std::to_string(a) + " o " + std::to_string(b));
      }
    }
  }
  return c;
}

std::span<const Element> LaverTable::period_row(Element a) const {
  check_element(a);
  return ensure_row(a);
}

std::vector<Element> LaverTable::row(Element a) const {
  const auto period = period_row(a);
  std::vector<Element> out(size_);
  for (Element i = 0; i < size_; ++i) out[i] = period[i & (period.size() - 1)];
  return out;
}

Element LaverTable::row_period(Element a) const {
  return static_cast<Element>(period_row(a).size());
}

CritIndex LaverTable::crit_index(Element a) const {
  check_element(a);
  if (a == 0) return CritIndex{k_};
  return CritIndex{static_cast<unsigned>(std::countr_zero(a))};
}

std::vector<Element> LaverTable::right_power_chain() const {
  std::vector<Element> chain{Element{1} & mask_};
  while (chain.back() != 0) chain.push_back(apply(chain.back(), chain.back()));
  return chain;
}

CritIndex LaverTable::ordinal_action(Element a, CritIndex i) const {
  if (i.value >= k_) {
    throw std::out_of_range("critical index " + std::to_string(i.value) +
                            " is saturated in A_" + std::to_string(k_));
  }
  return crit_index(apply(a, Element{1} << i.value));
}

void LaverTable::precompute_all() const {
  // Descending order keeps every fill free of deferred work.
  for (Element m = size_; m-- > 0;) ensure_row(m);
}

std::size_t LaverTable::rows_filled() const {
  std::lock_guard lock(storage_->fill_mutex);
  return storage_->filled;
}

std::size_t LaverTable::stored_cells() const {
  std::lock_guard lock(storage_->fill_mutex);
  return storage_->cells;
}

Element compose_by_rows(const LaverTable& t, Element a, Element b) {
  std::vector<Element> composite(t.size());
  for (Element x = 0; x < t.size(); ++x) composite[x] = t.apply(a, t.apply(b, x));
  // x * 1 = x + 1 pins the candidate; the remaining columns confirm it.
  const Element candidate = (composite[t.size() > 1 ? 1 : 0] + t.size() - 1) & (t.size() - 1);
  if (t.row(candidate) != composite) {
    throw TableError("row composite of " + std::to_string(a) + " and " + std::to_string(b) +
                     " is not a row of A_" + std::to_string(t.k()));
  }
  return candidate;
}

Element project(unsigned n, unsigned m, Element a) {
  if (m > n) {
    throw std::invalid_argument("projection A_" + std::to_string(n) + " -> A_" +
                                std::to_string(m) + " needs m <= n");
  }
  if (n < 32 && a >= (Element{1} << n)) {
    throw std::out_of_range("element " + std::to_string(a) + " is not in A_" + std::to_string(n));
  }
  return a & ((Element{1} << m) - 1);
}

Element eval_term(const LaverTable& t, const Term& term, std::span<const Element> assignment) {
  switch (term.kind()) {
    case NodeKind::Generator: {
      const auto g = term.generator_id().index;
      if (g >= assignment.size())
        throw std::out_of_range("generator " + generator_name(term.generator_id()) +
                                " is unassigned");
      return assignment[g];
    }
    case NodeKind::Apply:
      return t.apply(eval_term(t, term.left(), assignment), eval_term(t, term.right(), assignment));
    case NodeKind::Compose:
      return t.compose(eval_term(t, term.left(), assignment),
                       eval_term(t, term.right(), assignment));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Export / import

namespace {

constexpr std::string_view kMagic = "LAVR";

unsigned cell_width(unsigned k) { return k <= 8 ? 1 : 2; }

}  // namespace

std::string export_table(const LaverTable& t, ExportFormat format) {
  const Element n = t.size();
  std::string out;
  if (format == ExportFormat::Csv) {
    out = "k=" + std::to_string(t.k()) + "\n";
    for (Element m = 0; m < n; ++m) {
      const auto period = t.period_row(m);
      for (Element i = 0; i < n; ++i) {
        if (i != 0) out += ',';
        out += std::to_string(period[i & (period.size() - 1)]);
      }
      out += '\n';
    }
    return out;
  }
  const unsigned width = cell_width(t.k());
  out.reserve(6 + std::size_t{n} * n * width);
  out += kMagic;
  out += static_cast<char>(kBinaryVersion);
  out += static_cast<char>(t.k());
  for (Element m = 0; m < n; ++m) {
    const auto period = t.period_row(m);
    for (Element i = 0; i < n; ++i) {
      const Element v = period[i & (period.size() - 1)];
      out += static_cast<char>(v & 0xff);
      if (width == 2) out += static_cast<char>((v >> 8) & 0xff);
    }
  }
  return out;
}

LaverTable import_table(std::string_view bytes, TableOptions options) {
  if (bytes.starts_with(kMagic)) {
    if (bytes.size() < 6) throw TableError("truncated binary table header");
    if (static_cast<std::uint8_t>(bytes[4]) != kBinaryVersion)
      throw TableError("unsupported binary table version " +
                       std::to_string(static_cast<std::uint8_t>(bytes[4])));
    const unsigned k = static_cast<std::uint8_t>(bytes[5]);
    if (k > 16) throw TableError("binary table exponent out of range");
    const std::size_t n = std::size_t{1} << k;
    const unsigned width = cell_width(k);
    if (bytes.size() != 6 + n * n * width) throw TableError("binary table has the wrong length");
    std::vector<Element> cells(n * n);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto* p = reinterpret_cast<const unsigned char*>(bytes.data()) + 6 + i * width;
      cells[i] = width == 1 ? p[0] : static_cast<Element>(p[0] | (p[1] << 8));
    }
    return LaverTable::from_rows(k, cells, options);
  }
  if (!bytes.starts_with("k=")) throw TableError("unrecognized table format");
  std::istringstream in{std::string(bytes)};
  std::string line;
  std::getline(in, line);
  unsigned k = 0;
  try {
    k = static_cast<unsigned>(std::stoul(line.substr(2)));
  } catch (const std::exception&) {
    throw TableError("bad CSV header '" + line + "'");
  }
  if (k > 16) throw TableError("CSV table exponent out of range");
  const std::size_t n = std::size_t{1} << k;
  std::vector<Element> cells;
  cells.reserve(n * n);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) cells.push_back(static_cast<Element>(std::stoul(field)));
  }
  return LaverTable::from_rows(k, cells, options);
}

std::filesystem::path table_cache_path(const std::filesystem::path& cache_dir, unsigned k) {
  return cache_dir / ("laver_k" + std::to_string(k) + ".bin");
}

LaverTable load_or_build_table(unsigned k, const std::filesystem::path& cache_dir,
                               TableOptions options, bool* loaded) {
  if (k > options.max_k) {
    throw TableError("table exponent " + std::to_string(k) + " exceeds the maximum " +
                     std::to_string(options.max_k));
  }
  const auto path = table_cache_path(cache_dir, k);
  if (std::ifstream in{path, std::ios::binary}) {
    std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    try {
      LaverTable t = import_table(bytes, options);
      if (t.k() == k) {
        if (loaded) *loaded = true;
        return t;
      }
    } catch (const TableError&) {
      // corrupt cache entry; rebuild below
    }
  }
  TableOptions bulk = options;
  bulk.mode = TableMode::Bulk;
  LaverTable t(k, bulk);
  std::error_code ec;
  std::filesystem::create_directories(cache_dir, ec);
  if (!ec) {
    std::ofstream out{path, std::ios::binary | std::ios::trunc};
    const auto bytes = export_table(t, ExportFormat::Binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  if (loaded) *loaded = false;
  return t;
}

const LaverTable& shared_table(unsigned k) {
  static std::mutex mutex;
  static std::map<unsigned, std::unique_ptr<LaverTable>> tables;
  std::lock_guard lock(mutex);
  auto& slot = tables[k];
  if (!slot) slot = std::make_unique<LaverTable>(k);
  return *slot;
}

}  // namespace ldforge

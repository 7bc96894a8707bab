#include "ldforge/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "ldforge/embedding_model.hpp"
#include "ldforge/inverse_limit.hpp"
#include "ldforge/laver_table.hpp"
#include "ldforge/verdict_json.hpp"

namespace ldforge::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<OutputFormat> parse_format(std::string_view s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  return std::nullopt;
}

unsigned long parse_number(const std::string& name, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long n = std::stoul(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return n;
  } catch (const std::exception&) {
    throw UsageError(name + " must be a non-negative integer, got '" + value + "'");
  }
}

std::string join(const std::vector<Element>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(values[i]);
  }
  return out;
}

void print_path(std::ostream& out, std::string_view label, const RewritePath& path) {
  out << "  " << label << ":";
  if (path.empty()) out << " (none)";
  for (const auto& s : path) {
    out << " [" << render_position(s.position) << ' ' << rule_name(s.rule) << ' '
        << direction_name(s.direction) << ']';
  }
  out << '\n';
}

void print_verdict_text(std::ostream& out, const QuadrichotomyVerdict& v) {
  out << verdict_name(v.kind) << '\n';
  if (v.equivalence) {
    print_path(out, "u path", v.equivalence->from_u);
    print_path(out, "v path", v.equivalence->from_v);
    out << "  common expansion: " << render_term(v.equivalence->common) << '\n';
  }
  if (v.divisor) {
    print_path(out, "greater path", v.divisor->expansion_of_greater);
    print_path(out, "lesser path", v.divisor->expansion_of_lesser);
    out << "  prefix length: " << v.divisor->prefix_length << "\n  factors:";
    for (const Term& f : v.divisor->factors) out << " [" << render_term(f) << ']';
    out << '\n';
  }
  if (v.clash) {
    const auto p = v.clash->prefix_term();
    out << "  p: " << (p ? render_term(*p) : std::string("(empty)")) << '\n';
    out << "  generators: " << generator_name(v.clash->x) << " / " << generator_name(v.clash->y)
        << '\n';
    print_path(out, "u path", v.clash->expansion_of_u);
    print_path(out, "v path", v.clash->expansion_of_v);
  }
  if (v.refutation) {
    out << "  not equivalent: level " << v.refutation->level << ", assignment ["
        << join(v.refutation->assignment) << "]\n";
  }
  out << "  visited: " << v.visited << '\n';
}

struct Flags {
  std::optional<std::string> cache_dir;
  std::optional<unsigned> max_table_k;
  std::optional<std::string> format;
  std::optional<std::size_t> max_depth;
  std::optional<std::size_t> max_term_size;
  std::optional<std::size_t> max_visited;
  std::optional<unsigned> max_table_level;
};

Config apply_flags(Config config, const Flags& f) {
  if (f.cache_dir) config.cache_dir = *f.cache_dir;
  if (f.max_table_k) config.max_table_k = *f.max_table_k;
  if (f.format) {
    auto fmt = parse_format(*f.format);
    if (!fmt) throw UsageError("--format must be text, csv or json");
    config.output_format = *fmt;
  }
  if (f.max_depth) config.default_budget.max_expansion_depth = *f.max_depth;
  if (f.max_term_size) config.default_budget.max_term_size = *f.max_term_size;
  if (f.max_visited) config.default_budget.max_visited = *f.max_visited;
  if (f.max_table_level) config.default_budget.max_table_level = *f.max_table_level;
  const Budget& b = config.default_budget;
  if (b.max_expansion_depth == 0 || b.max_term_size == 0 || b.max_visited == 0)
    throw UsageError("budget bounds must be positive");
  return config;
}

void check_k(unsigned k, const Config& config) {
  if (k > config.max_table_k) {
    throw UsageError("table exponent " + std::to_string(k) + " exceeds max_table_k = " +
                     std::to_string(config.max_table_k));
  }
}

// ---------------------------------------------------------------------------
// Commands

struct TableArgs {
  unsigned k = 0;
  std::string export_format;
  std::string out_path;
  bool no_cache = false;
};

int cmd_table(const TableArgs& a, const Config& config, std::ostream& out, std::ostream& err) {
  check_k(a.k, config);
  TableOptions options;
  options.max_k = config.max_table_k;
  bool loaded = false;
  LaverTable table = [&] {
    if (a.no_cache) {
      options.mode = TableMode::Bulk;
      return LaverTable(a.k, options);
    }
    return load_or_build_table(a.k, config.cache_dir, options, &loaded);
  }();

  const bool export_to_stdout = !a.export_format.empty() && a.out_path.empty();
  if (!a.export_format.empty()) {
    ExportFormat fmt;
    if (a.export_format == "csv")
      fmt = ExportFormat::Csv;
    else if (a.export_format == "binary")
      fmt = ExportFormat::Binary;
    else
      throw UsageError("--export must be csv or binary");
    const std::string bytes = export_table(table, fmt);
    if (a.out_path.empty()) {
      out << bytes;
    } else {
      std::ofstream file(a.out_path, std::ios::binary | std::ios::trunc);
      file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
      if (!file) {
        err << "error: cannot write " << a.out_path << '\n';
        return kExitUsage;
      }
    }
  }

  std::ostream& summary = export_to_stdout ? err : out;
  std::map<Element, std::size_t> periods;
  std::map<unsigned, std::size_t> crits;
  for (Element m = 0; m < table.size(); ++m) {
    ++periods[table.row_period(m)];
    ++crits[table.crit_index(m).value];
  }
  summary << "A_" << a.k << ": " << table.size() << " elements ("
          << (a.no_cache ? "built" : loaded ? "loaded from cache" : "built and cached") << ")\n";
  summary << "period histogram:";
  for (const auto& [p, n] : periods) summary << ' ' << p << ':' << n;
  summary << "\ncrit histogram:";
  for (const auto& [c, n] : crits) summary << ' ' << c << ':' << n;
  summary << '\n';
  return kExitSuccess;
}

int cmd_classify(const std::string& u_text, const std::string& v_text, std::uint32_t arity,
                 const Config& config, std::ostream& out) {
  const Term u = parse_term(u_text, arity);
  const Term v = parse_term(v_text, arity);
  const QuadrichotomyVerdict verdict = classify_pair(u, v, config.default_budget);
  if (config.output_format == OutputFormat::Json)
    out << serialize_verdict(verdict) << '\n';
  else
    print_verdict_text(out, verdict);
  return verdict.kind == VerdictKind::Unknown ? kExitInconclusive : kExitSuccess;
}

int cmd_separate(const std::string& w1_text, const std::string& w2_text, unsigned max_level,
                 std::ostream& out) {
  if (max_level > kMaxThreadLevel)
    throw UsageError("--max-level is at most " + std::to_string(kMaxThreadLevel));
  const Term w1 = parse_term(w1_text, 2);
  const Term w2 = parse_term(w2_text, 2);
  if (auto level = separating_level(w1, w2, max_level)) {
    out << "separated at level " << *level << " (" << eval_word_in_threads(w1, *level) << " vs "
        << eval_word_in_threads(w2, *level) << " in A_" << *level << ")\n";
    return kExitSuccess;
  }
  out << "not separated up to level " << max_level << '\n';
  return kExitInconclusive;
}

int cmd_spectrum(unsigned k, const Config& config, std::ostream& out) {
  check_k(k, config);
  const LaverTable& table = shared_table(k);
  const FCountReport report = f_counts(table);
  if (config.output_format == OutputFormat::Csv) {
    out << f_counts_csv({report});
    return kExitSuccess;
  }
  const CritSpectrum s = critical_spectrum(table);
  out << "level " << k << '\n';
  out << "right-power chain: " << join(table.right_power_chain()) << '\n';
  out << "marks:";
  for (CritIndex c : s.marks) out << ' ' << c.value;
  out << '\n';
  if (report.counts.empty()) out << "no interior counts\n";
  for (const FCount& c : report.counts) {
    out << "f(" << c.n << ") = " << c.value << (c.stable ? " (stable)" : " (unstable)") << '\n';
  }
  return kExitSuccess;
}

int cmd_bench(const std::string& range, const Config& config, std::ostream& out) {
  const auto dots = range.find("..");
  unsigned lo = 0, hi = 0;
  if (dots == std::string::npos) {
    lo = hi = static_cast<unsigned>(parse_number("range", range));
  } else {
    lo = static_cast<unsigned>(parse_number("range", range.substr(0, dots)));
    hi = static_cast<unsigned>(parse_number("range", range.substr(dots + 2)));
  }
  if (lo > hi) throw UsageError("bench range must be ascending");
  check_k(hi, config);
  const bool csv = config.output_format == OutputFormat::Csv;
  out << (csv ? "k,cells,seconds,rows_per_second,stored_cells,stored_bytes\n"
              : "k      cells           seconds     rows/s        stored cells  bytes\n");
  for (unsigned k = lo; k <= hi; ++k) {
    TableOptions options;
    options.mode = TableMode::Bulk;
    options.max_k = config.max_table_k;
    const auto start = std::chrono::steady_clock::now();
    const LaverTable table(k, options);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::uint64_t cells = std::uint64_t{table.size()} * table.size();
    const double rows_per_second = seconds > 0 ? table.size() / seconds : 0.0;
    const std::size_t stored = table.stored_cells();
    const std::size_t bytes = stored * sizeof(Element);
    if (csv) {
      out << k << ',' << cells << ',' << seconds << ',' << rows_per_second << ',' << stored << ','
          << bytes << '\n';
    } else {
      char line[160];
      std::snprintf(line, sizeof line, "%-6u %-15llu %-11.6f %-13.0f %-13zu %zu\n", k,
                    static_cast<unsigned long long>(cells), seconds, rows_per_second, stored,
                    bytes);
      out << line;
    }
  }
  return kExitSuccess;
}

int cmd_sweep(std::size_t size_bound, unsigned max_level, const Config& config,
              std::ostream& out) {
  if (max_level > kMaxThreadLevel)
    throw UsageError("--max-level is at most " + std::to_string(kMaxThreadLevel));
  const SweepReport r = freeness_sweep(size_bound, max_level);
  if (config.output_format == OutputFormat::Csv) {
    out << sweep_csv(r);
  } else {
    out << "words: " << r.term_count << "\nclasses: " << r.class_count
        << "\ncross-class pairs: " << r.cross_pairs << "\nseparated: " << r.separated
        << "\nunresolved: " << r.unresolved << "\nmax separating level: "
        << r.max_separating_level << "\nfalse separations: " << r.false_separations << '\n';
  }
  return r.unresolved == 0 && r.false_separations == 0 ? kExitSuccess : kExitInconclusive;
}

}  // namespace

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  };
}

Config resolve_config(const EnvLookup& env) {
  Config config;
  std::error_code ec;
  auto tmp = std::filesystem::temp_directory_path(ec);
  config.cache_dir = (ec ? std::filesystem::path("/tmp") : tmp) / "ldforge-cache";

  if (auto v = env("LDFORGE_CACHE_DIR")) config.cache_dir = *v;
  if (auto v = env("LDFORGE_MAX_TABLE_K"))
    config.max_table_k = static_cast<unsigned>(parse_number("LDFORGE_MAX_TABLE_K", *v));
  if (auto v = env("LDFORGE_MAX_DEPTH"))
    config.default_budget.max_expansion_depth = parse_number("LDFORGE_MAX_DEPTH", *v);
  if (auto v = env("LDFORGE_MAX_TERM_SIZE"))
    config.default_budget.max_term_size = parse_number("LDFORGE_MAX_TERM_SIZE", *v);
  if (auto v = env("LDFORGE_MAX_VISITED"))
    config.default_budget.max_visited = parse_number("LDFORGE_MAX_VISITED", *v);
  if (auto v = env("LDFORGE_MAX_TABLE_LEVEL"))
    config.default_budget.max_table_level =
        static_cast<unsigned>(parse_number("LDFORGE_MAX_TABLE_LEVEL", *v));
  if (auto v = env("LDFORGE_FORMAT")) {
    auto fmt = parse_format(*v);
    if (!fmt) throw UsageError("LDFORGE_FORMAT must be text, csv or json");
    config.output_format = *fmt;
  }
  return config;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env) {
  CLI::App app{"Left-distributive algebra toolkit: Laver tables, word problem, threads"};
  app.name("ldforge");
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("--cache-dir", flags.cache_dir, "Table cache directory");
  app.add_option("--max-table-k", flags.max_table_k, "Largest table exponent allowed");
  app.add_option("--format", flags.format, "Output format: text, csv or json");
  app.add_option("--max-depth", flags.max_depth, "Forward expansion depth bound");
  app.add_option("--max-term-size", flags.max_term_size, "Term size bound during search");
  app.add_option("--max-visited", flags.max_visited, "Visited-term bound during search");
  app.add_option("--max-table-level", flags.max_table_level, "Highest refutation table level");

  TableArgs table_args;
  auto* table = app.add_subcommand("table", "Build or load A_k and summarize it");
  table->add_option("k", table_args.k, "Table exponent")->required();
  table->add_option("--export", table_args.export_format, "Export format: csv or binary");
  table->add_option("--out", table_args.out_path, "Export destination (default: stdout)");
  table->add_flag("--no-cache", table_args.no_cache, "Do not read or write the table cache");

  std::string u_text, v_text;
  std::uint32_t arity = 2;
  auto* classify = app.add_subcommand("classify", "Quadrichotomy verdict for two terms");
  classify->add_option("u", u_text)->required();
  classify->add_option("v", v_text)->required();
  classify->add_option("--arity", arity, "Number of generators");

  std::string w1_text, w2_text;
  unsigned max_level = 14;
  auto* separate = app.add_subcommand("separate", "Least level separating two words in u, v");
  separate->add_option("w1", w1_text)->required();
  separate->add_option("w2", w2_text)->required();
  separate->add_option("--max-level", max_level, "Highest level to try");

  unsigned spectrum_k = 0;
  auto* spectrum = app.add_subcommand("spectrum", "Critical spectrum and f-counts of A_k");
  spectrum->add_option("k", spectrum_k)->required();

  std::string bench_range;
  auto* bench = app.add_subcommand("bench", "Bulk build timings over a range lo..hi");
  bench->add_option("range", bench_range)->required();

  std::size_t sweep_size = 3;
  unsigned sweep_level = 14;
  auto* sweep = app.add_subcommand("sweep", "Freeness sweep over small 2-generator words");
  sweep->add_option("size_bound", sweep_size)->required();
  sweep->add_option("--max-level", sweep_level, "Highest level to try");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const Config config = apply_flags(resolve_config(env), flags);
    if (*table) return cmd_table(table_args, config, out, err);
    if (*classify) return cmd_classify(u_text, v_text, arity, config, out);
    if (*separate) return cmd_separate(w1_text, w2_text, max_level, out);
    if (*spectrum) return cmd_spectrum(spectrum_k, config, out);
    if (*bench) return cmd_bench(bench_range, config, out);
    if (*sweep) return cmd_sweep(sweep_size, sweep_level, config, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const TableError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ldforge::cli

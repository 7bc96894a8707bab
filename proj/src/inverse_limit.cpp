#include "ldforge/inverse_limit.hpp"

#include <map>
#include <mutex>
#include <unordered_map>

#include "ldforge/word_problem.hpp"

namespace ldforge {

struct Thread::State {
  LevelFn fn;
  std::mutex mutex;
  std::map<unsigned, Element> memo;
};

Thread::Thread(LevelFn fn) : state_(std::make_shared<State>()) { state_->fn = std::move(fn); }

Element Thread::at(unsigned level) const {
  if (level > kMaxThreadLevel) {
    throw std::out_of_range("thread level " + std::to_string(level) + " is not realizable");
  }
  {
    std::lock_guard lock(state_->mutex);
    if (auto it = state_->memo.find(level); it != state_->memo.end()) return it->second;
  }
  // Computed outside the lock: the level function may realize other threads.
  const Element value = state_->fn(level);
  std::lock_guard lock(state_->mutex);
  return state_->memo.try_emplace(level, value).first->second;
}

unsigned Thread::max_realized() const {
  std::lock_guard lock(state_->mutex);
  return state_->memo.empty() ? 0 : state_->memo.rbegin()->first;
}

bool Thread::coherent_up_to(unsigned level) const {
  std::vector<Element> values;
  for (unsigned n = 0; n <= level; ++n) values.push_back(at(n));
  for (unsigned n = 0; n <= level; ++n)
    for (unsigned m = 0; m <= n; ++m)
      if (project(n, m, values[n]) != values[m]) return false;
  return true;
}

Thread zero_thread() {
  return Thread([](unsigned) { return Element{0}; });
}

Thread shifted_thread(unsigned s) {
  return Thread([s](unsigned level) {
    const LaverTable& table = shared_table(level);
    const auto chain = table.right_power_chain();
    Element acc = 0;  // neutral for composition
    bool first = true;
    for (std::size_t i = s; i < level && i < chain.size(); ++i) {
      if (chain[i] == 0) break;
      acc = first ? chain[i] : table.compose(acc, chain[i]);
      first = false;
    }
    return acc;
  });
}

Thread canonical_u_thread() { return shifted_thread(0); }
Thread canonical_v_thread() { return shifted_thread(1); }

Thread thread_apply(const Thread& a, const Thread& b) {
  return Thread([a, b](unsigned level) { return shared_table(level).apply(a.at(level), b.at(level)); });
}

Thread thread_compose(const Thread& a, const Thread& b) {
  return Thread(
      [a, b](unsigned level) { return shared_table(level).compose(a.at(level), b.at(level)); });
}

namespace {

const Thread& shared_u() {
  static const Thread u = canonical_u_thread();
  return u;
}

const Thread& shared_v() {
  static const Thread v = canonical_v_thread();
  return v;
}

}  // namespace

Element eval_word_in_threads(const Term& w, unsigned level) {
  if (w.arity() > 2) throw std::invalid_argument("thread words use only the generators x and y");
  const Element assignment[2] = {shared_u().at(level), shared_v().at(level)};
  return eval_term(shared_table(level), w, assignment);
}

std::optional<unsigned> separating_level(const Term& w1, const Term& w2, unsigned max_level) {
  for (unsigned n = 1; n <= max_level; ++n)
    if (eval_word_in_threads(w1, n) != eval_word_in_threads(w2, n)) return n;
  return std::nullopt;
}

SweepReport freeness_sweep(std::size_t size_bound, unsigned max_level,
                           std::optional<std::size_t> closure_bound) {
  SweepReport report;
  report.size_bound = size_bound;
  report.max_level = max_level;
  report.closure_bound = closure_bound.value_or(size_bound + 3);

  std::vector<Term> terms;
  for (std::size_t s = 1; s <= size_bound; ++s)
    for (Term& t : enumerate_a_terms(s, 2)) terms.push_back(std::move(t));
  report.term_count = terms.size();

  // Union of closures. A closure that ran into a bound may miss members, so
  // distinctness is only proven for classes with a complete closure.
  std::unordered_map<Term, std::size_t, TermHash> index;
  for (std::size_t i = 0; i < terms.size(); ++i) index.emplace(terms[i], i);
  std::vector<std::size_t> parent(terms.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  std::vector<bool> closed(terms.size(), false);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const LdClosure closure = ld_closure(terms[i], report.closure_bound);
    closed[i] = !closure.truncated;
    for (const Term& m : closure.terms) {
      if (m.size() > size_bound) continue;
      if (auto it = index.find(m); it != index.end()) parent[root(it->second)] = root(i);
    }
  }
  std::unordered_map<std::size_t, std::size_t> class_id;
  std::vector<bool> complete;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    auto [it, fresh] = class_id.try_emplace(root(i), report.classes.size());
    if (fresh) {
      report.classes.emplace_back();
      complete.push_back(false);
    }
    report.classes[it->second].push_back(terms[i]);
    if (closed[i]) complete[it->second] = true;
  }
  report.class_count = report.classes.size();

  // Evaluation vectors; level n is entry n - 1.
  auto values = [&](const Term& t) {
    std::vector<Element> v(max_level);
    for (unsigned n = 1; n <= max_level; ++n) v[n - 1] = eval_word_in_threads(t, n);
    return v;
  };
  std::vector<std::vector<Element>> class_values;
  for (const auto& members : report.classes) {
    class_values.push_back(values(members.front()));
    for (std::size_t i = 1; i < members.size(); ++i)
      if (values(members[i]) != class_values.back()) ++report.false_separations;
  }

  for (std::size_t i = 0; i < report.classes.size(); ++i) {
    for (std::size_t j = i + 1; j < report.classes.size(); ++j) {
      SweepPair pair{report.classes[i].front(), report.classes[j].front(), std::nullopt,
                     complete[i] || complete[j]};
      for (unsigned n = 1; n <= max_level; ++n) {
        if (class_values[i][n - 1] != class_values[j][n - 1]) {
          pair.level = n;
          break;
        }
      }
      ++report.cross_pairs;
      if (pair.level) {
        ++report.separated;
        report.max_separating_level = std::max(report.max_separating_level, *pair.level);
      } else {
        ++report.unresolved;
      }
      report.pairs.push_back(std::move(pair));
    }
  }
  return report;
}

std::string sweep_csv(const SweepReport& report) {
  std::string out = "w1,w2,verdict,separating_level,budget\n";
  for (const auto& p : report.pairs) {
    out += '"' + render_term(p.w1) + "\",\"" + render_term(p.w2) + "\",";
    out += p.level ? "separated," + std::to_string(*p.level) : std::string("unresolved,");
    out += ',' + std::to_string(report.max_level) + '\n';
  }
  return out;
}

}  // namespace ldforge

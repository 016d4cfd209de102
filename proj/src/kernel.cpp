#include "datum/kernel.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace datum {

Character::Character(std::vector<Atom> p) : parts(std::move(p)) {
  if (parts.empty()) fail(Errc::invalid_character, "a character needs at least one atom");
}

Character Character::atom(std::string symbol) {
  return Character({Atom{std::move(symbol)}});
}

Character Character::tuple(std::vector<std::string> symbols) {
  std::vector<Atom> parts;
  parts.reserve(symbols.size());
  for (auto& s : symbols) parts.push_back(Atom{std::move(s)});
  return Character(std::move(parts));
}

std::string to_string(const Character& c) {
  if (c.dimension() == 1) return c.parts[0].symbol;
  std::string out = "(";
  for (std::size_t i = 0; i < c.parts.size(); ++i) {
    if (i) out += ",";
    out += c.parts[i].symbol;
  }
  out += ")";
  return out;
}

Character concat(const Character& a, const Character& b) {
  std::vector<Atom> parts = a.parts;
  parts.insert(parts.end(), b.parts.begin(), b.parts.end());
  return Character(std::move(parts));
}

bool Alphabet::contains(const Character& c) const {
  return std::binary_search(members.begin(), members.end(), c);
}

namespace {

std::optional<long> detect_nat_bound(const std::vector<Character>& members) {
  // Members are sorted lexicographically; re-check as the integer set {0..N}.
  std::set<long> values;
  for (const auto& m : members) {
    if (m.dimension() != 1) return std::nullopt;
    auto v = atom_value(m.parts[0]);
    if (!v || *v < 0) return std::nullopt;
    values.insert(*v);
  }
  long expect = 0;
  for (long v : values) {
    if (v != expect++) return std::nullopt;
  }
  return expect - 1;
}

} // namespace

AlphabetPtr make_alphabet(std::string name, std::vector<Character> members) {
  if (members.empty()) fail(Errc::empty_alphabet, "alphabet '" + name + "' has no members");
  std::sort(members.begin(), members.end());
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (members[i] == members[i - 1])
      fail(Errc::duplicate_member,
           "alphabet '" + name + "' lists " + to_string(members[i]) + " twice");
  }
  const std::size_t dim = members.front().dimension();
  for (const auto& m : members) {
    if (m.dimension() != dim)
      fail(Errc::mixed_dimension, "alphabet '" + name + "' mixes dimensions " +
                                      std::to_string(dim) + " and " +
                                      std::to_string(m.dimension()));
  }
  auto a = std::make_shared<Alphabet>();
  a->name = std::move(name);
  a->members = std::move(members);
  a->dimension = dim;
  a->nat_bound = detect_nat_bound(a->members);
  return a;
}

AlphabetPtr make_nat_segment(std::string name, long bound) {
  if (bound < 0) fail(Errc::empty_alphabet, "nat segment bound must be non-negative");
  std::vector<Character> members;
  members.reserve(static_cast<std::size_t>(bound) + 1);
  for (long i = 0; i <= bound; ++i) members.push_back(Character::atom(std::to_string(i)));
  return make_alphabet(std::move(name), std::move(members));
}

AlphabetPtr product_alphabet(std::string name, std::span<const AlphabetPtr> factors) {
  if (factors.empty()) fail(Errc::empty_alphabet, "product of zero factors");
  std::vector<Character> members;
  for (const auto& f : factors) {
    if (!f) fail(Errc::empty_alphabet, "null factor alphabet");
    if (members.empty()) {
      members = f->members;
      continue;
    }
    std::vector<Character> next;
    next.reserve(members.size() * f->size());
    for (const auto& lhs : members)
      for (const auto& rhs : f->members) next.push_back(concat(lhs, rhs));
    members = std::move(next);
  }
  return make_alphabet(std::move(name), std::move(members));
}

bool same_value_set(const Alphabet& a, const Alphabet& b) {
  return a.dimension == b.dimension && a.members == b.members;
}

bool sub_value_set(const Alphabet& sub, const Alphabet& super) {
  if (sub.dimension != super.dimension) return false;
  return std::includes(super.members.begin(), super.members.end(), sub.members.begin(),
                       sub.members.end());
}

std::optional<long> atom_value(const Atom& a) {
  long value = 0;
  const char* first = a.symbol.data();
  const char* last = first + a.symbol.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

bool integer_alphabet(const Alphabet& a) {
  if (a.dimension != 1) return false;
  for (const auto& m : a.members)
    if (!atom_value(m.parts[0])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Builtins

std::string_view builtin_name(BuiltinKind kind) {
  switch (kind) {
    case BuiltinKind::successor: return "succ";
    case BuiltinKind::constant: return "const";
    case BuiltinKind::identity: return "id";
    case BuiltinKind::projection: return "proj";
    case BuiltinKind::abs_difference: return "absdiff";
    case BuiltinKind::pack: return "pack";
    case BuiltinKind::complex_add: return "cplx_add";
    case BuiltinKind::complex_mul: return "cplx_mul";
  }
  return "?";
}

std::optional<BuiltinKind> builtin_by_name(std::string_view name) {
  for (BuiltinKind k :
       {BuiltinKind::successor, BuiltinKind::constant, BuiltinKind::identity,
        BuiltinKind::projection, BuiltinKind::abs_difference, BuiltinKind::pack,
        BuiltinKind::complex_add, BuiltinKind::complex_mul}) {
    if (builtin_name(k) == name) return k;
  }
  return std::nullopt;
}

std::string signature_text(const Operation& op) {
  std::string out;
  for (std::size_t i = 0; i < op.domain.size(); ++i) {
    if (i) out += ", ";
    out += op.domain[i]->name;
  }
  out += " -> ";
  out += op.codomain->name;
  return out;
}

namespace {

void require_signature(bool ok, const std::string& what) {
  if (!ok) fail(Errc::signature_mismatch, what);
}

bool complex_grid(const Alphabet& a) {
  if (a.dimension != 2) return false;
  for (const auto& m : a.members)
    for (const auto& part : m.parts)
      if (!atom_value(part)) return false;
  return true;
}

} // namespace

OperationPtr make_table_op(std::string name, std::vector<AlphabetPtr> domain,
                           AlphabetPtr codomain,
                           std::vector<std::pair<std::vector<Character>, Character>> rows) {
  if (domain.empty()) fail(Errc::signature_mismatch, "operation '" + name + "' needs arity >= 1");
  TableRule table;
  for (auto& [input, output] : rows) {
    if (input.size() != domain.size())
      fail(Errc::bad_table_row, "table '" + name + "': row arity " +
                                    std::to_string(input.size()) + " vs domain arity " +
                                    std::to_string(domain.size()));
    for (std::size_t i = 0; i < input.size(); ++i) {
      if (!domain[i]->contains(input[i]))
        fail(Errc::bad_table_row, "table '" + name + "': input " + to_string(input[i]) +
                                      " is not in alphabet " + domain[i]->name);
    }
    if (!codomain->contains(output))
      fail(Errc::bad_table_row, "table '" + name + "': output " + to_string(output) +
                                    " is not in alphabet " + codomain->name);
    auto [it, inserted] = table.rows.emplace(std::move(input), std::move(output));
    if (!inserted)
      fail(Errc::bad_table_row, "table '" + name + "': duplicate row for " +
                                    to_string(it->first.front()));
  }
  auto op = std::make_shared<Operation>();
  op->name = std::move(name);
  op->domain = std::move(domain);
  op->codomain = std::move(codomain);
  op->rule = std::move(table);
  return op;
}

OperationPtr make_builtin_op(std::string name, std::vector<AlphabetPtr> domain,
                             AlphabetPtr codomain, BuiltinKind kind, int slot,
                             std::optional<Character> value) {
  if (domain.empty()) fail(Errc::signature_mismatch, "operation '" + name + "' needs arity >= 1");
  const std::string where = "builtin '" + name + "' (" + std::string(builtin_name(kind)) + ")";
  switch (kind) {
    case BuiltinKind::successor:
      require_signature(domain.size() == 1, where + " takes one argument");
      require_signature(domain[0]->nat_bound.has_value(), where + " needs a nat segment domain");
      require_signature(same_value_set(*domain[0], *codomain),
                        where + " must map the segment to itself");
      break;
    case BuiltinKind::identity:
      require_signature(domain.size() == 1 && same_value_set(*domain[0], *codomain),
                        where + " must map one alphabet to itself");
      break;
    case BuiltinKind::projection:
      require_signature(slot >= 1 && static_cast<std::size_t>(slot) <= domain.size(),
                        where + " slot out of range");
      require_signature(same_value_set(*domain[slot - 1], *codomain),
                        where + " codomain must equal the selected slot");
      break;
    case BuiltinKind::constant:
      require_signature(value.has_value() && codomain->contains(*value),
                        where + " needs a codomain member as value");
      break;
    case BuiltinKind::abs_difference:
      require_signature(domain.size() == 2 && integer_alphabet(*domain[0]) &&
                            integer_alphabet(*domain[1]) && integer_alphabet(*codomain),
                        where + " needs two integer alphabets and an integer codomain");
      break;
    case BuiltinKind::pack: {
      std::size_t total = 0;
      for (const auto& d : domain) total += d->dimension;
      require_signature(total == codomain->dimension,
                        where + " codomain dimension must be the sum of the argument dimensions");
      break;
    }
    case BuiltinKind::complex_add:
    case BuiltinKind::complex_mul:
      require_signature(domain.size() == 2 && complex_grid(*domain[0]) &&
                            complex_grid(*domain[1]) && complex_grid(*codomain),
                        where + " needs 2-dim integer-grid alphabets");
      break;
  }
  auto op = std::make_shared<Operation>();
  op->name = std::move(name);
  op->domain = std::move(domain);
  op->codomain = std::move(codomain);
  op->rule = BuiltinRule{kind, slot, std::move(value)};
  return op;
}

OperationPtr compose(OperationPtr h, std::vector<OperationPtr> gs, std::string name) {
  if (!h) fail(Errc::signature_mismatch, "compose: null outer operation");
  if (gs.size() != h->arity())
    fail(Errc::signature_mismatch, "compose: '" + h->name + "' has arity " +
                                       std::to_string(h->arity()) + " but got " +
                                       std::to_string(gs.size()) + " inner operations");
  std::vector<AlphabetPtr> domain;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (!gs[i]) fail(Errc::signature_mismatch, "compose: null inner operation");
    if (!same_value_set(*gs[i]->codomain, *h->domain[i]))
      fail(Errc::signature_mismatch, "compose: codomain of '" + gs[i]->name +
                                         "' does not match slot " + std::to_string(i + 1) +
                                         " of '" + h->name + "'");
    domain.insert(domain.end(), gs[i]->domain.begin(), gs[i]->domain.end());
  }
  if (name.empty()) {
    name = "comp(" + h->name + ";";
    for (std::size_t i = 0; i < gs.size(); ++i) name += (i ? ", " : " ") + gs[i]->name;
    name += ")";
  }
  auto op = std::make_shared<Operation>();
  op->name = std::move(name);
  op->domain = std::move(domain);
  op->codomain = h->codomain;
  op->rule = CompRule{std::move(h), std::move(gs)};
  return op;
}

OperationPtr prim_rec(OperationPtr g, OperationPtr h, std::string name) {
  if (!g || !h) fail(Errc::signature_mismatch, "primrec: null operation");
  const std::size_t k = g->arity();
  if (h->arity() != k + 2)
    fail(Errc::signature_mismatch, "primrec: step '" + h->name + "' must have arity " +
                                       std::to_string(k + 2));
  for (std::size_t i = 0; i < k; ++i) {
    if (!same_value_set(*h->domain[i], *g->domain[i]))
      fail(Errc::signature_mismatch,
           "primrec: slot " + std::to_string(i + 1) + " of step differs from base");
  }
  const AlphabetPtr& counter = h->domain[k];
  if (!counter->nat_bound)
    fail(Errc::signature_mismatch, "primrec: counter slot of '" + h->name +
                                       "' must be a nat segment");
  if (!same_value_set(*h->domain[k + 1], *g->codomain) ||
      !same_value_set(*h->codomain, *g->codomain))
    fail(Errc::signature_mismatch, "primrec: step must take and return the base codomain");
  if (name.empty()) name = "primrec(" + g->name + ", " + h->name + ")";
  auto op = std::make_shared<Operation>();
  op->name = std::move(name);
  op->domain = g->domain;
  op->domain.push_back(counter);
  op->codomain = g->codomain;
  op->rule = PrimRecRule{std::move(g), std::move(h)};
  return op;
}

OperationPtr mu_rec(OperationPtr g, std::string name) {
  if (!g) fail(Errc::signature_mismatch, "murec: null operation");
  if (g->arity() < 2)
    fail(Errc::signature_mismatch, "murec: '" + g->name + "' needs arity >= 2");
  const AlphabetPtr& counter = g->domain.back();
  if (!counter->nat_bound)
    fail(Errc::signature_mismatch, "murec: last slot of '" + g->name +
                                       "' must be a nat segment");
  if (!same_value_set(*g->codomain, *counter))
    fail(Errc::signature_mismatch, "murec: '" + g->name +
                                       "' must map into its own counter segment");
  if (name.empty()) name = "murec(" + g->name + ")";
  auto op = std::make_shared<Operation>();
  op->name = std::move(name);
  op->domain.assign(g->domain.begin(), g->domain.end() - 1);
  op->codomain = counter;
  op->rule = MuRecRule{std::move(g)};
  return op;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct EvalState {
  std::uint64_t remaining;
};

Character eval_node(const Operation& op, std::span<const Character> args, EvalState& st);

long integer_arg(const Operation& op, const Character& c) {
  auto v = atom_value(c.parts[0]);
  if (!v) fail(Errc::domain_violation, op.name + ": " + to_string(c) + " is not an integer");
  return *v;
}

Character grid_result(const Operation& op, long re, long im) {
  Character out = Character::tuple({std::to_string(re), std::to_string(im)});
  if (!op.codomain->contains(out))
    fail(Errc::out_of_grid,
         op.name + ": result " + to_string(out) + " leaves the grid " + op.codomain->name);
  return out;
}

Character eval_builtin(const Operation& op, const BuiltinRule& rule,
                       std::span<const Character> args) {
  switch (rule.kind) {
    case BuiltinKind::successor: {
      long n = integer_arg(op, args[0]);
      if (n >= *op.domain[0]->nat_bound)
        fail(Errc::successor_overflow, op.name + ": successor of " + std::to_string(n) +
                                           " exceeds bound " +
                                           std::to_string(*op.domain[0]->nat_bound));
      return Character::atom(std::to_string(n + 1));
    }
    case BuiltinKind::identity:
      return args[0];
    case BuiltinKind::projection:
      return args[static_cast<std::size_t>(rule.slot) - 1];
    case BuiltinKind::constant:
      return *rule.value;
    case BuiltinKind::abs_difference: {
      long a = integer_arg(op, args[0]);
      long b = integer_arg(op, args[1]);
      Character out = Character::atom(std::to_string(a >= b ? a - b : b - a));
      if (!op.codomain->contains(out))
        fail(Errc::out_of_grid, op.name + ": |a-b| = " + to_string(out) +
                                    " is outside " + op.codomain->name);
      return out;
    }
    case BuiltinKind::pack: {
      Character out = args[0];
      for (std::size_t i = 1; i < args.size(); ++i) out = concat(out, args[i]);
      if (!op.codomain->contains(out))
        fail(Errc::out_of_grid, op.name + ": packed tuple " + to_string(out) +
                                    " is outside " + op.codomain->name);
      return out;
    }
    case BuiltinKind::complex_add: {
      long x1 = *atom_value(args[0].parts[0]), x2 = *atom_value(args[0].parts[1]);
      long y1 = *atom_value(args[1].parts[0]), y2 = *atom_value(args[1].parts[1]);
      return grid_result(op, x1 + y1, x2 + y2);
    }
    case BuiltinKind::complex_mul: {
      long x1 = *atom_value(args[0].parts[0]), x2 = *atom_value(args[0].parts[1]);
      long y1 = *atom_value(args[1].parts[0]), y2 = *atom_value(args[1].parts[1]);
      return grid_result(op, x1 * y1 - x2 * y2, x1 * y2 + x2 * y1);
    }
  }
  fail(Errc::unknown_builtin, op.name);
}

Character eval_node(const Operation& op, std::span<const Character> args, EvalState& st) {
  if (st.remaining == 0)
    fail(Errc::budget_exhausted, "step budget exhausted while evaluating '" + op.name + "'");
  --st.remaining;

  if (args.size() != op.arity())
    fail(Errc::arity_mismatch, op.name + ": expected " + std::to_string(op.arity()) +
                                   " arguments, got " + std::to_string(args.size()));
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!op.domain[i]->contains(args[i]))
      fail(Errc::domain_violation, op.name + ": argument " + std::to_string(i + 1) + " = " +
                                       to_string(args[i]) + " is not in alphabet " +
                                       op.domain[i]->name);
  }

  if (const auto* table = std::get_if<TableRule>(&op.rule)) {
    std::vector<Character> key(args.begin(), args.end());
    auto it = table->rows.find(key);
    if (it == table->rows.end()) {
      std::string rendered;
      for (std::size_t i = 0; i < key.size(); ++i)
        rendered += (i ? ", " : "") + to_string(key[i]);
      fail(Errc::incomplete_table, op.name + ": no table row for (" + rendered + ")");
    }
    return it->second;
  }
  if (const auto* builtin = std::get_if<BuiltinRule>(&op.rule)) {
    return eval_builtin(op, *builtin, args);
  }
  if (const auto* comp = std::get_if<CompRule>(&op.rule)) {
    std::vector<Character> mid;
    mid.reserve(comp->inner.size());
    std::size_t offset = 0;
    for (const auto& g : comp->inner) {
      auto slice = args.subspan(offset, g->arity());
      offset += g->arity();
      mid.push_back(eval_node(*g, slice, st));
    }
    return eval_node(*comp->outer, mid, st);
  }
  if (const auto* rec = std::get_if<PrimRecRule>(&op.rule)) {
    const std::size_t k = rec->base->arity();
    const long b = integer_arg(op, args[k]);
    Character acc = eval_node(*rec->base, args.first(k), st);
    std::vector<Character> step_args(args.begin(), args.begin() + static_cast<long>(k));
    step_args.push_back(Character::atom("0"));
    step_args.push_back(acc);
    for (long i = 0; i < b; ++i) {
      step_args[k] = Character::atom(std::to_string(i));
      step_args[k + 1] = acc;
      acc = eval_node(*rec->step, step_args, st);
    }
    return acc;
  }
  const auto& mu = std::get<MuRecRule>(op.rule);
  const long bound = *mu.body->domain.back()->nat_bound;
  std::vector<Character> body_args(args.begin(), args.end());
  body_args.push_back(Character::atom("0"));
  for (long b = 0; b <= bound; ++b) {
    body_args.back() = Character::atom(std::to_string(b));
    Character r = eval_node(*mu.body, body_args, st);
    if (atom_value(r.parts[0]) == 0) return Character::atom(std::to_string(b));
  }
  fail(Errc::mu_divergence, op.name + ": no zero of '" + mu.body->name +
                                "' within bound " + std::to_string(bound));
}

} // namespace

Character eval(const Operation& op, std::span<const Character> args, const StepBudget& budget) {
  EvalState st{budget.max_steps};
  return eval_node(op, args, st);
}

Outcome try_eval(const Operation& op, std::span<const Character> args,
                 const StepBudget& budget) {
  try {
    return Outcome{eval(op, args, budget), std::nullopt};
  } catch (const Error& e) {
    return Outcome{std::nullopt, e.code()};
  }
}

std::string to_string(const Outcome& o) {
  if (o.value) return to_string(*o.value);
  return "!" + std::string(errc_name(*o.error));
}

std::vector<std::vector<Character>> domain_product(std::span<const AlphabetPtr> domain) {
  std::vector<std::vector<Character>> tuples{{}};
  for (const auto& slot : domain) {
    std::vector<std::vector<Character>> next;
    next.reserve(tuples.size() * slot->size());
    for (const auto& prefix : tuples) {
      for (const auto& m : slot->members) {
        auto t = prefix;
        t.push_back(m);
        next.push_back(std::move(t));
      }
    }
    tuples = std::move(next);
  }
  return tuples;
}

std::string op_fingerprint(const Operation& op, const StepBudget& budget) {
  std::ostringstream out;
  for (const auto& d : op.domain) {
    out << "[";
    for (const auto& m : d->members) out << to_string(m) << " ";
    out << "]";
  }
  out << "->[";
  for (const auto& m : op.codomain->members) out << to_string(m) << " ";
  out << "] ";
  for (const auto& args : domain_product(op.domain)) {
    out << to_string(try_eval(op, args, budget)) << ";";
  }
  return out.str();
}

bool extensionally_equal(const Operation& a, const Operation& b) {
  return op_fingerprint(a) == op_fingerprint(b);
}

// ---------------------------------------------------------------------------
// Closure enumeration

namespace {

struct PoolEntry {
  OperationPtr op;
  int cost;
  std::string fingerprint;
};

bool known_alphabet(std::span<const AlphabetPtr> alphabets, const Alphabet& a) {
  for (const auto& candidate : alphabets)
    if (same_value_set(*candidate, a)) return true;
  return false;
}

} // namespace

ClosureResult closure_enumerate(std::span<const AlphabetPtr> alphabets,
                                std::span<const OperationPtr> elems, int depth,
                                std::size_t cap, std::size_t work_tuples) {
  for (const auto& e : elems) {
    if (!e) fail(Errc::signature_mismatch, "closure: null elementary operation");
    for (const auto& d : e->domain)
      if (!known_alphabet(alphabets, *d))
        fail(Errc::signature_mismatch, "closure: '" + e->name + "' uses alphabet " + d->name +
                                           " outside the given set");
    if (!known_alphabet(alphabets, *e->codomain))
      fail(Errc::signature_mismatch, "closure: '" + e->name + "' maps into alphabet " +
                                         e->codomain->name + " outside the given set");
  }

  ClosureResult result;
  result.cap = cap;
  std::vector<PoolEntry> pool;
  std::set<std::string> seen;
  std::size_t work_left = work_tuples;
  const StepBudget dedup_budget{20'000}; // per-entry; exhaustion is a recorded outcome

  auto add_candidate = [&](OperationPtr op, int cost) -> bool {
    std::size_t table_size = 1;
    for (const auto& d : op->domain) {
      table_size *= d->size();
      if (table_size > work_left) {
        result.truncated = true;
        return false;
      }
    }
    work_left -= table_size;
    std::string fp = op_fingerprint(*op, dedup_budget);
    if (!seen.insert(fp).second) return true; // extensional duplicate
    if (pool.size() >= cap) {
      result.truncated = true;
      return false;
    }
    pool.push_back(PoolEntry{std::move(op), cost, std::move(fp)});
    return true;
  };

  std::vector<OperationPtr> sorted_elems(elems.begin(), elems.end());
  std::sort(sorted_elems.begin(), sorted_elems.end(),
            [](const OperationPtr& a, const OperationPtr& b) { return a->name < b->name; });
  for (auto& e : sorted_elems) {
    if (!add_candidate(e, 0)) break;
  }

  for (int cost = 1; cost <= depth && !result.truncated; ++cost) {
    const std::size_t snapshot = pool.size();
    const int inner_budget = cost - 1; // component costs sum to cost-1

    // Rule 1: Comp. Each slot of an outer op is fed by a pool entry whose
    // codomain matches; the chosen costs must sum to the inner budget.
    // add_candidate grows the pool, so loops copy entries instead of holding
    // references into it.
    for (std::size_t hi = 0; hi < snapshot && !result.truncated; ++hi) {
      const OperationPtr h_op = pool[hi].op;
      const int h_cost = pool[hi].cost;
      if (h_cost > inner_budget) continue;
      const std::size_t n = h_op->arity();
      std::vector<std::vector<std::size_t>> slot_candidates(n);
      bool feasible = true;
      for (std::size_t s = 0; s < n && feasible; ++s) {
        for (std::size_t gi = 0; gi < snapshot; ++gi) {
          if (same_value_set(*pool[gi].op->codomain, *h_op->domain[s]))
            slot_candidates[s].push_back(gi);
        }
        feasible = !slot_candidates[s].empty();
      }
      if (!feasible) continue;

      std::vector<std::size_t> picked(n);
      auto recurse = [&](auto&& self, std::size_t s, int spent) -> void {
        if (result.truncated) return;
        if (s == n) {
          if (spent != inner_budget - h_cost) return;
          std::vector<OperationPtr> gs;
          gs.reserve(n);
          for (std::size_t i = 0; i < n; ++i) gs.push_back(pool[picked[i]].op);
          add_candidate(compose(h_op, std::move(gs)), cost);
          return;
        }
        for (std::size_t gi : slot_candidates[s]) {
          int next = spent + pool[gi].cost;
          if (next > inner_budget - h_cost) continue;
          picked[s] = gi;
          self(self, s + 1, next);
          if (result.truncated) return;
        }
      };
      recurse(recurse, 0, 0);
    }

    // Rule 2: PrimRec.
    for (std::size_t gi = 0; gi < snapshot && !result.truncated; ++gi) {
      for (std::size_t hi = 0; hi < snapshot && !result.truncated; ++hi) {
        const OperationPtr g_op = pool[gi].op;
        const OperationPtr h_op = pool[hi].op;
        if (pool[gi].cost + pool[hi].cost != inner_budget) continue;
        const std::size_t k = g_op->arity();
        if (h_op->arity() != k + 2) continue;
        bool fits = h_op->domain[k]->nat_bound.has_value() &&
                    same_value_set(*h_op->domain[k + 1], *g_op->codomain) &&
                    same_value_set(*h_op->codomain, *g_op->codomain);
        for (std::size_t i = 0; fits && i < k; ++i)
          fits = same_value_set(*h_op->domain[i], *g_op->domain[i]);
        if (!fits) continue;
        add_candidate(prim_rec(g_op, h_op), cost);
      }
    }

    // Rule 3: MuRec.
    for (std::size_t gi = 0; gi < snapshot && !result.truncated; ++gi) {
      const OperationPtr g_op = pool[gi].op;
      if (pool[gi].cost != inner_budget) continue;
      if (g_op->arity() < 2) continue;
      if (!g_op->domain.back()->nat_bound) continue;
      if (!same_value_set(*g_op->codomain, *g_op->domain.back())) continue;
      add_candidate(mu_rec(g_op), cost);
    }
  }

  result.ops.reserve(pool.size());
  for (auto& entry : pool)
    result.ops.push_back(EnumeratedOp{entry.op, entry.cost, entry.op->name});
  return result;
}

} // namespace datum

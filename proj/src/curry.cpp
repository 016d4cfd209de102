#include "datum/curry.hpp"

#include <sstream>

namespace datum {

std::vector<AlphabetPtr> CurriedOp::residual_domain() const {
  std::vector<AlphabetPtr> rest;
  rest.reserve(base->arity() - 1);
  for (std::size_t i = 0; i < base->arity(); ++i) {
    if (static_cast<int>(i) + 1 != focal_slot) rest.push_back(base->domain[i]);
  }
  return rest;
}

std::vector<AlphabetPtr> ResidualFunction::domain() const {
  std::vector<AlphabetPtr> rest;
  rest.reserve(base->arity() - 1);
  for (std::size_t i = 0; i < base->arity(); ++i) {
    if (static_cast<int>(i) + 1 != slot) rest.push_back(base->domain[i]);
  }
  return rest;
}

CurriedOp curry(OperationPtr op, int slot) {
  if (!op) fail(Errc::signature_mismatch, "curry: null operation");
  if (slot < 1 || static_cast<std::size_t>(slot) > op->arity())
    fail(Errc::index_out_of_range, "curry: slot " + std::to_string(slot) +
                                       " is outside 1.." + std::to_string(op->arity()) +
                                       " for '" + op->name + "'");
  CurriedOp c;
  c.base = op;
  c.focal_slot = slot;
  c.focal_domain = op->domain[static_cast<std::size_t>(slot) - 1];
  c.display = op->name + "@" + std::to_string(slot);
  return c;
}

ResidualFunction apply_curried(const CurriedOp& c, const Character& focal) {
  if (!c.focal_domain->contains(focal))
    fail(Errc::domain_violation, c.display + ": " + to_string(focal) +
                                     " is not in focal alphabet " + c.focal_domain->name);
  Character value = focal;
  for (const auto& map : c.pre_maps) {
    auto it = map->find(value);
    if (it == map->end())
      fail(Errc::domain_violation,
           c.display + ": no projection entry for " + to_string(value));
    value = it->second;
  }
  return ResidualFunction{c.base, c.focal_slot, std::move(value)};
}

Character eval_residual(const ResidualFunction& r, std::span<const Character> rest,
                        const StepBudget& budget) {
  if (rest.size() + 1 != r.base->arity())
    fail(Errc::arity_mismatch, r.base->name + ": residual expects " +
                                   std::to_string(r.base->arity() - 1) + " arguments, got " +
                                   std::to_string(rest.size()));
  std::vector<Character> args;
  args.reserve(r.base->arity());
  std::size_t j = 0;
  for (std::size_t i = 0; i < r.base->arity(); ++i) {
    if (static_cast<int>(i) + 1 == r.slot)
      args.push_back(r.fixed);
    else
      args.push_back(rest[j++]);
  }
  return eval(*r.base, args, budget);
}

CurriedOp restrict_curried(const CurriedOp& c, AlphabetPtr sub) {
  if (!sub || sub->members.empty()) fail(Errc::empty_alphabet, "restriction to an empty alphabet");
  if (!sub_value_set(*sub, *c.focal_domain))
    fail(Errc::not_a_sub_alphabet, "restrict " + c.display + ": " + sub->name +
                                       " is not a sub-alphabet of " + c.focal_domain->name);
  CurriedOp out = c;
  out.focal_domain = std::move(sub);
  return out;
}

CurriedOp precompose_map(const CurriedOp& c, CharMapPtr map, AlphabetPtr focal) {
  CurriedOp out = c;
  out.pre_maps.insert(out.pre_maps.begin(), std::move(map));
  out.focal_domain = std::move(focal);
  return out;
}

std::vector<CurriedOp> curry_over(std::span<const OperationPtr> ops, const AlphabetPtr& x) {
  std::vector<OperationPtr> sorted(ops.begin(), ops.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const OperationPtr& a, const OperationPtr& b) { return a->name < b->name; });
  std::vector<CurriedOp> out;
  for (const auto& op : sorted) {
    for (std::size_t i = 0; i < op->arity(); ++i) {
      if (same_value_set(*op->domain[i], *x)) out.push_back(curry(op, static_cast<int>(i) + 1));
    }
  }
  return out;
}

std::string curried_fingerprint(const CurriedOp& c, const StepBudget& budget) {
  std::ostringstream out;
  out << "[";
  for (const auto& m : c.focal_domain->members) out << to_string(m) << " ";
  out << "] ";
  auto rest_tuples = domain_product(c.residual_domain());
  for (const auto& focal : c.focal_domain->members) {
    for (const auto& rest : rest_tuples) {
      Outcome o;
      try {
        o = Outcome{eval_residual(apply_curried(c, focal), rest, budget), std::nullopt};
      } catch (const Error& e) {
        o = Outcome{std::nullopt, e.code()};
      }
      out << to_string(focal) << "|";
      for (const auto& r : rest) out << to_string(r) << ",";
      out << "=>" << to_string(o) << ";";
    }
  }
  return out.str();
}

} // namespace datum

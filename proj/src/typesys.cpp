#include "datum/typesys.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace datum {

TypePtr make_type(std::string name, AlphabetPtr alphabet, std::vector<CurriedOp> witnesses) {
  if (!alphabet || alphabet->members.empty())
    fail(Errc::empty_alphabet, "type '" + name + "' needs a non-empty alphabet");
  if (witnesses.empty())
    fail(Errc::empty_witness, "type '" + name + "' needs at least one witness operation");
  for (const auto& w : witnesses) {
    if (!same_value_set(*w.focal_domain, *alphabet))
      fail(Errc::focal_domain_mismatch, "type '" + name + "': witness " + w.display +
                                            " has focal alphabet " + w.focal_domain->name +
                                            ", not " + alphabet->name);
  }
  auto t = std::make_shared<DataType>();
  t->name = std::move(name);
  t->alphabet = std::move(alphabet);
  t->witnesses = std::move(witnesses);
  return t;
}

bool datum_check(const DataType& t, const Character& c) { return t.alphabet->contains(c); }

std::string type_fingerprint(const DataType& t, const StepBudget& budget) {
  std::set<std::string> tables;
  for (const auto& w : t.witnesses) tables.insert(curried_fingerprint(w, budget));
  std::ostringstream out;
  out << "V{";
  for (const auto& m : t.alphabet->members) out << to_string(m) << " ";
  out << "} F{";
  for (const auto& fp : tables) out << fp << "#";
  out << "}";
  return out.str();
}

bool extensionally_equal_types(const DataType& a, const DataType& b) {
  return type_fingerprint(a) == type_fingerprint(b);
}

TypePtr product_type(const std::string& name, const ProductSpec& spec) {
  if (spec.factors.empty()) fail(Errc::empty_alphabet, "product type '" + name + "' needs factors");
  std::vector<AlphabetPtr> factor_alphabets;
  factor_alphabets.reserve(spec.factors.size());
  for (const auto& f : spec.factors) factor_alphabets.push_back(f->alphabet);
  AlphabetPtr product = product_alphabet(name, factor_alphabets);

  for (const auto& op : spec.comp_ops) {
    bool mentions = same_value_set(*op->codomain, *product);
    for (const auto& d : op->domain) mentions = mentions || same_value_set(*d, *product);
    if (!mentions)
      fail(Errc::signature_mismatch, "product type '" + name + "': composition operation '" +
                                         op->name + "' does not mention the product alphabet");
  }

  std::vector<OperationPtr> pool = spec.comp_ops;
  pool.insert(pool.end(), spec.inherited_ops.begin(), spec.inherited_ops.end());
  std::vector<CurriedOp> witnesses = curry_over(pool, product);
  return make_type(name, product, std::move(witnesses));
}

} // namespace datum

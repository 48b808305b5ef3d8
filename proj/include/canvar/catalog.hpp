#pragma once

#include <map>
#include <set>

#include "canvar/variation.hpp"

namespace canvar {

// A built-in example manifold: a chart, its distinguished fields and scalars,
// and machine-checkable facts about them.
struct CatalogEntry {
  std::string id;
  Chart chart;
  std::map<std::string, VectorFieldExpr> unit_fields;  // enter verification sweeps
  std::map<std::string, VectorFieldExpr> aux_fields;   // possibly non-unit (e.g. U)
  std::map<std::string, ScalarFieldExpr> scalars;      // e.g. lambda with U = lambda E
  std::set<std::string> tags;                          // "probe_only", "warped_circle"
  std::vector<std::string> known;                      // human summary of the assertions
  std::string provenance;
};

const CatalogEntry& get_entry(const std::string& id);
std::vector<std::string> catalog_ids();

// One checkable fact: evaluating `residual` must stay below `tolerance`.
struct KnownAssertion {
  std::string name;
  double tolerance = 0;
  std::function<double(const DifferentiationConfig&)> residual;
};

std::vector<KnownAssertion> expected_assertions(const std::string& id);

}  // namespace canvar

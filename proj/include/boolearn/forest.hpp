#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "boolearn/dtree.hpp"
#include "boolearn/pla.hpp"

namespace boolearn
{

struct rf_params
{
  uint32_t n_trees = 17;
  uint32_t max_depth = 8;
  double feature_fraction = 0.5;
  uint64_t seed = 0;
  /* forwarded to each member tree; max_depth above takes precedence */
  dt_params tree;
};

/* bagged trees combined by strict majority */
struct forest
{
  std::vector<decision_tree> trees;
  std::vector<std::vector<uint32_t>> feature_subsets;
};

forest train_rf( dataset const& data, rf_params const& params );
bool predict_rf( forest const& f, std::span<word const> row );
double evaluate( forest const& f, dataset const& data );

} // namespace boolearn

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "boolearn/aig.hpp"
#include "boolearn/benchgen.hpp"
#include "boolearn/cgp.hpp"
#include "boolearn/dtree.hpp"
#include "boolearn/forest.hpp"
#include "boolearn/lutnet.hpp"
#include "boolearn/pla.hpp"

namespace boolearn
{

/* declaration order is the selection tie-break order */
enum class model_kind
{
  symmetric,
  espresso,
  dt,
  dt8,
  fringe,
  rf,
  lutnet,
  cgp,
  constant
};

std::string_view model_name( model_kind k );
model_kind model_from_name( std::string_view name );
/* comma separated; "dt" enables both the unbounded and the depth-8 tree */
std::vector<model_kind> parse_model_list( std::string_view list );

enum class resplit_policy
{
  as_given,
  merge_80_20,
  regroup3
};

std::string_view resplit_name( resplit_policy p );
resplit_policy resplit_from_name( std::string_view name );

struct portfolio_config
{
  uint32_t budget = 5000;
  std::vector<model_kind> models = { model_kind::symmetric, model_kind::espresso, model_kind::dt, model_kind::dt8,
                                     model_kind::fringe,    model_kind::rf,       model_kind::lutnet };
  uint64_t seed = 1;

  dt_params dt;
  uint32_t dt8_depth = 8;
  rf_params rf;

  lutnet_params lutnet;
  uint32_t lutnet_search_steps = 3;
  uint32_t lutnet_max_k = 6;
  uint32_t lutnet_max_layers = 8;
  uint32_t lutnet_max_width = 1024;

  evolve_params cgp = { 2000, 4, 0, 1, 0.01, 20, 1.5, 1e-4, 0.5, 0 };
  double cgp_bootstrap_gate = 0.55;
  double cgp_size_factor = 2.0;
  uint32_t cgp_random_columns = 500;
  std::size_t cgp_random_batch = 1024;
  uint32_t cgp_random_change_each = 50;

  uint32_t approx_patterns = 4096;
  uint32_t approx_level_exclusion = 5;

  double validation_gate = 0.70;
  resplit_policy resplit = resplit_policy::as_given;
  uint32_t symmetric_min_support = 0; /* 0: ceil((n + 1) / 2) */
  bool record_time = false;

  nlohmann::ordered_json to_json() const;
  static portfolio_config from_json( nlohmann::json const& j );
  /* stable digest of to_json() */
  std::string digest() const;
};

struct candidate_report
{
  model_kind kind = model_kind::constant;
  double train_acc = 0.0;
  double valid_acc = 0.0;
  uint32_t and_nodes = 0;
  uint32_t levels = 0;
  bool approximated = false;
};

struct model_report
{
  std::string benchmark;
  model_kind kind = model_kind::constant;
  double train_acc = 0.0;
  double valid_acc = 0.0; /* at selection time */
  std::optional<double> test_acc;
  uint32_t and_nodes = 0;
  uint32_t levels = 0;
  std::optional<double> wall_time_ms;
  uint64_t seed = 0;
  std::string params_digest;
  bool merged_retrain = false;
  std::vector<candidate_report> candidates;

  nlohmann::ordered_json to_json() const;
  static model_report from_json( nlohmann::json const& j );
};

struct portfolio_result
{
  aig circuit;
  model_report report;
};

portfolio_result run_portfolio( pla_file const& train, pla_file const& valid, portfolio_config const& config,
                                pla_file const* test = nullptr );

/*! \brief Signature of a symmetric function consistent with the data.
 *
 * Rows are grouped by popcount; every group must be label-pure and at least
 * `min_support` distinct popcounts must be observed (0 selects
 * ceil((n + 1) / 2)). Unobserved popcounts copy the nearest observed one,
 * the lower one on a tie.
 */
std::optional<std::string> detect_symmetric( dataset const& data, uint32_t min_support = 0 );

/* fraction of PLA rows where the circuit output equals the label */
double evaluate_accuracy( aig const& g, pla_file const& pla );
double evaluate_accuracy( aig const& g, dataset const& data );
/* pattern-at-a-time reference for the word-parallel evaluation */
double evaluate_accuracy_scalar( aig const& g, pla_file const& pla );

struct pareto_point
{
  double accuracy = 0.0;
  uint32_t nodes = 0;

  bool operator==( pareto_point const& ) const = default;
};

struct suite_score
{
  double mean_test_acc = 0.0;
  double mean_nodes = 0.0;
  double mean_levels = 0.0;
  double mean_overfit = 0.0;
  /* sorted by nodes, accuracy strictly increasing */
  std::vector<pareto_point> pareto_points;

  nlohmann::ordered_json to_json() const;
  std::string pareto_csv() const;
};

suite_score score_suite( std::span<model_report const> reports );

struct suite_entry
{
  std::string name;
  std::optional<benchmark_spec> generated;
  std::string train_path;
  std::string valid_path;
  std::string test_path;
};

/*! \brief Benchmarks plus a shared portfolio configuration.
 *
 * JSON form: {"config": {...}, "benchmarks": [{"name": ..., "preset":
 * "parity:k=16", "seed": 1, "samples": 6400} or {"name": ..., "train":
 * path, "valid": path, "test": path}]}. Relative paths resolve against
 * `base_dir`.
 */
struct suite_manifest
{
  portfolio_config config;
  std::vector<suite_entry> entries;

  static suite_manifest from_json( nlohmann::json const& j, std::string const& base_dir = "" );
};

struct suite_result
{
  std::vector<model_report> reports;
  std::vector<aig> circuits;
  suite_score score;

  nlohmann::ordered_json to_json() const;
};

suite_result run_suite( suite_manifest const& manifest );
/* suite.json, pareto.csv and <name>/{report.json,circuit.aag} under dir */
void write_suite_outputs( std::string const& dir, suite_result const& result );

} // namespace boolearn

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "boolearn/harness.hpp"
#include "test_util.hpp"

using namespace boolearn;

namespace
{

pla_file table_pla( uint32_t n, std::function<bool( uint64_t )> const& f )
{
  return to_pla( testkit::full_table( n, f ) );
}

model_report report( double valid, std::optional<double> test, uint32_t nodes, uint32_t levels = 0 )
{
  model_report r;
  r.valid_acc = valid;
  r.test_acc = test;
  r.and_nodes = nodes;
  r.levels = levels;
  return r;
}

} // namespace

TEST( ModelList, ParsesAndExpandsDt )
{
  auto const m = parse_model_list( "rf,dt,sym" );
  EXPECT_EQ( m, ( std::vector<model_kind>{ model_kind::symmetric, model_kind::dt, model_kind::dt8, model_kind::rf } ) );
  EXPECT_THROW( parse_model_list( "dt,mlp" ), error );
  EXPECT_EQ( model_from_name( model_name( model_kind::lutnet ) ), model_kind::lutnet );
}

TEST( Config, JsonRoundTripKeepsDigest )
{
  portfolio_config c;
  c.seed = 17;
  c.budget = 1234;
  c.models = parse_model_list( "dt,cgp" );
  c.resplit = resplit_policy::regroup3;
  c.dt.max_depth = 12;
  auto const back = portfolio_config::from_json( nlohmann::json::parse( c.to_json().dump() ) );
  EXPECT_EQ( back.digest(), c.digest() );
  EXPECT_EQ( back.models, c.models );
  EXPECT_EQ( back.dt.max_depth, 12u );
  portfolio_config other = c;
  other.seed = 18;
  EXPECT_NE( other.digest(), c.digest() );
}

TEST( DetectSymmetric, Cases )
{
  auto const parity = testkit::full_table( 4, []( uint64_t m ) { return std::popcount( m ) & 1; } );
  EXPECT_EQ( detect_symmetric( parity ), "01010" );
  auto const conj = testkit::full_table( 2, []( uint64_t m ) { return m == 3; } );
  EXPECT_EQ( detect_symmetric( conj ), "001" );
  auto const proj = testkit::full_table( 2, []( uint64_t m ) { return m & 1; } );
  EXPECT_FALSE( detect_symmetric( proj ).has_value() );
}

TEST( DetectSymmetric, FillsGapsFromNearestLowerOnTie )
{
  dataset d( 4 );
  d.add( "0000", false );
  d.add( "1100", true );
  d.add( "1111", false );
  /* counts 1 and 3 are unobserved: 1 ties between 0 and 2, 3 ties between 2 and 4 */
  EXPECT_EQ( detect_symmetric( d, 3 ), "00110" );
  EXPECT_FALSE( detect_symmetric( d, 4 ).has_value() );
}

TEST( Accuracy, ConstantAndExact )
{
  pla_file p;
  p.num_inputs = 3;
  for ( int i = 0; i < 5; ++i )
  {
    std::string s( 3, '0' );
    for ( int b = 0; b < 3; ++b )
      s[b] = ( i >> b ) & 1 ? '1' : '0';
    p.cubes.push_back( { s, i < 2 } );
  }
  aig zero( 3 );
  EXPECT_DOUBLE_EQ( evaluate_accuracy( zero, p ), 0.6 );
  aig exact( 3 );
  exact.set_output( exact.new_and( !exact.input( 1 ), !exact.input( 2 ) ) );
  EXPECT_DOUBLE_EQ( evaluate_accuracy( exact, p ), 1.0 );
  aig wide( 4 );
  EXPECT_THROW( evaluate_accuracy( wide, p ), error );
}

TEST( Accuracy, WordParallelMatchesScalar )
{
  rng gen( 131 );
  for ( int trial = 0; trial < 10; ++trial )
  {
    auto const d = testkit::random_dataset( 14, 700, gen );
    auto const g = testkit::random_aig( 14, 80, gen );
    auto const p = to_pla( d );
    EXPECT_DOUBLE_EQ( evaluate_accuracy( g, p ), evaluate_accuracy_scalar( g, p ) );
  }
}

TEST( Portfolio, LearnsAndExactly )
{
  auto const p = table_pla( 2, []( uint64_t m ) { return m == 3; } );
  auto const r = run_portfolio( p, p, {} );
  EXPECT_DOUBLE_EQ( r.report.valid_acc, 1.0 );
  EXPECT_LE( r.report.and_nodes, 3u );
}

TEST( Portfolio, ParityUsesSymmetricPath )
{
  auto spec = parse_preset( "parity:k=16" );
  spec.seed = 1;
  auto const s = sample_splits( spec );
  auto const r = run_portfolio( s.train, s.valid, {}, &s.test );
  EXPECT_EQ( r.report.kind, model_kind::symmetric );
  EXPECT_DOUBLE_EQ( *r.report.test_acc, 1.0 );
}

TEST( Portfolio, BudgetEnforced )
{
  rng gen( 137 );
  auto const train = to_pla( testkit::random_dataset( 20, 3000, gen ) );
  auto const valid = to_pla( testkit::random_dataset( 20, 500, gen ) );
  portfolio_config c;
  c.budget = 200;
  c.models = parse_model_list( "dt,espresso,rf,lutnet" );
  auto const r = run_portfolio( train, valid, c );
  EXPECT_LE( metrics( r.circuit ).and_nodes, 200u );
  EXPECT_EQ( r.report.and_nodes, metrics( r.circuit ).and_nodes );
  for ( auto const& cand : r.report.candidates )
    EXPECT_LE( cand.and_nodes, 200u );
}

TEST( Portfolio, WeakWinnerRetrainedOnMergedData )
{
  rng gen( 139 );
  auto const train = to_pla( testkit::random_dataset( 12, 400, gen ) );
  auto const valid = to_pla( testkit::random_dataset( 12, 400, gen ) );
  portfolio_config c;
  c.models = parse_model_list( "dt8" );
  auto const r = run_portfolio( train, valid, c );
  if ( r.report.valid_acc < c.validation_gate && r.report.kind != model_kind::constant )
    EXPECT_TRUE( r.report.merged_retrain );
}

TEST( Portfolio, ResplitPoliciesRun )
{
  auto spec = parse_preset( "comparator:k=6" );
  spec.samples_per_split = 200;
  auto const s = sample_splits( spec );
  for ( auto policy : { resplit_policy::merge_80_20, resplit_policy::regroup3 } )
  {
    portfolio_config c;
    c.models = parse_model_list( "dt" );
    c.resplit = policy;
    auto const r = run_portfolio( s.train, s.valid, c, &s.test );
    EXPECT_GT( *r.report.test_acc, 0.8 );
  }
}

TEST( Portfolio, CgpStageNeverLosesToBootstrap )
{
  auto spec = parse_preset( "comparator:k=5" );
  spec.samples_per_split = 300;
  auto const s = sample_splits( spec );
  portfolio_config c;
  c.models = parse_model_list( "dt8,cgp" );
  c.cgp.generations = 300;
  auto const r = run_portfolio( s.train, s.valid, c );
  double dt8_train = 0.0, cgp_train = 0.0;
  for ( auto const& cand : r.report.candidates )
  {
    if ( cand.kind == model_kind::dt8 )
      dt8_train = cand.train_acc;
    if ( cand.kind == model_kind::cgp )
      cgp_train = cand.train_acc;
  }
  EXPECT_GE( cgp_train, dt8_train );
}

TEST( Report, JsonRoundTrip )
{
  model_report r = report( 0.8, 0.75, 10, 3 );
  r.benchmark = "x";
  r.kind = model_kind::fringe;
  r.candidates.push_back( { model_kind::dt, 0.9, 0.8, 10, 3, true } );
  auto const back = model_report::from_json( nlohmann::json::parse( r.to_json().dump() ) );
  EXPECT_EQ( back.to_json().dump(), r.to_json().dump() );
  EXPECT_FALSE( r.to_json().contains( "wall_time_ms" ) );
}

TEST( Score, SingleReport )
{
  std::vector<model_report> rs = { report( 0.95, 0.9, 100, 7 ) };
  auto const s = score_suite( rs );
  EXPECT_DOUBLE_EQ( s.mean_test_acc, 0.9 );
  EXPECT_DOUBLE_EQ( s.mean_nodes, 100.0 );
  EXPECT_DOUBLE_EQ( s.mean_levels, 7.0 );
  EXPECT_NEAR( s.mean_overfit, 0.05, 1e-12 );
  EXPECT_EQ( s.pareto_points, ( std::vector<pareto_point>{ { 0.9, 100 } } ) );
}

TEST( Score, ParetoFrontier )
{
  std::vector<model_report> both = { report( 0.8, 0.8, 100 ), report( 0.9, 0.9, 200 ) };
  EXPECT_EQ( score_suite( both ).pareto_points, ( std::vector<pareto_point>{ { 0.8, 100 }, { 0.9, 200 } } ) );
  std::vector<model_report> dominated = { report( 0.9, 0.9, 100 ), report( 0.8, 0.8, 200 ) };
  EXPECT_EQ( score_suite( dominated ).pareto_points, ( std::vector<pareto_point>{ { 0.9, 100 } } ) );
  EXPECT_THROW( score_suite( std::vector<model_report>{} ), error );
}

TEST( Suite, ManifestAndOutputs )
{
  auto const dir = std::filesystem::temp_directory_path() / "boolearn_suite_test";
  std::filesystem::remove_all( dir );
  std::filesystem::create_directories( dir );
  auto const p = table_pla( 3, []( uint64_t m ) { return m > 4; } );
  write_pla_file( ( dir / "t.pla" ).string(), p );
  auto const j = nlohmann::json::parse( R"({
    "config": {"models": ["dt"], "seed": 3},
    "benchmarks": [
      {"name": "files", "train": "t.pla", "valid": "t.pla", "test": "t.pla"},
      {"preset": "comparator:k=4", "seed": 2, "samples": 50}
    ]})" );
  auto const m = suite_manifest::from_json( j, dir.string() );
  ASSERT_EQ( m.entries.size(), 2u );
  EXPECT_EQ( m.config.seed, 3u );
  EXPECT_EQ( m.entries[1].name, "comparator:k=4" );
  auto const r = run_suite( m );
  ASSERT_EQ( r.reports.size(), 2u );
  EXPECT_DOUBLE_EQ( *r.reports[0].test_acc, 1.0 );
  write_suite_outputs( ( dir / "out" ).string(), r );
  EXPECT_TRUE( std::filesystem::exists( dir / "out" / "suite.json" ) );
  EXPECT_TRUE( std::filesystem::exists( dir / "out" / "pareto.csv" ) );
  EXPECT_TRUE( std::filesystem::exists( dir / "out" / "comparator_k4" / "circuit.aag" ) );
  auto const back = read_aag_file( ( dir / "out" / "files" / "circuit.aag" ).string() );
  EXPECT_DOUBLE_EQ( evaluate_accuracy( back, p ), 1.0 );
  EXPECT_THROW( suite_manifest::from_json( nlohmann::json::parse( R"({"benchmarks": [{"name": "x"}]})" ) ), error );
}

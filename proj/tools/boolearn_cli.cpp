#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "boolearn/aig.hpp"
#include "boolearn/benchgen.hpp"
#include "boolearn/harness.hpp"
#include "boolearn/pla.hpp"

namespace fs = std::filesystem;
using namespace boolearn;

int main( int argc, char** argv )
{
  CLI::App app{ "Learn Boolean functions from sampled PLA files and compile them to AIGs" };
  app.require_subcommand( 1 );

  auto* learn = app.add_subcommand( "learn", "train the model portfolio and emit the selected circuit" );
  std::string train_path, valid_path, test_path, out_dir, models, config_path, resplit;
  uint32_t budget = 5000;
  uint64_t seed = 1;
  bool timing = false;
  learn->add_option( "--train", train_path, "training PLA" )->required()->check( CLI::ExistingFile );
  learn->add_option( "--valid", valid_path, "validation PLA" )->required()->check( CLI::ExistingFile );
  learn->add_option( "--test", test_path, "test PLA" )->check( CLI::ExistingFile );
  learn->add_option( "--budget", budget, "AND node budget" )->capture_default_str();
  learn->add_option( "--models", models, "comma separated subset of sym,espresso,dt,fringe,rf,lutnet,cgp" );
  learn->add_option( "--seed", seed, "random seed" )->capture_default_str();
  learn->add_option( "--config", config_path, "JSON portfolio configuration" )->check( CLI::ExistingFile );
  learn->add_option( "--resplit", resplit, "as_given, merge_80_20 or regroup3" );
  learn->add_flag( "--timing", timing, "record wall time in the report" );
  learn->add_option( "--out", out_dir, "output directory" )->required();

  auto* bench = app.add_subcommand( "bench", "generate train/valid/test PLAs for a benchmark family" );
  std::string family, signature;
  uint32_t k = 16;
  uint64_t bench_seed = 1;
  std::size_t samples = 6400;
  std::string bench_out;
  bench->add_option( "--family", family, "adder_msb, adder_msb2, comparator, multiplier_msb, multiplier_mid, parity, "
                                         "symmetric, or a preset such as ex75" )
      ->required();
  bench->add_option( "--k", k, "operand width (inputs for parity and symmetric)" )->capture_default_str();
  bench->add_option( "--signature", signature, "signature string for the symmetric family" );
  bench->add_option( "--seed", bench_seed, "random seed" )->capture_default_str();
  bench->add_option( "--samples", samples, "samples per split" )->capture_default_str();
  bench->add_option( "--out", bench_out, "output directory" )->required();

  auto* eval = app.add_subcommand( "eval", "print the accuracy of an AIG on a PLA" );
  std::string aig_path, pla_path;
  eval->add_option( "--aig", aig_path, "ASCII AIGER file" )->required()->check( CLI::ExistingFile );
  eval->add_option( "--pla", pla_path, "PLA with minterm rows" )->required()->check( CLI::ExistingFile );

  auto* suite = app.add_subcommand( "suite", "run a manifest of benchmarks and score them" );
  std::string manifest_path, suite_out;
  suite->add_option( "--manifest", manifest_path, "JSON manifest" )->required()->check( CLI::ExistingFile );
  suite->add_option( "--out", suite_out, "output directory (default: next to the manifest)" );

  CLI11_PARSE( app, argc, argv );

  try
  {
    if ( *learn )
    {
      portfolio_config config;
      if ( !config_path.empty() )
      {
        std::ifstream in( config_path );
        config = portfolio_config::from_json( nlohmann::json::parse( in ) );
      }
      config.budget = budget;
      config.seed = seed;
      config.record_time = timing;
      if ( !models.empty() )
        config.models = parse_model_list( models );
      if ( !resplit.empty() )
        config.resplit = resplit_from_name( resplit );

      auto const train = read_pla_file( train_path );
      auto const valid = read_pla_file( valid_path );
      std::optional<pla_file> test;
      if ( !test_path.empty() )
        test = read_pla_file( test_path );
      auto result = run_portfolio( train, valid, config, test ? &*test : nullptr );
      result.report.benchmark = fs::path( train_path ).stem().string();

      fs::create_directories( out_dir );
      write_aag_file( ( fs::path( out_dir ) / "circuit.aag" ).string(), result.circuit );
      std::ofstream( fs::path( out_dir ) / "report.json" ) << result.report.to_json().dump( 2 ) << '\n';
      std::cout << model_name( result.report.kind ) << " valid=" << result.report.valid_acc
                << " nodes=" << result.report.and_nodes << " levels=" << result.report.levels;
      if ( result.report.test_acc )
        std::cout << " test=" << *result.report.test_acc;
      std::cout << '\n';
    }
    else if ( *bench )
    {
      benchmark_spec spec;
      if ( family.rfind( "ex", 0 ) == 0 || family.find( ':' ) != std::string::npos )
        spec = parse_preset( family );
      else
      {
        spec.family = family_from_name( family );
        spec.k = k;
        if ( spec.family == bench_family::symmetric )
        {
          if ( signature.empty() )
            throw error( "bench: --signature is required for the symmetric family" );
          spec.signature = signature;
        }
      }
      spec.seed = bench_seed;
      spec.samples_per_split = samples;
      auto const splits = sample_splits( spec );
      fs::create_directories( bench_out );
      auto const stem = ( fs::path( bench_out ) / file_stem( spec.name() ) ).string();
      write_pla_file( stem + ".train.pla", splits.train );
      write_pla_file( stem + ".valid.pla", splits.valid );
      write_pla_file( stem + ".test.pla", splits.test );
      if ( splits.overlapping )
        std::cerr << "note: input space smaller than 3 splits; splits were drawn independently\n";
    }
    else if ( *eval )
    {
      auto const g = read_aag_file( aig_path );
      auto const pla = read_pla_file( pla_path );
      std::cout << evaluate_accuracy( g, pla ) << '\n';
    }
    else if ( *suite )
    {
      std::ifstream in( manifest_path );
      auto const base = fs::path( manifest_path ).parent_path().string();
      auto const manifest = suite_manifest::from_json( nlohmann::json::parse( in ), base );
      auto const result = run_suite( manifest );
      auto const dir = suite_out.empty() ? ( fs::path( base ) / "suite_out" ).string() : suite_out;
      write_suite_outputs( dir, result );
      std::cout << result.score.to_json().dump( 2 ) << '\n';
    }
  }
  catch ( std::exception const& e )
  {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

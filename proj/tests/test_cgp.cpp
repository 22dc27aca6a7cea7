#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "boolearn/cgp.hpp"
#include "boolearn/compile.hpp"
#include "test_util.hpp"

using namespace boolearn;

namespace
{

aig and2()
{
  aig g( 2 );
  g.set_output( g.new_and( g.input( 0 ), g.input( 1 ) ) );
  return g;
}

} // namespace

TEST( CgpEncode, AndWithPadding )
{
  auto const genome = encode_aig( and2(), 2.0, 1 );
  EXPECT_EQ( genome.columns.size(), 2u );
  EXPECT_TRUE( genome.is_valid() );
  EXPECT_TRUE( testkit::equivalent( decode( genome ), []( auto row ) { return row[0] == 3; } ) );
  EXPECT_EQ( encode_aig( and2(), 1.0, 1 ).columns.size(), 1u );
  EXPECT_THROW( encode_aig( and2(), 0.5, 1 ), error );
}

TEST( CgpEncode, RandomAigsRoundTrip )
{
  rng gen( 97 );
  for ( int trial = 0; trial < 30; ++trial )
  {
    auto const g = testkit::random_aig( 8, 30, gen );
    auto const genome = encode_aig( g, 1.5, trial );
    ASSERT_TRUE( genome.is_valid() );
    auto const h = decode( genome );
    for ( uint64_t m = 0; m < 256; ++m )
      ASSERT_EQ( evaluate_pattern( h, testkit::pattern_bools( 8, m ) ),
                 evaluate_pattern( g, testkit::pattern_bools( 8, m ) ) );
  }
}

TEST( CgpEncode, ConstantOutput )
{
  aig g( 3 );
  g.set_output( lit_true );
  auto const genome = encode_aig( g, 1.0, 0 );
  EXPECT_TRUE( testkit::equivalent( decode( genome ), []( auto ) { return true; } ) );
}

TEST( CgpDecode, SmallGenomes )
{
  cgp_genome a;
  a.num_inputs = 2;
  a.columns = { { cgp_func::and_, 0, false, 1, false } };
  a.output = { 2, false };
  EXPECT_EQ( metrics( decode( a ) ).and_nodes, 1u );

  auto x = a;
  x.columns[0].func = cgp_func::xor_;
  auto const gx = decode( x );
  EXPECT_LE( metrics( gx ).and_nodes, 3u );
  EXPECT_TRUE( testkit::equivalent( gx, []( auto row ) { return std::popcount( row[0] ) == 1; } ) );

  auto w = a;
  w.output = { 1, true };
  EXPECT_EQ( metrics( decode( w ) ).and_nodes, 0u );
  EXPECT_EQ( a.phenotype_size(), 1u );
  EXPECT_EQ( w.phenotype_size(), 0u );
}

TEST( CgpMutate, ZeroRateIsIdentity )
{
  rng gen( 101 );
  auto const g = random_genome( 10, 50, gen );
  es_state st;
  st.mutation_rate = 0.0;
  EXPECT_EQ( mutate( g, st, gen ), g );
}

TEST( CgpMutate, InvariantsHoldUnderFuzzing )
{
  rng gen( 103 );
  auto g = random_genome( 12, 40, gen );
  es_state st;
  st.mutation_rate = 1.0;
  auto const full = mutate( g, st, gen );
  EXPECT_TRUE( full.is_valid() );
  st.mutation_rate = 0.05;
  for ( int i = 0; i < 10000; ++i )
  {
    g = mutate( g, st, gen );
    ASSERT_TRUE( g.is_valid() );
  }
}

TEST( CgpEvolve, OneFifthRule )
{
  evolve_params p;
  es_state st;
  st.mutation_rate = 0.01;
  for ( int i = 0; i < 20; ++i )
    record_generation( st, i < 10, p );
  EXPECT_NEAR( st.mutation_rate, 0.015, 1e-12 );
  for ( int i = 0; i < 20; ++i )
    record_generation( st, false, p );
  EXPECT_NEAR( st.mutation_rate, 0.01, 1e-12 );
  st.mutation_rate = 0.4;
  for ( int i = 0; i < 20; ++i )
    record_generation( st, true, p );
  EXPECT_DOUBLE_EQ( st.mutation_rate, 0.5 );
}

TEST( CgpEvolve, ZeroRateReturnsInit )
{
  rng gen( 107 );
  auto const d = testkit::random_dataset( 6, 50, gen );
  auto const init = random_genome( 6, 20, gen );
  evolve_params p;
  p.generations = 1;
  p.initial_mutation_rate = 1e-300;
  p.min_rate = 0.0;
  auto const r = evolve( d, init, p );
  EXPECT_EQ( r.best, init );
}

TEST( CgpEvolve, FullSetFitnessIsMonotone )
{
  auto const d = testkit::full_table( 6, []( uint64_t m ) { return ( m % 7 ) < 3; } );
  rng gen( 109 );
  evolve_params p;
  p.generations = 2000;
  p.seed = 4;
  auto const r = evolve( d, random_genome( 6, 60, gen ), p );
  ASSERT_EQ( r.trace.size(), 2000u );
  for ( std::size_t i = 1; i < r.trace.size(); ++i )
  {
    ASSERT_GE( r.trace[i].fitness, r.trace[i - 1].fitness );
    ASSERT_GE( r.trace[i].best_full, r.trace[i - 1].best_full );
  }
  EXPECT_DOUBLE_EQ( cgp_accuracy( r.best, d ), r.best_accuracy );
  EXPECT_DOUBLE_EQ( r.best_accuracy, r.trace.back().best_full );
}

TEST( CgpEvolve, MiniBatchesTrackBestOnFullSet )
{
  rng gen( 113 );
  auto const d = testkit::random_dataset( 10, 600, gen, []( auto row ) { return ( row[0] & 0x7 ) > 2; } );
  evolve_params p;
  p.generations = 500;
  p.batch_size = 64;
  p.change_each = 10;
  p.seed = 2;
  auto const r = evolve( d, random_genome( 10, 80, gen ), p );
  for ( std::size_t i = 1; i < r.trace.size(); ++i )
    ASSERT_GE( r.trace[i].best_full, r.trace[i - 1].best_full );
  EXPECT_DOUBLE_EQ( cgp_accuracy( r.best, d ), r.best_accuracy );
}

TEST( CgpEvolve, DeterministicAndTraceable )
{
  rng gen( 127 );
  auto const d = testkit::random_dataset( 8, 200, gen );
  auto const init = random_genome( 8, 30, gen );
  evolve_params p;
  p.generations = 100;
  p.seed = 7;
  auto const a = evolve( d, init, p );
  auto const b = evolve( d, init, p );
  EXPECT_EQ( a.best, b.best );
  std::ostringstream out;
  write_trace( out, a.trace );
  std::istringstream in( out.str() );
  std::string line;
  std::size_t lines = 0;
  while ( std::getline( in, line ) )
  {
    auto const j = nlohmann::json::parse( line );
    EXPECT_EQ( j["generation"].get<uint64_t>(), lines + 1 );
    ++lines;
  }
  EXPECT_EQ( lines, 100u );
}

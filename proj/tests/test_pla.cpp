#include <gtest/gtest.h>

#include "boolearn/benchgen.hpp"
#include "boolearn/pla.hpp"
#include "test_util.hpp"

using namespace boolearn;

TEST( Pla, ParsesTwoCubeFile )
{
  auto const p = parse_pla( ".i 2\n.o 1\n.p 2\n01 1\n10 1\n.e" );
  EXPECT_EQ( p.num_inputs, 2u );
  EXPECT_EQ( p.num_outputs, 1u );
  ASSERT_EQ( p.cubes.size(), 2u );
  EXPECT_EQ( p.cubes[0], ( cube{ "01", true } ) );
  EXPECT_EQ( p.cubes[1], ( cube{ "10", true } ) );
}

TEST( Pla, ParsesMinimalFile )
{
  auto const p = parse_pla( ".i 1\n.o 1\n.p 1\n0 1\n.e" );
  EXPECT_EQ( p.num_inputs, 1u );
  EXPECT_EQ( p.cubes.size(), 1u );
}

TEST( Pla, RejectsContradiction )
{
  EXPECT_THROW( parse_pla( ".i 2\n.o 1\n01 1\n01 0\n.e" ), error );
}

TEST( Pla, CollapsesDuplicates )
{
  auto const p = parse_pla( ".i 2\n.o 1\n01 1\n01 1\n.e" );
  EXPECT_EQ( p.cubes.size(), 1u );
}

TEST( Pla, CommentsAndLabelsIgnored )
{
  auto const p = parse_pla( "# header\n.i 2\n.o 1\n.ilb a b\n.ob f\n\n.type fr\n11 1 # trailing\n.e\n" );
  ASSERT_EQ( p.cubes.size(), 1u );
  EXPECT_EQ( p.cubes[0].inputs, "11" );
}

TEST( Pla, MalformedInputsRejected )
{
  EXPECT_THROW( parse_pla( ".i 2\n.o 1\n011 1\n.e" ), error );
  EXPECT_THROW( parse_pla( ".i 2\n.o 1\n0x 1\n.e" ), error );
  EXPECT_THROW( parse_pla( ".i 2\n.o 2\n01 11\n.e" ), error );
  EXPECT_THROW( parse_pla( ".i 2\n.o 1\n.p 3\n01 1\n.e" ), error );
  EXPECT_THROW( parse_pla( ".i 2\n.o 1\n.foo\n01 1\n.e" ), error );
  EXPECT_THROW( parse_pla( ".o 1\n01 1\n.e" ), error );
}

TEST( Pla, WriteEmptyCoverHasZeroCount )
{
  pla_file p;
  p.num_inputs = 3;
  auto const text = write_pla( p );
  EXPECT_NE( text.find( ".p 0\n" ), std::string::npos );
  EXPECT_EQ( parse_pla( text ), p );
}

TEST( Pla, RoundTripSmall )
{
  auto const p = parse_pla( ".i 2\n.o 1\n.p 2\n01 1\n10 1\n.e" );
  EXPECT_EQ( parse_pla( write_pla( p ) ), p );
}

TEST( Pla, RoundTripGenerated )
{
  benchmark_spec spec;
  spec.family = bench_family::comparator;
  spec.k = 10;
  spec.seed = 4;
  auto const splits = sample_splits( spec );
  EXPECT_EQ( splits.train.cubes.size(), 6400u );
  EXPECT_EQ( parse_pla( write_pla( splits.train ) ), splits.train );
}

TEST( Dataset, FromPla )
{
  auto const d = to_dataset( parse_pla( ".i 2\n.o 1\n01 1\n10 1\n.e" ) );
  ASSERT_EQ( d.size(), 2u );
  EXPECT_EQ( d.row_string( 0 ), "01" );
  EXPECT_EQ( d.row_string( 1 ), "10" );
  EXPECT_TRUE( d.label( 0 ) );
  EXPECT_TRUE( d.label( 1 ) );
  EXPECT_FALSE( d.bit( 0, 0 ) );
  EXPECT_TRUE( d.bit( 0, 1 ) );
}

TEST( Dataset, OneInputTwoRows )
{
  auto const d = to_dataset( parse_pla( ".i 1\n.o 1\n0 1\n1 0\n.e" ) );
  EXPECT_EQ( d.size(), 2u );
  EXPECT_EQ( d.count_ones(), 1u );
  EXPECT_FALSE( d.majority_label() );
}

TEST( Dataset, DontCareRejected )
{
  EXPECT_THROW( to_dataset( parse_pla( ".i 2\n.o 1\n0- 1\n.e" ) ), error );
}

TEST( Dataset, ColumnsMatchBits )
{
  rng gen( 7 );
  auto const d = testkit::random_dataset( 70, 300, gen );
  auto const cols = d.columns();
  ASSERT_EQ( cols.size(), 70u );
  for ( std::size_t r = 0; r < d.size(); ++r )
    for ( uint32_t c = 0; c < 70; ++c )
      ASSERT_EQ( get_bit( cols[c], r ), d.bit( r, c ) );
}

TEST( Dataset, MergeDeduplicatesAndRejectsContradictions )
{
  dataset a( 2 ), b( 2 ), c( 2 );
  a.add( "01", true );
  a.add( "10", false );
  b.add( "01", true );
  b.add( "11", true );
  auto const m = a.merged( b );
  EXPECT_EQ( m.size(), 3u );
  c.add( "01", false );
  EXPECT_THROW( a.merged( c ), error );
}

TEST( Dataset, PlaRoundTrip )
{
  rng gen( 11 );
  auto const d = testkit::random_dataset( 9, 200, gen );
  auto const back = to_dataset( to_pla( d ) );
  ASSERT_EQ( back.size(), d.size() );
  for ( std::size_t r = 0; r < d.size(); ++r )
  {
    EXPECT_EQ( back.row_string( r ), d.row_string( r ) );
    EXPECT_EQ( back.label( r ), d.label( r ) );
  }
}

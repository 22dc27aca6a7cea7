#include <gtest/gtest.h>

#include "boolearn/espresso_lite.hpp"
#include "test_util.hpp"

using namespace boolearn;

namespace
{

cover make_cover( uint32_t n, std::vector<std::string> const& on, std::vector<std::string> const& off )
{
  cover c;
  c.num_inputs = n;
  for ( auto const& s : on )
    c.onset.push_back( packed_cube::from_string( s ) );
  for ( auto const& s : off )
    c.offset.push_back( packed_cube::from_string( s ) );
  return c;
}

std::vector<std::string> strings( cover const& c )
{
  std::vector<std::string> out;
  for ( auto const& q : c.onset )
    out.push_back( q.to_string( c.num_inputs ) );
  return out;
}

/* random care set split into onset/offset minterms */
cover random_cover( uint32_t n, rng& gen )
{
  cover c;
  c.num_inputs = n;
  uint64_t const space = uint64_t{ 1 } << n;
  for ( uint64_t m = 0; m < space; ++m )
  {
    auto const r = gen.below( 4 );
    if ( r == 3 )
      continue;
    std::string s( n, '0' );
    for ( uint32_t i = 0; i < n; ++i )
      s[i] = ( m >> i ) & 1 ? '1' : '0';
    ( r == 0 ? c.onset : c.offset ).push_back( packed_cube::from_string( s ) );
  }
  return c;
}

} // namespace

TEST( PackedCube, StringRoundTripAndRelations )
{
  auto const a = packed_cube::from_string( "0-1" );
  auto const b = packed_cube::from_string( "001" );
  auto const c = packed_cube::from_string( "1--" );
  EXPECT_EQ( a.to_string( 3 ), "0-1" );
  EXPECT_TRUE( b.contained_in( a ) );
  EXPECT_FALSE( a.contained_in( b ) );
  EXPECT_TRUE( a.intersects( b ) );
  EXPECT_FALSE( a.intersects( c ) );
  EXPECT_EQ( a.literal_count(), 2u );
}

TEST( Expand, RaisesAwayFromOffset )
{
  auto const e = expand( make_cover( 2, { "00", "01" }, { "10", "11" } ) );
  EXPECT_EQ( strings( e ), std::vector<std::string>{ "0-" } );
}

TEST( Expand, XorCannotExpand )
{
  auto const e = expand( make_cover( 2, { "01", "10" }, { "00", "11" } ) );
  EXPECT_EQ( strings( e ), ( std::vector<std::string>{ "01", "10" } ) );
}

TEST( Expand, EmptyOffsetGivesUniverse )
{
  auto const e = expand( make_cover( 2, { "1-" }, {} ) );
  EXPECT_EQ( strings( e ), std::vector<std::string>{ "--" } );
}

TEST( Irredundant, DropsContainedCube )
{
  auto const r = irredundant( make_cover( 2, { "0-", "-0", "00" }, {} ) );
  EXPECT_EQ( strings( r ), ( std::vector<std::string>{ "0-", "-0" } ) );
}

TEST( Irredundant, KeepsDisjointCubes )
{
  auto const r = irredundant( make_cover( 2, { "00", "11" }, {} ) );
  EXPECT_EQ( strings( r ), ( std::vector<std::string>{ "00", "11" } ) );
}

TEST( Irredundant, PreservesMintermSet )
{
  rng gen( 17 );
  for ( int trial = 0; trial < 20; ++trial )
  {
    cover c;
    c.num_inputs = 8;
    for ( int i = 0; i < 30; ++i )
    {
      std::string s( 8, '-' );
      for ( auto& ch : s )
        ch = "01--"[gen.below( 4 )];
      c.onset.push_back( packed_cube::from_string( s ) );
    }
    auto const r = irredundant( c );
    EXPECT_LE( r.onset.size(), c.onset.size() );
    for ( uint64_t m = 0; m < 256; ++m )
    {
      auto const row = testkit::pattern_row( 8, m );
      ASSERT_EQ( r.covers( row ), c.covers( row ) );
    }
  }
}

TEST( Tautology, MatchesBruteForce )
{
  rng gen( 23 );
  for ( int trial = 0; trial < 200; ++trial )
  {
    uint32_t const n = 1 + static_cast<uint32_t>( gen.below( 6 ) );
    std::vector<packed_cube> cubes;
    auto const count = gen.below( 10 );
    for ( uint64_t i = 0; i < count; ++i )
    {
      std::string s( n, '-' );
      for ( auto& ch : s )
        ch = "01---"[gen.below( 5 )];
      cubes.push_back( packed_cube::from_string( s ) );
    }
    bool brute = true;
    for ( uint64_t m = 0; m < ( uint64_t{ 1 } << n ) && brute; ++m )
    {
      auto const row = testkit::pattern_row( n, m );
      brute = std::any_of( cubes.begin(), cubes.end(), [&]( auto const& q ) { return q.contains_minterm( row ); } );
    }
    ASSERT_EQ( is_tautology( cubes, n ), brute );
  }
}

TEST( ExpandIrredundant, CareSetPreserved )
{
  rng gen( 29 );
  for ( int trial = 0; trial < 20; ++trial )
  {
    auto const c = random_cover( 7, gen );
    auto const e = expand( c );
    auto const r = irredundant( e );
    EXPECT_LE( r.onset.size(), e.onset.size() );
    for ( auto const& q : c.onset )
      ASSERT_TRUE( r.covers( q.value ) );
    for ( auto const& q : c.offset )
      ASSERT_FALSE( r.covers( q.value ) );
  }
}

TEST( CoverFromPla, RejectsOverlap )
{
  EXPECT_THROW( cover_from_pla( parse_pla( ".i 2\n.o 1\n0- 1\n00 0\n.e" ) ), error );
  auto const c = cover_from_pla( parse_pla( ".i 2\n.o 1\n01 1\n10 0\n.e" ) );
  EXPECT_EQ( c.onset.size(), 1u );
  EXPECT_EQ( c.offset.size(), 1u );
}

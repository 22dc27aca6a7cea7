#include <gtest/gtest.h>

#include <cmath>

#include "boolearn/dtree.hpp"
#include "test_util.hpp"

using namespace boolearn;
using testkit::full_table;
using testkit::pattern_row;

TEST( Entropy, KnownValues )
{
  EXPECT_DOUBLE_EQ( entropy( 0, 5 ), 0.0 );
  EXPECT_DOUBLE_EQ( entropy( 5, 5 ), 0.0 );
  EXPECT_DOUBLE_EQ( entropy( 1, 2 ), 1.0 );
  EXPECT_NEAR( entropy( 1, 4 ), 0.8112781244591328, 1e-12 );
  /* perfect split of a balanced node removes one bit */
  EXPECT_NEAR( information_gain( 2, 4, 2, 2 ), 1.0, 1e-12 );
  EXPECT_NEAR( information_gain( 2, 4, 1, 2 ), 0.0, 1e-12 );
}

TEST( Ops, TruthTablesAndNames )
{
  for ( auto op : all_fringe_ops )
  {
    auto const tt = op_truth_table( op );
    for ( int a = 0; a < 2; ++a )
      for ( int b = 0; b < 2; ++b )
        EXPECT_EQ( ( tt >> ( 2 * a + b ) ) & 1, apply_op( op, a, b ) );
    EXPECT_EQ( op_from_name( op_name( op ) ), op );
  }
  EXPECT_EQ( canonical_op( op_truth_table( fringe_op::xor_ ) ), fringe_op::xor_ );
  EXPECT_FALSE( canonical_op( 0b0000 ).has_value() );
  EXPECT_FALSE( canonical_op( 0b1111 ).has_value() );
}

TEST( Registry, EquivalenceUnderSwapAndComplement )
{
  feature_registry reg( 3 );
  auto const x = reg.add_composite( fringe_op::and_, 0, 1 );
  EXPECT_EQ( reg.find_equivalent( fringe_op::and_, 1, 0 ), x );
  EXPECT_EQ( reg.find_equivalent( fringe_op::nand, 0, 1 ), x );
  EXPECT_FALSE( reg.find_equivalent( fringe_op::or_, 0, 1 ).has_value() );
  EXPECT_FALSE( reg.find_equivalent( fringe_op::and_, 0, 2 ).has_value() );
  auto const y = reg.add_composite( fringe_op::xor_, x, 2 );
  EXPECT_EQ( reg.support( y ), ( std::vector<uint32_t>{ 0, 1, 2 } ) );
  /* (x0 & x1) ^ x2 */
  EXPECT_TRUE( reg.evaluate( y, pattern_row( 3, 0b011 ) ) );
  EXPECT_TRUE( reg.evaluate( y, pattern_row( 3, 0b100 ) ) );
  EXPECT_FALSE( reg.evaluate( y, pattern_row( 3, 0b111 ) ) );
  EXPECT_FALSE( reg.evaluate( y, pattern_row( 3, 0b001 ) ) );
}

TEST( TrainDt, LearnsAnd )
{
  auto const d = full_table( 2, []( uint64_t m ) { return m == 3; } );
  auto const t = train_dt( d, {} );
  EXPECT_LE( t.num_splits(), 3u );
  EXPECT_DOUBLE_EQ( evaluate( t, d ), 1.0 );
  EXPECT_TRUE( predict( t, pattern_row( 2, 3 ) ) );
}

TEST( TrainDt, XorHasZeroRootGain )
{
  auto const d = full_table( 2, []( uint64_t m ) { return ( m ^ ( m >> 1 ) ) & 1; } );
  /* each input splits 2/4 ones into halves with one 1 each */
  EXPECT_NEAR( information_gain( 2, 4, 1, 2 ), 0.0, 1e-12 );
  EXPECT_DOUBLE_EQ( evaluate( train_dt( d, {} ), d ), 1.0 );
}

TEST( TrainDt, MemorizesContradictionFreeData )
{
  rng gen( 31 );
  for ( int trial = 0; trial < 10; ++trial )
  {
    auto const d = testkit::random_dataset( 12, 300, gen );
    EXPECT_DOUBLE_EQ( evaluate( train_dt( d, {} ), d ), 1.0 );
  }
}

TEST( TrainDt, RespectsDepthAndMinSamples )
{
  rng gen( 37 );
  auto const d = testkit::random_dataset( 10, 500, gen );
  dt_params p;
  p.max_depth = 3;
  EXPECT_LE( train_dt( d, p ).depth(), 3u );
  p.max_depth.reset();
  p.min_samples = 1000;
  EXPECT_EQ( train_dt( d, p ).num_splits(), 0u );
}

TEST( Fdecomp, ConstantBranchesSelected )
{
  auto const d = full_table( 2, []( uint64_t m ) { return m & 1; } );
  feature_registry reg( 2 );
  sample_matrix s( d, reg );
  std::vector<uint32_t> cands = { 0 };
  EXPECT_EQ( fdecomp_select( s, s.all_samples(), cands ), 0u );
}

TEST( Fdecomp, XorComplementSelected )
{
  auto const d = full_table( 2, []( uint64_t m ) { return ( m ^ ( m >> 1 ) ) & 1; } );
  feature_registry reg( 2 );
  sample_matrix s( d, reg );
  std::vector<uint32_t> cands = { 0 };
  EXPECT_EQ( fdecomp_select( s, s.all_samples(), cands ), 0u );
}

TEST( Fdecomp, NonComplementRejected )
{
  /* f = a AND b: branches on a are b and 0; row 00 and 10 agree on b with label 0 */
  auto const d = full_table( 2, []( uint64_t m ) { return m == 3; } );
  feature_registry reg( 2 );
  sample_matrix s( d, reg );
  std::vector<uint32_t> cands = { 0 };
  /* the a=0 branch is constant 0, which is a valid decomposition */
  EXPECT_EQ( fdecomp_select( s, s.all_samples(), cands ), 0u );

  auto const e = full_table( 3, []( uint64_t m ) { return ( m & 1 ) ? ( m >> 1 ) & 1 : ( ( m >> 1 ) ^ ( m >> 2 ) ) & 1; } );
  feature_registry reg3( 3 );
  sample_matrix s3( e, reg3 );
  std::vector<uint32_t> c3 = { 0 };
  EXPECT_FALSE( fdecomp_select( s3, s3.all_samples(), c3 ).has_value() );
}

TEST( Fdecomp, SingleRowReturnsLast )
{
  dataset d( 3 );
  d.add( "101", true );
  feature_registry reg( 3 );
  sample_matrix s( d, reg );
  std::vector<uint32_t> cands = { 0, 1, 2 };
  EXPECT_EQ( fdecomp_select( s, s.all_samples(), cands ), 2u );
}

TEST( Fringe, XorBecomesSingleSplit )
{
  auto const d = full_table( 2, []( uint64_t m ) { return ( m ^ ( m >> 1 ) ) & 1; } );
  dt_params p;
  p.fringe_iterations = 1;
  auto const t = fringe_train( d, p );
  ASSERT_GE( t.features.composite_count(), 1u );
  auto const& f = t.features[2];
  EXPECT_TRUE( f.op == fringe_op::xor_ || f.op == fringe_op::xnor );
  EXPECT_EQ( t.depth(), 1u );
  EXPECT_DOUBLE_EQ( evaluate( t, d ), 1.0 );
}

TEST( Fringe, ProjectionAddsNothing )
{
  auto const d = full_table( 2, []( uint64_t m ) { return m & 1; } );
  auto const t = fringe_train( d, {} );
  EXPECT_EQ( t.features.composite_count(), 0u );
  EXPECT_EQ( t.depth(), 1u );
}

TEST( Fringe, ZeroLimitEqualsPlainTree )
{
  rng gen( 41 );
  auto const d = testkit::random_dataset( 8, 150, gen );
  dt_params p;
  p.fringe_feature_limit = 0;
  EXPECT_EQ( serialize( fringe_train( d, p ) ), serialize( train_dt( d, p ) ) );
}

TEST( Fringe, ImprovesOnParityBlocks )
{
  /* f = (x0 ^ x1) & (x2 ^ x3): fringe features shrink the tree */
  auto const d = full_table( 6, []( uint64_t m ) {
    return ( ( m ^ ( m >> 1 ) ) & 1 ) && ( ( ( m >> 2 ) ^ ( m >> 3 ) ) & 1 );
  } );
  auto const plain = train_dt( d, {} );
  auto const fringe = fringe_train( d, {} );
  EXPECT_DOUBLE_EQ( evaluate( fringe, d ), 1.0 );
  EXPECT_LT( fringe.num_splits(), plain.num_splits() );
}

TEST( Tree, PredictLeafAndSerialization )
{
  auto const leaf = deserialize_tree( "tree 3 0\nL 1\n" );
  EXPECT_TRUE( predict( leaf, pattern_row( 3, 5 ) ) );
  rng gen( 43 );
  auto const d = testkit::random_dataset( 6, 40, gen );
  dt_params p;
  p.fringe_iterations = 3;
  auto const t = fringe_train( d, p );
  auto const back = deserialize_tree( serialize( t ) );
  EXPECT_EQ( serialize( back ), serialize( t ) );
  for ( uint64_t m = 0; m < 64; ++m )
    EXPECT_EQ( predict( back, pattern_row( 6, m ) ), predict( t, pattern_row( 6, m ) ) );
}

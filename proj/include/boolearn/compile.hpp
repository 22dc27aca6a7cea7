#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "boolearn/aig.hpp"
#include "boolearn/dtree.hpp"
#include "boolearn/espresso_lite.hpp"
#include "boolearn/forest.hpp"
#include "boolearn/lutnet.hpp"

namespace boolearn
{

/* OR of AND-of-literal cubes over `vars`; empty onset is constant false */
literal sop_literal( aig& g, std::span<literal const> vars, std::span<packed_cube const> onset );
aig sop_to_aig( uint32_t num_inputs, std::span<packed_cube const> onset );

/* each split becomes MUX(feature, hi, lo); composites are built from their operands */
literal tree_literal( aig& g, decision_tree const& tree, std::span<literal const> inputs );
aig dt_to_aig( decision_tree const& tree );

/* binary count of the true inputs, least significant bit first */
std::vector<literal> popcount_literals( aig& g, std::span<literal const> inputs );
/* unsigned count >= threshold */
literal geq_const( aig& g, std::span<literal const> count, uint64_t threshold );

/* exact majority of an odd number of literals via popcount and threshold */
literal majority_to_aig( aig& g, std::span<literal const> inputs );
/* three layers of 5-input majority gates over exactly 125 inputs; approximates MAJ125 */
literal approximate_majority125( aig& g, std::span<literal const> inputs );

/* output = signature[popcount(inputs)], signature over {0,1} of length n + 1 */
aig symmetric_to_aig( std::string_view signature, uint32_t n );

aig forest_to_aig( forest const& f );

struct lut_compile_options
{
  /* run expand + irredundant on each table before building its SOP */
  bool minimize = false;
};

aig lutnet_to_aig( lut_network const& net, lut_compile_options const& options = {} );

} // namespace boolearn

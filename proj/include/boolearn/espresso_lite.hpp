#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "boolearn/bits.hpp"
#include "boolearn/pla.hpp"

namespace boolearn
{

/* cube as two bitsets: `care` marks specified positions, `value` their polarity */
struct packed_cube
{
  std::vector<word> care;
  std::vector<word> value;

  static packed_cube from_string( std::string_view s );
  std::string to_string( uint32_t num_inputs ) const;

  bool intersects( packed_cube const& other ) const;
  /* every minterm of *this is in other */
  bool contained_in( packed_cube const& other ) const;
  bool contains_minterm( std::span<word const> minterm ) const;
  uint32_t literal_count() const;

  bool operator==( packed_cube const& ) const = default;
};

/* onset/offset pair; everything else is a don't-care */
struct cover
{
  uint32_t num_inputs = 0;
  std::vector<packed_cube> onset;
  std::vector<packed_cube> offset;

  bool covers( std::span<word const> minterm ) const;
};

cover cover_from_pla( pla_file const& pla );

/* widens each onset cube column by column while it stays disjoint from the offset */
cover expand( cover const& c );

/* greedily drops onset cubes covered by the rest of the onset */
cover irredundant( cover const& c );

/* true iff the cubes cover the whole space of `num_inputs` variables */
bool is_tautology( std::vector<packed_cube> cubes, uint32_t num_inputs );

} // namespace boolearn

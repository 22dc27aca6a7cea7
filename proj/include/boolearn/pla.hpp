#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "boolearn/bits.hpp"

namespace boolearn
{

/* one product term: inputs over {0,1,-}, single output bit */
struct cube
{
  std::string inputs;
  bool output = false;

  bool operator==( cube const& ) const = default;
};

enum class pla_type
{
  fr
};

/*! \brief Single-output PLA care-set file.
 *
 * Cubes keep file order; identical duplicates are collapsed on parse and
 * contradicting duplicates are rejected.
 */
struct pla_file
{
  uint32_t num_inputs = 0;
  uint32_t num_outputs = 1;
  pla_type type = pla_type::fr;
  std::vector<cube> cubes;

  bool operator==( pla_file const& ) const = default;
};

pla_file parse_pla( std::istream& in );
pla_file parse_pla( std::string_view text );
pla_file read_pla_file( std::string const& path );

void write_pla( std::ostream& out, pla_file const& pla );
std::string write_pla( pla_file const& pla );
void write_pla_file( std::string const& path, pla_file const& pla );

/*! \brief Bit-packed sample matrix with labels.
 *
 * Rows are stored row-major, `row_words()` words per row, bit c of a row is
 * input c. Repeated (row, label) pairs are dropped on insertion and a row
 * seen with both labels is an error.
 */
class dataset
{
public:
  explicit dataset( uint32_t num_inputs = 0 );

  /* returns false when the row was already present with the same label */
  bool add( std::span<word const> row, bool label );
  bool add( std::string_view bits, bool label );

  uint32_t num_inputs() const { return num_inputs_; }
  std::size_t size() const { return labels_count_; }
  bool empty() const { return labels_count_ == 0; }
  std::size_t row_words() const { return row_words_; }

  std::span<word const> row( std::size_t r ) const
  {
    return { rows_.data() + r * row_words_, row_words_ };
  }
  bool bit( std::size_t r, uint32_t c ) const { return get_bit( row( r ), c ); }
  bool label( std::size_t r ) const { return get_bit( labels_, r ); }
  std::vector<word> const& label_words() const { return labels_; }
  std::size_t count_ones() const { return popcount( labels_ ); }
  bool majority_label() const { return 2 * count_ones() > size(); }

  /* column-major view: one bitset of size() bits per input */
  std::vector<std::vector<word>> columns() const;

  std::string row_string( std::size_t r ) const;

  /* union with another dataset of equal width; contradictions throw */
  dataset merged( dataset const& other ) const;

private:
  uint32_t num_inputs_;
  std::size_t row_words_;
  std::size_t labels_count_ = 0;
  std::vector<word> rows_;
  std::vector<word> labels_;
  std::unordered_map<std::string, bool> index_;
};

dataset to_dataset( pla_file const& pla );
pla_file to_pla( dataset const& data );

} // namespace boolearn

#include "boolearn/pla.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace boolearn
{

namespace
{

std::vector<std::string> split_ws( std::string const& line )
{
  std::vector<std::string> tokens;
  std::istringstream ss( line );
  std::string t;
  while ( ss >> t )
    tokens.push_back( t );
  return tokens;
}

uint32_t parse_count( std::string const& directive, std::vector<std::string> const& tokens, std::size_t line_no )
{
  if ( tokens.size() != 2 )
    throw error( "line " + std::to_string( line_no ) + ": malformed " + directive + " directive" );
  auto const& s = tokens[1];
  if ( s.empty() || s.find_first_not_of( "0123456789" ) != std::string::npos || s.size() > 9 )
    throw error( "line " + std::to_string( line_no ) + ": malformed " + directive + " directive" );
  return static_cast<uint32_t>( std::stoul( s ) );
}

std::string row_key( std::span<word const> row )
{
  return { reinterpret_cast<char const*>( row.data() ), row.size() * sizeof( word ) };
}

} // namespace

pla_file parse_pla( std::istream& in )
{
  pla_file pla;
  bool have_inputs = false;
  bool have_outputs = false;
  long declared_terms = -1;
  std::size_t cube_lines = 0;
  std::unordered_map<std::string, bool> seen;

  std::string line;
  std::size_t line_no = 0;
  while ( std::getline( in, line ) )
  {
    ++line_no;
    if ( auto const hash = line.find( '#' ); hash != std::string::npos )
      line.erase( hash );
    auto const tokens = split_ws( line );
    if ( tokens.empty() )
      continue;

    auto const& head = tokens.front();
    if ( head[0] == '.' )
    {
      if ( head == ".i" )
      {
        pla.num_inputs = parse_count( head, tokens, line_no );
        have_inputs = true;
      }
      else if ( head == ".o" )
      {
        pla.num_outputs = parse_count( head, tokens, line_no );
        if ( pla.num_outputs != 1 )
          throw error( "line " + std::to_string( line_no ) + ": only single-output PLAs are supported" );
        have_outputs = true;
      }
      else if ( head == ".p" )
      {
        declared_terms = parse_count( head, tokens, line_no );
      }
      else if ( head == ".type" )
      {
        if ( tokens.size() != 2 )
          throw error( "line " + std::to_string( line_no ) + ": malformed .type directive" );
        if ( tokens[1] != "fr" )
          throw error( "line " + std::to_string( line_no ) + ": unsupported PLA type '" + tokens[1] + "'" );
        pla.type = pla_type::fr;
      }
      else if ( head == ".ilb" || head == ".ob" )
      {
        /* labels are accepted and ignored */
      }
      else if ( head == ".e" || head == ".end" )
      {
        break;
      }
      else
      {
        throw error( "line " + std::to_string( line_no ) + ": unknown directive '" + head + "'" );
      }
      continue;
    }

    if ( !have_inputs )
      throw error( "line " + std::to_string( line_no ) + ": cube before .i directive" );
    if ( tokens.size() != 2 )
      throw error( "line " + std::to_string( line_no ) + ": malformed cube line" );
    auto const& inputs = tokens[0];
    auto const& output = tokens[1];
    if ( inputs.size() != pla.num_inputs )
      throw error( "line " + std::to_string( line_no ) + ": cube width " + std::to_string( inputs.size() ) +
                   " does not match .i " + std::to_string( pla.num_inputs ) );
    if ( inputs.find_first_not_of( "01-" ) != std::string::npos )
      throw error( "line " + std::to_string( line_no ) + ": unknown character in cube '" + inputs + "'" );
    if ( output.size() != 1 )
      throw error( "line " + std::to_string( line_no ) + ": output arity must be 1" );
    if ( output != "0" && output != "1" )
      throw error( "line " + std::to_string( line_no ) + ": unknown output character '" + output + "'" );

    ++cube_lines;
    bool const value = output == "1";
    auto [it, inserted] = seen.emplace( inputs, value );
    if ( !inserted )
    {
      if ( it->second != value )
        throw error( "line " + std::to_string( line_no ) + ": contradictory cube '" + inputs + "'" );
      continue;
    }
    pla.cubes.push_back( { inputs, value } );
  }

  if ( !have_inputs )
    throw error( "missing .i directive" );
  if ( !have_outputs )
    throw error( "missing .o directive" );
  if ( declared_terms >= 0 && static_cast<std::size_t>( declared_terms ) != cube_lines )
    throw error( ".p declares " + std::to_string( declared_terms ) + " cubes but file has " +
                 std::to_string( cube_lines ) );
  return pla;
}

pla_file parse_pla( std::string_view text )
{
  std::istringstream in{ std::string( text ) };
  return parse_pla( in );
}

pla_file read_pla_file( std::string const& path )
{
  std::ifstream in( path );
  if ( !in )
    throw error( "cannot open '" + path + "'" );
  return parse_pla( in );
}

void write_pla( std::ostream& out, pla_file const& pla )
{
  out << ".i " << pla.num_inputs << '\n';
  out << ".o " << pla.num_outputs << '\n';
  out << ".type fr\n";
  out << ".p " << pla.cubes.size() << '\n';
  for ( auto const& c : pla.cubes )
    out << c.inputs << ' ' << ( c.output ? '1' : '0' ) << '\n';
  out << ".e\n";
}

std::string write_pla( pla_file const& pla )
{
  std::ostringstream out;
  write_pla( out, pla );
  return out.str();
}

void write_pla_file( std::string const& path, pla_file const& pla )
{
  std::ofstream out( path );
  if ( !out )
    throw error( "cannot write '" + path + "'" );
  write_pla( out, pla );
}

dataset::dataset( uint32_t num_inputs )
    : num_inputs_( num_inputs ), row_words_( std::max<std::size_t>( 1, words_for( num_inputs ) ) )
{
}

bool dataset::add( std::span<word const> row, bool label )
{
  if ( row.size() != row_words_ )
    throw error( "dataset row width mismatch" );
  auto [it, inserted] = index_.emplace( row_key( row ), label );
  if ( !inserted )
  {
    if ( it->second != label )
      throw error( "contradictory row in dataset" );
    return false;
  }
  rows_.insert( rows_.end(), row.begin(), row.end() );
  if ( labels_count_ % word_bits == 0 )
    labels_.push_back( 0 );
  set_bit( labels_, labels_count_, label );
  ++labels_count_;
  return true;
}

bool dataset::add( std::string_view bits, bool label )
{
  if ( bits.size() != num_inputs_ )
    throw error( "dataset row width mismatch" );
  std::vector<word> row( row_words_, 0 );
  for ( std::size_t c = 0; c < bits.size(); ++c )
  {
    if ( bits[c] == '1' )
      set_bit( row, c, true );
    else if ( bits[c] != '0' )
      throw error( "cube '" + std::string( bits ) + "' is not a minterm" );
  }
  return add( row, label );
}

std::vector<std::vector<word>> dataset::columns() const
{
  std::vector<std::vector<word>> cols( num_inputs_, std::vector<word>( words_for( size() ), 0 ) );
  for ( std::size_t r = 0; r < size(); ++r )
  {
    auto const rw = row( r );
    for ( uint32_t c = 0; c < num_inputs_; ++c )
      if ( get_bit( rw, c ) )
        cols[c][r / word_bits] |= word{ 1 } << ( r % word_bits );
  }
  return cols;
}

std::string dataset::row_string( std::size_t r ) const
{
  std::string s( num_inputs_, '0' );
  for ( uint32_t c = 0; c < num_inputs_; ++c )
    if ( bit( r, c ) )
      s[c] = '1';
  return s;
}

dataset dataset::merged( dataset const& other ) const
{
  if ( other.num_inputs_ != num_inputs_ )
    throw error( "cannot merge datasets of different widths" );
  dataset out = *this;
  for ( std::size_t r = 0; r < other.size(); ++r )
    out.add( other.row( r ), other.label( r ) );
  return out;
}

dataset to_dataset( pla_file const& pla )
{
  dataset data( pla.num_inputs );
  for ( auto const& c : pla.cubes )
    data.add( c.inputs, c.output );
  return data;
}

pla_file to_pla( dataset const& data )
{
  pla_file pla;
  pla.num_inputs = data.num_inputs();
  pla.cubes.reserve( data.size() );
  for ( std::size_t r = 0; r < data.size(); ++r )
    pla.cubes.push_back( { data.row_string( r ), data.label( r ) } );
  return pla;
}

} // namespace boolearn

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "boolearn/compile.hpp"
#include "boolearn/harness.hpp"

namespace py = pybind11;
using namespace boolearn;

namespace
{

portfolio_config config_from_kwargs( uint32_t budget, std::string const& models, uint64_t seed )
{
  portfolio_config c;
  c.budget = budget;
  c.seed = seed;
  if ( !models.empty() )
    c.models = parse_model_list( models );
  return c;
}

} // namespace

PYBIND11_MODULE( _core, m )
{
  m.doc() = "Boolean function learning and AIG compilation";

  py::register_exception<error>( m, "Error", PyExc_ValueError );

  py::class_<aig>( m, "Aig" )
      .def_property_readonly( "num_inputs", &aig::num_inputs )
      .def_property_readonly( "and_nodes", []( aig const& g ) { return metrics( g ).and_nodes; } )
      .def_property_readonly( "levels", []( aig const& g ) { return metrics( g ).levels; } )
      .def( "evaluate", []( aig const& g, std::vector<bool> const& x ) {
        if ( x.size() != g.num_inputs() )
          throw error( "expected " + std::to_string( g.num_inputs() ) + " inputs" );
        return evaluate_pattern( g, x );
      } )
      .def( "to_aag", []( aig const& g ) { return write_aag( g ); } )
      .def( "accuracy", []( aig const& g, std::string const& pla_text ) {
        return evaluate_accuracy( g, parse_pla( pla_text ) );
      } );

  m.def( "read_aag", []( std::string const& text ) { return read_aag( text ); }, py::arg( "text" ) );
  m.def( "symmetric_aig", &symmetric_to_aig, py::arg( "signature" ), py::arg( "n" ) );

  m.def(
      "generate",
      []( std::string const& preset, uint64_t seed, std::size_t samples ) {
        auto spec = parse_preset( preset );
        spec.seed = seed;
        spec.samples_per_split = samples;
        auto const s = sample_splits( spec );
        return py::make_tuple( write_pla( s.train ), write_pla( s.valid ), write_pla( s.test ) );
      },
      py::arg( "preset" ), py::arg( "seed" ) = 1, py::arg( "samples" ) = 6400,
      "train/valid/test PLA texts for a preset such as 'comparator:k=8' or 'ex75'" );

  m.def(
      "learn",
      []( std::string const& train, std::string const& valid, std::optional<std::string> const& test, uint32_t budget,
          std::string const& models, uint64_t seed ) {
        auto const config = config_from_kwargs( budget, models, seed );
        std::optional<pla_file> test_pla;
        if ( test )
          test_pla = parse_pla( *test );
        portfolio_result r;
        {
          py::gil_scoped_release release;
          r = run_portfolio( parse_pla( train ), parse_pla( valid ), config, test_pla ? &*test_pla : nullptr );
        }
        return py::make_tuple( r.circuit, r.report.to_json().dump() );
      },
      py::arg( "train" ), py::arg( "valid" ), py::arg( "test" ) = py::none(), py::arg( "budget" ) = 5000,
      py::arg( "models" ) = "", py::arg( "seed" ) = 1,
      "runs the portfolio on PLA texts; returns (Aig, report JSON string)" );

  m.def(
      "detect_symmetric",
      []( std::string const& pla_text ) { return detect_symmetric( to_dataset( parse_pla( pla_text ) ) ); },
      py::arg( "pla" ) );

  m.def(
      "score",
      []( std::vector<std::string> const& reports ) {
        std::vector<model_report> rs;
        for ( auto const& r : reports )
          rs.push_back( model_report::from_json( nlohmann::json::parse( r ) ) );
        return score_suite( rs ).to_json().dump();
      },
      py::arg( "reports" ), "SuiteScore JSON for a list of report JSON strings" );
}

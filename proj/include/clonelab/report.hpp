#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "atom.hpp"
#include "carrier.hpp"

namespace clonelab
{

using json = nlohmann::ordered_json;

/// Tri-partite atoms serialize as {"A": i}, {"B": "bits"} and "inf"; plain
/// atoms as integers.
inline json atom_to_json( const atom& a )
{
  struct visitor
  {
    json operator()( std::int64_t v ) const { return v; }
    json operator()( const a_element& e ) const { return json{ { "A", e.index } }; }
    json operator()( const bit_string& s ) const { return json{ { "B", s.str() } }; }
    json operator()( const infinity_element& ) const { return "inf"; }
  };
  return std::visit( visitor{}, a );
}

inline json value_to_json( const carrier& c, value_t v ) { return atom_to_json( c.at( v ) ); }

inline json tuple_to_json( const carrier& c, std::span<const value_t> t )
{
  json arr = json::array();
  for ( auto v : t )
  {
    arr.push_back( value_to_json( c, v ) );
  }
  return arr;
}

/*! \brief Outcome of one verification routine.

  Counts every individual identity checked and every violation. Only the
  first `max_witnesses` violations are kept.
*/
struct check_report
{
  std::string name;
  bool exhaustive = true;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  json details = json::object();
  json witnesses = json::array();
  std::vector<std::string> warnings;

  static constexpr std::size_t max_witnesses = 20;

  bool passed() const noexcept { return failures == 0; }

  /// Counts one check; on failure stores the witness built by `make`.
  template<std::invocable MakeWitness>
  bool expect( bool ok, MakeWitness&& make )
  {
    ++checks;
    if ( !ok )
    {
      ++failures;
      if ( witnesses.size() < max_witnesses )
      {
        witnesses.push_back( make() );
      }
    }
    return ok;
  }

  bool expect( bool ok, const std::string& what )
  {
    return expect( ok, [&] { return json( what ); } );
  }

  void merge( const check_report& other )
  {
    checks += other.checks;
    failures += other.failures;
    exhaustive = exhaustive && other.exhaustive;
    for ( const auto& w : other.witnesses )
    {
      if ( witnesses.size() < max_witnesses )
      {
        witnesses.push_back( w );
      }
    }
    warnings.insert( warnings.end(), other.warnings.begin(), other.warnings.end() );
  }

  json to_json() const
  {
    json j;
    j["name"] = name;
    j["passed"] = passed();
    j["exhaustive"] = exhaustive;
    j["checks"] = checks;
    j["failures"] = failures;
    j["details"] = details;
    j["witnesses"] = witnesses;
    j["warnings"] = warnings;
    return j;
  }
};

} // namespace clonelab

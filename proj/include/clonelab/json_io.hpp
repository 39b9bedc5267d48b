#pragma once

#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "atom.hpp"
#include "bits.hpp"
#include "carrier.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "mcont.hpp"
#include "operation.hpp"
#include "operation_set.hpp"
#include "partial.hpp"
#include "relation.hpp"
#include "report.hpp"

namespace clonelab
{

/// Malformed input; `what()` carries the source and line:column when known.
class format_error : public argument_error
{
public:
  using argument_error::argument_error;
};

namespace detail
{

inline std::pair<std::size_t, std::size_t> line_column( const std::string& text, std::size_t byte )
{
  std::size_t line = 1, col = 1;
  for ( std::size_t i = 0; i < byte && i < text.size(); ++i )
  {
    if ( text[i] == '\n' )
    {
      ++line;
      col = 1;
    }
    else
    {
      ++col;
    }
  }
  return { line, col };
}

[[noreturn]] inline void bad( const std::string& where, const std::string& msg )
{
  throw format_error( where + ": " + msg );
}

} // namespace detail

inline json parse_json( const std::string& text, const std::string& source = "<input>" )
{
  try
  {
    return json::parse( text );
  }
  catch ( const json::parse_error& e )
  {
    // byte points one past the offending character
    const auto [line, col] = detail::line_column( text, e.byte == 0 ? 0 : e.byte - 1 );
    std::string msg = e.what();
    if ( auto p = msg.find( "parse error" ); p != std::string::npos )
    {
      msg = msg.substr( p );
    }
    throw format_error( source + ":" + std::to_string( line ) + ":" + std::to_string( col ) + ": " + msg );
  }
}

inline json load_json_file( const std::string& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
  {
    throw format_error( path + ": cannot open file" );
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json( ss.str(), path );
}

// ---------------------------------------------------------------------------
// atoms and carriers
// ---------------------------------------------------------------------------

inline atom atom_from_json( const json& j, const std::string& where )
{
  if ( j.is_number_integer() )
  {
    return j.get<std::int64_t>();
  }
  if ( j == "inf" )
  {
    return infinity_element{};
  }
  if ( j.is_object() && j.size() == 1 )
  {
    if ( j.contains( "A" ) && j["A"].is_number_unsigned() )
    {
      return a_element{ j["A"].get<std::size_t>() };
    }
    if ( j.contains( "B" ) && j["B"].is_string() )
    {
      try
      {
        return bit_string( j["B"].get<std::string>() );
      }
      catch ( const argument_error& e )
      {
        detail::bad( where, e.what() );
      }
    }
  }
  detail::bad( where, "expected an integer, {\"A\": i}, {\"B\": \"bits\"} or \"inf\", got " + j.dump() );
}

/// Accepts a list of atoms, an integer n (the plain carrier {0..n-1}) or
/// {"tripartite": k}.
inline carrier_ptr carrier_from_json( const json& j, const std::string& where = "carrier" )
{
  try
  {
    if ( j.is_number_unsigned() )
    {
      return carrier::plain( j.get<std::size_t>() );
    }
    if ( j.is_object() && j.contains( "tripartite" ) && j["tripartite"].is_number_unsigned() )
    {
      return carrier::tripartite( j["tripartite"].get<std::size_t>() );
    }
    if ( j.is_array() )
    {
      std::vector<atom> atoms;
      for ( std::size_t i = 0; i < j.size(); ++i )
      {
        atoms.push_back( atom_from_json( j[i], where + "/" + std::to_string( i ) ) );
      }
      return carrier::from_atoms( std::move( atoms ) );
    }
  }
  catch ( const format_error& )
  {
    throw;
  }
  catch ( const argument_error& e )
  {
    detail::bad( where, e.what() );
  }
  detail::bad( where, "expected a list of elements, a size, or {\"tripartite\": k}" );
}

inline json carrier_to_json( const carrier& c )
{
  json arr = json::array();
  for ( const auto& a : c.atoms() )
  {
    arr.push_back( atom_to_json( a ) );
  }
  return arr;
}

inline value_t value_from_json( const carrier& c, const json& j, const std::string& where )
{
  const auto a = atom_from_json( j, where );
  if ( auto v = c.find( a ) )
  {
    return *v;
  }
  detail::bad( where, "element " + j.dump() + " is not in the carrier" );
}

inline tuple_t tuple_from_json( const carrier& c, const json& j, const std::string& where )
{
  if ( !j.is_array() )
  {
    detail::bad( where, "expected a tuple (array)" );
  }
  tuple_t t;
  for ( std::size_t i = 0; i < j.size(); ++i )
  {
    t.push_back( value_from_json( c, j[i], where + "/" + std::to_string( i ) ) );
  }
  return t;
}

/// A list of carrier elements (F files).
inline std::vector<value_t> values_from_json( const carrier& c, const json& j, const std::string& where = "values" )
{
  return tuple_from_json( c, j, where );
}

namespace detail
{

inline std::size_t arity_field( const json& j, const std::string& where )
{
  if ( !j.is_object() || !j.contains( "arity" ) || !j["arity"].is_number_unsigned() )
  {
    bad( where, "missing non-negative integer field \"arity\"" );
  }
  return j["arity"].get<std::size_t>();
}

inline carrier_ptr carrier_field( const json& j, const carrier_ptr& fallback, const std::string& where )
{
  if ( j.contains( "carrier" ) )
  {
    auto c = carrier_from_json( j["carrier"], where + "/carrier" );
    if ( fallback && !fallback->same_as( *c ) )
    {
      bad( where, "carrier differs from the one of the surrounding document" );
    }
    return c;
  }
  if ( !fallback )
  {
    bad( where, "missing field \"carrier\"" );
  }
  return fallback;
}

} // namespace detail

// ---------------------------------------------------------------------------
// operations, relations and sets of them
// ---------------------------------------------------------------------------

inline json operation_to_json( const operation& f )
{
  json table = json::array();
  for ( auto v : f.table() )
  {
    table.push_back( value_to_json( *f.domain(), v ) );
  }
  return json{ { "arity", f.arity() }, { "carrier", carrier_to_json( *f.domain() ) }, { "table", table } };
}

inline operation operation_from_json( const json& j, const carrier_ptr& fallback = nullptr,
                                      const std::string& where = "operation" )
{
  const auto n = detail::arity_field( j, where );
  const auto c = detail::carrier_field( j, fallback, where );
  if ( !j.contains( "table" ) || !j["table"].is_array() )
  {
    detail::bad( where, "missing array field \"table\"" );
  }
  std::vector<value_t> table;
  for ( std::size_t i = 0; i < j["table"].size(); ++i )
  {
    table.push_back( value_from_json( *c, j["table"][i], where + "/table/" + std::to_string( i ) ) );
  }
  try
  {
    return operation( c, n, std::move( table ) );
  }
  catch ( const argument_error& e )
  {
    detail::bad( where, e.what() );
  }
}

inline json relation_to_json( const relation& r )
{
  return json{ { "arity", r.arity() }, { "carrier", carrier_to_json( *r.domain() ) }, { "tuples", [&] {
                  json ts = json::array();
                  for ( std::size_t i = 0; i < r.size(); ++i )
                  {
                    ts.push_back( tuple_to_json( *r.domain(), r.tuple( i ) ) );
                  }
                  return ts;
                }() } };
}

inline relation relation_from_json( const json& j, const carrier_ptr& fallback = nullptr, const std::string& where = "relation" )
{
  const auto m = detail::arity_field( j, where );
  const auto c = detail::carrier_field( j, fallback, where );
  if ( !j.contains( "tuples" ) || !j["tuples"].is_array() )
  {
    detail::bad( where, "missing array field \"tuples\"" );
  }
  std::vector<tuple_t> tuples;
  for ( std::size_t i = 0; i < j["tuples"].size(); ++i )
  {
    tuples.push_back( tuple_from_json( *c, j["tuples"][i], where + "/tuples/" + std::to_string( i ) ) );
  }
  try
  {
    return relation( c, m, std::move( tuples ) );
  }
  catch ( const argument_error& e )
  {
    detail::bad( where, e.what() );
  }
}

namespace detail
{

/// A document is one item, a list of items, or {"carrier": .., key: [items]}.
template<typename Item, typename Parse>
std::pair<carrier_ptr, std::vector<Item>> items_from_json( const json& j, const char* key, Parse&& parse, const std::string& where )
{
  carrier_ptr c;
  const json* list = &j;
  if ( j.is_object() && j.contains( key ) )
  {
    if ( j.contains( "carrier" ) )
    {
      c = carrier_from_json( j["carrier"], where + "/carrier" );
    }
    list = &j[key];
  }
  std::vector<Item> items;
  if ( list->is_object() )
  {
    items.push_back( parse( *list, c, where ) );
    c = items.back().domain();
  }
  else if ( list->is_array() )
  {
    for ( std::size_t i = 0; i < list->size(); ++i )
    {
      items.push_back( parse( ( *list )[i], c, where + "/" + std::to_string( i ) ) );
      c = items.back().domain();
    }
  }
  else
  {
    bad( where, std::string( "expected an object or a list under \"" ) + key + "\"" );
  }
  if ( !c )
  {
    bad( where, "cannot determine the carrier of an empty list; add a \"carrier\" field" );
  }
  return { c, std::move( items ) };
}

} // namespace detail

inline relation_set relations_from_json( const json& j, const std::string& where = "relations" )
{
  auto [c, rels] = detail::items_from_json<relation>(
      j, "relations", []( const json& x, const carrier_ptr& c, const std::string& w ) { return relation_from_json( x, c, w ); },
      where );
  relation_set rs( c );
  for ( const auto& r : rels )
  {
    rs.insert( r );
  }
  return rs;
}

inline operation_set operations_from_json( const json& j, const std::string& where = "operations" )
{
  auto [c, ops] = detail::items_from_json<operation>(
      j, "operations", []( const json& x, const carrier_ptr& c, const std::string& w ) { return operation_from_json( x, c, w ); },
      where );
  operation_set fs( c );
  for ( const auto& f : ops )
  {
    fs.insert( f );
  }
  return fs;
}

inline json operation_set_to_json( const operation_set& fs )
{
  json out;
  out["carrier"] = carrier_to_json( *fs.domain() );
  json counts = json::object();
  json ops = json::array();
  for ( auto n : fs.arities() )
  {
    counts[std::to_string( n )] = fs.size( n );
    for ( const auto& f : fs.of_arity( n ) )
    {
      ops.push_back( json{ { "arity", n }, { "table", operation_to_json( f )["table"] } } );
    }
  }
  out["counts"] = counts;
  out["operations"] = ops;
  return out;
}

inline json relation_set_to_json( const relation_set& rs )
{
  json out;
  out["carrier"] = carrier_to_json( *rs.domain() );
  json rels = json::array();
  for ( const auto& r : rs.all() )
  {
    auto j = relation_to_json( r );
    j.erase( "carrier" );
    rels.push_back( j );
  }
  out["count"] = rels.size();
  out["relations"] = rels;
  return out;
}

// ---------------------------------------------------------------------------
// partial operations
// ---------------------------------------------------------------------------

inline json partial_to_json( const partial_operation& p, bool with_carrier = false )
{
  const auto& c = *p.domain_carrier();
  json graph = json::array();
  for ( const auto& [t, v] : p.entries() )
  {
    graph.push_back( json::array( { tuple_to_json( c, t ), value_to_json( c, v ) } ) );
  }
  json j{ { "arity", p.arity() }, { "graph", graph } };
  if ( with_carrier )
  {
    j["carrier"] = carrier_to_json( c );
  }
  return j;
}

inline partial_operation partial_from_json( const json& j, const carrier_ptr& fallback = nullptr,
                                            const std::string& where = "partial" )
{
  const auto n = detail::arity_field( j, where );
  const auto c = detail::carrier_field( j, fallback, where );
  if ( !j.contains( "graph" ) || !j["graph"].is_array() )
  {
    detail::bad( where, "missing array field \"graph\"" );
  }
  std::vector<std::pair<tuple_t, value_t>> entries;
  for ( std::size_t i = 0; i < j["graph"].size(); ++i )
  {
    const auto& e = j["graph"][i];
    const auto w = where + "/graph/" + std::to_string( i );
    if ( !e.is_array() || e.size() != 2 )
    {
      detail::bad( w, "expected [tuple, value]" );
    }
    entries.emplace_back( tuple_from_json( *c, e[0], w + "/0" ), value_from_json( *c, e[1], w + "/1" ) );
  }
  try
  {
    return partial_operation( c, n, entries );
  }
  catch ( const argument_error& e )
  {
    detail::bad( where, e.what() );
  }
}

inline std::pair<carrier_ptr, std::vector<partial_operation>> partials_from_json( const json& j,
                                                                                  const std::string& where = "partials" )
{
  carrier_ptr c;
  const json* list = &j;
  if ( j.is_object() && j.contains( "partials" ) )
  {
    if ( j.contains( "carrier" ) )
    {
      c = carrier_from_json( j["carrier"], where + "/carrier" );
    }
    list = &j["partials"];
  }
  if ( !list->is_array() )
  {
    detail::bad( where, "expected a list of partial operations" );
  }
  std::vector<partial_operation> out;
  for ( std::size_t i = 0; i < list->size(); ++i )
  {
    out.push_back( partial_from_json( ( *list )[i], c, where + "/" + std::to_string( i ) ) );
    c = out.back().domain_carrier();
  }
  if ( !c )
  {
    detail::bad( where, "cannot determine the carrier of an empty list; add a \"carrier\" field" );
  }
  return { c, std::move( out ) };
}

inline json partial_clone_to_json( const partial_clone& P )
{
  json out;
  out["carrier"] = carrier_to_json( *P.domain() );
  out["saturated"] = P.saturated;
  out["rounds"] = P.rounds;
  out["compositions"] = P.compositions;
  out["size"] = P.size();
  json members = json::array();
  for ( const auto& p : P.members() )
  {
    members.push_back( partial_to_json( p ) );
  }
  out["members"] = members;
  return out;
}

// ---------------------------------------------------------------------------
// groups, sigma maps, bit strings
// ---------------------------------------------------------------------------

/// {"elements": [names], "add": [[names]]}; "add"[i][j] is elements[i] + elements[j].
inline finite_group group_from_json( const json& j, const std::string& where = "group" )
{
  if ( !j.is_object() || !j.contains( "elements" ) || !j["elements"].is_array() || !j.contains( "add" ) ||
       !j["add"].is_array() )
  {
    detail::bad( where, "expected {\"elements\": [...], \"add\": [[...]]}" );
  }
  std::vector<std::string> names;
  std::map<std::string, value_t> index;
  for ( std::size_t i = 0; i < j["elements"].size(); ++i )
  {
    const auto& e = j["elements"][i];
    names.push_back( e.is_string() ? e.get<std::string>() : e.dump() );
    index.emplace( names.back(), static_cast<value_t>( i ) );
  }
  std::vector<std::vector<value_t>> add;
  for ( std::size_t r = 0; r < j["add"].size(); ++r )
  {
    const auto& row = j["add"][r];
    if ( !row.is_array() )
    {
      detail::bad( where + "/add/" + std::to_string( r ), "expected a row" );
    }
    add.emplace_back();
    for ( std::size_t s = 0; s < row.size(); ++s )
    {
      const auto name = row[s].is_string() ? row[s].get<std::string>() : row[s].dump();
      auto it = index.find( name );
      if ( it == index.end() )
      {
        detail::bad( where + "/add/" + std::to_string( r ) + "/" + std::to_string( s ), "unknown element " + name );
      }
      add.back().push_back( it->second );
    }
  }
  try
  {
    return finite_group( std::move( names ), std::move( add ) );
  }
  catch ( const argument_error& e )
  {
    detail::bad( where, e.what() );
  }
}

inline json group_to_json( const finite_group& g )
{
  json add = json::array();
  for ( value_t x = 0; x < g.order(); ++x )
  {
    json row = json::array();
    for ( value_t y = 0; y < g.order(); ++y )
    {
      row.push_back( g.name( g.add( x, y ) ) );
    }
    add.push_back( row );
  }
  return json{ { "elements", g.names() }, { "add", add } };
}

inline bit_string bit_string_from_json( const json& j, const std::string& where )
{
  if ( !j.is_string() )
  {
    detail::bad( where, "expected a bit string" );
  }
  try
  {
    return bit_string( j.get<std::string>() );
  }
  catch ( const argument_error& e )
  {
    detail::bad( where, e.what() );
  }
}

inline sigma_map sigma_from_json( const json& j, const std::string& where = "sigma" )
{
  if ( !j.is_object() || !j.contains( "graph" ) || !j["graph"].is_array() )
  {
    detail::bad( where, "expected {\"graph\": [[[\"c\",\"d\"],\"e\"],...]}" );
  }
  std::map<sigma_map::key_type, bit_string> graph;
  for ( std::size_t i = 0; i < j["graph"].size(); ++i )
  {
    const auto& e = j["graph"][i];
    const auto w = where + "/graph/" + std::to_string( i );
    if ( !e.is_array() || e.size() != 2 || !e[0].is_array() || e[0].size() != 2 )
    {
      detail::bad( w, "expected [[\"c\",\"d\"],\"e\"]" );
    }
    sigma_map::key_type key{ bit_string_from_json( e[0][0], w ), bit_string_from_json( e[0][1], w ) };
    if ( !graph.emplace( key, bit_string_from_json( e[1], w ) ).second )
    {
      detail::bad( w, "pair listed twice" );
    }
  }
  try
  {
    return sigma_map::from_graph( std::move( graph ) );
  }
  catch ( const argument_error& e )
  {
    detail::bad( where, e.what() );
  }
}

} // namespace clonelab

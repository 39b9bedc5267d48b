#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "clonelab.hpp"

namespace testing_helpers
{

using namespace clonelab;

inline carrier_ptr boolean() { return carrier::plain( 2 ); }
inline operation AND( const carrier_ptr& c ) { return operation( c, 2, { 0, 0, 0, 1 } ); }
inline operation OR( const carrier_ptr& c ) { return operation( c, 2, { 0, 1, 1, 1 } ); }
inline operation NOT( const carrier_ptr& c ) { return operation( c, 1, { 1, 0 } ); }

inline relation leq( const carrier_ptr& c ) { return relation( c, 2, { { 0, 0 }, { 0, 1 }, { 1, 1 } } ); }

inline operation random_operation( const carrier_ptr& c, std::size_t arity, std::mt19937_64& rng )
{
  std::vector<value_t> table( table_size( *c, arity ) );
  for ( auto& v : table )
  {
    v = static_cast<value_t>( rng() % c->size() );
  }
  return operation( c, arity, std::move( table ) );
}

inline relation random_relation( const carrier_ptr& c, std::size_t arity, std::mt19937_64& rng )
{
  std::vector<tuple_t> tuples;
  const auto rows = table_size( *c, arity );
  for ( std::size_t r = 0; r < rows; ++r )
  {
    if ( rng() % 2 )
    {
      tuples.push_back( unrank_tuple( r, arity, c->size() ) );
    }
  }
  return relation( c, arity, std::move( tuples ) );
}

/// Every operation of the given arity, independent of for_each_operation.
inline std::vector<operation> all_operations( const carrier_ptr& c, std::size_t arity )
{
  const std::size_t rows = table_size( *c, arity );
  std::vector<operation> out;
  std::vector<value_t> t( rows, 0 );
  while ( true )
  {
    out.emplace_back( c, arity, t );
    std::size_t i = rows;
    while ( i > 0 && t[i - 1] + 1 == c->size() )
    {
      t[--i] = 0;
    }
    if ( i == 0 )
    {
      return out;
    }
    ++t[i - 1];
  }
}

} // namespace testing_helpers

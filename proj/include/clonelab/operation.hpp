#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <type_traits>
#include <span>
#include <string>
#include <vector>

#include "carrier.hpp"
#include "errors.hpp"

namespace clonelab
{

/// Largest table any operation or relation may materialize.
inline constexpr std::uint64_t max_table_entries = std::uint64_t{ 1 } << 26;

inline std::size_t table_size( const carrier& c, std::size_t arity )
{
  auto n = checked_power( c.size(), arity, max_table_entries );
  if ( !n )
  {
    throw argument_error( "table of arity " + std::to_string( arity ) + " on " + std::to_string( c.size() ) +
                          " elements is too large to materialize" );
  }
  return static_cast<std::size_t>( *n );
}

struct table_hash
{
  std::size_t operator()( const std::vector<value_t>& t ) const noexcept
  {
    std::uint64_t h = 1469598103934665603ull;
    for ( value_t v : t )
    {
      h ^= v + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>( h );
  }
};

/*! \brief A total finitary operation on a finite carrier.

  The value table is indexed by the mixed-radix rank of the argument tuple
  (first argument most significant). Operations are immutable.
*/
class operation
{
public:
  operation( carrier_ptr c, std::size_t arity, std::vector<value_t> table )
      : carrier_( std::move( c ) ), arity_( arity ), table_( std::move( table ) )
  {
    if ( !carrier_ )
    {
      throw argument_error( "operation needs a carrier" );
    }
    if ( arity_ == 0 )
    {
      throw argument_error( "operation arity must be positive" );
    }
    if ( table_.size() != table_size( *carrier_, arity_ ) )
    {
      throw argument_error( "table of an operation of arity " + std::to_string( arity_ ) + " must have " +
                            std::to_string( table_size( *carrier_, arity_ ) ) + " entries, got " +
                            std::to_string( table_.size() ) );
    }
    for ( value_t v : table_ )
    {
      if ( v >= carrier_->size() )
      {
        throw argument_error( "operation value " + std::to_string( v ) + " lies outside the carrier" );
      }
    }
  }

  template<typename Fn>
  static operation from_function( carrier_ptr c, std::size_t arity, Fn&& fn )
  {
    const auto n = table_size( *c, arity );
    std::vector<value_t> table( n );
    tuple_t args( arity, 0 );
    for ( std::size_t r = 0; r < n; ++r )
    {
      table[r] = static_cast<value_t>( fn( std::span<const value_t>( args ) ) );
      next_tuple( args, c->size() );
    }
    return operation( std::move( c ), arity, std::move( table ) );
  }

  std::size_t arity() const noexcept { return arity_; }
  const carrier_ptr& domain() const noexcept { return carrier_; }
  const std::vector<value_t>& table() const noexcept { return table_; }

  value_t operator()( std::span<const value_t> args ) const
  {
    if ( args.size() != arity_ )
    {
      throw argument_error( "expected " + std::to_string( arity_ ) + " arguments, got " + std::to_string( args.size() ) );
    }
    return table_[rank_tuple( args, carrier_->size() )];
  }

  value_t operator()( std::initializer_list<value_t> args ) const
  {
    return ( *this )( std::span<const value_t>( args.begin(), args.size() ) );
  }

  value_t at_rank( std::uint64_t r ) const { return table_.at( r ); }

  bool operator==( const operation& other ) const
  {
    return arity_ == other.arity_ && table_ == other.table_ && same_carrier( carrier_, other.carrier_ );
  }

private:
  carrier_ptr carrier_;
  std::size_t arity_;
  std::vector<value_t> table_;
};

/// The n-ary projection onto coordinate k (1-based).
inline operation projection( const carrier_ptr& c, std::size_t n, std::size_t k )
{
  if ( k < 1 || k > n )
  {
    throw argument_error( "projection index " + std::to_string( k ) + " out of range 1.." + std::to_string( n ) );
  }
  return operation::from_function( c, n, [k]( std::span<const value_t> x ) { return x[k - 1]; } );
}

inline operation constant( const carrier_ptr& c, std::size_t n, value_t v )
{
  if ( v >= c->size() )
  {
    throw argument_error( "constant value outside the carrier" );
  }
  return operation::from_function( c, n, [v]( std::span<const value_t> ) { return v; } );
}

/// (x_1, ..., x_m) -> f(g_1(x), ..., g_n(x))
inline operation compose( const operation& f, std::span<const operation> gs )
{
  if ( gs.size() != f.arity() )
  {
    throw argument_error( "compose: outer arity " + std::to_string( f.arity() ) + " needs that many inner operations, got " +
                          std::to_string( gs.size() ) );
  }
  const std::size_t m = gs.front().arity();
  for ( const auto& g : gs )
  {
    if ( g.arity() != m )
    {
      throw argument_error( "compose: inner operations must share one arity" );
    }
    if ( !same_carrier( g.domain(), f.domain() ) )
    {
      throw argument_error( "compose: carrier mismatch" );
    }
  }
  const std::size_t base = f.domain()->size();
  const std::size_t rows = gs.front().table().size();
  std::vector<value_t> table( rows );
  const auto& outer = f.table();
  for ( std::size_t r = 0; r < rows; ++r )
  {
    std::uint64_t idx = 0;
    for ( const auto& g : gs )
    {
      idx = idx * base + g.table()[r];
    }
    table[r] = outer[idx];
  }
  return operation( f.domain(), m, std::move( table ) );
}

inline operation compose( const operation& f, std::initializer_list<operation> gs )
{
  return compose( f, std::span<const operation>( gs.begin(), gs.size() ) );
}

/// Coordinates (0-based) on which the operation actually depends.
inline std::vector<std::size_t> essential_coordinates( const operation& f )
{
  const std::size_t base = f.domain()->size();
  const auto& table = f.table();
  std::vector<std::size_t> result;
  for ( std::size_t i = 0; i < f.arity(); ++i )
  {
    // stride of coordinate i in the mixed-radix rank
    std::uint64_t stride = 1;
    for ( std::size_t j = i + 1; j < f.arity(); ++j )
    {
      stride *= base;
    }
    bool essential = false;
    for ( std::uint64_t r = 0; r < table.size() && !essential; ++r )
    {
      const auto digit = ( r / stride ) % base;
      if ( digit + 1 < base && table[r] != table[r + stride] )
      {
        essential = true;
      }
    }
    if ( essential )
    {
      result.push_back( i );
    }
  }
  return result;
}

/// The unary operation obtained by identifying all variables.
inline operation diagonal( const operation& f )
{
  return operation::from_function( f.domain(), 1, [&f]( std::span<const value_t> x ) {
    tuple_t args( f.arity(), x[0] );
    return f( args );
  } );
}

/// Unary operation to which f reduces when it depends on at most one
/// coordinate; constants reduce to a unary constant.
inline std::optional<operation> essentially_unary_part( const operation& f )
{
  const auto ess = essential_coordinates( f );
  if ( ess.size() > 1 )
  {
    return std::nullopt;
  }
  const std::size_t coord = ess.empty() ? 0 : ess.front();
  return operation::from_function( f.domain(), 1, [&]( std::span<const value_t> x ) {
    tuple_t args( f.arity(), 0 );
    args[coord] = x[0];
    return f( args );
  } );
}

/// Calls `visit(op)` for every operation of the given arity, in table-rank
/// order. Fails before enumerating if the count exceeds the budget.
template<typename Visit>
void for_each_operation( const carrier_ptr& c, std::size_t arity, const budget& b, Visit&& visit )
{
  if ( arity > b.max_arity )
  {
    throw resource_error( "arity " + std::to_string( arity ) + " exceeds the materialized arity bound " +
                          std::to_string( b.max_arity ) );
  }
  const auto rows = table_size( *c, arity );
  const auto count = checked_power( c->size(), rows, b.max_tables );
  if ( !count || *count > b.max_tables )
  {
    throw resource_error( "enumerating all operations of arity " + std::to_string( arity ) + " on " +
                          std::to_string( c->size() ) + " elements exceeds the budget of " +
                          std::to_string( b.max_tables ) + " tables" );
  }
  std::vector<value_t> table( rows, 0 );
  do
  {
    if constexpr ( std::is_same_v<std::invoke_result_t<Visit, const operation&>, bool> )
    {
      if ( !visit( operation( c, arity, table ) ) )
      {
        return;
      }
    }
    else
    {
      visit( operation( c, arity, table ) );
    }
  } while ( next_tuple( table, c->size() ) );
}

} // namespace clonelab

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "carrier.hpp"
#include "operation.hpp"

namespace clonelab
{

/*! \brief A finitary relation on a finite carrier.

  Tuples are kept sorted by rank without duplicates, with a membership bitmap
  over all ranks of carrier^arity.
*/
class relation
{
public:
  relation( carrier_ptr c, std::size_t arity, std::vector<tuple_t> tuples ) : carrier_( std::move( c ) ), arity_( arity )
  {
    if ( !carrier_ )
    {
      throw argument_error( "relation needs a carrier" );
    }
    if ( arity_ == 0 )
    {
      throw argument_error( "relation arity must be positive" );
    }
    const auto rows = table_size( *carrier_, arity_ );
    member_.assign( ( rows + 63 ) / 64, 0 );
    std::vector<std::uint64_t> ranks;
    ranks.reserve( tuples.size() );
    for ( const auto& t : tuples )
    {
      if ( t.size() != arity_ )
      {
        throw argument_error( "relation tuple of length " + std::to_string( t.size() ) + " in a relation of arity " +
                              std::to_string( arity_ ) );
      }
      for ( value_t v : t )
      {
        if ( v >= carrier_->size() )
        {
          throw argument_error( "relation entry lies outside the carrier" );
        }
      }
      ranks.push_back( rank_tuple( t, carrier_->size() ) );
    }
    std::sort( ranks.begin(), ranks.end() );
    ranks.erase( std::unique( ranks.begin(), ranks.end() ), ranks.end() );
    set_ranks( ranks );
  }

  /// Relation whose tuples are the ranks set in `ranks` (sorted, unique).
  static relation from_ranks( carrier_ptr c, std::size_t arity, const std::vector<std::uint64_t>& ranks )
  {
    relation r( std::move( c ), arity );
    r.set_ranks( ranks );
    return r;
  }

  /// carrier^arity
  static relation full( carrier_ptr c, std::size_t arity )
  {
    const auto rows = table_size( *c, arity );
    std::vector<std::uint64_t> ranks( rows );
    for ( std::size_t i = 0; i < rows; ++i )
    {
      ranks[i] = i;
    }
    return from_ranks( std::move( c ), arity, ranks );
  }

  std::size_t arity() const noexcept { return arity_; }
  const carrier_ptr& domain() const noexcept { return carrier_; }
  std::size_t size() const noexcept { return ranks_.size(); }
  bool empty() const noexcept { return ranks_.empty(); }

  /// Ranks of the member tuples, ascending.
  const std::vector<std::uint64_t>& ranks() const noexcept { return ranks_; }

  /// Coordinate j of the i-th member tuple.
  value_t entry( std::size_t i, std::size_t j ) const noexcept { return coords_[i * arity_ + j]; }

  tuple_t tuple( std::size_t i ) const
  {
    return tuple_t( coords_.begin() + static_cast<std::ptrdiff_t>( i * arity_ ),
                    coords_.begin() + static_cast<std::ptrdiff_t>( ( i + 1 ) * arity_ ) );
  }

  std::vector<tuple_t> tuples() const
  {
    std::vector<tuple_t> result;
    result.reserve( size() );
    for ( std::size_t i = 0; i < size(); ++i )
    {
      result.push_back( tuple( i ) );
    }
    return result;
  }

  bool contains_rank( std::uint64_t r ) const noexcept
  {
    return r / 64 < member_.size() && ( ( member_[r / 64] >> ( r % 64 ) ) & 1u );
  }

  bool contains( std::span<const value_t> t ) const
  {
    return t.size() == arity_ && contains_rank( rank_tuple( t, carrier_->size() ) );
  }

  bool operator==( const relation& other ) const
  {
    return arity_ == other.arity_ && ranks_ == other.ranks_ && same_carrier( carrier_, other.carrier_ );
  }

  bool subset_of( const relation& other ) const
  {
    return arity_ == other.arity_ &&
           std::includes( other.ranks_.begin(), other.ranks_.end(), ranks_.begin(), ranks_.end() );
  }

private:
  relation( carrier_ptr c, std::size_t arity ) : carrier_( std::move( c ) ), arity_( arity )
  {
    member_.assign( ( table_size( *carrier_, arity_ ) + 63 ) / 64, 0 );
  }

  void set_ranks( const std::vector<std::uint64_t>& ranks )
  {
    ranks_ = ranks;
    coords_.clear();
    coords_.reserve( ranks_.size() * arity_ );
    for ( auto r : ranks_ )
    {
      member_[r / 64] |= std::uint64_t{ 1 } << ( r % 64 );
      auto t = unrank_tuple( r, arity_, carrier_->size() );
      coords_.insert( coords_.end(), t.begin(), t.end() );
    }
  }

  carrier_ptr carrier_;
  std::size_t arity_;
  std::vector<std::uint64_t> ranks_;
  std::vector<value_t> coords_;
  std::vector<std::uint64_t> member_;
};

/// True iff applying f componentwise to any choice of tuples of rho yields a
/// tuple of rho.
inline bool preserves( const operation& f, const relation& rho )
{
  if ( !same_carrier( f.domain(), rho.domain() ) )
  {
    throw argument_error( "preserves: carrier mismatch" );
  }
  const std::size_t n = f.arity();
  const std::size_t m = rho.arity();
  const std::size_t count = rho.size();
  if ( count == 0 )
  {
    return true;
  }
  const std::size_t base = f.domain()->size();
  const auto& table = f.table();
  std::vector<std::size_t> pick( n, 0 );
  while ( true )
  {
    std::uint64_t image = 0;
    for ( std::size_t j = 0; j < m; ++j )
    {
      std::uint64_t idx = 0;
      for ( std::size_t i = 0; i < n; ++i )
      {
        idx = idx * base + rho.entry( pick[i], j );
      }
      image = image * base + table[idx];
    }
    if ( !rho.contains_rank( image ) )
    {
      return false;
    }
    std::size_t i = n;
    while ( i-- > 0 )
    {
      if ( ++pick[i] < count )
      {
        break;
      }
      pick[i] = 0;
    }
    if ( i == static_cast<std::size_t>( -1 ) )
    {
      return true;
    }
  }
}

} // namespace clonelab

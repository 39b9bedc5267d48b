#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "atom.hpp"
#include "carrier.hpp"
#include "errors.hpp"

namespace clonelab
{

/// c ⊥ d: neither is an initial segment of the other.
inline bool perp( const bit_string& c, const bit_string& d ) noexcept
{
  return !c.is_prefix_of( d ) && !d.is_prefix_of( c );
}

/// C ⊥ D: c ⊥ d for every pair.
inline bool perp( const std::vector<bit_string>& C, const std::vector<bit_string>& D ) noexcept
{
  for ( const auto& c : C )
  {
    for ( const auto& d : D )
    {
      if ( !perp( c, d ) )
      {
        return false;
      }
    }
  }
  return true;
}

/// An infinite 0-1 sequence known only up to a finite window.
class alpha_prefix
{
public:
  alpha_prefix() = default;
  explicit alpha_prefix( bit_string window ) : window_( std::move( window ) ) {}
  explicit alpha_prefix( const std::string& bits ) : window_( bits ) {}

  const bit_string& window() const noexcept { return window_; }
  std::size_t length() const noexcept { return window_.length(); }

  /// alpha restricted to its first n bits.
  bit_string prefix( std::size_t n ) const
  {
    if ( n > window_.length() )
    {
      throw argument_error( "prefix of length " + std::to_string( n ) + " requested from a window of length " +
                            std::to_string( window_.length() ) );
    }
    return window_.prefix( n );
  }

  /// True iff s is a prefix of alpha (decidable only when |s| <= window).
  bool has_prefix( const bit_string& s ) const
  {
    if ( s.length() > window_.length() )
    {
      throw argument_error( "membership of \"" + s.str() + "\" in B_alpha is undecidable from a window of length " +
                            std::to_string( window_.length() ) );
    }
    return s.is_prefix_of( window_ );
  }

  bool operator==( const alpha_prefix& ) const = default;

private:
  bit_string window_;
};

/// {alpha restricted to n : 0 <= n <= n_max}
inline std::vector<bit_string> b_alpha( const alpha_prefix& alpha, std::size_t n_max )
{
  if ( n_max > alpha.length() )
  {
    throw argument_error( "b_alpha: n_max " + std::to_string( n_max ) + " exceeds the window length " +
                          std::to_string( alpha.length() ) );
  }
  std::vector<bit_string> result;
  for ( std::size_t n = 0; n <= n_max; ++n )
  {
    result.push_back( alpha.prefix( n ) );
  }
  return result;
}

/// First position where the windows differ, if it lies inside both.
inline std::optional<std::size_t> divergence_index( const alpha_prefix& alpha, const alpha_prefix& beta )
{
  const auto n = std::min( alpha.length(), beta.length() );
  for ( std::size_t i = 0; i < n; ++i )
  {
    if ( alpha.window()[i] != beta.window()[i] )
    {
      return i;
    }
  }
  return std::nullopt;
}

/*! \brief An injective map sigma: C × D -> B with C ⊥ D.

  The graph must be defined on exactly C × D.
*/
class sigma_map
{
public:
  using key_type = std::pair<bit_string, bit_string>;

  sigma_map() = default;

  sigma_map( std::vector<bit_string> C, std::vector<bit_string> D, std::map<key_type, bit_string> graph )
      : C_( std::move( C ) ), D_( std::move( D ) ), graph_( std::move( graph ) )
  {
    normalize( C_ );
    normalize( D_ );
    if ( !perp( C_, D_ ) )
    {
      throw argument_error( "sigma domain C × D violates C ⊥ D" );
    }
    if ( graph_.size() != C_.size() * D_.size() )
    {
      throw argument_error( "sigma must be defined on exactly C × D" );
    }
    std::set<bit_string> range;
    for ( const auto& [key, value] : graph_ )
    {
      if ( !std::binary_search( C_.begin(), C_.end(), key.first ) || !std::binary_search( D_.begin(), D_.end(), key.second ) )
      {
        throw argument_error( "sigma graph has a key outside C × D" );
      }
      if ( !range.insert( value ).second )
      {
        throw argument_error( "sigma must be injective; value \"" + value.str() + "\" repeats" );
      }
    }
  }

  /// Reads C and D off the graph's keys.
  static sigma_map from_graph( std::map<key_type, bit_string> graph )
  {
    std::vector<bit_string> C, D;
    for ( const auto& [key, value] : graph )
    {
      C.push_back( key.first );
      D.push_back( key.second );
    }
    return sigma_map( std::move( C ), std::move( D ), std::move( graph ) );
  }

  const std::vector<bit_string>& C() const noexcept { return C_; }
  const std::vector<bit_string>& D() const noexcept { return D_; }
  const std::map<key_type, bit_string>& graph() const noexcept { return graph_; }

  std::optional<bit_string> operator()( const bit_string& c, const bit_string& d ) const
  {
    auto it = graph_.find( { c, d } );
    return it == graph_.end() ? std::nullopt : std::optional<bit_string>( it->second );
  }

  std::size_t max_length() const noexcept
  {
    std::size_t n = 0;
    for ( const auto& [key, value] : graph_ )
    {
      n = std::max( { n, key.first.length(), key.second.length(), value.length() } );
    }
    return n;
  }

private:
  static void normalize( std::vector<bit_string>& v )
  {
    std::sort( v.begin(), v.end() );
    v.erase( std::unique( v.begin(), v.end() ), v.end() );
  }

  std::vector<bit_string> C_;
  std::vector<bit_string> D_;
  std::map<key_type, bit_string> graph_;
};

/*! \brief A member of G_alpha on a truncation: a_i -> alpha restricted to
  assignment[i], everything else -> infinity.

  The assignment lists one prefix length per A-element and must be injective.
*/
class g_alpha_function
{
public:
  g_alpha_function( alpha_prefix alpha, std::vector<std::size_t> lengths )
      : alpha_( std::move( alpha ) ), lengths_( std::move( lengths ) )
  {
    if ( std::set<std::size_t>( lengths_.begin(), lengths_.end() ).size() != lengths_.size() )
    {
      throw argument_error( "G_alpha assignment must be injective" );
    }
    for ( auto n : lengths_ )
    {
      if ( n > alpha_.length() )
      {
        throw argument_error( "G_alpha assignment uses prefix length " + std::to_string( n ) + " beyond the window length " +
                              std::to_string( alpha_.length() ) );
      }
    }
  }

  /// a_i -> alpha restricted to i+1.
  static g_alpha_function canonical( const alpha_prefix& alpha, std::size_t k )
  {
    if ( alpha.length() < k )
    {
      throw argument_error( "canonical G_alpha on A_" + std::to_string( k ) + " needs a window of length >= " +
                            std::to_string( k ) + ", got " + std::to_string( alpha.length() ) );
    }
    std::vector<std::size_t> lengths( k );
    for ( std::size_t i = 0; i < k; ++i )
    {
      lengths[i] = i + 1;
    }
    return g_alpha_function( alpha, std::move( lengths ) );
  }

  const alpha_prefix& alpha() const noexcept { return alpha_; }
  const std::vector<std::size_t>& lengths() const noexcept { return lengths_; }

  bit_string image( std::size_t a_index ) const { return alpha_.prefix( lengths_.at( a_index ) ); }

private:
  alpha_prefix alpha_;
  std::vector<std::size_t> lengths_;
};

} // namespace clonelab

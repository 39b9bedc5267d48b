#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "atom.hpp"
#include "errors.hpp"

namespace clonelab
{

/// Index of an element inside its carrier.
using value_t = std::uint32_t;

/// A tuple of carrier indices.
using tuple_t = std::vector<value_t>;

enum class carrier_kind
{
  plain,
  tripartite
};

class carrier;
using carrier_ptr = std::shared_ptr<const carrier>;

/*! \brief A finite, ordered set of elements.

  Elements are addressed by their index. A plain carrier holds integer atoms;
  a tri-partite carrier of parameter k holds a_0, ..., a_{k-1}, then every
  bit string of length at most k in shortlex order, then infinity.
*/
class carrier
{
public:
  /// {0, ..., n-1}
  static carrier_ptr plain( std::size_t n )
  {
    if ( n == 0 )
    {
      throw argument_error( "carrier must be non-empty" );
    }
    std::vector<atom> atoms;
    atoms.reserve( n );
    for ( std::size_t i = 0; i < n; ++i )
    {
      atoms.emplace_back( static_cast<std::int64_t>( i ) );
    }
    return std::shared_ptr<const carrier>( new carrier( std::move( atoms ), carrier_kind::plain, 0 ) );
  }

  /// A plain carrier with arbitrary integer labels, in the given order.
  static carrier_ptr of_labels( std::span<const std::int64_t> labels )
  {
    if ( labels.empty() )
    {
      throw argument_error( "carrier must be non-empty" );
    }
    std::vector<atom> atoms( labels.begin(), labels.end() );
    return std::shared_ptr<const carrier>( new carrier( std::move( atoms ), carrier_kind::plain, 0 ) );
  }

  static carrier_ptr tripartite( std::size_t k )
  {
    if ( k < 1 )
    {
      throw argument_error( "tri-partite carrier needs k >= 1" );
    }
    if ( k > 20 )
    {
      throw argument_error( "tri-partite carrier with k = " + std::to_string( k ) + " is too large to materialize" );
    }
    std::vector<atom> atoms;
    for ( std::size_t i = 0; i < k; ++i )
    {
      atoms.emplace_back( a_element{ i } );
    }
    for ( std::size_t len = 0; len <= k; ++len )
    {
      for ( std::uint64_t v = 0; v < ( std::uint64_t{ 1 } << len ); ++v )
      {
        atoms.emplace_back( bit_string::from_rank( len, v ) );
      }
    }
    atoms.emplace_back( infinity_element{} );
    return std::shared_ptr<const carrier>( new carrier( std::move( atoms ), carrier_kind::tripartite, k ) );
  }

  /// Builds a carrier from explicit atoms, recognizing the tri-partite layout
  /// when the atoms are exactly tripartite(k) in canonical order.
  static carrier_ptr from_atoms( std::vector<atom> atoms )
  {
    if ( atoms.empty() )
    {
      throw argument_error( "carrier must be non-empty" );
    }
    bool all_int = true;
    for ( const auto& a : atoms )
    {
      all_int = all_int && std::holds_alternative<std::int64_t>( a );
    }
    if ( all_int )
    {
      return std::shared_ptr<const carrier>( new carrier( std::move( atoms ), carrier_kind::plain, 0 ) );
    }
    std::size_t k = 0;
    while ( k < atoms.size() && std::holds_alternative<a_element>( atoms[k] ) )
    {
      ++k;
    }
    if ( k >= 1 && k <= 20 )
    {
      auto canonical = tripartite( k );
      if ( canonical->atoms_ == atoms )
      {
        return canonical;
      }
    }
    throw argument_error( "carrier atoms are neither all integers nor a canonical tri-partite universe" );
  }

  std::size_t size() const noexcept { return atoms_.size(); }
  carrier_kind kind() const noexcept { return kind_; }

  /// Parameter k of a tri-partite carrier; 0 for plain carriers.
  std::size_t k() const noexcept { return k_; }

  const atom& at( value_t i ) const { return atoms_.at( i ); }
  const std::vector<atom>& atoms() const noexcept { return atoms_; }

  std::optional<value_t> find( const atom& a ) const
  {
    if ( auto it = index_.find( a ); it != index_.end() )
    {
      return it->second;
    }
    return std::nullopt;
  }

  value_t index_of( const atom& a ) const
  {
    if ( auto i = find( a ) )
    {
      return *i;
    }
    throw argument_error( "element " + to_string( a ) + " is not in the carrier" );
  }

  bool same_as( const carrier& other ) const noexcept { return this == &other || atoms_ == other.atoms_; }

  /// Tri-partite helpers.
  bool is_a( value_t i ) const noexcept { return kind_ == carrier_kind::tripartite && i < k_; }
  bool is_b( value_t i ) const noexcept { return kind_ == carrier_kind::tripartite && i >= k_ && i + 1 < atoms_.size(); }
  bool is_infinity( value_t i ) const noexcept { return kind_ == carrier_kind::tripartite && i + 1 == atoms_.size(); }

  value_t a( std::size_t i ) const
  {
    require_tripartite();
    if ( i >= k_ )
    {
      throw argument_error( "a_" + std::to_string( i ) + " is outside the truncation A_" + std::to_string( k_ ) );
    }
    return static_cast<value_t>( i );
  }

  value_t b( const bit_string& s ) const
  {
    require_tripartite();
    if ( s.length() > k_ )
    {
      throw argument_error( "bit string \"" + s.str() + "\" is longer than the truncation bound " + std::to_string( k_ ) );
    }
    return static_cast<value_t>( k_ + ( ( std::uint64_t{ 1 } << s.length() ) - 1 ) + s.value() );
  }

  value_t infinity() const
  {
    require_tripartite();
    return static_cast<value_t>( atoms_.size() - 1 );
  }

  const bit_string& bits( value_t i ) const { return std::get<bit_string>( atoms_.at( i ) ); }

  /// Number of bit strings in the B-part.
  std::size_t b_count() const noexcept { return kind_ == carrier_kind::tripartite ? atoms_.size() - k_ - 1 : 0; }

private:
  carrier( std::vector<atom> atoms, carrier_kind kind, std::size_t k )
      : atoms_( std::move( atoms ) ), kind_( kind ), k_( k )
  {
    for ( std::size_t i = 0; i < atoms_.size(); ++i )
    {
      if ( !index_.emplace( atoms_[i], static_cast<value_t>( i ) ).second )
      {
        throw argument_error( "carrier elements must be pairwise distinct; duplicate " + to_string( atoms_[i] ) );
      }
    }
  }

  void require_tripartite() const
  {
    if ( kind_ != carrier_kind::tripartite )
    {
      throw argument_error( "operation requires a tri-partite carrier" );
    }
  }

  std::vector<atom> atoms_;
  std::map<atom, value_t> index_;
  carrier_kind kind_;
  std::size_t k_;
};

inline bool same_carrier( const carrier_ptr& x, const carrier_ptr& y ) noexcept
{
  return x == y || ( x && y && x->same_as( *y ) );
}

/// base^exponent, or nullopt on overflow past `limit`.
inline std::optional<std::uint64_t> checked_power( std::uint64_t base, std::uint64_t exponent,
                                                   std::uint64_t limit = UINT64_MAX )
{
  std::uint64_t result = 1;
  for ( std::uint64_t i = 0; i < exponent; ++i )
  {
    if ( base != 0 && result > limit / base )
    {
      return std::nullopt;
    }
    result *= base;
  }
  return result;
}

/// Mixed-radix rank of a tuple; the first coordinate is most significant.
inline std::uint64_t rank_tuple( std::span<const value_t> t, std::size_t base ) noexcept
{
  std::uint64_t r = 0;
  for ( value_t v : t )
  {
    r = r * base + v;
  }
  return r;
}

inline tuple_t unrank_tuple( std::uint64_t rank, std::size_t arity, std::size_t base )
{
  tuple_t t( arity );
  for ( std::size_t i = arity; i-- > 0; )
  {
    t[i] = static_cast<value_t>( rank % base );
    rank /= base;
  }
  return t;
}

/// Advances `t` to the next tuple in rank order; returns false after the last.
inline bool next_tuple( std::span<value_t> t, std::size_t base ) noexcept
{
  for ( std::size_t i = t.size(); i-- > 0; )
  {
    if ( ++t[i] < base )
    {
      return true;
    }
    t[i] = 0;
  }
  return false;
}

} // namespace clonelab

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "errors.hpp"

namespace clonelab
{

/// A finite 0-1 sequence. Ordered shortlex: shorter strings first, equal
/// lengths lexicographically.
class bit_string
{
public:
  bit_string() = default;

  explicit bit_string( std::string bits ) : bits_( std::move( bits ) )
  {
    for ( char c : bits_ )
    {
      if ( c != '0' && c != '1' )
      {
        throw argument_error( "bit string may only contain '0' and '1': \"" + bits_ + "\"" );
      }
    }
  }

  /// The string of the given length whose bits spell `value` in binary,
  /// most significant bit first.
  static bit_string from_rank( std::size_t length, std::uint64_t value )
  {
    std::string bits( length, '0' );
    for ( std::size_t i = 0; i < length; ++i )
    {
      if ( ( value >> ( length - 1 - i ) ) & 1u )
      {
        bits[i] = '1';
      }
    }
    bit_string result;
    result.bits_ = std::move( bits );
    return result;
  }

  std::size_t length() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  const std::string& str() const noexcept { return bits_; }
  char operator[]( std::size_t i ) const { return bits_[i]; }

  /// Binary value of the bits (most significant first).
  std::uint64_t value() const noexcept
  {
    std::uint64_t v = 0;
    for ( char c : bits_ )
    {
      v = ( v << 1u ) | static_cast<std::uint64_t>( c == '1' );
    }
    return v;
  }

  bool is_prefix_of( const bit_string& other ) const noexcept
  {
    return bits_.size() <= other.bits_.size() && other.bits_.compare( 0, bits_.size(), bits_ ) == 0;
  }

  bit_string prefix( std::size_t n ) const
  {
    if ( n > bits_.size() )
    {
      throw argument_error( "prefix length " + std::to_string( n ) + " exceeds bit string length " +
                            std::to_string( bits_.size() ) );
    }
    bit_string result;
    result.bits_ = bits_.substr( 0, n );
    return result;
  }

  bool operator==( const bit_string& ) const = default;

  std::strong_ordering operator<=>( const bit_string& other ) const noexcept
  {
    if ( auto c = bits_.size() <=> other.bits_.size(); c != 0 )
    {
      return c;
    }
    return bits_.compare( other.bits_ ) <=> 0;
  }

private:
  std::string bits_;
};

/// Element a_i of the A-part of a tri-partite universe.
struct a_element
{
  std::size_t index = 0;
  auto operator<=>( const a_element& ) const = default;
};

/// The absorbing element of a tri-partite universe.
struct infinity_element
{
  auto operator<=>( const infinity_element& ) const = default;
};

/// An element label. Plain carriers use integers; tri-partite carriers use
/// the other three alternatives.
using atom = std::variant<std::int64_t, a_element, bit_string, infinity_element>;

inline std::string to_string( const atom& a )
{
  struct visitor
  {
    std::string operator()( std::int64_t v ) const { return std::to_string( v ); }
    std::string operator()( const a_element& e ) const { return "a" + std::to_string( e.index ); }
    std::string operator()( const bit_string& s ) const { return "\"" + s.str() + "\""; }
    std::string operator()( const infinity_element& ) const { return "inf"; }
  };
  return std::visit( visitor{}, a );
}

} // namespace clonelab

#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "carrier.hpp"
#include "errors.hpp"
#include "operation.hpp"

namespace clonelab
{

/// Interpretation of the symbols of an m-term on a truncation.
struct m_interpretation
{
  carrier_ptr universe;
  std::vector<operation> g_ops; // unary
  std::vector<operation> m_ops; // binary
};

/*! \brief A term over G_alpha symbols (unary), m^sigma symbols (binary), the
  constant infinity (treated as a unary operation) and variables.

  Subterms are shared, so copies are cheap.
*/
class mterm
{
public:
  enum class kind
  {
    variable,
    infinity,
    g,
    m
  };

  static mterm var( std::size_t i ) { return mterm( std::make_shared<node>( node{ kind::variable, i, {}, {}, 0, false } ) ); }

  static mterm inf( const mterm& arg )
  {
    return mterm( std::make_shared<node>( node{ kind::infinity, 0, arg.node_, {}, arg.depth() + 1, arg.uses_g() } ) );
  }

  static mterm g( std::size_t symbol, const mterm& arg )
  {
    return mterm( std::make_shared<node>( node{ kind::g, symbol, arg.node_, {}, arg.depth() + 1, true } ) );
  }

  static mterm m( std::size_t symbol, const mterm& left, const mterm& right )
  {
    return mterm( std::make_shared<node>( node{ kind::m, symbol, left.node_, right.node_,
                                                std::max( left.depth(), right.depth() ) + 1,
                                                left.uses_g() || right.uses_g() } ) );
  }

  kind root() const noexcept { return node_->k; }
  std::size_t symbol() const noexcept { return node_->index; }
  std::size_t depth() const noexcept { return node_->depth; }

  /// True iff some G_alpha symbol occurs.
  bool uses_g() const noexcept { return node_->uses_g; }

  mterm left() const { return mterm( node_->left ); }
  mterm right() const { return mterm( node_->right ); }

  value_t evaluate( const m_interpretation& in, std::span<const value_t> vars ) const { return eval( *node_, in, vars ); }

  /// The unary operation obtained by substituting one variable for all.
  operation identified( const m_interpretation& in ) const
  {
    return operation::from_function( in.universe, 1, [&]( std::span<const value_t> x ) {
      return eval_identified( *node_, in, x[0] );
    } );
  }

  std::string to_string() const { return str( *node_ ); }

private:
  struct node
  {
    kind k;
    std::size_t index;
    std::shared_ptr<const node> left;
    std::shared_ptr<const node> right;
    std::size_t depth;
    bool uses_g;
  };

  explicit mterm( std::shared_ptr<const node> n ) : node_( std::move( n ) ) {}

  static value_t eval( const node& n, const m_interpretation& in, std::span<const value_t> vars )
  {
    switch ( n.k )
    {
    case kind::variable:
      if ( n.index >= vars.size() )
      {
        throw argument_error( "term variable x" + std::to_string( n.index ) + " has no value" );
      }
      return vars[n.index];
    case kind::infinity:
      return in.universe->infinity();
    case kind::g:
      return in.g_ops.at( n.index )( { eval( *n.left, in, vars ) } );
    case kind::m:
      return in.m_ops.at( n.index )( { eval( *n.left, in, vars ), eval( *n.right, in, vars ) } );
    }
    return 0;
  }

  static value_t eval_identified( const node& n, const m_interpretation& in, value_t x )
  {
    switch ( n.k )
    {
    case kind::variable:
      return x;
    case kind::infinity:
      return in.universe->infinity();
    case kind::g:
      return in.g_ops.at( n.index ).table()[eval_identified( *n.left, in, x )];
    case kind::m:
    {
      const auto size = in.universe->size();
      return in.m_ops.at( n.index ).table()[eval_identified( *n.left, in, x ) * size + eval_identified( *n.right, in, x )];
    }
    }
    return 0;
  }

  static std::string str( const node& n )
  {
    switch ( n.k )
    {
    case kind::variable:
      return "x" + std::to_string( n.index );
    case kind::infinity:
      return "inf(" + str( *n.left ) + ")";
    case kind::g:
      return "g" + std::to_string( n.index ) + "(" + str( *n.left ) + ")";
    case kind::m:
      return "m" + std::to_string( n.index ) + "(" + str( *n.left ) + "," + str( *n.right ) + ")";
    }
    return "?";
  }

  std::shared_ptr<const node> node_;
};

} // namespace clonelab

#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"

using namespace clonelab;
using namespace testing_helpers;

namespace
{

/// n-ary Boolean operations preserving every relation, by direct definition.
std::size_t brute_pol_count( const std::vector<relation>& rs, std::size_t n )
{
  std::size_t count = 0;
  for ( const auto& f : all_operations( boolean(), n ) )
  {
    bool ok = true;
    for ( const auto& r : rs )
    {
      const auto ts = r.tuples();
      std::vector<std::size_t> pick( n, 0 );
      while ( ok && !ts.empty() )
      {
        tuple_t image( r.arity() );
        for ( std::size_t j = 0; j < r.arity(); ++j )
        {
          tuple_t args( n );
          for ( std::size_t i = 0; i < n; ++i )
          {
            args[i] = ts[pick[i]][j];
          }
          image[j] = f( args );
        }
        ok = r.contains( image );
        std::size_t i = n;
        while ( i > 0 && pick[i - 1] + 1 == ts.size() )
        {
          pick[--i] = 0;
        }
        if ( i == 0 )
        {
          break;
        }
        ++pick[i - 1];
      }
    }
    count += ok;
  }
  return count;
}

} // namespace

TEST( Pol, Examples )
{
  auto c = boolean();
  EXPECT_EQ( pol( relation_set( c, { leq( c ) } ), 2 ).size( 2 ), 6u );
  EXPECT_EQ( pol( relation_set( c ), 2 ).size( 2 ), 16u );
  const auto p01 = pol( relation_set( c, { relation( c, 2, { { 0, 1 } } ) } ), 2 );
  EXPECT_EQ( p01.size( 2 ), 4u );
  for ( const auto& f : p01.of_arity( 2 ) )
  {
    EXPECT_EQ( f( { 0, 0 } ), 0u );
    EXPECT_EQ( f( { 1, 1 } ), 1u );
  }
}

TEST( Pol, MonotoneCountsMatchBruteForce )
{
  auto c = boolean();
  budget b;
  b.max_arity = 3;
  const auto mono = pol( relation_set( c, { leq( c ) } ), 3, b );
  const std::size_t expected[] = { 0, 3, 6, 20 };
  for ( std::size_t n = 1; n <= 3; ++n )
  {
    EXPECT_EQ( mono.size( n ), brute_pol_count( { leq( c ) }, n ) );
    EXPECT_EQ( mono.size( n ), expected[n] );
  }
}

TEST( Pol, MatchesBruteForceOnRandomRelations )
{
  auto c = boolean();
  std::mt19937_64 rng( 31 );
  for ( int i = 0; i < 25; ++i )
  {
    std::vector<relation> rs{ random_relation( c, 1 + i % 3, rng ) };
    relation_set set( c );
    for ( const auto& r : rs )
    {
      set.insert( r );
    }
    const auto p = pol( set, 2 );
    EXPECT_EQ( p.size( 1 ), brute_pol_count( rs, 1 ) );
    EXPECT_EQ( p.size( 2 ), brute_pol_count( rs, 2 ) );
  }
}

TEST( Pol, BudgetNamesArity )
{
  budget b;
  b.max_tables = 1000;
  try
  {
    pol( relation_set( carrier::plain( 3 ) ), 2, b );
    FAIL() << "expected a resource error";
  }
  catch ( const resource_error& e )
  {
    EXPECT_NE( std::string( e.what() ).find( "arity 2" ), std::string::npos );
  }
}

TEST( Inv, Examples )
{
  auto c = boolean();
  const auto neg = inv( operation_set( c, { NOT( c ) } ), 1 );
  EXPECT_EQ( neg.size( 1 ), 2u );
  EXPECT_TRUE( neg.contains( relation( c, 1, {} ) ) );
  EXPECT_TRUE( neg.contains( relation::full( c, 1 ) ) );
  EXPECT_EQ( inv( projections_up_to( c, 2 ), 1 ).size( 1 ), 4u );
  const auto bounded = inv( operation_set( c, { AND( c ), OR( c ), constant( c, 1, 0 ), constant( c, 1, 1 ) } ), 1 );
  EXPECT_EQ( bounded.size( 1 ), 2u );
  EXPECT_FALSE( bounded.contains( relation( c, 1, { { 0 } } ) ) );
}

TEST( Inv, Budget )
{
  EXPECT_THROW( inv( operation_set( carrier::plain( 3 ), { projection( carrier::plain( 3 ), 1, 1 ) } ), 3 ), resource_error );
}

TEST( CloneClosure, Examples )
{
  auto c = boolean();
  auto complete = clone_closure( operation_set( c, { AND( c ), NOT( c ) } ), 2 );
  EXPECT_TRUE( complete.saturated );
  EXPECT_EQ( complete.ops.size( 2 ), 16u );
  EXPECT_EQ( complete.ops.size( 1 ), 4u );

  auto none = clone_closure( operation_set( c ), 2 );
  EXPECT_TRUE( none.saturated );
  EXPECT_EQ( none.ops, projections_up_to( c, 2 ) );

  auto meet = clone_closure( operation_set( c, { AND( c ) } ), 2 );
  EXPECT_TRUE( meet.saturated );
  EXPECT_EQ( meet.ops.size( 2 ), 3u );
  EXPECT_TRUE( meet.ops.contains( AND( c ) ) );
}

TEST( CloneClosure, DepthLimitAndBudget )
{
  auto c = boolean();
  auto one = clone_closure( operation_set( c, { AND( c ), NOT( c ) } ), 2, 1 );
  EXPECT_FALSE( one.saturated );
  EXPECT_LT( one.ops.size(), 20u );
  budget b;
  b.max_tables = 10;
  try
  {
    clone_closure( operation_set( c, { AND( c ), NOT( c ) } ), 2, std::nullopt, b );
    FAIL() << "expected a resource error";
  }
  catch ( const partial_result_error<closure_result>& e )
  {
    EXPECT_GE( e.partial().ops.size(), 3u );
  }
}

TEST( CloneClosure, MonotoneAndIdempotent )
{
  auto c = boolean();
  std::mt19937_64 rng( 41 );
  for ( int i = 0; i < 15; ++i )
  {
    operation_set small( c, { random_operation( c, 2, rng ) } );
    operation_set big = small;
    big.insert( random_operation( c, 1, rng ) );
    const auto a = clone_closure( small, 2 ).ops;
    const auto b = clone_closure( big, 2 ).ops;
    EXPECT_TRUE( a.subset_of( b ) );
    EXPECT_EQ( clone_closure( a, 2 ).ops, a );
  }
}

TEST( Galois, AntitoneAndExtensive )
{
  auto c = boolean();
  std::mt19937_64 rng( 43 );
  for ( int i = 0; i < 10; ++i )
  {
    operation_set F( c, { random_operation( c, 2, rng ) } );
    operation_set F2 = F;
    F2.insert( random_operation( c, 1, rng ) );
    const auto iF = inv( F, 2 );
    const auto iF2 = inv( F2, 2 );
    EXPECT_TRUE( iF2.subset_of( iF ) );
    EXPECT_TRUE( F.subset_of( pol( iF, 2 ) ) );

    relation_set R( c, { random_relation( c, 2, rng ) } );
    relation_set R2 = R;
    R2.insert( random_relation( c, 1, rng ) );
    EXPECT_TRUE( pol( R2, 2 ).subset_of( pol( R, 2 ) ) );
    EXPECT_TRUE( R.subset_of( inv( pol( R, 2 ), 2 ) ) );
  }
}

TEST( Galois, PolIsAClone )
{
  auto c = carrier::plain( 3 );
  std::mt19937_64 rng( 47 );
  for ( int i = 0; i < 5; ++i )
  {
    const auto p = pol( relation_set( c, { random_relation( c, 2, rng ) } ), 2 );
    EXPECT_TRUE( projections_up_to( c, 2 ).subset_of( p ) );
    const auto& bin = p.of_arity( 2 );
    for ( int j = 0; j < 200; ++j )
    {
      const auto& f = bin[rng() % bin.size()];
      EXPECT_TRUE( p.contains( compose( f, { bin[rng() % bin.size()], bin[rng() % bin.size()] } ) ) );
    }
  }
}

TEST( InterpolationMember, Examples )
{
  auto c = boolean();
  const auto mono = pol( relation_set( c, { leq( c ) } ), 1 );
  auto is_mono = [&]( const operation& f ) { return mono.contains( f ); };
  EXPECT_TRUE( interpolation_member( AND( c ), [&]( const operation& f ) { return f == AND( c ); }, { { { 0, 1 } } } ) );
  EXPECT_FALSE( interpolation_member( NOT( c ), is_mono, { { { 0 }, { 1 } } } ) );
  EXPECT_TRUE( interpolation_member( NOT( c ), is_mono, { { { 0 } } } ) );
}

TEST( FixedPoint, Examples )
{
  auto c = boolean();
  EXPECT_EQ( verify_pol_inv_fixed_point( operation_set( c, { AND( c ) } ), 2, 4 ).status, fixed_point_status::equal );
  EXPECT_EQ( verify_pol_inv_fixed_point( operation_set( c ), 2 ).status, fixed_point_status::equal );
  const auto neg = verify_pol_inv_fixed_point( operation_set( c, { NOT( c ) } ), 1 );
  EXPECT_EQ( neg.status, fixed_point_status::equal );
  EXPECT_EQ( neg.closure.size( 1 ), 2u );
  EXPECT_EQ( neg.relation_arity_bound, 2u );
}

TEST( FixedPoint, SmallRelationBoundIsNotAFailure )
{
  auto c = boolean();
  // unary relations alone cannot cut Pol down to <and>
  const auto r = verify_pol_inv_fixed_point( operation_set( c, { AND( c ) } ), 2, 1 );
  EXPECT_EQ( r.status, fixed_point_status::bound_too_small );
  EXPECT_FALSE( r.only_in_pol_inv.empty() );
  EXPECT_TRUE( r.only_in_closure.empty() );
}
